/* Seeded invariant suite across all modules. Each property draws its own
   deterministic stream from the config seed and the property name, so
   failures are reproducible one property at a time. */

#include "povmkit/selftest.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "povmkit/divergences.hpp"
#include "povmkit/errors.hpp"
#include "povmkit/fuzzy_order.hpp"
#include "povmkit/generators.hpp"
#include "povmkit/instruments.hpp"
#include "povmkit/io.hpp"
#include "povmkit/random.hpp"
#include "povmkit/reduction.hpp"

namespace povmkit {

namespace {

uint64_t property_seed(uint64_t base, const std::string& name) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a over the property name
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h ^ base;
}

struct Trial {
  int index;
  uint64_t seed;
};

/* Runs `body` for each trial; the body throws std::runtime_error-derived
   exceptions or returns an error string on failure. */
PropertyResult run_property(const SelftestConfig& cfg, const std::string& name,
                            const std::function<std::string(const Trial&)>& body) {
  PropertyResult r;
  r.name = name;
  r.trials = cfg.trials;
  if (cfg.trials <= 0) {
    r.passed = true;
    r.detail = "warning: vacuous pass, 0 trials requested";
    return r;
  }
  const uint64_t base = property_seed(cfg.seed, name);
  for (int k = 0; k < cfg.trials; ++k) {
    const Trial t{k, base + 0x9e3779b97f4a7c15ull * static_cast<uint64_t>(k + 1)};
    try {
      std::string err = body(t);
      if (!err.empty()) {
        r.passed = false;
        std::ostringstream os;
        os << "trial " << k << " (seed " << t.seed << "): " << err;
        r.detail = os.str();
        return r;
      }
    } catch (const Error& e) {
      r.passed = false;
      std::ostringstream os;
      os << "trial " << k << " (seed " << t.seed << ") raised: " << e.what();
      r.detail = os.str();
      return r;
    }
  }
  r.passed = true;
  return r;
}

HermitianMatrix random_hermitian(int dim, Rng& rng) {
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return HermitianMatrix(0.5 * (m + m.adjoint()), 1e-6);
}

int dim_for(const Trial& t) { return 2 + t.index % 3; }  // cycles 2, 3, 4

std::set<std::set<std::string>> label_partition(const ReductionReport& rep) {
  std::map<std::string, std::set<std::string>> by_group;
  for (const auto& [label, group] : rep.groups) by_group[group].insert(label);
  std::set<std::set<std::string>> out;
  for (auto& [group, members] : by_group) out.insert(std::move(members));
  return out;
}

// Random instance with redundancy on odd trials: a split hides the original
// grouping, a plain sample is generically already minimal.
DiscretePovm mixed_instance(const Trial& t, const Tolerances& tol) {
  const int d = dim_for(t);
  const int n = 2 + static_cast<int>(t.seed % 4);
  DiscretePovm a = random_povm(d, n, t.seed, tol);
  if (t.index % 2 == 1) return split_povm(a, 2 + static_cast<int>(t.seed % 3), t.seed + 7, tol);
  return a;
}

std::string check_close(double got, double want, double eps, const char* what) {
  if (std::abs(got - want) <= eps) return {};
  std::ostringstream os;
  os << what << ": got " << got << ", want " << want << " within " << eps;
  return os.str();
}

}  // namespace

std::vector<PropertyResult> run_selftest(const SelftestConfig& cfg) {
  std::vector<PropertyResult> results;
  const Tolerances tol = cfg.tol;
  auto add = [&](const std::string& name,
                 const std::function<std::string(const Trial&)>& body) {
    results.push_back(run_property(cfg, name, body));
  };

  // ---- matops ----

  add("matops.eig_reconstruction", [&](const Trial& t) -> std::string {
    Rng rng(t.seed);
    const int d = 2 + static_cast<int>(rng.next_below(7));
    const HermitianMatrix m = random_hermitian(d, rng);
    const auto eig = eig_hermitian(m);
    CMatrix rebuilt(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Complex s(0.0, 0.0);
        for (int k = 0; k < d; ++k)
          s += eig.eigenvectors(i, k) * eig.eigenvalues[k] *
               std::conj(eig.eigenvectors(j, k));
        rebuilt(i, j) = s;
      }
    const double err = frobenius_distance(rebuilt, m.matrix());
    if (err > 1e-9 * std::max(m.matrix().frobenius_norm(), 1.0))
      return "reconstruction error " + std::to_string(err);
    const CMatrix vtv = eig.eigenvectors.adjoint().matmul(eig.eigenvectors);
    if (frobenius_distance(vtv, CMatrix::identity(d)) > 1e-10)
      return "eigenvectors not unitary";
    return {};
  });

  add("matops.trace_norm_dominates_trace", [&](const Trial& t) -> std::string {
    Rng rng(t.seed);
    const HermitianMatrix m = random_hermitian(2 + static_cast<int>(rng.next_below(5)), rng);
    if (trace_norm(m) + 1e-12 < std::abs(m.trace_real()))
      return "trace norm below |trace|";
    return {};
  });

  add("matops.inv_sqrt_commutes", [&](const Trial& t) -> std::string {
    Rng rng(t.seed);
    const int d = 2 + static_cast<int>(rng.next_below(4));
    CMatrix g(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    CMatrix psd = g.matmul(g.adjoint());
    psd += 0.1 * CMatrix::identity(d);
    const HermitianMatrix m(psd, 1e-8);
    const HermitianMatrix s = inv_sqrt_psd(m, tol.pd);
    const CMatrix sm = s.matrix().matmul(m.matrix());
    if (frobenius_distance(sm, m.matrix().matmul(s.matrix())) > 1e-8)
      return "inv_sqrt does not commute with its argument";
    if (frobenius_distance(sm.matmul(s.matrix()), CMatrix::identity(d)) > 1e-8)
      return "S M S deviates from identity";
    return {};
  });

  // ---- povm-core ----

  add("povm.outcome_distribution_probability", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 7), t.seed, tol);
    const DensityMatrix rho = random_density(d, t.seed + 1, tol);
    const auto p = outcome_distribution(a, rho);
    double sum = 0.0;
    for (double v : p) {
      if (v < 0.0 || v > 1.0) return "probability outside [0,1]";
      sum += v;
    }
    return check_close(sum, 1.0, 1e-9, "distribution sum");
  });

  add("povm.pushforward_completeness", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 3 + static_cast<int>(t.seed % 5), t.seed, tol);
    Rng rng(t.seed + 13);
    const int targets = 1 + static_cast<int>(rng.next_below(3));
    std::map<std::string, std::string> f;
    for (const auto& label : a.labels())
      f[label] = "g" + std::to_string(rng.next_below(targets));
    const DiscretePovm pushed = pushforward(a, f, tol);  // ctor re-validates completeness
    CMatrix sum(d);
    for (int i = 0; i < pushed.size(); ++i) sum += pushed.effect(i).matrix();
    if (frobenius_distance(sum, CMatrix::identity(d)) > tol.comp)
      return "pushforward lost completeness";
    return {};
  });

  add("povm.pivotal_min_eigenvalue", [&](const Trial& t) -> std::string {
    const int d = 1 + t.index % 4;
    const StateEnsemble e = tomographic_ensemble(d, tol);
    const auto eig = eig_hermitian(e.pivotal().matrix());
    const double bound = 1.0 / (static_cast<double>(d) * d) - 1e-9;
    if (eig.eigenvalues.back() < bound)
      return "pivotal min eigenvalue " + std::to_string(eig.eigenvalues.back()) +
             " below " + std::to_string(bound);
    return {};
  });

  add("povm.absolute_continuity", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm base = random_povm(d, 2 + static_cast<int>(t.seed % 4), t.seed, tol);
    std::vector<std::pair<std::string, CMatrix>> outcomes;
    for (int i = 0; i < base.size(); ++i)
      outcomes.emplace_back(base.label(i), base.effect(i).matrix());
    outcomes.emplace_back("null", CMatrix(d));
    const DiscretePovm a(std::move(outcomes), tol);
    const StateEnsemble e = tomographic_ensemble(d, tol);
    for (int x = 0; x < a.size(); ++x) {
      const double p =
          e.pivotal().matrix().matrix().matmul(a.effect(x).matrix()).trace().real();
      const bool vanishing = a.effect(x).matrix().frobenius_norm() <= tol.psd;
      if (p < tol.zero && !vanishing)
        return "outcome \"" + a.label(x) + "\" has zero pivotal mass but nonzero effect";
      if (!vanishing && p <= 0.0) return "positive effect with nonpositive pivotal mass";
    }
    return {};
  });

  // ---- generators ----

  add("generators.split_valid", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 4), t.seed, tol);
    const MarkovMatrix kappa =
        random_markov(2 + static_cast<int>(t.seed % 5), a.size(), t.seed + 3);
    const DiscretePovm b = split_povm(a, kappa, tol);  // ctor validates
    std::vector<std::pair<std::string, CMatrix>> raw;
    for (int i = 0; i < b.size(); ++i) raw.emplace_back(b.label(i), b.effect(i).matrix());
    if (!check_povm(raw, tol).empty()) return "split POVM fails validation";
    return {};
  });

  add("generators.determinism", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const auto a1 = povm_to_json(random_povm(d, 3, t.seed, tol));
    const auto a2 = povm_to_json(random_povm(d, 3, t.seed, tol));
    if (a1 != a2) return "random_povm not deterministic per seed";
    const auto m1 = markov_to_json(random_markov(3, 4, t.seed));
    const auto m2 = markov_to_json(random_markov(3, 4, t.seed));
    if (m1 != m2) return "random_markov not deterministic per seed";
    const auto i1 = instrument_to_json(random_instrument(d, 2, 2, t.seed, tol));
    const auto i2 = instrument_to_json(random_instrument(d, 2, 2, t.seed, tol));
    if (i1 != i2) return "random_instrument not deterministic per seed";
    return {};
  });

  // ---- divergences ----

  add("divergences.monotone_under_postprocessing", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 5), t.seed, tol);
    const MarkovMatrix kappa =
        random_markov(2 + static_cast<int>(t.seed % 4), a.size(), t.seed + 1);
    const DiscretePovm b = apply_markov(kappa, a, tol);
    const DensityMatrix rho = random_density(d, t.seed + 2, tol);
    const DensityMatrix sigma = random_density(d, t.seed + 3, tol);
    for (const auto* gen : {&hellinger_generator(), &chi2_generator()}) {
      const double da = divergence_between_states(*gen, a, rho, sigma);
      const double db = divergence_between_states(*gen, b, rho, sigma);
      if (db > da + 1e-9)
        return gen->tag + " grew under post-processing: " + std::to_string(db) + " > " +
               std::to_string(da);
    }
    return {};
  });

  add("divergences.tv_bounded_by_trace_norm", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 6), t.seed, tol);
    const DensityMatrix rho = random_density(d, t.seed + 2, tol);
    const DensityMatrix sigma = random_density(d, t.seed + 3, tol);
    const double tv = tv_metric(outcome_distribution(a, rho), outcome_distribution(a, sigma));
    const HermitianMatrix diff(rho.matrix().matrix() - sigma.matrix().matrix(), 1e-8);
    if (tv > trace_norm(diff) + 1e-9) return "tv metric exceeds trace-norm bound";
    return {};
  });

  add("divergences.hellinger_range_symmetry", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 6), t.seed, tol);
    const auto p = outcome_distribution(a, random_density(d, t.seed + 2, tol));
    const auto q = outcome_distribution(a, random_density(d, t.seed + 3, tol));
    const double h = f_divergence(hellinger_generator(), p, q);
    if (!(h >= 0.0 && h <= 2.0)) return "hellinger outside [0,2]: " + std::to_string(h);
    if (h != f_divergence(hellinger_generator(), q, p)) return "hellinger not symmetric";
    return {};
  });

  // ---- reduction ----

  add("reduction.idempotent", [&](const Trial& t) -> std::string {
    const DiscretePovm a = mixed_instance(t, tol);
    const ReductionReport once = reduce(a, tol);
    const ReductionReport twice = reduce(*once.reduced, tol);
    if (!strict_isomorphic(*once.reduced, *twice.reduced, tol))
      return "reduce is not idempotent up to strict isomorphism";
    return {};
  });

  add("reduction.reduced_pairwise_independent", [&](const Trial& t) -> std::string {
    const DiscretePovm a = mixed_instance(t, tol);
    if (!is_pairwise_linearly_independent(*reduce(a, tol).reduced, tol))
      return "reduced POVM has proportional or vanishing effects";
    return {};
  });

  add("reduction.unique_up_to_iso", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 4), t.seed, tol);
    const DiscretePovm b = split_povm(a, 2 + static_cast<int>(t.seed % 4), t.seed + 5, tol);
    if (!almost_isomorphic(*reduce(a, tol).reduced, *reduce(b, tol).reduced, tol))
      return "reductions of a POVM and its split are not almost isomorphic";
    return {};
  });

  add("reduction.divergence_conserved", [&](const Trial& t) -> std::string {
    const DiscretePovm a = mixed_instance(t, tol);
    const DiscretePovm reduced = *reduce(a, tol).reduced;
    for (int k = 0; k < 5; ++k) {
      const DensityMatrix rho = random_density(a.dim(), t.seed + 10 + 2 * k, tol);
      const DensityMatrix sigma = random_density(a.dim(), t.seed + 11 + 2 * k, tol);
      const double ha = divergence_between_states(hellinger_generator(), a, rho, sigma);
      const double hr = divergence_between_states(hellinger_generator(), reduced, rho, sigma);
      if (std::abs(ha - hr) > 1e-8)
        return "hellinger changed under reduction by " + std::to_string(ha - hr);
    }
    return {};
  });

  add("reduction.negative_control_lossy_merge", [&](const Trial& t) -> std::string {
    // The deterministic fixture: merging the computational PVM to the
    // trivial POVM must destroy the hellinger distance of the basis states.
    {
      std::vector<std::pair<std::string, CMatrix>> outcomes;
      CMatrix p0(2), p1(2);
      p0(0, 0) = 1.0;
      p1(1, 1) = 1.0;
      outcomes.emplace_back("0", p0);
      outcomes.emplace_back("1", p1);
      const DiscretePovm pvm(std::move(outcomes), tol);
      const DiscretePovm merged =
          pushforward(pvm, {{"0", "m"}, {"1", "m"}}, tol);
      CMatrix r0(2), r1(2);
      r0(0, 0) = 1.0;
      r1(1, 1) = 1.0;
      const DensityMatrix rho(HermitianMatrix(r0), tol);
      const DensityMatrix sigma(HermitianMatrix(r1), tol);
      const double before = divergence_between_states(hellinger_generator(), pvm, rho, sigma);
      const double after =
          divergence_between_states(hellinger_generator(), merged, rho, sigma);
      if (before - after <= 1e-4)
        return "fixture merge failed to lose divergence (drop " +
               std::to_string(before - after) + ")";
    }
    // A random lossy merge must show a macroscopic drop on some state pair.
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 3 + static_cast<int>(t.seed % 3), t.seed, tol);
    std::map<std::string, std::string> merge;
    for (const auto& label : a.labels()) merge[label] = label;
    merge[a.label(0)] = a.label(1);  // non-proportional with probability 1
    const DiscretePovm lossy = pushforward(a, merge, tol);
    double max_drop = 0.0;
    for (int k = 0; k < 20; ++k) {
      const DensityMatrix rho = random_density(d, t.seed + 20 + 2 * k, tol);
      const DensityMatrix sigma = random_density(d, t.seed + 21 + 2 * k, tol);
      const double before = divergence_between_states(hellinger_generator(), a, rho, sigma);
      const double after =
          divergence_between_states(hellinger_generator(), lossy, rho, sigma);
      max_drop = std::max(max_drop, before - after);
    }
    if (max_drop <= 1e-4)
      return "random lossy merge never dropped hellinger above 1e-4 (max " +
             std::to_string(max_drop) + ")";
    return {};
  });

  add("reduction.partition_matches_lsb", [&](const Trial& t) -> std::string {
    const DiscretePovm a = mixed_instance(t, tol);
    const StateEnsemble e = tomographic_ensemble(a.dim(), tol);
    if (label_partition(reduce(a, tol)) != label_partition(reduce_via_lsb(a, e, tol)))
      return "proportionality and likelihood-ratio groupings disagree";
    return {};
  });

  add("reduction.factorization_certificate", [&](const Trial& t) -> std::string {
    const DiscretePovm a = mixed_instance(t, tol);
    const ReductionReport rep = reduce(a, tol);
    for (const auto& [label, group] : rep.groups) {
      const auto& ax = a.effect(label).matrix();
      const auto& g = rep.reduced->effect(group).matrix();
      const double h = rep.h.at(label);
      CMatrix scaled = g;
      scaled *= Complex(h, 0.0);
      const double defect = frobenius_distance(ax, scaled);
      if (defect > tol.prop * ax.trace().real())
        return "factorization defect " + std::to_string(defect) + " at \"" + label + "\"";
    }
    return {};
  });

  // ---- fuzzy-order ----

  add("order.preceq_reflexive", [&](const Trial& t) -> std::string {
    const int d = 2 + t.index % 2;
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 3), t.seed, tol);
    const OrderVerdict v = preceq(a, a, tol);
    if (!v.holds) return "preceq(A, A) failed with residual " + std::to_string(v.residual);
    if (witness_residual(*v.witness, a, a) > tol.lp) return "reflexive witness invalid";
    return {};
  });

  add("order.preceq_transitive_on_chains", [&](const Trial& t) -> std::string {
    const int d = 2 + t.index % 2;
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 2), t.seed, tol);
    const DiscretePovm b = split_povm(a, 2, t.seed + 1, tol);
    const DiscretePovm c = split_povm(b, 2, t.seed + 2, tol);
    // c <= b <= a by construction; the solver must certify c <= a directly.
    if (!preceq(c, a, tol).holds) return "chain split is not below the original";
    if (!preceq(a, c, tol).holds) return "original is not below the chain split";
    return {};
  });

  add("order.witness_valid", [&](const Trial& t) -> std::string {
    const int d = 2 + t.index % 2;
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 3), t.seed, tol);
    const DiscretePovm b = split_povm(a, 2 + static_cast<int>(t.seed % 3), t.seed + 1, tol);
    const OrderVerdict v = preceq(a, b, tol);
    if (!v.holds) return "post-processed POVM not below its split";
    const double res = witness_residual(*v.witness, a, b);
    if (res > tol.lp) return "witness residual " + std::to_string(res) + " above threshold";
    return {};
  });

  add("order.methods_agree", [&](const Trial& t) -> std::string {
    const int d = 2 + t.index % 2;
    const DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 3), t.seed, tol);
    const bool equivalent_pair = t.index % 2 == 0;
    const DiscretePovm b =
        equivalent_pair ? split_povm(a, 2 + static_cast<int>(t.seed % 3), t.seed + 1, tol)
                        : random_povm(d, 2 + static_cast<int>((t.seed >> 3) % 3), t.seed + 2, tol);
    const EquivalenceVerdict lp = equivalent(a, b, EquivMethod::lp, tol);
    const EquivalenceVerdict red = equivalent(a, b, EquivMethod::reduce, tol);
    if (lp.equivalent != red.equivalent) return "lp and reduce equivalence methods disagree";
    if (equivalent_pair && !lp.equivalent) return "split pair not recognized as equivalent";
    return {};
  });

  add("order.reduced_equivalent_to_original", [&](const Trial& t) -> std::string {
    const int d = 2 + t.index % 2;
    DiscretePovm a = random_povm(d, 2 + static_cast<int>(t.seed % 3), t.seed, tol);
    if (t.index % 2 == 1) a = split_povm(a, 2, t.seed + 7, tol);
    if (!equivalent(a, *reduce(a, tol).reduced, EquivMethod::lp, tol).equivalent)
      return "reduction is not lp-equivalent to the original";
    return {};
  });

  add("order.kernel_product_marginal_and_sufficiency", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm b = random_povm(d, 2 + static_cast<int>(t.seed % 4), t.seed, tol);
    const MarkovMatrix kappa =
        random_markov(2 + static_cast<int>(t.seed % 4), b.size(), t.seed + 1);
    const DiscretePovm c = kernel_product(kappa, b, tol);
    std::map<std::string, std::string> pi2;
    for (int x = 0; x < kappa.rows(); ++x)
      for (int y = 0; y < b.size(); ++y)
        pi2[pair_label(kappa.row_labels()[x], b.label(y))] = b.label(y);
    const DiscretePovm marginal = pushforward(c, pi2, tol);
    for (int y = 0; y < b.size(); ++y) {
      const int i = marginal.index_of(b.label(y));
      if (i < 0) return "marginal lost outcome \"" + b.label(y) + "\"";
      const CMatrix diff =
          marginal.effect(i).matrix() - b.effect(y).matrix();
      if (diff.max_abs_entry() > 1e-9) return "marginal over x deviates from B";
    }
    if (!is_sufficient_statistic(c, pi2, tol).holds)
      return "second projection is not sufficient for the kernel product";
    return {};
  });

  // ---- instruments ----

  add("instruments.compose_complete", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const KrausInstrument inst =
        random_instrument(d, 2 + static_cast<int>(t.seed % 2), 1 + static_cast<int>(t.seed % 2),
                          t.seed, tol);
    const DiscretePovm b = random_povm(d, 2 + static_cast<int>(t.seed % 3), t.seed + 1, tol);
    const DiscretePovm c = compose(inst, b, tol);  // ctor checks completeness
    CMatrix sum(d);
    for (int i = 0; i < c.size(); ++i) sum += c.effect(i).matrix();
    if (frobenius_distance(sum, CMatrix::identity(d)) > tol.comp)
      return "composition completeness defect above tolerance";
    return {};
  });

  add("instruments.condition2_invariant_under_equivalence", [&](const Trial& t) -> std::string {
    const int d = 2;
    const bool conserving = t.index % 2 == 0;
    const KrausInstrument inst =
        conserving
            ? KrausInstrument({{"0", {CMatrix::identity(d)}}}, tol)
            : random_instrument(d, 2, 1, t.seed, tol);
    const DiscretePovm b = random_povm(d, 2 + static_cast<int>(t.seed % 2), t.seed + 1, tol);
    const DiscretePovm bsplit = split_povm(b, 2, t.seed + 2, tol);
    const ConservationVerdict v1 = check_conservation(inst, b, 1000000, tol);
    const ConservationVerdict v2 = check_conservation(inst, bsplit, 1000000, tol);
    if (v1.condition2 != v2.condition2)
      return "condition 2 changed under an equivalent replacement of B";
    if (conserving && !v1.condition2) return "identity instrument failed condition 2";
    return {};
  });

  add("instruments.condition1_implies_condition2", [&](const Trial& t) -> std::string {
    const int d = 2;
    const KrausInstrument inst =
        t.index % 2 == 0 ? KrausInstrument({{"0", {CMatrix::identity(d)}}}, tol)
                         : random_instrument(d, 2, 1, t.seed, tol);
    const DiscretePovm b = random_povm(d, 2, t.seed + 1, tol);
    // check_conservation raises ToleranceAmbiguity when the implication
    // breaks; reaching here with condition1 true forces condition2.
    const ConservationVerdict v = check_conservation(inst, b, 1000000, tol);
    const bool condition1 =
        v.condition1.holds_for_projection ||
        (v.condition1.exhaustive_search && *v.condition1.exhaustive_search);
    if (condition1 && !v.condition2) return "condition 1 held without condition 2";
    return {};
  });

  // ---- io ----

  add("io.round_trip_idempotent", [&](const Trial& t) -> std::string {
    const int d = dim_for(t);
    const DiscretePovm a = random_povm(d, 3, t.seed, tol);
    const std::string s1 = povm_to_json(a);
    if (povm_to_json(povm_from_json(s1, tol)) != s1) return "POVM round trip not idempotent";
    const std::string m1 = markov_to_json(random_markov(3, 4, t.seed));
    if (markov_to_json(markov_from_json(m1)) != m1) return "Markov round trip not idempotent";
    const std::string d1 = density_to_json(random_density(d, t.seed, tol));
    if (density_to_json(density_from_json(d1, tol)) != d1)
      return "state round trip not idempotent";
    const std::string e1 = ensemble_to_json(tomographic_ensemble(d, tol));
    if (ensemble_to_json(ensemble_from_json(e1, tol)) != e1)
      return "ensemble round trip not idempotent";
    const std::string i1 = instrument_to_json(random_instrument(d, 2, 2, t.seed, tol));
    if (instrument_to_json(instrument_from_json(i1, tol)) != i1)
      return "instrument round trip not idempotent";
    return {};
  });

  return results;
}

}  // namespace povmkit
