/* Acceptance suite: one line per criterion, exit 1 if any fails.
   Desk scale throughout (dims 2-4, up to 12 outcomes per instance). */

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "povmkit/divergences.hpp"
#include "povmkit/errors.hpp"
#include "povmkit/fuzzy_order.hpp"
#include "povmkit/generators.hpp"
#include "povmkit/instruments.hpp"
#include "povmkit/reduction.hpp"

using namespace povmkit;
using namespace povmkit_tests;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::set<std::set<std::string>> partition_of(const ReductionReport& rep) {
  std::map<std::string, std::set<std::string>> by_group;
  for (const auto& [label, g] : rep.groups) by_group[g].insert(label);
  std::set<std::set<std::string>> out;
  for (auto& [g, members] : by_group) out.insert(std::move(members));
  return out;
}

// Deterministic instance ladders reused by several criteria.
DiscretePovm sample_povm(int trial, uint64_t salt) {
  const int d = 2 + trial % 3;
  const int n = 2 + (trial / 3) % 4;
  return random_povm(d, n, 1000 + 17 * static_cast<uint64_t>(trial) + salt);
}

// --- criterion 1 -----------------------------------------------------------

Check criterion_intro_fixture() {
  Check c;
  const DiscretePovm a = intro_a();
  const DiscretePovm b = intro_b(0.3);
  const ReductionReport rep = reduce(b);
  if (!strict_isomorphic(*rep.reduced, a).has_value())
    c.fail("reduce of the split is not strictly isomorphic to the pair");
  if (!equivalent(a, b, EquivMethod::lp).equivalent) c.fail("lp equivalence failed");
  if (!equivalent(a, b, EquivMethod::reduce).equivalent) c.fail("reduce equivalence failed");
  return c;
}

// --- criteria 2 and 3 ------------------------------------------------------

Check criterion_uniqueness(std::vector<DiscretePovm>& reduced_out) {
  Check c;
  int passes = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const DiscretePovm a = sample_povm(trial, 0);
    const int rows = 2 + trial % 6;  // split widths 2..7
    const DiscretePovm b = split_povm(a, rows, 2000 + 31 * static_cast<uint64_t>(trial));
    const ReductionReport ra = reduce(a);
    const ReductionReport rb = reduce(b);
    if (almost_isomorphic(*ra.reduced, *rb.reduced).has_value())
      ++passes;
    else if (c.ok)
      c.fail("trial " + std::to_string(trial) + ": reductions not almost isomorphic");
    reduced_out.push_back(*ra.reduced);
    reduced_out.push_back(*rb.reduced);
  }
  if (passes != 100) c.fail(std::to_string(passes) + "/100 uniqueness trials passed");
  return c;
}

Check criterion_pairwise_independent(const std::vector<DiscretePovm>& reduced) {
  Check c;
  int passes = 0;
  for (size_t i = 0; i < reduced.size(); ++i) {
    bool ok = is_pairwise_linearly_independent(reduced[i]);
    const ReductionReport again = reduce(reduced[i]);
    ok = ok && strict_isomorphic(reduced[i], *again.reduced).has_value();
    if (ok)
      ++passes;
    else if (c.ok)
      c.fail("reduced POVM " + std::to_string(i) + " not minimal or not idempotent");
  }
  if (passes != static_cast<int>(reduced.size()))
    c.fail(std::to_string(passes) + "/" + std::to_string(reduced.size()) + " passed");
  return c;
}

// --- criterion 4 -----------------------------------------------------------

Check criterion_divergence_conservation() {
  Check c;
  double worst_defect = 0.0;
  double best_drop = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const DiscretePovm plain = random_povm(d, 3 + trial % 3, 3000 + 7 * static_cast<uint64_t>(trial));
    const DiscretePovm a =
        trial % 2 == 0 ? split_povm(plain, 2 + trial % 3, 3500 + trial) : plain;
    const DiscretePovm reduced = *reduce(a).reduced;
    const DensityMatrix rho = random_density(d, 4000 + 11 * static_cast<uint64_t>(trial));
    const DensityMatrix sigma = random_density(d, 4500 + 13 * static_cast<uint64_t>(trial));
    const double ha = divergence_between_states(hellinger_generator(), a, rho, sigma);
    const double hr = divergence_between_states(hellinger_generator(), reduced, rho, sigma);
    worst_defect = std::max(worst_defect, std::abs(ha - hr));

    // negative control: force two non-proportional groups together
    if (reduced.size() >= 2) {
      std::map<std::string, std::string> merge;
      for (const auto& l : reduced.labels()) merge[l] = l;
      merge[reduced.label(0)] = reduced.label(1);
      const DiscretePovm lossy = pushforward(reduced, merge);
      const double hl = divergence_between_states(hellinger_generator(), lossy, rho, sigma);
      best_drop = std::max(best_drop, ha - hl);
    }
  }
  if (worst_defect > 1e-8)
    c.fail("conservation defect " + std::to_string(worst_defect) + " above 1e-8");
  if (best_drop <= 1e-4)
    c.fail("negative control never dropped hellinger by more than 1e-4");
  std::ostringstream os;
  os << "max defect " << worst_defect << ", control drop " << best_drop;
  if (c.ok) c.detail = os.str();
  return c;
}

// --- criterion 5 -----------------------------------------------------------

Check criterion_monotonicity() {
  Check c;
  double worst_slack = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DiscretePovm a = sample_povm(trial, 50);
    const MarkovMatrix kappa =
        random_markov(2 + trial % 5, a.size(), 5000 + 19 * static_cast<uint64_t>(trial));
    const DiscretePovm b = apply_markov(kappa, a);
    const DensityMatrix rho = random_density(a.dim(), 5100 + trial);
    const DensityMatrix sigma = random_density(a.dim(), 5200 + trial);
    const double ha = divergence_between_states(hellinger_generator(), a, rho, sigma);
    const double hb = divergence_between_states(hellinger_generator(), b, rho, sigma);
    worst_slack = std::min(worst_slack, ha - hb);
  }
  if (worst_slack < -1e-9)
    c.fail("hellinger grew under post-processing by " + std::to_string(-worst_slack));
  else
    c.detail = "worst slack " + std::to_string(worst_slack);
  return c;
}

// --- criterion 6 -----------------------------------------------------------

Check criterion_metric_bound() {
  Check c;
  for (int trial = 0; trial < 200; ++trial) {
    const DiscretePovm a = sample_povm(trial, 80);
    const DensityMatrix rho = random_density(a.dim(), 6000 + trial);
    const DensityMatrix sigma = random_density(a.dim(), 6300 + trial);
    const auto p = outcome_distribution(a, rho);
    const auto q = outcome_distribution(a, sigma);
    const HermitianMatrix diff(rho.matrix().matrix() - sigma.matrix().matrix(), 1e-8);
    if (tv_metric(p, q) > trace_norm(diff) + 1e-9) {
      c.fail("trial " + std::to_string(trial) + ": tv exceeds the trace-norm bound");
      break;
    }
    const double h = f_divergence(hellinger_generator(), p, q);
    if (!(h >= 0.0 && h <= 2.0)) {
      c.fail("trial " + std::to_string(trial) + ": hellinger outside [0,2]");
      break;
    }
  }
  return c;
}

// --- criterion 7 -----------------------------------------------------------

Check criterion_lsb_equivalence() {
  Check c;
  int passes = 0;
  std::vector<StateEnsemble> ensembles;
  for (int d = 2; d <= 4; ++d) ensembles.push_back(tomographic_ensemble(d));
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3;
    const DiscretePovm plain = random_povm(d, 2 + trial % 4, 7000 + 23 * static_cast<uint64_t>(trial));
    const DiscretePovm a =
        trial % 2 == 0 ? plain : split_povm(plain, 2 + trial % 3, 7500 + trial);
    const StateEnsemble& e = ensembles[d - 2];
    if (partition_of(reduce(a)) == partition_of(reduce_via_lsb(a, e)))
      ++passes;
    else if (c.ok)
      c.fail("trial " + std::to_string(trial) + ": partitions disagree");
  }
  if (passes != 200) c.fail(std::to_string(passes) + "/200 partition matches");
  return c;
}

// --- criterion 8 -----------------------------------------------------------

Check criterion_order_oracle() {
  Check c;
  const OrderVerdict trine_v = preceq(trine_povm(), computational_pvm(2));
  if (trine_v.holds) c.fail("trine decided below the PVM");
  if (trine_v.residual <= 10.0 * Tolerances{}.lp)
    c.fail("trine residual not macroscopic: " + std::to_string(trine_v.residual));

  const DiscretePovm pvm3 = computational_pvm(3);
  const DiscretePovm coarse = pushforward(pvm3, {{"0", "01"}, {"1", "01"}, {"2", "2"}});
  const OrderVerdict coarse_v = preceq(coarse, pvm3);
  if (!coarse_v.holds) c.fail("PVM coarse-graining not recognized");
  else if (witness_residual(*coarse_v.witness, coarse, pvm3) > Tolerances{}.lp)
    c.fail("coarse-graining witness fails verification");

  int agreements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 2;
    const DiscretePovm a = random_povm(d, 2 + trial % 3, 8000 + 29 * static_cast<uint64_t>(trial));
    const DiscretePovm b = trial % 2 == 0
                               ? split_povm(a, 2 + trial % 2, 8500 + trial)
                               : random_povm(d, 2 + (trial / 2) % 3, 8600 + trial);
    const bool by_lp = equivalent(a, b, EquivMethod::lp).equivalent;
    const bool by_reduce = equivalent(a, b, EquivMethod::reduce).equivalent;
    if (by_lp == by_reduce)
      ++agreements;
    else if (c.ok)
      c.fail("trial " + std::to_string(trial) + ": methods disagree");
    if (trial % 2 == 0 && !by_lp && c.ok)
      c.fail("trial " + std::to_string(trial) + ": split pair not equivalent");
  }
  if (agreements != 100) c.fail(std::to_string(agreements) + "/100 method agreements");
  return c;
}

// --- criterion 9 -----------------------------------------------------------

Check criterion_lemma_joint() {
  Check c;
  int passes = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const DiscretePovm b = random_povm(d, 2 + trial % 3, 9000 + 37 * static_cast<uint64_t>(trial));
    const MarkovMatrix kappa = random_markov(2 + trial % 4, b.size(), 9500 + trial);
    const DiscretePovm joint = kernel_product(kappa, b);
    std::map<std::string, std::string> pi2;
    for (const auto& r : kappa.row_labels())
      for (const auto& y : b.labels()) pi2[pair_label(r, y)] = y;
    bool ok = true;
    const DiscretePovm marginal = pushforward(joint, pi2);
    for (int y = 0; y < b.size() && ok; ++y) {
      const CMatrix diff = marginal.effect(b.label(y)).matrix() - b.effect(y).matrix();
      ok = diff.max_abs_entry() <= 1e-9;
    }
    ok = ok && is_sufficient_statistic(joint, pi2).holds;
    if (ok)
      ++passes;
    else if (c.ok)
      c.fail("trial " + std::to_string(trial) + ": marginal or sufficiency failed");
  }
  if (passes != 50) c.fail(std::to_string(passes) + "/50 joint trials passed");
  return c;
}

// --- criterion 10 ----------------------------------------------------------

Check criterion_conservation() {
  Check c;
  const DiscretePovm pvm = computational_pvm(2);
  const KrausInstrument luders = luders_instrument(pvm);

  const ConservationVerdict same = check_conservation(luders, pvm);
  if (!same.condition1.holds_for_projection)
    c.fail("projection statistic rejected for the PVM measured twice");
  if (!same.condition2) c.fail("condition 2 failed for the PVM measured twice");

  const ConservationVerdict trine = check_conservation(luders, trine_povm());
  if (trine.condition2) c.fail("condition 2 accepted for the trine after a Lueders PVM");

  for (int trial = 0; trial < 20; ++trial) {
    const bool conserving = trial % 2 == 0;
    const KrausInstrument inst =
        conserving ? KrausInstrument({{"0", {CMatrix::identity(2)}}})
                   : random_instrument(2, 2, 1, 10000 + 41 * static_cast<uint64_t>(trial));
    const DiscretePovm b = random_povm(2, 2 + trial % 2, 10500 + trial);
    const DiscretePovm bsplit = split_povm(b, 2, 10800 + trial);
    const ConservationVerdict v1 = check_conservation(inst, b);
    const ConservationVerdict v2 = check_conservation(inst, bsplit);
    if (v1.condition2 != v2.condition2) {
      c.fail("trial " + std::to_string(trial) + ": condition 2 not invariant under split");
      break;
    }
    if (conserving && !v1.condition2) {
      c.fail("trial " + std::to_string(trial) + ": identity instrument lost information");
      break;
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Check()> run;
  };

  std::vector<DiscretePovm> reduced_pool;
  const std::vector<Entry> entries = {
      {1, "intro fixture: reduce and equivalence both ways", criterion_intro_fixture},
      {2, "uniqueness of the minimal sufficient POVM (100 splits)",
       [&] { return criterion_uniqueness(reduced_pool); }},
      {3, "pairwise linear independence and idempotence of reductions",
       [&] { return criterion_pairwise_independent(reduced_pool); }},
      {4, "hellinger conservation under reduction + lossy-merge control",
       criterion_divergence_conservation},
      {5, "hellinger monotone under 100 Markov post-processings", criterion_monotonicity},
      {6, "tv metric bounded by trace norm on 200 triples", criterion_metric_bound},
      {7, "likelihood-ratio grouping equals proportionality grouping (200 POVMs)",
       criterion_lsb_equivalence},
      {8, "order oracle: trine/PVM, coarse-graining, 100 method agreements",
       criterion_order_oracle},
      {9, "kernel products: marginals and sufficiency on 50 draws", criterion_lemma_joint},
      {10, "information conservation for instrument compositions", criterion_conservation},
  };

  int failures = 0;
  for (const auto& entry : entries) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = entry.run();
    } catch (const Error& e) {
      c.ok = false;
      c.detail = std::string("raised: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("criterion %2d [%s] %s (%.0f ms)%s%s\n", entry.id, c.ok ? "PASS" : "FAIL",
                entry.name, ms, c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  if (failures > 0) std::printf("%d criteria FAILED\n", failures);
  else std::printf("all 10 criteria passed\n");
  return failures > 0 ? 1 : 0;
}
