#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "povmkit/divergences.hpp"
#include "povmkit/errors.hpp"
#include "povmkit/generators.hpp"
#include "povmkit/reduction.hpp"

using namespace povmkit;
using namespace povmkit_tests;

namespace {

/* Independent proportionality oracle: least-squares scalar fit
   c = tr(XY)/tr(YY) and a residual check, no trace normalization anywhere.
   Partitions a POVM by exhaustive pairwise comparison. */
bool oracle_proportional(const CMatrix& x, const CMatrix& y) {
  const double yy = y.matmul(y.adjoint()).trace().real();
  if (yy <= 0.0) return false;
  const double c = x.matmul(y.adjoint()).trace().real() / yy;
  if (c <= 0.0) return false;
  CMatrix rebuilt = y;
  rebuilt *= Complex(c, 0.0);
  return frobenius_distance(x, rebuilt) <= 1e-8 * std::max(1.0, x.frobenius_norm());
}

std::set<std::set<std::string>> oracle_partition(const DiscretePovm& a) {
  std::vector<int> group(a.size(), -1);
  int next = 0;
  for (int i = 0; i < a.size(); ++i) {
    if (a.effect(i).trace_real() < 1e-10) continue;  // oracle drops vanishing outcomes too
    if (group[i] < 0) group[i] = next++;
    for (int j = i + 1; j < a.size(); ++j) {
      if (a.effect(j).trace_real() < 1e-10) continue;
      if (group[j] < 0 && oracle_proportional(a.effect(i).matrix(), a.effect(j).matrix()))
        group[j] = group[i];
    }
  }
  std::map<int, std::set<std::string>> sets;
  for (int i = 0; i < a.size(); ++i)
    if (group[i] >= 0) sets[group[i]].insert(a.label(i));
  std::set<std::set<std::string>> out;
  for (auto& [g, members] : sets) out.insert(std::move(members));
  return out;
}

std::set<std::set<std::string>> report_partition(const ReductionReport& rep) {
  std::map<std::string, std::set<std::string>> by_group;
  for (const auto& [label, g] : rep.groups) by_group[g].insert(label);
  std::set<std::set<std::string>> out;
  for (auto& [g, members] : by_group) out.insert(std::move(members));
  return out;
}

}  // namespace

TEST_CASE("reduce collapses the intro split to the original pair") {
  const ReductionReport rep = reduce(intro_b());
  REQUIRE(rep.reduced.has_value());
  CHECK(rep.reduced->size() == 2);
  CHECK(rep.dropped.empty());
  CHECK(rep.groups.at("00") == rep.groups.at("01"));
  CHECK(rep.groups.at("10") == rep.groups.at("11"));
  CHECK(rep.groups.at("00") != rep.groups.at("10"));
  // group labels are the lexicographically smallest members
  CHECK(rep.groups.at("00") == "00");
  CHECK(rep.groups.at("10") == "10");
  // h(x) = tr A(x) / tr(group sum)
  CHECK(rep.h.at("00") == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rep.h.at("01") == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(strict_isomorphic(*rep.reduced, intro_a()).has_value());
}

TEST_CASE("reduce leaves the computational PVM alone") {
  const DiscretePovm pvm = computational_pvm(3);
  const ReductionReport rep = reduce(pvm);
  CHECK(rep.reduced->size() == 3);
  CHECK(strict_isomorphic(*rep.reduced, pvm).has_value());
}

TEST_CASE("reduce drops vanishing outcomes into the report") {
  DiscretePovm a({{"0", diag({1.0, 0.0})}, {"1", diag({0.0, 1.0})}, {"z", CMatrix(2)}});
  const ReductionReport rep = reduce(a);
  REQUIRE(rep.dropped.size() == 1);
  CHECK(rep.dropped[0] == "z");
  CHECK(rep.groups.count("z") == 0);
  CHECK(rep.reduced->size() == 2);
}

TEST_CASE("reduce of random splits agrees with the brute-force oracle") {
  for (uint64_t seed : {10ull, 20ull, 30ull, 40ull}) {
    const DiscretePovm a = random_povm(2, 3, seed);
    const DiscretePovm b = split_povm(a, 7, seed + 1);
    CHECK(report_partition(reduce(b)) == oracle_partition(b));
    CHECK(report_partition(reduce(a)) == oracle_partition(a));
    CHECK(almost_isomorphic(*reduce(a).reduced, *reduce(b).reduced).has_value());
  }
}

TEST_CASE("lsb vectors of the trivial uniform POVM are all ones") {
  CMatrix third = CMatrix::identity(2);
  third *= Complex(1.0 / 3.0, 0.0);
  const DiscretePovm a({{"0", third}, {"1", third}, {"2", third}});
  const auto vecs = lsb_vectors(a, tomographic_ensemble(2));
  for (const auto& v : vecs)
    for (double c : v) CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lsb vectors of the dim-2 PVM, frozen by direct evaluation") {
  const auto vecs = lsb_vectors(computational_pvm(2), tomographic_ensemble(2));
  REQUIRE(vecs.size() == 2);
  // effect |0><0|: tr(rho_i A) = (1, 0, 1/2, 1/2), pivotal mass 1/2
  CHECK(vecs[0][0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(vecs[0][1] == doctest::Approx(0.0));
  CHECK(vecs[0][2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vecs[0][3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vecs[1][0] == doctest::Approx(0.0));
  CHECK(vecs[1][1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lsb vectors of the intro split take exactly two values") {
  const auto vecs = lsb_vectors(intro_b(), tomographic_ensemble(2));
  REQUIRE(vecs.size() == 4);
  // ratios for A0 = diag(0.6, 0.1): (0.6, 0.1, 0.35, 0.35) / 0.35
  CHECK(vecs[0][0] == doctest::Approx(12.0 / 7.0).epsilon(1e-12));
  CHECK(vecs[0][1] == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
  CHECK(vecs[0][2] == doctest::Approx(1.0).epsilon(1e-12));
  // proportional outcomes share the vector exactly up to roundoff
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(vecs[i][0] - (i < 2 ? 12.0 / 7.0 : 8.0 / 13.0)) < 1e-12);
  // the weighted average of every vector is 1
  for (const auto& v : vecs) {
    double avg = 0.0;
    for (double c : v) avg += 0.25 * c;
    CHECK(avg == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("lsb grouping equals proportionality grouping") {
  const StateEnsemble e2 = tomographic_ensemble(2);
  CHECK(report_partition(reduce_via_lsb(intro_b(), e2)) ==
        report_partition(reduce(intro_b())));

  const DiscretePovm trivial({{"0", CMatrix::identity(2)}});
  const ReductionReport rep = reduce_via_lsb(trivial, e2);
  CHECK(rep.reduced->size() == 1);

  for (uint64_t seed : {3ull, 4ull, 5ull}) {
    const DiscretePovm a = random_povm(3, 4, seed);
    const DiscretePovm b = split_povm(a, 3, seed + 2);
    const StateEnsemble e3 = tomographic_ensemble(3);
    CHECK(report_partition(reduce_via_lsb(b, e3)) == report_partition(reduce(b)));
  }
}

TEST_CASE("lsb vectors reject a vanishing outcome") {
  DiscretePovm a({{"0", diag({1.0, 0.0})}, {"1", diag({0.0, 1.0})}, {"z", CMatrix(2)}});
  CHECK_THROWS_AS(lsb_vectors(a, tomographic_ensemble(2)), ValidationError);
}

TEST_CASE("pairwise linear independence") {
  CHECK(is_pairwise_linearly_independent(computational_pvm(2)));
  CHECK_FALSE(is_pairwise_linearly_independent(intro_b()));
  CMatrix half = CMatrix::identity(2);
  half *= Complex(0.5, 0.0);
  CHECK_FALSE(is_pairwise_linearly_independent(DiscretePovm({{"0", half}, {"1", half}})));
}

TEST_CASE("sufficiency certificates") {
  const DiscretePovm b = intro_b();
  std::map<std::string, std::string> identity;
  for (const auto& l : b.labels()) identity[l] = l;
  CHECK(is_sufficient_statistic(b, identity).holds);

  const auto cert = is_sufficient_statistic(
      b, {{"00", "0"}, {"01", "0"}, {"10", "1"}, {"11", "1"}});
  REQUIRE(cert.holds);
  CHECK(cert.h.at("00") == doctest::Approx(0.3 * 0.7).epsilon(1e-12));  // tr(0.3 A0)
  CHECK(cert.fiber_g.at("0").trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  // h(x) G(T(x)) rebuilds the effect
  CMatrix rebuilt = cert.fiber_g.at("0").matrix();
  rebuilt *= Complex(cert.h.at("00"), 0.0);
  CHECK(frobenius_distance(rebuilt, b.effect("00").matrix()) <= 1e-10);

  std::map<std::string, std::string> constant{{"0", "c"}, {"1", "c"}};
  const auto lossy = is_sufficient_statistic(computational_pvm(2), constant);
  CHECK_FALSE(lossy.holds);
  CHECK_FALSE(lossy.failure.empty());
}

TEST_CASE("strict isomorphism finds label permutations and size obstructions") {
  const DiscretePovm a = intro_a();
  const DiscretePovm permuted({{"1", diag({0.6, 0.1})}, {"0", diag({0.4, 0.9})}});
  const auto bij = strict_isomorphic(a, permuted);
  REQUIRE(bij.has_value());
  for (const auto& [from, to] : *bij) CHECK(from != to);  // the swap

  CHECK(strict_isomorphic(*reduce(intro_b()).reduced, intro_a()).has_value());
  CHECK_FALSE(strict_isomorphic(intro_a(), trine_povm()).has_value());
  CHECK_FALSE(strict_isomorphic(intro_a(), computational_pvm(3)).has_value());
}

TEST_CASE("strict isomorphism reports ambiguous matchings") {
  const double eps = Tolerances{}.iso;
  const DiscretePovm a(
      {{"0", diag({0.5, 0.5})}, {"1", diag({0.5, 0.5})}});
  const DiscretePovm b({{"0", diag({0.5 + 0.6 * eps, 0.5 - 0.6 * eps})},
                        {"1", diag({0.5 - 0.6 * eps, 0.5 + 0.6 * eps})}});
  CHECK_THROWS_AS(strict_isomorphic(a, b), ToleranceAmbiguity);
}

TEST_CASE("almost isomorphism ignores vanishing outcomes") {
  const DiscretePovm a = intro_a();
  const DiscretePovm padded(
      {{"0", diag({0.6, 0.1})}, {"1", diag({0.4, 0.9})}, {"z", CMatrix(2)}});
  CHECK_FALSE(strict_isomorphic(a, padded).has_value());  // counts differ
  CHECK(almost_isomorphic(a, padded).has_value());
  CHECK_FALSE(almost_isomorphic(computational_pvm(2), trine_povm()).has_value());
}

TEST_CASE("reduce is idempotent up to strict isomorphism") {
  for (uint64_t seed : {50ull, 51ull}) {
    const DiscretePovm b = split_povm(random_povm(2, 3, seed), 4, seed + 1);
    const ReductionReport once = reduce(b);
    const ReductionReport twice = reduce(*once.reduced);
    CHECK(strict_isomorphic(*once.reduced, *twice.reduced).has_value());
    CHECK(is_pairwise_linearly_independent(*once.reduced));
  }
}

TEST_CASE("factorization certificate holds for every input outcome") {
  const DiscretePovm b = split_povm(random_povm(3, 3, 60), 4, 61);
  const ReductionReport rep = reduce(b);
  for (const auto& [label, group] : rep.groups) {
    CMatrix scaled = rep.reduced->effect(group).matrix();
    scaled *= Complex(rep.h.at(label), 0.0);
    CHECK(frobenius_distance(b.effect(label).matrix(), scaled) <=
          Tolerances{}.prop * b.effect(label).trace_real());
  }
}

TEST_CASE("a borderline proportionality chain raises tolerance ambiguity") {
  // Five effects marching away from diag(0.1, 0.1) in steps of 0.9*prop in
  // normalized distance: consecutive pairs merge, but the first member ends
  // 3.6*prop from the representative.
  const double prop = Tolerances{}.prop;
  const double step = 0.9 * prop * 0.2 / std::sqrt(2.0);
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  CMatrix total(2);
  for (int k = 0; k < 5; ++k) {
    CMatrix e = diag({0.1 + k * step, 0.1 - k * step});
    total += e;
    outcomes.emplace_back("c" + std::to_string(k), std::move(e));
  }
  outcomes.emplace_back("rest", CMatrix::identity(2) - total);
  const DiscretePovm chain(std::move(outcomes));
  CHECK_THROWS_AS(reduce(chain), ToleranceAmbiguity);
}

TEST_CASE("reduction preserves hellinger distances, lossy merges do not") {
  const DiscretePovm b = split_povm(random_povm(2, 3, 70), 5, 71);
  const DiscretePovm reduced = *reduce(b).reduced;
  double max_conservation_defect = 0.0;
  double max_drop_after_merge = 0.0;

  std::map<std::string, std::string> merge;  // joins the first two groups
  const DiscretePovm base = *reduce(b).reduced;
  for (const auto& l : base.labels()) merge[l] = l;
  merge[base.label(0)] = base.label(1);
  const DiscretePovm lossy = pushforward(base, merge);

  for (uint64_t seed = 200; seed < 220; ++seed) {
    const DensityMatrix rho = random_density(2, seed);
    const DensityMatrix sigma = random_density(2, seed + 1000);
    const double hb = divergence_between_states(hellinger_generator(), b, rho, sigma);
    const double hr = divergence_between_states(hellinger_generator(), reduced, rho, sigma);
    const double hl = divergence_between_states(hellinger_generator(), lossy, rho, sigma);
    max_conservation_defect = std::max(max_conservation_defect, std::abs(hb - hr));
    max_drop_after_merge = std::max(max_drop_after_merge, hb - hl);
  }
  CHECK(max_conservation_defect <= 1e-8);
  CHECK(max_drop_after_merge > 1e-4);
}
