#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "povmkit/errors.hpp"
#include "povmkit/fuzzy_order.hpp"
#include "povmkit/generators.hpp"
#include "povmkit/simplex.hpp"

using namespace povmkit;
using namespace povmkit_tests;

TEST_CASE("simplex solves small known programs") {
  {  // min -x subject to x <= 3
    lp::Problem p;
    p.num_vars = 1;
    p.objective = {-1.0};
    p.rows.push_back({{1.0}, lp::Relation::LessEq, 3.0});
    const auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective_value == doctest::Approx(-3.0));
    CHECK(s.x[0] == doctest::Approx(3.0));
  }
  {  // min x1 + x2 subject to x1 + x2 = 2, x1 - x2 <= 0
    lp::Problem p;
    p.num_vars = 2;
    p.objective = {1.0, 1.0};
    p.rows.push_back({{1.0, 1.0}, lp::Relation::Eq, 2.0});
    p.rows.push_back({{1.0, -1.0}, lp::Relation::LessEq, 0.0});
    const auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective_value == doctest::Approx(2.0));
    CHECK(s.x[0] + s.x[1] == doctest::Approx(2.0));
  }
  {  // infeasible: x <= -1 with x >= 0
    lp::Problem p;
    p.num_vars = 1;
    p.objective = {0.0};
    p.rows.push_back({{1.0}, lp::Relation::LessEq, -1.0});
    CHECK(lp::solve(p).status == lp::Status::Infeasible);
  }
  {  // unbounded: min -x, no constraints binding x
    lp::Problem p;
    p.num_vars = 2;
    p.objective = {-1.0, 0.0};
    p.rows.push_back({{0.0, 1.0}, lp::Relation::LessEq, 1.0});
    CHECK(lp::solve(p).status == lp::Status::Unbounded);
  }
  {  // degenerate ties exercise the Bland tie-break
    lp::Problem p;
    p.num_vars = 2;
    p.objective = {-1.0, -1.0};
    p.rows.push_back({{1.0, 0.0}, lp::Relation::LessEq, 0.0});
    p.rows.push_back({{1.0, 1.0}, lp::Relation::LessEq, 1.0});
    const auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective_value == doctest::Approx(-1.0));
  }
}

TEST_CASE("preceq is reflexive with a valid witness") {
  const DiscretePovm pvm = computational_pvm(2);
  const OrderVerdict v = preceq(pvm, pvm);
  REQUIRE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(v.residual <= Tolerances{}.lp);
  CHECK(witness_residual(*v.witness, pvm, pvm) <= Tolerances{}.lp);
  // distinct projectors admit only the identity kernel
  CHECK((*v.witness)(0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK((*v.witness)(1, 0) == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("the intro pair is ordered both ways with the delta witness") {
  const DiscretePovm a = intro_a();
  const DiscretePovm b = intro_b();
  const OrderVerdict v = preceq(a, b);
  REQUIRE(v.holds);
  // kappa(i | (i', j)) = delta_{i i'} is the unique witness here
  const MarkovMatrix& k = *v.witness;
  REQUIRE(k.rows() == 2);
  REQUIRE(k.cols() == 4);
  for (int col = 0; col < 4; ++col) {
    const int expect_row = k.col_labels()[col][0] == '0' ? 0 : 1;
    CHECK(k(expect_row, col) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(k(1 - expect_row, col) == doctest::Approx(0.0).epsilon(1e-7));
  }
  CHECK(preceq(b, a).holds);
}

TEST_CASE("the trine POVM is not a post-processing of the PVM") {
  const OrderVerdict v = preceq(trine_povm(), computational_pvm(2));
  CHECK_FALSE(v.holds);
  CHECK_FALSE(v.borderline);
  CHECK(v.residual > 10.0 * Tolerances{}.lp);
  // every post-processing of the PVM stays diagonal; the trine off-diagonal
  // sqrt(3)/6 is unreachable, so the defect is macroscopic
  CHECK(v.residual >= 0.1);
  CHECK_FALSE(v.witness.has_value());
}

TEST_CASE("a coarse-graining of the PVM is below the PVM") {
  const DiscretePovm pvm = computational_pvm(3);
  const DiscretePovm coarse =
      pushforward(pvm, {{"0", "01"}, {"1", "01"}, {"2", "2"}});
  const OrderVerdict v = preceq(coarse, pvm);
  REQUIRE(v.holds);
  CHECK(witness_residual(*v.witness, coarse, pvm) <= Tolerances{}.lp);
  // but not the other way around
  CHECK_FALSE(preceq(pvm, coarse).holds);
}

TEST_CASE("the trivial POVM sits at the bottom of the order") {
  const DiscretePovm trivial({{"0", CMatrix::identity(2)}});
  CHECK(preceq(trivial, computational_pvm(2)).holds);
  const OrderVerdict v = preceq(computational_pvm(2), trivial);
  CHECK_FALSE(v.holds);
  CHECK(v.residual == doctest::Approx(0.5).epsilon(1e-6));  // best c*I fit to diag(1,0)
}

TEST_CASE("preceq rejects dimension mismatches") {
  CHECK_THROWS_AS(preceq(computational_pvm(2), computational_pvm(3)), ValidationError);
}

TEST_CASE("equivalence agrees between lp and reduce methods") {
  const DiscretePovm a = intro_a();
  const DiscretePovm b = intro_b();
  const EquivalenceVerdict lp_v = equivalent(a, b, EquivMethod::lp);
  REQUIRE(lp_v.equivalent);
  REQUIRE(lp_v.forward.has_value());
  REQUIRE(lp_v.backward.has_value());
  CHECK(witness_residual(*lp_v.forward, a, b) <= Tolerances{}.lp);
  CHECK(witness_residual(*lp_v.backward, b, a) <= Tolerances{}.lp);

  const EquivalenceVerdict red_v = equivalent(a, b, EquivMethod::reduce);
  CHECK(red_v.equivalent);
  CHECK(red_v.bijection.has_value());

  CHECK(equivalent(a, a, EquivMethod::lp).equivalent);
  CHECK_FALSE(equivalent(computational_pvm(2), trine_povm(), EquivMethod::lp).equivalent);
  CHECK_FALSE(equivalent(computational_pvm(2), trine_povm(), EquivMethod::reduce).equivalent);
}

TEST_CASE("equivalence methods agree on random mixed pairs") {
  for (uint64_t seed : {80ull, 81ull, 82ull, 83ull}) {
    const DiscretePovm a = random_povm(2, 3, seed);
    const DiscretePovm b = seed % 2 == 0 ? split_povm(a, 3, seed + 1)
                                         : random_povm(2, 3, seed + 1);
    const bool by_lp = equivalent(a, b, EquivMethod::lp).equivalent;
    const bool by_reduce = equivalent(a, b, EquivMethod::reduce).equivalent;
    CHECK(by_lp == by_reduce);
    if (seed % 2 == 0) CHECK(by_lp);
  }
}

TEST_CASE("a POVM is equivalent to its reduction by the lp method") {
  const DiscretePovm b = split_povm(random_povm(2, 3, 90), 3, 91);
  CHECK(equivalent(b, *reduce(b).reduced, EquivMethod::lp).equivalent);
}

TEST_CASE("kernel product with the identity kernel is a diagonal embedding") {
  const DiscretePovm b = intro_a();
  const DiscretePovm c = kernel_product(MarkovMatrix::identity(b.labels()), b);
  REQUIRE(c.size() == 4);
  CHECK(frobenius_distance(c.effect(pair_label("0", "0")).matrix(),
                           b.effect("0").matrix()) == 0.0);
  CHECK(c.effect(pair_label("0", "1")).matrix().frobenius_norm() == 0.0);
  CHECK(c.effect(pair_label("1", "0")).matrix().frobenius_norm() == 0.0);
}

TEST_CASE("the lambda kernel product reproduces the intro example") {
  const double lambda = 0.3;
  const MarkovMatrix kappa({"0", "1"}, {"0", "1"},
                           {lambda, lambda, 1.0 - lambda, 1.0 - lambda});
  const DiscretePovm c = kernel_product(kappa, intro_a());
  CHECK(strict_isomorphic(c, intro_b(lambda)).has_value());
}

TEST_CASE("kernel product marginals and sufficiency of the projection") {
  for (uint64_t seed : {100ull, 101ull, 102ull}) {
    const DiscretePovm b = random_povm(2, 3, seed);
    const MarkovMatrix kappa = random_markov(3, 3, seed + 1);
    const DiscretePovm c = kernel_product(kappa, b);

    std::map<std::string, std::string> pi2;
    for (const auto& r : kappa.row_labels())
      for (const auto& y : b.labels()) pi2[pair_label(r, y)] = y;
    const DiscretePovm marginal = pushforward(c, pi2);
    for (int y = 0; y < b.size(); ++y) {
      const CMatrix diff = marginal.effect(b.label(y)).matrix() - b.effect(y).matrix();
      CHECK(diff.max_abs_entry() <= 1e-9);
    }
    CHECK(is_sufficient_statistic(c, pi2).holds);

    // marginal over y is the post-processed POVM
    std::map<std::string, std::string> pi1;
    for (const auto& r : kappa.row_labels())
      for (const auto& y : b.labels()) pi1[pair_label(r, y)] = r;
    const DiscretePovm coarse = pushforward(c, pi1);
    const DiscretePovm direct = apply_markov(kappa, b);
    for (int x = 0; x < direct.size(); ++x) {
      const CMatrix diff =
          coarse.effect(direct.label(x)).matrix() - direct.effect(x).matrix();
      CHECK(diff.max_abs_entry() <= 1e-9);
    }
  }
}

TEST_CASE("kernel product validates its label contract") {
  const MarkovMatrix kappa({"0", "1"}, {"a", "b"}, {0.5, 0.5, 0.5, 0.5});
  CHECK_THROWS_AS(kernel_product(kappa, intro_a()), ValidationError);
}

TEST_CASE("preorder transitivity along split chains") {
  const DiscretePovm a = random_povm(2, 2, 110);
  const DiscretePovm b = split_povm(a, 2, 111);
  const DiscretePovm c = split_povm(b, 2, 112);
  CHECK(preceq(c, a).holds);
  CHECK(preceq(a, c).holds);
}
