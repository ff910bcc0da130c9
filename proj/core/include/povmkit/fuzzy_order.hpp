#ifndef POVMKIT_FUZZY_ORDER_HPP
#define POVMKIT_FUZZY_ORDER_HPP

#include <optional>
#include <string>

#include "povmkit/markov.hpp"
#include "povmkit/povm.hpp"
#include "povmkit/reduction.hpp"

namespace povmkit {

/* Verdict of the post-processing order A <= B. residual is the smallest
   achievable max-norm defect of sum_y kappa(x|y)B(y) = A(x), recomputed
   from the returned kernel independently of the solver; holds iff
   residual <= lp, borderline iff residual lands in (lp, 10*lp]. */
struct OrderVerdict {
  bool holds = false;
  bool borderline = false;
  double residual = 0.0;
  std::optional<MarkovMatrix> witness;
};

/* Decides whether A is a classical post-processing of B by solving the
   Markov-matrix feasibility program: variables kappa(x|y) >= 0, column sums
   one, every entry equation within a free slack s, minimize s. */
OrderVerdict preceq(const DiscretePovm& a, const DiscretePovm& b, const Tolerances& tol = {});

// Coarse-grained POVM sum_y kappa(x|y) B(y); labels are the kernel rows.
DiscretePovm apply_markov(const MarkovMatrix& kappa, const DiscretePovm& b,
                          const Tolerances& tol = {});

// Max-norm defect of the reconstruction, for independent witness checks.
double witness_residual(const MarkovMatrix& kappa, const DiscretePovm& a,
                        const DiscretePovm& b);

enum class EquivMethod { lp, reduce };

struct EquivalenceVerdict {
  bool equivalent = false;
  bool borderline = false;
  EquivMethod method = EquivMethod::lp;
  std::optional<MarkovMatrix> forward;   // lp evidence: A from B
  std::optional<MarkovMatrix> backward;  // lp evidence: B from A
  std::optional<Bijection> bijection;    // reduce evidence
};

/* lp: feasibility both ways, witnesses as evidence. reduce: minimal
   sufficient reductions almost isomorphic, bijection as evidence. */
EquivalenceVerdict equivalent(const DiscretePovm& a, const DiscretePovm& b,
                              EquivMethod method, const Tolerances& tol = {});

/* Joint POVM of a kernel applied after B: C(x,y) = kappa(x|y) B(y) on pair
   labels. Marginal over x reproduces B; the second projection is a
   sufficient statistic for the product. */
DiscretePovm kernel_product(const MarkovMatrix& kappa, const DiscretePovm& b,
                            const Tolerances& tol = {});

}  // namespace povmkit

#endif
