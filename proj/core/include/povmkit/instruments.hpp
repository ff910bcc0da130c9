#ifndef POVMKIT_INSTRUMENTS_HPP
#define POVMKIT_INSTRUMENTS_HPP

#include <cstdint>
#include <optional>

#include "povmkit/fuzzy_order.hpp"
#include "povmkit/instruments_types.hpp"
#include "povmkit/povm.hpp"
#include "povmkit/reduction.hpp"

namespace povmkit {

// Heisenberg action of one outcome: sum_k K^dag a K. Positivity preserving.
HermitianMatrix heisenberg_apply(const KrausInstrument& inst, const std::string& outcome,
                                 const HermitianMatrix& a);

// The instrument's own POVM: x -> I_x(I).
DiscretePovm instrument_povm(const KrausInstrument& inst, const Tolerances& tol = {});

// Single-Kraus instrument K_x = sqrt(A(x)).
KrausInstrument luders_instrument(const DiscretePovm& a, const Tolerances& tol = {});

/* Joint POVM of the instrument followed by B: C(x,y) = I_x(B(y)) on pair
   labels, x-major. Complete because the instrument is normalized and B is
   complete. */
DiscretePovm compose(const KrausInstrument& inst, const DiscretePovm& b,
                     const Tolerances& tol = {});

struct Condition1Result {
  bool holds_for_projection = false;
  std::optional<bool> exhaustive_search;  // nullopt = not attempted (size guard)
};

struct ConservationVerdict {
  Condition1Result condition1;
  bool condition2 = false;
  std::optional<Bijection> reduce_bijection;  // condition2 evidence
  std::optional<MarkovMatrix> lp_forward;     // cross-check evidence when run
  std::optional<MarkovMatrix> lp_backward;
};

/* Information conservation for the composition C = inst * B.
   condition2: C equivalent to B (reduce method, LP cross-checked on small
   instances). condition1: first the canonical second projection, then - if
   that fails and |B|^(|inst|*|B|) <= exhaustive_limit - a search over all
   statistics onto B's outcome space. condition1 implies condition2; an
   instance violating the implication raises ToleranceAmbiguity. */
ConservationVerdict check_conservation(const KrausInstrument& inst, const DiscretePovm& b,
                                       uint64_t exhaustive_limit = 1000000,
                                       const Tolerances& tol = {});

}  // namespace povmkit

#endif
