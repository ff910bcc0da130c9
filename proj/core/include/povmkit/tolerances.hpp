#ifndef POVMKIT_TOLERANCES_HPP
#define POVMKIT_TOLERANCES_HPP

namespace povmkit {

/* Every floating-point threshold used by the library lives here.
   Operations take a Tolerances record (defaulting to this one) instead
   of scattering magic epsilons. */
struct Tolerances {
  double herm = 1e-10;  // relative Hermiticity defect accepted before symmetrization
  double pd = 1e-9;     // smallest eigenvalue accepted as "positive definite"
  double psd = 1e-9;    // PSD slack for effects and density matrices
  double comp = 1e-8;   // Frobenius defect of the completeness sum
  double zero = 1e-10;  // effect trace below which an outcome counts as vanishing
  double prop = 1e-8;   // Frobenius distance between trace-normalized effects
  double lsb = 1e-7;    // max-norm distance between likelihood-ratio vectors
  double lp = 1e-7;     // feasibility threshold for Markov-matrix programs
  double iso = 1e-7;    // Frobenius distance for isomorphism matching
};

inline constexpr double kBorderlineFactor = 10.0;  // residual in (lp, 10*lp] is "borderline"

}  // namespace povmkit

#endif
