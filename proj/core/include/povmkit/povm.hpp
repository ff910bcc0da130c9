#ifndef POVMKIT_POVM_HPP
#define POVMKIT_POVM_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "povmkit/complex_matrix.hpp"
#include "povmkit/tolerances.hpp"

namespace povmkit {

/* One POVM element: PSD within psd tolerance, operator norm <= 1 + psd. */
class Effect {
 public:
  Effect(HermitianMatrix m, const Tolerances& tol = {});
  const HermitianMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }
  double trace() const { return m_.trace_real(); }

 private:
  HermitianMatrix m_;
};

struct PovmViolation {
  std::string axiom;   // "not PSD", "completeness violated", "dimension mismatch", ...
  double magnitude;    // size of the violation
  std::string detail;  // which outcome, which eigenvalue, ...
};

/* Labeled finite family of effects summing to the identity. Instances are
   validated on construction; use check_povm for non-throwing diagnostics. */
class DiscretePovm {
 public:
  DiscretePovm(std::vector<std::pair<std::string, CMatrix>> outcomes,
               const Tolerances& tol = {});

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  const HermitianMatrix& effect(int i) const { return effects_[i].matrix(); }
  const HermitianMatrix& effect(const std::string& label) const;
  int index_of(const std::string& label) const;  // -1 if absent

 private:
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<Effect> effects_;
};

// Non-throwing axiom check; empty result means valid.
std::vector<PovmViolation> check_povm(
    const std::vector<std::pair<std::string, CMatrix>>& outcomes,
    const Tolerances& tol = {});

// Throwing form, diagnostics folded into the ValidationError message.
DiscretePovm validate_povm(std::vector<std::pair<std::string, CMatrix>> outcomes,
                           const Tolerances& tol = {});

class DensityMatrix {
 public:
  DensityMatrix(HermitianMatrix m, const Tolerances& tol = {});
  const HermitianMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  HermitianMatrix m_;
};

// p(x) = tr[rho A(x)], clamped to [0,1]; sums to 1 within tolerance.
std::vector<double> outcome_distribution(const DiscretePovm& a, const DensityMatrix& rho);

/* Finite stand-in for the paper-style dense state sequence: a weighted
   family of states whose mixture (the pivotal state) is positive definite.
   informationally_complete is set when the states span the Hermitian
   matrices, i.e. the Hilbert-Schmidt Gram matrix has full rank dim^2. */
class StateEnsemble {
 public:
  StateEnsemble(std::vector<DensityMatrix> states, std::vector<double> weights,
                const Tolerances& tol = {});

  int dim() const { return states_.empty() ? 0 : states_[0].dim(); }
  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<DensityMatrix>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }
  const DensityMatrix& pivotal() const { return pivotal_; }
  bool informationally_complete() const { return informationally_complete_; }

 private:
  std::vector<DensityMatrix> states_;
  std::vector<double> weights_;
  DensityMatrix pivotal_;
  bool informationally_complete_;
};

/* The canonical tomographic ensemble: dim^2 pure states (basis projectors
   plus the +/i superpositions of each basis pair) with uniform weights. The
   pivotal mixture is positive definite with min eigenvalue >= 1/dim^2. */
StateEnsemble tomographic_ensemble(int dim, const Tolerances& tol = {});

// A_f(y) = sum of A(x) over x with f(x) = y; output labels in order of first use.
DiscretePovm pushforward(const DiscretePovm& a,
                         const std::map<std::string, std::string>& f,
                         const Tolerances& tol = {});

// "(x,y)" pair labels used by all product-space constructions.
std::string pair_label(const std::string& x, const std::string& y);

}  // namespace povmkit

#endif
