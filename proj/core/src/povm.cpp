/* Discrete POVMs, density matrices and tomographic ensembles. */

#include "povmkit/povm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "povmkit/errors.hpp"

namespace povmkit {

Effect::Effect(HermitianMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  const auto eig = eig_hermitian(m_);
  if (!eig.eigenvalues.empty()) {
    if (eig.eigenvalues.back() < -tol.psd) {
      std::ostringstream os;
      os << "effect not PSD: min eigenvalue " << eig.eigenvalues.back();
      throw ValidationError(os.str());
    }
    if (eig.eigenvalues.front() > 1.0 + tol.psd) {
      std::ostringstream os;
      os << "effect operator norm exceeds 1: max eigenvalue " << eig.eigenvalues.front();
      throw ValidationError(os.str());
    }
  }
}

std::vector<PovmViolation> check_povm(
    const std::vector<std::pair<std::string, CMatrix>>& outcomes, const Tolerances& tol) {
  std::vector<PovmViolation> out;
  if (outcomes.empty()) {
    out.push_back({"empty", 0.0, "a POVM needs at least one outcome"});
    return out;
  }
  const int dim = outcomes.front().second.dim();
  if (dim < 1) out.push_back({"dimension mismatch", 0.0, "dimension must be positive"});

  std::set<std::string> seen;
  for (const auto& [label, m] : outcomes) {
    if (!seen.insert(label).second)
      out.push_back({"duplicate label", 0.0, "label \"" + label + "\" appears twice"});
    if (m.dim() != dim) {
      out.push_back({"dimension mismatch", static_cast<double>(m.dim()),
                     "outcome \"" + label + "\" has dim " + std::to_string(m.dim()) +
                         ", expected " + std::to_string(dim)});
      continue;
    }
    if (!m.all_finite()) {
      out.push_back({"non-finite entry", 0.0, "outcome \"" + label + "\""});
      continue;
    }
    try {
      HermitianMatrix h(m, tol.herm);
      const auto eig = eig_hermitian(h);
      if (eig.eigenvalues.back() < -tol.psd)
        out.push_back({"not PSD", -eig.eigenvalues.back(),
                       "outcome \"" + label + "\": min eigenvalue " +
                           std::to_string(eig.eigenvalues.back())});
      if (eig.eigenvalues.front() > 1.0 + tol.psd)
        out.push_back({"effect norm exceeds 1", eig.eigenvalues.front() - 1.0,
                       "outcome \"" + label + "\": max eigenvalue " +
                           std::to_string(eig.eigenvalues.front())});
    } catch (const ValidationError& e) {
      out.push_back({"not Hermitian", 0.0, "outcome \"" + label + "\": " + e.what()});
    }
  }
  if (!out.empty()) return out;

  CMatrix sum(dim);
  for (const auto& [label, m] : outcomes) sum += m;
  const double defect = frobenius_distance(sum, CMatrix::identity(dim));
  if (defect > tol.comp)
    out.push_back({"completeness violated", defect,
                   "||sum of effects - I||_F = " + std::to_string(defect)});
  return out;
}

DiscretePovm::DiscretePovm(std::vector<std::pair<std::string, CMatrix>> outcomes,
                           const Tolerances& tol) {
  auto violations = check_povm(outcomes, tol);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid POVM:";
    for (const auto& v : violations) os << " [" << v.axiom << "] " << v.detail << ";";
    throw ValidationError(os.str());
  }
  dim_ = outcomes.front().second.dim();
  labels_.reserve(outcomes.size());
  effects_.reserve(outcomes.size());
  for (auto& [label, m] : outcomes) {
    labels_.push_back(std::move(label));
    effects_.emplace_back(HermitianMatrix(m, tol.herm), tol);
  }
}

const HermitianMatrix& DiscretePovm::effect(const std::string& label) const {
  const int i = index_of(label);
  if (i < 0) throw ValidationError("unknown outcome label \"" + label + "\"");
  return effects_[i].matrix();
}

int DiscretePovm::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

DiscretePovm validate_povm(std::vector<std::pair<std::string, CMatrix>> outcomes,
                           const Tolerances& tol) {
  return DiscretePovm(std::move(outcomes), tol);
}

DensityMatrix::DensityMatrix(HermitianMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  if (!is_psd(m_, tol.psd)) throw ValidationError("density matrix not PSD");
  const double tr = m_.trace_real();
  if (std::abs(tr - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " deviates from 1";
    throw ValidationError(os.str());
  }
}

std::vector<double> outcome_distribution(const DiscretePovm& a, const DensityMatrix& rho) {
  if (a.dim() != rho.dim()) throw ValidationError("dimension mismatch between POVM and state");
  std::vector<double> p(a.size());
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double v = trace_product(rho.matrix().matrix(), a.effect(i).matrix()).real();
    if (v < -1e-10 || v > 1.0 + 1e-10) {
      std::ostringstream os;
      os << "outcome probability " << v << " outside [0,1]";
      throw ValidationError(os.str());
    }
    p[i] = std::clamp(v, 0.0, 1.0);
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "outcome distribution sums to " << sum;
    throw ValidationError(os.str());
  }
  return p;
}

namespace {

// Real Hilbert-Schmidt Gram matrix of the states, rank via Jacobi.
bool gram_has_full_rank(const std::vector<DensityMatrix>& states, int dim) {
  const int m = static_cast<int>(states.size());
  CMatrix gram(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gram(i, j) =
          trace_product(states[i].matrix().matrix(), states[j].matrix().matrix()).real();
  const auto eig = eig_hermitian(HermitianMatrix(gram, 1e-8));
  const double cutoff = 1e-8 * std::max(eig.eigenvalues.front(), 1e-300);
  int rank = 0;
  for (double l : eig.eigenvalues)
    if (l > cutoff) ++rank;
  return rank == dim * dim;
}

}  // namespace

StateEnsemble::StateEnsemble(std::vector<DensityMatrix> states, std::vector<double> weights,
                             const Tolerances& tol)
    : states_(std::move(states)),
      weights_(std::move(weights)),
      pivotal_(HermitianMatrix::identity(1)),
      informationally_complete_(false) {
  if (states_.empty() || states_.size() != weights_.size())
    throw ValidationError("ensemble needs matching nonempty states and weights");
  const int d = states_[0].dim();
  double wsum = 0.0;
  for (double w : weights_) {
    if (w <= 0.0) throw ValidationError("ensemble weights must be positive");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw ValidationError("ensemble weights must sum to 1");

  CMatrix mix(d);
  for (size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].dim() != d) throw ValidationError("ensemble states disagree on dimension");
    mix += weights_[i] * states_[i].matrix().matrix();
  }
  pivotal_ = DensityMatrix(HermitianMatrix(mix, tol.herm), tol);
  const auto eig = eig_hermitian(pivotal_.matrix());
  if (eig.eigenvalues.back() <= 0.0)
    throw ValidationError("pivotal state is not strictly positive definite");
  informationally_complete_ = gram_has_full_rank(states_, d);
}

StateEnsemble tomographic_ensemble(int dim, const Tolerances& tol) {
  if (dim < 1) throw ValidationError("ensemble dimension must be >= 1");
  std::vector<DensityMatrix> states;
  states.reserve(static_cast<size_t>(dim) * dim);

  for (int j = 0; j < dim; ++j) {
    CMatrix m(dim);
    m(j, j) = 1.0;
    states.emplace_back(HermitianMatrix(m), tol);
  }
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      CMatrix plus(dim);  // (|j> + |k>)(<j| + <k|) / 2
      plus(j, j) = 0.5;
      plus(k, k) = 0.5;
      plus(j, k) = 0.5;
      plus(k, j) = 0.5;
      states.emplace_back(HermitianMatrix(plus), tol);

      CMatrix imag(dim);  // (|j> + i|k>)(<j| - i<k|) / 2
      imag(j, j) = 0.5;
      imag(k, k) = 0.5;
      imag(j, k) = Complex(0.0, -0.5);
      imag(k, j) = Complex(0.0, 0.5);
      states.emplace_back(HermitianMatrix(imag), tol);
    }
  }
  std::vector<double> weights(states.size(), 1.0 / static_cast<double>(states.size()));
  StateEnsemble ens(std::move(states), std::move(weights), tol);
  if (!ens.informationally_complete())
    throw SolverError("tomographic ensemble failed the informational completeness check");
  return ens;
}

DiscretePovm pushforward(const DiscretePovm& a, const std::map<std::string, std::string>& f,
                         const Tolerances& tol) {
  std::vector<std::string> order;
  std::map<std::string, CMatrix> sums;
  for (int i = 0; i < a.size(); ++i) {
    const auto it = f.find(a.label(i));
    if (it == f.end())
      throw ValidationError("statistic is not total: no image for label \"" + a.label(i) + "\"");
    auto [pos, inserted] = sums.try_emplace(it->second, CMatrix(a.dim()));
    if (inserted) order.push_back(it->second);
    pos->second += a.effect(i).matrix();
  }
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  outcomes.reserve(order.size());
  for (const auto& label : order) outcomes.emplace_back(label, sums.at(label));
  return DiscretePovm(std::move(outcomes), tol);
}

std::string pair_label(const std::string& x, const std::string& y) {
  return "(" + x + "," + y + ")";
}

}  // namespace povmkit
