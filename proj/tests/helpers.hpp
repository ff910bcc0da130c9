#ifndef POVMKIT_TESTS_HELPERS_HPP
#define POVMKIT_TESTS_HELPERS_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "povmkit/povm.hpp"

namespace povmkit_tests {

using namespace povmkit;

inline CMatrix diag(std::vector<double> entries) {
  CMatrix m(static_cast<int>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = entries[i];
  return m;
}

inline DiscretePovm computational_pvm(int dim) {
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  for (int j = 0; j < dim; ++j) {
    CMatrix p(dim);
    p(j, j) = 1.0;
    outcomes.emplace_back(std::to_string(j), std::move(p));
  }
  return DiscretePovm(std::move(outcomes));
}

// The two-outcome POVM A with A0 = diag(0.6, 0.1), A1 = I - A0.
inline DiscretePovm intro_a() {
  return DiscretePovm({{"0", diag({0.6, 0.1})}, {"1", diag({0.4, 0.9})}});
}

// Its lambda-split B with labels "ij": B_i0 = lambda A_i, B_i1 = (1-lambda) A_i.
inline DiscretePovm intro_b(double lambda = 0.3) {
  const CMatrix a0 = diag({0.6, 0.1});
  const CMatrix a1 = diag({0.4, 0.9});
  return DiscretePovm({{"00", lambda * a0},
                       {"01", (1.0 - lambda) * a0},
                       {"10", lambda * a1},
                       {"11", (1.0 - lambda) * a1}});
}

// Three rank-1 qubit effects (2/3)|psi_k><psi_k| at 120 degrees.
inline DiscretePovm trine_povm() {
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  for (int k = 0; k < 3; ++k) {
    const double half = M_PI * k / 3.0;  // theta_k / 2 with theta_k = 2 pi k / 3
    const double c = std::cos(half), s = std::sin(half);
    CMatrix e(2);
    e(0, 0) = (2.0 / 3.0) * c * c;
    e(0, 1) = (2.0 / 3.0) * c * s;
    e(1, 0) = (2.0 / 3.0) * c * s;
    e(1, 1) = (2.0 / 3.0) * s * s;
    outcomes.emplace_back(std::to_string(k), std::move(e));
  }
  return DiscretePovm(std::move(outcomes));
}

inline DensityMatrix basis_state(int dim, int j) {
  CMatrix m(dim);
  m(j, j) = 1.0;
  return DensityMatrix(HermitianMatrix(m));
}

inline DensityMatrix maximally_mixed(int dim) {
  CMatrix m(dim);
  for (int j = 0; j < dim; ++j) m(j, j) = 1.0 / dim;
  return DensityMatrix(HermitianMatrix(m));
}

}  // namespace povmkit_tests

#endif
