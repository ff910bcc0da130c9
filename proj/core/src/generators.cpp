/* Seeded random POVMs, states, Markov matrices and instruments. */

#include "povmkit/generators.hpp"

#include <cmath>
#include <string>

#include "povmkit/errors.hpp"
#include "povmkit/random.hpp"

namespace povmkit {

namespace {

CMatrix gaussian_matrix(int dim, Rng& rng) {
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

CMatrix gaussian_psd(int dim, Rng& rng) {
  const CMatrix m = gaussian_matrix(dim, rng);
  return m.matmul(m.adjoint());
}

}  // namespace

DiscretePovm random_povm(int dim, int n_outcomes, uint64_t seed, const Tolerances& tol) {
  if (dim < 1 || n_outcomes < 1)
    throw ValidationError("random_povm needs dim >= 1 and n_outcomes >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<CMatrix> g;
    g.reserve(n_outcomes);
    CMatrix s(dim);
    for (int i = 0; i < n_outcomes; ++i) {
      g.push_back(gaussian_psd(dim, rng));
      s += g.back();
    }
    HermitianMatrix hs(s, 1e-8);
    const auto eig = eig_hermitian(hs);
    if (eig.eigenvalues.back() < tol.pd) continue;  // degenerate sample, retry
    const CMatrix w = inv_sqrt_psd(hs, tol.pd).matrix();
    std::vector<std::pair<std::string, CMatrix>> outcomes;
    outcomes.reserve(n_outcomes);
    for (int i = 0; i < n_outcomes; ++i)
      outcomes.emplace_back(std::to_string(i), w.matmul(g[i]).matmul(w));
    return DiscretePovm(std::move(outcomes), tol);
  }
  throw SolverError("degenerate sample: random POVM normalization failed 10 times");
}

DensityMatrix random_density(int dim, uint64_t seed, const Tolerances& tol) {
  if (dim < 1) throw ValidationError("random_density needs dim >= 1");
  Rng rng(seed);
  CMatrix g = gaussian_psd(dim, rng);
  const double tr = g.trace().real();
  g *= Complex(1.0 / tr, 0.0);
  return DensityMatrix(HermitianMatrix(g, 1e-8), tol);
}

MarkovMatrix random_markov(int n_rows, int n_cols, uint64_t seed) {
  if (n_rows < 1 || n_cols < 1) throw ValidationError("random_markov needs positive shape");
  Rng rng(seed);
  std::vector<double> entries(static_cast<size_t>(n_rows) * n_cols, 0.0);
  for (int c = 0; c < n_cols; ++c) {
    double total = 0.0;
    std::vector<double> col(n_rows);
    for (int r = 0; r < n_rows; ++r) {
      col[r] = -std::log(rng.next_double_open());  // exponential spacings
      total += col[r];
    }
    for (int r = 0; r < n_rows; ++r)
      entries[static_cast<size_t>(r) * n_cols + c] = col[r] / total;
  }
  std::vector<std::string> row_labels(n_rows), col_labels(n_cols);
  for (int r = 0; r < n_rows; ++r) row_labels[r] = std::to_string(r);
  for (int c = 0; c < n_cols; ++c) col_labels[c] = std::to_string(c);
  return MarkovMatrix(std::move(row_labels), std::move(col_labels), std::move(entries));
}

KrausInstrument random_instrument(int dim, int n_outcomes, int kraus_per_outcome,
                                  uint64_t seed, const Tolerances& tol) {
  if (dim < 1 || n_outcomes < 1 || kraus_per_outcome < 1)
    throw ValidationError("random_instrument needs positive dim, outcomes and Kraus count");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<std::vector<CMatrix>> raw(n_outcomes);
    CMatrix t(dim);
    for (int x = 0; x < n_outcomes; ++x)
      for (int k = 0; k < kraus_per_outcome; ++k) {
        raw[x].push_back(gaussian_matrix(dim, rng));
        t += raw[x].back().adjoint().matmul(raw[x].back());
      }
    HermitianMatrix ht(t, 1e-8);
    if (eig_hermitian(ht).eigenvalues.back() < tol.pd) continue;
    const CMatrix w = inv_sqrt_psd(ht, tol.pd).matrix();
    std::vector<std::pair<std::string, std::vector<CMatrix>>> outcomes;
    outcomes.reserve(n_outcomes);
    for (int x = 0; x < n_outcomes; ++x) {
      std::vector<CMatrix> ops;
      ops.reserve(kraus_per_outcome);
      for (const auto& m : raw[x]) ops.push_back(m.matmul(w));
      outcomes.emplace_back(std::to_string(x), std::move(ops));
    }
    return KrausInstrument(std::move(outcomes), tol);
  }
  throw SolverError("degenerate sample: random instrument normalization failed 10 times");
}

DiscretePovm split_povm(const DiscretePovm& a, const MarkovMatrix& kappa,
                        const Tolerances& tol) {
  if (kappa.cols() != a.size())
    throw ValidationError("split kernel needs one column per POVM outcome");
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  for (int x = 0; x < kappa.rows(); ++x)
    for (int y = 0; y < a.size(); ++y) {
      const double k = kappa(x, y);
      if (k <= 0.0) continue;
      outcomes.emplace_back(pair_label(kappa.row_labels()[x], a.label(y)),
                            k * a.effect(y).matrix());
    }
  return DiscretePovm(std::move(outcomes), tol);
}

DiscretePovm split_povm(const DiscretePovm& a, int n_rows, uint64_t seed,
                        const Tolerances& tol) {
  return split_povm(a, random_markov(n_rows, a.size(), seed), tol);
}

}  // namespace povmkit
