#ifndef POVMKIT_COMPLEX_MATRIX_HPP
#define POVMKIT_COMPLEX_MATRIX_HPP

#include <complex>
#include <vector>

#include "povmkit/tolerances.hpp"

namespace povmkit {

using Complex = std::complex<double>;

/* Dense square complex matrix, row-major. Dimensions stay small (<= 64),
   so everything is plain O(n^2)/O(n^3) with no blocking. */
class CMatrix {
 public:
  CMatrix() : dim_(0) {}
  explicit CMatrix(int dim);
  static CMatrix identity(int dim);

  int dim() const { return dim_; }

  Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const Complex& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex z);
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(Complex z, CMatrix a) { return a *= z; }
  friend CMatrix operator*(double x, CMatrix a) { return a *= Complex(x, 0.0); }

  CMatrix matmul(const CMatrix& o) const;
  CMatrix adjoint() const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs_entry() const;
  bool all_finite() const;

 private:
  int dim_;
  std::vector<Complex> a_;
};

double frobenius_distance(const CMatrix& a, const CMatrix& b);

// tr(a b) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b);

/* A matrix certified Hermitian. Construction rejects anything whose
   anti-Hermitian part exceeds herm * ||M||_F, then symmetrizes exactly:
   entries above the diagonal are authoritative, the diagonal is real. */
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m, double herm_tol = Tolerances{}.herm);

  const CMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }
  double trace_real() const { return m_.trace().real(); }

  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);

 private:
  CMatrix m_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  CMatrix eigenvectors;             // unitary, columns match eigenvalues
};

/* Cyclic Jacobi for complex Hermitian matrices. Deterministic, high
   relative accuracy, ample at dim <= 64. Throws SolverError on
   non-convergence ("eig failure"). */
EigenDecomposition eig_hermitian(const HermitianMatrix& m);

double trace_norm(const HermitianMatrix& m);

bool is_psd(const HermitianMatrix& m, double tol);

// min eigenvalue must clear pd; returns S with S*M*S = I.
HermitianMatrix inv_sqrt_psd(const HermitianMatrix& m, double pd_tol = Tolerances{}.pd);

// PSD square root (eigenvalues clamped at zero from below within psd_tol).
HermitianMatrix sqrt_psd(const HermitianMatrix& m, double psd_tol = Tolerances{}.psd);

}  // namespace povmkit

#endif
