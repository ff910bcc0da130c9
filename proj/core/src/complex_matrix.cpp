/* Complex matrix arithmetic and Hermitian spectral routines. */

#include "povmkit/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "povmkit/errors.hpp"

namespace povmkit {

CMatrix::CMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, Complex(0.0, 0.0)) {
  if (dim < 0) throw ValidationError("matrix dimension must be nonnegative");
}

CMatrix CMatrix::identity(int dim) {
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (dim_ != o.dim_) throw ValidationError("dimension mismatch in matrix sum");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (dim_ != o.dim_) throw ValidationError("dimension mismatch in matrix difference");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex z) {
  for (auto& v : a_) v *= z;
  return *this;
}

CMatrix CMatrix::matmul(const CMatrix& o) const {
  if (dim_ != o.dim_) throw ValidationError("dimension mismatch in matrix product");
  CMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < dim_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex CMatrix::trace() const {
  Complex t(0.0, 0.0);
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs_entry() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool CMatrix::all_finite() const {
  for (const auto& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("dimension mismatch in Frobenius distance");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j) - b(i, j));
  return std::sqrt(s);
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("dimension mismatch in trace product");
  Complex t(0.0, 0.0);
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

HermitianMatrix::HermitianMatrix(const CMatrix& m, double herm_tol) {
  if (!m.all_finite()) throw ValidationError("matrix has non-finite entries");
  const int n = m.dim();
  double defect2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) defect2 += std::norm(m(i, j) - std::conj(m(j, i)));
  const double norm = m.frobenius_norm();
  if (std::sqrt(defect2) > herm_tol * std::max(norm, 1.0)) {
    std::ostringstream os;
    os << "matrix not Hermitian: defect " << std::sqrt(defect2) << " exceeds " << herm_tol
       << " * max(||M||_F, 1)";
    throw ValidationError(os.str());
  }
  m_ = CMatrix(n);
  for (int i = 0; i < n; ++i) {
    m_(i, i) = Complex(m(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix HermitianMatrix::zero(int dim) { return HermitianMatrix(CMatrix(dim)); }

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(CMatrix::identity(dim));
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& m) {
  const int n = m.dim();
  if (n > 64) throw ValidationError("dimension above the supported 64");
  CMatrix a = m.matrix();
  CMatrix v = CMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double conv = 1e-14 * std::max(scale, 1e-300);
  const double skip = conv / std::max(n, 1);
  const int max_sweeps = 128;

  bool converged = (n <= 1) || off_diagonal_norm(a) <= conv;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= skip) continue;

        // Phase factor turns the 2x2 block real, then the standard
        // symmetric Jacobi rotation annihilates it.
        const Complex phase = apq / g;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        double t;
        if (tau >= 0.0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary J: J(p,p)=c, J(p,q)=s, J(q,p)=-s*conj(phase), J(q,q)=c*conj(phase).
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (int i = 0; i < n; ++i) {  // A <- A J (columns p,q)
          const Complex aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip + jqp * aiq;
          a(i, q) = s * aip + jqq * aiq;
        }
        for (int j = 0; j < n; ++j) {  // A <- J^dag A (rows p,q)
          const Complex apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + std::conj(jqp) * aqj;
          a(q, j) = s * apj + std::conj(jqq) * aqj;
        }
        a(p, q) = Complex(0.0, 0.0);
        a(q, p) = Complex(0.0, 0.0);
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);

        for (int i = 0; i < n; ++i) {  // V <- V J
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip + jqp * viq;
          v(i, q) = s * vip + jqq * viq;
        }
      }
    }
    converged = off_diagonal_norm(a) <= conv;
  }
  if (!converged) throw SolverError("eig failure: Jacobi sweeps did not converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return diag[x] > diag[y]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

double trace_norm(const HermitianMatrix& m) {
  const auto eig = eig_hermitian(m);
  double s = 0.0;
  for (double l : eig.eigenvalues) s += std::abs(l);
  return s;
}

bool is_psd(const HermitianMatrix& m, double tol) {
  if (m.dim() == 0) return true;
  const auto eig = eig_hermitian(m);
  return eig.eigenvalues.back() >= -tol;
}

namespace {

HermitianMatrix rebuild(const EigenDecomposition& eig, const std::vector<double>& vals) {
  const int n = eig.eigenvectors.dim();
  CMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s(0.0, 0.0);
      for (int k = 0; k < n; ++k)
        s += eig.eigenvectors(i, k) * vals[k] * std::conj(eig.eigenvectors(j, k));
      r(i, j) = s;
    }
  return HermitianMatrix(r, 1e-8);
}

}  // namespace

HermitianMatrix inv_sqrt_psd(const HermitianMatrix& m, double pd_tol) {
  const auto eig = eig_hermitian(m);
  const int n = m.dim();
  std::vector<double> vals(n);
  for (int k = 0; k < n; ++k) {
    if (eig.eigenvalues[k] < pd_tol) {
      std::ostringstream os;
      os << "not positive definite: eigenvalue " << eig.eigenvalues[k] << " below " << pd_tol;
      throw ValidationError(os.str());
    }
    vals[k] = 1.0 / std::sqrt(eig.eigenvalues[k]);
  }
  return rebuild(eig, vals);
}

HermitianMatrix sqrt_psd(const HermitianMatrix& m, double psd_tol) {
  const auto eig = eig_hermitian(m);
  const int n = m.dim();
  std::vector<double> vals(n);
  for (int k = 0; k < n; ++k) {
    if (eig.eigenvalues[k] < -psd_tol) {
      std::ostringstream os;
      os << "not PSD: eigenvalue " << eig.eigenvalues[k] << " below -" << psd_tol;
      throw ValidationError(os.str());
    }
    vals[k] = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
  }
  return rebuild(eig, vals);
}

}  // namespace povmkit
