/* Markov-matrix feasibility: the post-processing preorder, equivalence by
   either route, and kernel products. */

#include "povmkit/fuzzy_order.hpp"

#include <algorithm>
#include <cmath>

#include "povmkit/errors.hpp"
#include "povmkit/simplex.hpp"

namespace povmkit {

namespace {

// Column position of each B label inside the kernel, so kernels can be
// applied to POVMs whose outcome order differs from the kernel's.
std::vector<int> kernel_columns_for(const MarkovMatrix& kappa, const DiscretePovm& b) {
  if (kappa.cols() != b.size())
    throw ValidationError("kernel column count disagrees with POVM outcome count");
  std::vector<int> cols(b.size(), -1);
  for (int y = 0; y < b.size(); ++y) {
    for (int j = 0; j < kappa.cols(); ++j)
      if (kappa.col_labels()[j] == b.label(y)) {
        cols[y] = j;
        break;
      }
    if (cols[y] < 0)
      throw ValidationError("kernel has no column for outcome \"" + b.label(y) + "\"");
  }
  return cols;
}

/* Hermitian matrices are d^2 real scalars: the diagonal plus the real and
   imaginary parts of the upper triangle. The feasibility program equates
   them one by one. */
void scalar_components(const CMatrix& m, std::vector<double>& out) {
  out.clear();
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) {
      out.push_back(m(i, j).real());
      if (j > i) out.push_back(m(i, j).imag());
    }
}

}  // namespace

double witness_residual(const MarkovMatrix& kappa, const DiscretePovm& a,
                        const DiscretePovm& b) {
  if (a.dim() != b.dim()) throw ValidationError("dimension mismatch between POVMs");
  if (kappa.rows() != a.size())
    throw ValidationError("kernel row count disagrees with target POVM");
  const auto cols = kernel_columns_for(kappa, b);
  double residual = 0.0;
  for (int x = 0; x < a.size(); ++x) {
    const int row = [&] {
      for (int r = 0; r < kappa.rows(); ++r)
        if (kappa.row_labels()[r] == a.label(x)) return r;
      throw ValidationError("kernel has no row for outcome \"" + a.label(x) + "\"");
    }();
    CMatrix rebuilt(a.dim());
    for (int y = 0; y < b.size(); ++y)
      rebuilt += kappa(row, cols[y]) * b.effect(y).matrix();
    const CMatrix& target = a.effect(x).matrix();
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) {
        const Complex d = rebuilt(i, j) - target(i, j);
        residual = std::max({residual, std::abs(d.real()), std::abs(d.imag())});
      }
  }
  return residual;
}

OrderVerdict preceq(const DiscretePovm& a, const DiscretePovm& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) throw ValidationError("dimension mismatch between POVMs");
  const int na = a.size(), nb = b.size();
  const int n_kappa = na * nb;

  lp::Problem prob;
  prob.num_vars = n_kappa + 1;  // kappa entries then the slack s
  prob.objective.assign(prob.num_vars, 0.0);
  prob.objective[n_kappa] = 1.0;

  for (int y = 0; y < nb; ++y) {  // column sums
    lp::Row row;
    row.relation = lp::Relation::Eq;
    row.rhs = 1.0;
    row.coeffs.assign(prob.num_vars, 0.0);
    for (int x = 0; x < na; ++x) row.coeffs[x * nb + y] = 1.0;
    prob.rows.push_back(std::move(row));
  }

  std::vector<double> acomp, bcomp;
  std::vector<std::vector<double>> bcomps(nb);
  for (int y = 0; y < nb; ++y) scalar_components(b.effect(y).matrix(), bcomps[y]);
  for (int x = 0; x < na; ++x) {
    scalar_components(a.effect(x).matrix(), acomp);
    for (size_t k = 0; k < acomp.size(); ++k) {
      lp::Row up, down;  // |equation defect| <= s, split into two inequalities
      up.relation = down.relation = lp::Relation::LessEq;
      up.coeffs.assign(prob.num_vars, 0.0);
      down.coeffs.assign(prob.num_vars, 0.0);
      for (int y = 0; y < nb; ++y) {
        up.coeffs[x * nb + y] = bcomps[y][k];
        down.coeffs[x * nb + y] = -bcomps[y][k];
      }
      up.coeffs[n_kappa] = -1.0;
      down.coeffs[n_kappa] = -1.0;
      up.rhs = acomp[k];
      down.rhs = -acomp[k];
      prob.rows.push_back(std::move(up));
      prob.rows.push_back(std::move(down));
    }
  }

  const lp::Solution sol = lp::solve(prob);
  if (sol.status == lp::Status::IterationLimit)
    throw SolverError("solver stalled: simplex hit the iteration cap");
  if (sol.status != lp::Status::Optimal)
    throw SolverError("solver failed: feasibility program reported no optimum");
  if (sol.max_violation > 1e-8)
    throw SolverError("solver returned an infeasible basis (violation " +
                      std::to_string(sol.max_violation) + ")");

  std::vector<double> entries(static_cast<size_t>(na) * nb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      entries[static_cast<size_t>(x) * nb + y] = std::max(sol.x[x * nb + y], 0.0);

  MarkovMatrix kappa = [&] {
    try {
      return MarkovMatrix(a.labels(), b.labels(), entries);
    } catch (const ValidationError& e) {
      throw SolverError(std::string("solver returned an invalid kernel: ") + e.what());
    }
  }();

  OrderVerdict verdict;
  verdict.residual = witness_residual(kappa, a, b);
  verdict.holds = verdict.residual <= tol.lp;
  verdict.borderline =
      !verdict.holds && verdict.residual <= kBorderlineFactor * tol.lp;
  if (verdict.holds) verdict.witness = std::move(kappa);
  return verdict;
}

DiscretePovm apply_markov(const MarkovMatrix& kappa, const DiscretePovm& b,
                          const Tolerances& tol) {
  const auto cols = kernel_columns_for(kappa, b);
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  outcomes.reserve(kappa.rows());
  for (int x = 0; x < kappa.rows(); ++x) {
    CMatrix sum(b.dim());
    for (int y = 0; y < b.size(); ++y)
      sum += kappa(x, cols[y]) * b.effect(y).matrix();
    outcomes.emplace_back(kappa.row_labels()[x], std::move(sum));
  }
  return DiscretePovm(std::move(outcomes), tol);
}

EquivalenceVerdict equivalent(const DiscretePovm& a, const DiscretePovm& b,
                              EquivMethod method, const Tolerances& tol) {
  EquivalenceVerdict v;
  v.method = method;
  if (method == EquivMethod::lp) {
    OrderVerdict forward = preceq(a, b, tol);
    OrderVerdict backward = preceq(b, a, tol);
    v.equivalent = forward.holds && backward.holds;
    v.borderline = forward.borderline || backward.borderline;
    v.forward = std::move(forward.witness);
    v.backward = std::move(backward.witness);
  } else {
    const ReductionReport ra = reduce(a, tol);
    const ReductionReport rb = reduce(b, tol);
    v.bijection = almost_isomorphic(*ra.reduced, *rb.reduced, tol);
    v.equivalent = v.bijection.has_value();
  }
  return v;
}

DiscretePovm kernel_product(const MarkovMatrix& kappa, const DiscretePovm& b,
                            const Tolerances& tol) {
  const auto cols = kernel_columns_for(kappa, b);
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  outcomes.reserve(static_cast<size_t>(kappa.rows()) * b.size());
  for (int x = 0; x < kappa.rows(); ++x)
    for (int y = 0; y < b.size(); ++y)
      outcomes.emplace_back(pair_label(kappa.row_labels()[x], b.label(y)),
                            kappa(x, cols[y]) * b.effect(y).matrix());
  return DiscretePovm(std::move(outcomes), tol);
}

}  // namespace povmkit
