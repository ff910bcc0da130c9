/* Dense two-phase tableau simplex, Bland's rule throughout. Reduced costs
   are recomputed from the tableau every iteration instead of being carried
   along, trading a constant factor for immunity to cost-row drift. */

#include "povmkit/simplex.hpp"

#include <cmath>

#include "povmkit/errors.hpp"

namespace povmkit {
namespace lp {

namespace {

constexpr double kCostEps = 1e-9;   // reduced cost significance
constexpr double kPivotEps = 1e-9;  // smallest usable pivot, absolute
constexpr double kRelPivot = 1e-6;  // smallest usable pivot relative to its column
constexpr double kFeasEps = 1e-8;   // phase-1 objective counted as zero
constexpr double kSnapEps = 1e-11;  // roundoff negatives snapped to zero

struct Tableau {
  int m = 0;                           // constraint rows
  int cols = 0;                        // variable columns (rhs separate)
  std::vector<std::vector<double>> a;  // m x cols
  std::vector<double> b;               // m, kept >= 0
  std::vector<int> basis;              // basic column per row
  std::vector<int> row_of;             // column -> row when basic, else -1
  int first_artificial = 0;

  void pivot(int row, int col) {
    const double p = a[row][col];
    for (int j = 0; j < cols; ++j) a[row][j] /= p;
    b[row] /= p;
    a[row][col] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = a[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
      a[i][col] = 0.0;
      b[i] -= f * b[row];
      if (b[i] < 0.0 && b[i] > -kSnapEps) b[i] = 0.0;
    }
    row_of[basis[row]] = -1;
    basis[row] = col;
    row_of[col] = row;
  }
};

enum class StepResult { Pivoted, Optimal, Unbounded };

/* One Bland step under the cost function `cost(j)` (0 for slack/artificial
   columns unless phase 1). Entering: smallest column index with reduced
   cost below -eps whose column offers a numerically usable pivot; pivots
   below kRelPivot of the column maximum are refused, which keeps one bad
   ratio-test pivot from shredding the tableau. Leaving: minimum ratio,
   ties to the smallest basic variable index. */
template <typename CostFn>
StepResult bland_step(Tableau& t, CostFn cost, int column_limit) {
  // rows whose basic variable carries nonzero cost
  std::vector<std::pair<int, double>> priced_rows;
  for (int i = 0; i < t.m; ++i) {
    const double cb = cost(t.basis[i]);
    if (cb != 0.0) priced_rows.emplace_back(i, cb);
  }

  for (int j = 0; j < column_limit; ++j) {
    if (t.row_of[j] >= 0) continue;  // basic, reduced cost zero
    double z = cost(j);
    for (const auto& [i, cb] : priced_rows) z -= cb * t.a[i][j];
    if (z >= -kCostEps) continue;

    double colmax = 0.0;
    for (int i = 0; i < t.m; ++i) colmax = std::max(colmax, t.a[i][j]);
    if (colmax <= kPivotEps) {
      if (z < -1e-6) return StepResult::Unbounded;  // a real improving ray
      continue;  // phantom reduced cost on a numerically zero column
    }
    const double floor = std::max(kPivotEps, kRelPivot * colmax);

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < t.m; ++i) {
      if (t.a[i][j] < floor) continue;
      const double ratio = std::max(t.b[i], 0.0) / t.a[i][j];
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) continue;  // only sub-floor positives: unusable column
    t.pivot(leave, j);
    return StepResult::Pivoted;
  }
  return StepResult::Optimal;
}

}  // namespace

Solution solve(const Problem& p, long max_iterations) {
  const int n = p.num_vars;
  if (static_cast<int>(p.objective.size()) != n)
    throw ValidationError("objective length disagrees with num_vars");
  const int m = static_cast<int>(p.rows.size());

  // Column layout: structural | slack (one per LessEq) | artificial.
  int n_slack = 0;
  for (const auto& r : p.rows)
    if (r.relation == Relation::LessEq) ++n_slack;

  Tableau t;
  t.m = m;
  t.first_artificial = n + n_slack;
  t.cols = n + n_slack + m;  // upper bound, trimmed below
  t.a.assign(m, std::vector<double>(t.cols, 0.0));
  t.b.assign(m, 0.0);
  t.basis.assign(m, -1);

  int slack_at = n;
  int artificial_at = t.first_artificial;
  int n_artificial = 0;
  for (int i = 0; i < m; ++i) {
    const auto& r = p.rows[i];
    if (static_cast<int>(r.coeffs.size()) != n)
      throw ValidationError("constraint row length disagrees with num_vars");
    const double sign = r.rhs < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t.a[i][j] = sign * r.coeffs[j];
    t.b[i] = sign * r.rhs;
    if (r.relation == Relation::LessEq) {
      t.a[i][slack_at] = sign;  // negated rows get a surplus column
      if (sign > 0.0) t.basis[i] = slack_at;
      ++slack_at;
    }
    if (t.basis[i] < 0) {
      t.a[i][artificial_at] = 1.0;
      t.basis[i] = artificial_at;
      ++artificial_at;
      ++n_artificial;
    }
  }
  t.cols = artificial_at;
  for (auto& row : t.a) row.resize(t.cols);
  t.row_of.assign(t.cols, -1);
  for (int i = 0; i < m; ++i) t.row_of[t.basis[i]] = i;

  long iterations = 0;
  Solution out;

  if (n_artificial > 0) {
    const int first_art = t.first_artificial;
    auto phase1_cost = [first_art](int j) { return j >= first_art ? 1.0 : 0.0; };
    for (;;) {
      if (++iterations > max_iterations) return out;  // IterationLimit
      const StepResult r = bland_step(t, phase1_cost, t.cols);
      if (r == StepResult::Optimal) break;
      if (r == StepResult::Unbounded) return out;  // impossible for an artificial sum
    }
    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i)
      if (t.basis[i] >= t.first_artificial) infeasibility += std::max(t.b[i], 0.0);
    if (infeasibility > kFeasEps) {
      out.status = Status::Infeasible;
      return out;
    }
    // Swap surviving zero-level artificials for the best real pivot in
    // their row; rows offering none are redundant and stay pinned at zero.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < t.first_artificial) continue;
      int best = -1;
      for (int j = 0; j < t.first_artificial; ++j)
        if (t.row_of[j] < 0 &&
            (best < 0 || std::abs(t.a[i][j]) > std::abs(t.a[i][best])))
          best = j;
      if (best >= 0 && std::abs(t.a[i][best]) > 1e-7) t.pivot(i, best);
    }
  }

  const auto& c = p.objective;
  auto phase2_cost = [&c, n](int j) { return j < n ? c[j] : 0.0; };
  for (;;) {
    if (++iterations > max_iterations) return out;  // IterationLimit
    const StepResult r = bland_step(t, phase2_cost, t.first_artificial);
    if (r == StepResult::Optimal) break;
    if (r == StepResult::Unbounded) {
      out.status = Status::Unbounded;
      return out;
    }
  }

  out.status = Status::Optimal;
  out.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) out.x[t.basis[i]] = std::max(t.b[i], 0.0);
  out.objective_value = 0.0;
  for (int j = 0; j < n; ++j) out.objective_value += c[j] * out.x[j];

  // Honest exit: measure the solution against the original rows, not the
  // worked tableau.
  for (const auto& r : p.rows) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += r.coeffs[j] * out.x[j];
    const double defect =
        r.relation == Relation::Eq ? std::abs(lhs - r.rhs) : std::max(0.0, lhs - r.rhs);
    out.max_violation = std::max(out.max_violation, defect);
  }
  return out;
}

}  // namespace lp
}  // namespace povmkit
