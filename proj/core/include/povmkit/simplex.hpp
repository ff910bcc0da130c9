#ifndef POVMKIT_SIMPLEX_HPP
#define POVMKIT_SIMPLEX_HPP

#include <vector>

namespace povmkit {
namespace lp {

enum class Relation { LessEq, Eq };

struct Row {
  std::vector<double> coeffs;
  Relation relation;
  double rhs;
};

/* minimize c.x subject to the rows, x >= 0. Dense data; sized for the
   desk-scale feasibility programs this library builds (hundreds of rows). */
struct Problem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Row> rows;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::IterationLimit;
  double objective_value = 0.0;
  std::vector<double> x;
  double max_violation = 0.0;  // worst constraint defect of x, rechecked on exit
};

/* Two-phase tableau simplex with Bland's rule throughout: smallest-index
   entering column, smallest-basis-index tie break on the ratio test.
   Deterministic and cycle-free; speed is a non-goal at these sizes. */
Solution solve(const Problem& p, long max_iterations = 200000);

}  // namespace lp
}  // namespace povmkit

#endif
