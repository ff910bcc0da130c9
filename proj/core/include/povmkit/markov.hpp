#ifndef POVMKIT_MARKOV_HPP
#define POVMKIT_MARKOV_HPP

#include <string>
#include <vector>

#include "povmkit/tolerances.hpp"

namespace povmkit {

/* Column-stochastic matrix kappa(x|y): rows are target outcomes x, columns
   are source outcomes y. Entries >= -1e-12, columns sum to 1 within 1e-9. */
class MarkovMatrix {
 public:
  MarkovMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
               std::vector<double> entries_row_major);

  int rows() const { return static_cast<int>(row_labels_.size()); }
  int cols() const { return static_cast<int>(col_labels_.size()); }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  double operator()(int r, int c) const {
    return entries_[static_cast<size_t>(r) * col_labels_.size() + c];
  }
  const std::vector<double>& entries() const { return entries_; }

  static MarkovMatrix identity(const std::vector<std::string>& labels);

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<double> entries_;
};

}  // namespace povmkit

#endif
