#include "povmkit/markov.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "povmkit/errors.hpp"

namespace povmkit {

MarkovMatrix::MarkovMatrix(std::vector<std::string> row_labels,
                           std::vector<std::string> col_labels,
                           std::vector<double> entries_row_major)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      entries_(std::move(entries_row_major)) {
  const size_t r = row_labels_.size(), c = col_labels_.size();
  if (r == 0 || c == 0) throw ValidationError("Markov matrix needs nonempty labels");
  if (entries_.size() != r * c) throw ValidationError("Markov matrix entry count mismatch");
  if (std::set<std::string>(row_labels_.begin(), row_labels_.end()).size() != r ||
      std::set<std::string>(col_labels_.begin(), col_labels_.end()).size() != c)
    throw ValidationError("Markov matrix labels must be unique");
  for (size_t j = 0; j < c; ++j) {
    double sum = 0.0;
    for (size_t i = 0; i < r; ++i) {
      const double v = entries_[i * c + j];
      if (!(v >= -1e-12) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "Markov matrix entry " << v << " at (" << i << "," << j << ") is negative";
        throw ValidationError(os.str());
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "Markov matrix column \"" << col_labels_[j] << "\" sums to " << sum;
      throw ValidationError(os.str());
    }
  }
}

MarkovMatrix MarkovMatrix::identity(const std::vector<std::string>& labels) {
  const size_t n = labels.size();
  std::vector<double> entries(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) entries[i * n + i] = 1.0;
  return MarkovMatrix(labels, labels, std::move(entries));
}

}  // namespace povmkit
