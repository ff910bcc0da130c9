#ifndef POVMKIT_INSTRUMENTS_TYPES_HPP
#define POVMKIT_INSTRUMENTS_TYPES_HPP

#include <string>
#include <utility>
#include <vector>

#include "povmkit/complex_matrix.hpp"
#include "povmkit/tolerances.hpp"

namespace povmkit {

/* CP instrument in Kraus form: outcome x carries Kraus operators K_{x,k};
   normalization sum_{x,k} K^dag K = I within comp tolerance. */
class KrausInstrument {
 public:
  KrausInstrument(std::vector<std::pair<std::string, std::vector<CMatrix>>> outcomes,
                  const Tolerances& tol = {});

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<CMatrix>& kraus(int i) const { return kraus_[i]; }
  int index_of(const std::string& label) const;  // -1 if absent

 private:
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<CMatrix>> kraus_;
};

}  // namespace povmkit

#endif
