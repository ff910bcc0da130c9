/* CP instruments in Kraus form: composition with a second measurement and
   the two information-conservation conditions. */

#include "povmkit/instruments.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "povmkit/errors.hpp"

namespace povmkit {

KrausInstrument::KrausInstrument(
    std::vector<std::pair<std::string, std::vector<CMatrix>>> outcomes,
    const Tolerances& tol) {
  if (outcomes.empty()) throw ValidationError("instrument needs at least one outcome");
  std::set<std::string> seen;
  dim_ = -1;
  for (const auto& [label, ops] : outcomes) {
    if (!seen.insert(label).second)
      throw ValidationError("duplicate instrument outcome label \"" + label + "\"");
    for (const auto& k : ops) {
      if (!k.all_finite())
        throw ValidationError("Kraus operator with non-finite entries at \"" + label + "\"");
      if (dim_ < 0) dim_ = k.dim();
      if (k.dim() != dim_)
        throw ValidationError("Kraus operators disagree on dimension at \"" + label + "\"");
    }
  }
  if (dim_ < 0) throw ValidationError("instrument has no Kraus operators at all");

  CMatrix total(dim_);
  for (const auto& [label, ops] : outcomes)
    for (const auto& k : ops) total += k.adjoint().matmul(k);
  const double defect = frobenius_distance(total, CMatrix::identity(dim_));
  if (defect > tol.comp) {
    std::ostringstream os;
    os << "instrument normalization violated: ||sum K^dag K - I||_F = " << defect;
    throw ValidationError(os.str());
  }

  labels_.reserve(outcomes.size());
  kraus_.reserve(outcomes.size());
  for (auto& [label, ops] : outcomes) {
    labels_.push_back(std::move(label));
    kraus_.push_back(std::move(ops));
  }
}

int KrausInstrument::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

HermitianMatrix heisenberg_apply(const KrausInstrument& inst, const std::string& outcome,
                                 const HermitianMatrix& a) {
  const int x = inst.index_of(outcome);
  if (x < 0) throw ValidationError("unknown instrument outcome \"" + outcome + "\"");
  if (a.dim() != inst.dim())
    throw ValidationError("dimension mismatch between instrument and observable");
  CMatrix sum(inst.dim());
  for (const auto& k : inst.kraus(x)) sum += k.adjoint().matmul(a.matrix()).matmul(k);
  return HermitianMatrix(sum, 1e-8);
}

DiscretePovm instrument_povm(const KrausInstrument& inst, const Tolerances& tol) {
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  const HermitianMatrix identity = HermitianMatrix::identity(inst.dim());
  for (int x = 0; x < inst.size(); ++x)
    outcomes.emplace_back(inst.label(x),
                          heisenberg_apply(inst, inst.label(x), identity).matrix());
  return DiscretePovm(std::move(outcomes), tol);
}

KrausInstrument luders_instrument(const DiscretePovm& a, const Tolerances& tol) {
  std::vector<std::pair<std::string, std::vector<CMatrix>>> outcomes;
  outcomes.reserve(a.size());
  for (int x = 0; x < a.size(); ++x)
    outcomes.emplace_back(a.label(x),
                          std::vector<CMatrix>{sqrt_psd(a.effect(x), tol.psd).matrix()});
  return KrausInstrument(std::move(outcomes), tol);
}

DiscretePovm compose(const KrausInstrument& inst, const DiscretePovm& b,
                     const Tolerances& tol) {
  if (inst.dim() != b.dim())
    throw ValidationError("dimension mismatch between instrument and POVM");
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  outcomes.reserve(static_cast<size_t>(inst.size()) * b.size());
  for (int x = 0; x < inst.size(); ++x)
    for (int y = 0; y < b.size(); ++y)
      outcomes.emplace_back(
          pair_label(inst.label(x), b.label(y)),
          heisenberg_apply(inst, inst.label(x), b.effect(y)).matrix());
  return DiscretePovm(std::move(outcomes), tol);
}

namespace {

// Does the statistic push C onto B exactly (same labels, effects within
// comp) while being sufficient for C?
bool statistic_recovers_b(const DiscretePovm& c, const std::map<std::string, std::string>& f,
                          const DiscretePovm& b, const Tolerances& tol) {
  const DiscretePovm pushed = pushforward(c, f, tol);
  if (pushed.size() != b.size()) return false;
  for (int y = 0; y < b.size(); ++y) {
    const int i = pushed.index_of(b.label(y));
    if (i < 0) return false;
    if (frobenius_distance(pushed.effect(i).matrix(), b.effect(y).matrix()) > tol.comp)
      return false;
  }
  return is_sufficient_statistic(c, f, tol).holds;
}

}  // namespace

ConservationVerdict check_conservation(const KrausInstrument& inst, const DiscretePovm& b,
                                       uint64_t exhaustive_limit, const Tolerances& tol) {
  const DiscretePovm c = compose(inst, b, tol);
  const int n1 = inst.size(), n2 = b.size();

  // Pair labels of C follow compose's x-major layout.
  std::map<std::string, std::string> projection;
  for (int x = 0; x < n1; ++x)
    for (int y = 0; y < n2; ++y)
      projection[pair_label(inst.label(x), b.label(y))] = b.label(y);

  ConservationVerdict verdict;
  verdict.condition1.holds_for_projection = statistic_recovers_b(c, projection, b, tol);

  if (verdict.condition1.holds_for_projection) {
    verdict.condition1.exhaustive_search = true;  // the projection is a witness
  } else {
    // |Omega_2|^(n1*n2) candidate statistics, guarded by the limit.
    const uint64_t pairs = static_cast<uint64_t>(n1) * static_cast<uint64_t>(n2);
    long double count = 1.0L;
    bool overflow = false;
    for (uint64_t i = 0; i < pairs; ++i) {
      count *= static_cast<long double>(n2);
      if (count > static_cast<long double>(exhaustive_limit)) {
        overflow = true;
        break;
      }
    }
    if (overflow) {
      verdict.condition1.exhaustive_search = std::nullopt;  // not attempted
    } else {
      bool found = false;
      std::vector<int> choice(pairs, 0);
      std::vector<std::string> clabels;
      for (int x = 0; x < n1; ++x)
        for (int y = 0; y < n2; ++y) clabels.push_back(pair_label(inst.label(x), b.label(y)));
      for (;;) {
        std::map<std::string, std::string> f;
        for (uint64_t i = 0; i < pairs; ++i) f[clabels[i]] = b.label(choice[i]);
        if (statistic_recovers_b(c, f, b, tol)) {
          found = true;
          break;
        }
        uint64_t i = 0;
        while (i < pairs && ++choice[i] == n2) choice[i++] = 0;
        if (i == pairs) break;
      }
      verdict.condition1.exhaustive_search = found;
    }
  }

  EquivalenceVerdict byReduce = equivalent(c, b, EquivMethod::reduce, tol);
  verdict.condition2 = byReduce.equivalent;
  verdict.reduce_bijection = std::move(byReduce.bijection);

  // LP cross-check on small instances.
  if (static_cast<long>(c.size()) * b.size() <= 128) {
    EquivalenceVerdict byLp = equivalent(c, b, EquivMethod::lp, tol);
    if (byLp.equivalent != verdict.condition2)
      throw ToleranceAmbiguity(
          "conservation check: lp and reduce equivalence methods disagree");
    verdict.lp_forward = std::move(byLp.forward);
    verdict.lp_backward = std::move(byLp.backward);
  }

  const bool condition1 = verdict.condition1.holds_for_projection ||
                          (verdict.condition1.exhaustive_search &&
                           *verdict.condition1.exhaustive_search);
  if (condition1 && !verdict.condition2)
    throw ToleranceAmbiguity(
        "conservation check: condition 1 holds but condition 2 failed");
  return verdict;
}

}  // namespace povmkit
