#include "povmkit/divergences.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "povmkit/errors.hpp"

namespace povmkit {

namespace {

constexpr double kProbZero = 1e-14;  // below this a probability is an exact zero
constexpr double kInf = std::numeric_limits<double>::infinity();

double hellinger_f(double t) {
  const double d = std::sqrt(t) - 1.0;
  return d * d;
}

double hellinger_term(double p, double q) {
  const double d = std::sqrt(p) - std::sqrt(q);
  return d * d;
}

double kl_f(double t) { return t <= 0.0 ? 0.0 : t * std::log(t); }

double chi2_f(double t) {
  const double d = t - 1.0;
  return d * d;
}

void check_probability_vector(const std::vector<double>& p, const char* name) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -1e-12) || !std::isfinite(v)) {
      std::ostringstream os;
      os << name << " is not a probability vector: entry " << v;
      throw ValidationError(os.str());
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << name << " sums to " << sum << ", not 1";
    throw ValidationError(os.str());
  }
}

}  // namespace

const FGenerator& hellinger_generator() {
  static const FGenerator g{"hellinger", hellinger_f, 1.0, hellinger_term};
  return g;
}

const FGenerator& kl_generator() {
  static const FGenerator g{"kl", kl_f, kInf, nullptr};
  return g;
}

const FGenerator& chi2_generator() {
  static const FGenerator g{"chi2", chi2_f, kInf, nullptr};
  return g;
}

const FGenerator& f_generator_by_tag(const std::string& tag) {
  if (tag == "hellinger") return hellinger_generator();
  if (tag == "kl") return kl_generator();
  if (tag == "chi2") return chi2_generator();
  throw ValidationError("unknown f-divergence tag \"" + tag + "\" (hellinger, kl, chi2)");
}

double f_divergence(const FGenerator& gen, const std::vector<double>& p,
                    const std::vector<double>& q) {
  if (p.size() != q.size()) throw ValidationError("f-divergence needs equal-length vectors");
  check_probability_vector(p, "P");
  check_probability_vector(q, "Q");

  double sum = 0.0;
  for (size_t x = 0; x < p.size(); ++x) {
    const double px = p[x] < kProbZero ? 0.0 : p[x];
    const double qx = q[x] < kProbZero ? 0.0 : q[x];
    if (px == 0.0 && qx == 0.0) continue;  // 0 * f*(0) = 0 and 0 * f(0/0-free)
    if (qx == 0.0 && gen.f_star_at_0 == kInf) return kInf;
    if (gen.term != nullptr)
      sum += gen.term(px, qx);  // covers q = 0 when f*(0) is finite
    else if (qx == 0.0)
      sum += px * gen.f_star_at_0;
    else
      sum += gen.f(px / qx) * qx;
  }
  return std::max(sum, 0.0);
}

double tv_metric(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ValidationError("tv metric needs equal-length vectors");
  check_probability_vector(p, "P");
  check_probability_vector(q, "Q");
  double sum = 0.0;
  for (size_t x = 0; x < p.size(); ++x) sum += std::abs(p[x] - q[x]);
  return 0.5 * sum;
}

double divergence_between_states(const FGenerator& gen, const DiscretePovm& a,
                                 const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (a.dim() != rho.dim() || a.dim() != sigma.dim())
    throw ValidationError("dimension mismatch between POVM and states");
  return f_divergence(gen, outcome_distribution(a, rho), outcome_distribution(a, sigma));
}

}  // namespace povmkit
