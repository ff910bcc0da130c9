#ifndef POVMKIT_DIVERGENCES_HPP
#define POVMKIT_DIVERGENCES_HPP

#include <string>
#include <vector>

#include "povmkit/povm.hpp"

namespace povmkit {

/* Convex generator of an f-divergence: f(1) = 0, f strictly convex on
   [0,inf), f_star_at_0 = lim_{t->inf} f(t)/t (may be +inf). A generator may
   supply `term(p, q)` computing q*f(p/q) in a numerically preferable form;
   hellinger uses (sqrt p - sqrt q)^2, which is bitwise symmetric. */
struct FGenerator {
  std::string tag;
  double (*f)(double);
  double f_star_at_0;
  double (*term)(double p, double q) = nullptr;
};

// Built-ins: hellinger (sqrt(t)-1)^2, kl t*ln(t), chi2 (t-1)^2.
const FGenerator& hellinger_generator();
const FGenerator& kl_generator();
const FGenerator& chi2_generator();
const FGenerator& f_generator_by_tag(const std::string& tag);

/* sum_x f(p(x)/q(x)) q(x) with the zero conventions
   0*f(p/0) = p*f*(0) and 0*f*(0) = 0 applied exactly; probabilities below
   1e-14 count as exact zeros. May return +infinity. */
double f_divergence(const FGenerator& gen, const std::vector<double>& p,
                    const std::vector<double>& q);

// Total variation: (1/2) sum |p - q|, the discrete form of the sup metric.
double tv_metric(const std::vector<double>& p, const std::vector<double>& q);

double divergence_between_states(const FGenerator& gen, const DiscretePovm& a,
                                 const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace povmkit

#endif
