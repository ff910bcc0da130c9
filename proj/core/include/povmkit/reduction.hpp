#ifndef POVMKIT_REDUCTION_HPP
#define POVMKIT_REDUCTION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "povmkit/povm.hpp"

namespace povmkit {

/* Result of a minimal sufficient reduction. For every surviving input
   outcome x: A(x) = h(x) * reduced(groups[x]) within the proportionality
   tolerance, with h(x) = tr A(x) / tr(group sum). */
struct ReductionReport {
  std::map<std::string, std::string> groups;  // input label -> group label
  std::vector<std::string> dropped;           // labels with trace below zero tolerance
  std::optional<DiscretePovm> reduced;
  std::map<std::string, double> h;
};

/* Groups outcomes under pairwise proportionality of trace-normalized
   effects (union-find), sums each group, drops vanishing outcomes first.
   Group label = lexicographically smallest member label; groups appear in
   input order of their earliest member. Throws ToleranceAmbiguity when a
   borderline chain puts some member more than 3*prop from its group
   representative. */
ReductionReport reduce(const DiscretePovm& a, const Tolerances& tol = {});

/* Likelihood-ratio vector of one outcome against the ensemble: component i
   is tr(rho_i A(x)) / tr(rho_* A(x)). Defined for non-vanishing outcomes;
   the weighted average of components is 1. */
std::vector<std::vector<double>> lsb_vectors(const DiscretePovm& a, const StateEnsemble& e,
                                             const Tolerances& tol = {});

// Same report shape as reduce, but groups by likelihood-ratio vectors
// agreeing within lsb in max-norm.
ReductionReport reduce_via_lsb(const DiscretePovm& a, const StateEnsemble& e,
                               const Tolerances& tol = {});

// Non-vanishing and no two effects proportional: the discrete
// characterization of minimal sufficiency.
bool is_pairwise_linearly_independent(const DiscretePovm& a, const Tolerances& tol = {});

/* Sufficiency certificate for a statistic: every fiber of T holds only
   mutually proportional (non-vanishing) effects. When it holds,
   A(x) = h(x) * G(T(x)) with trace-normalized G per fiber. */
struct SufficiencyCertificate {
  bool holds = false;
  std::map<std::string, double> h;                // input label -> tr A(x)
  std::map<std::string, HermitianMatrix> fiber_g;  // target label -> unit-trace G
  std::string failure;                             // first offending fiber when !holds
};

SufficiencyCertificate is_sufficient_statistic(const DiscretePovm& a,
                                               const std::map<std::string, std::string>& t,
                                               const Tolerances& tol = {});

using Bijection = std::vector<std::pair<std::string, std::string>>;

/* Bijective relabeling matching effects within iso (Frobenius), found by
   bipartite matching. nullopt when sizes/dims differ or no perfect matching
   exists; ToleranceAmbiguity when an effect matches two partners that are
   not themselves within iso of each other. */
std::optional<Bijection> strict_isomorphic(const DiscretePovm& a, const DiscretePovm& b,
                                           const Tolerances& tol = {});

// Drop vanishing outcomes from both sides, then match strictly.
std::optional<Bijection> almost_isomorphic(const DiscretePovm& a, const DiscretePovm& b,
                                           const Tolerances& tol = {});

}  // namespace povmkit

#endif
