/* Minimal sufficient reduction of a discrete POVM and the predicates
   around it: proportionality grouping, likelihood-ratio grouping,
   sufficiency certificates, isomorphism matching. */

#include "povmkit/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "povmkit/errors.hpp"

namespace povmkit {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct Kept {
  int index;          // position in the input POVM
  double trace;
  CMatrix normalized;  // effect / trace
};

std::vector<int> vanishing_outcomes(const DiscretePovm& a, double zero_tol) {
  std::vector<int> out;
  for (int i = 0; i < a.size(); ++i)
    if (a.effect(i).trace_real() < zero_tol) out.push_back(i);
  return out;
}

std::vector<Kept> kept_outcomes(const DiscretePovm& a, double zero_tol) {
  std::vector<Kept> kept;
  for (int i = 0; i < a.size(); ++i) {
    const double tr = a.effect(i).trace_real();
    if (tr < zero_tol) continue;
    CMatrix n = a.effect(i).matrix();
    n *= Complex(1.0 / tr, 0.0);
    kept.push_back({i, tr, std::move(n)});
  }
  return kept;
}

/* Shared tail of both reduction routes: turn a grouping of the kept
   outcomes into a report, with the 3-epsilon coherence check done against
   the group representative in the caller-supplied distance. */
ReductionReport build_report(const DiscretePovm& a, const std::vector<Kept>& kept,
                             UnionFind& uf,
                             const std::function<double(int, int)>& member_distance,
                             double eps, const Tolerances& tol) {
  ReductionReport report;
  for (int i : vanishing_outcomes(a, tol.zero)) report.dropped.push_back(a.label(i));

  const int m = static_cast<int>(kept.size());
  std::vector<int> root_order;  // group roots in order of earliest member
  std::map<int, std::vector<int>> members;
  for (int k = 0; k < m; ++k) {
    const int r = uf.find(k);
    auto [it, inserted] = members.try_emplace(r);
    if (inserted) root_order.push_back(r);
    it->second.push_back(k);
  }

  std::vector<std::pair<std::string, CMatrix>> reduced_outcomes;
  for (int r : root_order) {
    const auto& group = members.at(r);

    int rep = group.front();  // member with largest trace
    for (int k : group)
      if (kept[k].trace > kept[rep].trace) rep = k;

    for (int k : group) {
      if (k == rep) continue;
      const double d = member_distance(k, rep);
      if (d > 3.0 * eps) {
        std::ostringstream os;
        os << "tolerance ambiguity: outcome \"" << a.label(kept[k].index)
           << "\" sits " << d << " from its group representative \""
           << a.label(kept[rep].index) << "\" (3*eps = " << 3.0 * eps << ")";
        throw ToleranceAmbiguity(os.str());
      }
    }

    std::string group_label = a.label(kept[group.front()].index);
    for (int k : group) group_label = std::min(group_label, a.label(kept[k].index));

    CMatrix sum(a.dim());
    double trace_sum = 0.0;
    for (int k : group) {
      sum += a.effect(kept[k].index).matrix();
      trace_sum += kept[k].trace;
    }
    for (int k : group) {
      report.groups[a.label(kept[k].index)] = group_label;
      report.h[a.label(kept[k].index)] = kept[k].trace / trace_sum;
    }
    reduced_outcomes.emplace_back(std::move(group_label), std::move(sum));
  }

  report.reduced = DiscretePovm(std::move(reduced_outcomes), tol);
  if (!is_pairwise_linearly_independent(*report.reduced, tol))
    throw ToleranceAmbiguity(
        "tolerance ambiguity: reduced POVM is not pairwise linearly independent");
  return report;
}

}  // namespace

ReductionReport reduce(const DiscretePovm& a, const Tolerances& tol) {
  const auto kept = kept_outcomes(a, tol.zero);
  const int m = static_cast<int>(kept.size());
  UnionFind uf(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (frobenius_distance(kept[i].normalized, kept[j].normalized) <= tol.prop)
        uf.unite(i, j);
  auto dist = [&](int i, int j) {
    return frobenius_distance(kept[i].normalized, kept[j].normalized);
  };
  return build_report(a, kept, uf, dist, tol.prop, tol);
}

std::vector<std::vector<double>> lsb_vectors(const DiscretePovm& a, const StateEnsemble& e,
                                             const Tolerances& tol) {
  if (a.dim() != e.dim()) throw ValidationError("dimension mismatch between POVM and ensemble");
  if (!e.informationally_complete())
    throw ValidationError("ensemble is not informationally complete");
  const auto& pivotal = e.pivotal().matrix().matrix();
  std::vector<std::vector<double>> out(a.size());
  for (int x = 0; x < a.size(); ++x) {
    const auto& ax = a.effect(x).matrix();
    const double denom = trace_product(pivotal, ax).real();
    if (denom < tol.zero) {
      std::ostringstream os;
      os << "vanishing outcome \"" << a.label(x) << "\": pivotal probability " << denom;
      throw ValidationError(os.str());
    }
    out[x].resize(e.size());
    for (int i = 0; i < e.size(); ++i)
      out[x][i] = trace_product(e.states()[i].matrix().matrix(), ax).real() / denom;
  }
  return out;
}

ReductionReport reduce_via_lsb(const DiscretePovm& a, const StateEnsemble& e,
                               const Tolerances& tol) {
  const auto kept = kept_outcomes(a, tol.zero);
  std::vector<std::pair<std::string, CMatrix>> survivors;
  for (const auto& k : kept)
    survivors.emplace_back(a.label(k.index), a.effect(k.index).matrix());
  const DiscretePovm trimmed(std::move(survivors), tol);
  const auto vectors = lsb_vectors(trimmed, e, tol);

  auto max_norm = [&](int i, int j) {
    double d = 0.0;
    for (size_t c = 0; c < vectors[i].size(); ++c)
      d = std::max(d, std::abs(vectors[i][c] - vectors[j][c]));
    return d;
  };

  const int m = static_cast<int>(kept.size());
  UnionFind uf(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (max_norm(i, j) <= tol.lsb) uf.unite(i, j);
  return build_report(a, kept, uf, max_norm, tol.lsb, tol);
}

bool is_pairwise_linearly_independent(const DiscretePovm& a, const Tolerances& tol) {
  const auto kept = kept_outcomes(a, tol.zero);
  if (kept.size() != static_cast<size_t>(a.size())) return false;  // vanishing outcome
  for (size_t i = 0; i < kept.size(); ++i)
    for (size_t j = i + 1; j < kept.size(); ++j)
      if (frobenius_distance(kept[i].normalized, kept[j].normalized) <= tol.prop) return false;
  return true;
}

SufficiencyCertificate is_sufficient_statistic(const DiscretePovm& a,
                                               const std::map<std::string, std::string>& t,
                                               const Tolerances& tol) {
  SufficiencyCertificate cert;
  std::map<std::string, std::vector<int>> fibers;
  std::vector<std::string> fiber_order;
  for (int i = 0; i < a.size(); ++i) {
    const auto it = t.find(a.label(i));
    if (it == t.end())
      throw ValidationError("statistic is not total: no image for label \"" + a.label(i) + "\"");
    auto [pos, inserted] = fibers.try_emplace(it->second);
    if (inserted) fiber_order.push_back(it->second);
    pos->second.push_back(i);
  }

  cert.holds = true;
  for (const auto& target : fiber_order) {
    const auto& fiber = fibers.at(target);
    CMatrix sum(a.dim());
    double trace_sum = 0.0;
    std::vector<int> live;
    for (int i : fiber) {
      const double tr = a.effect(i).trace_real();
      cert.h[a.label(i)] = tr;
      if (tr < tol.zero) continue;
      live.push_back(i);
      sum += a.effect(i).matrix();
      trace_sum += tr;
    }
    if (live.empty()) {
      cert.fiber_g.emplace(target, HermitianMatrix::zero(a.dim()));
      continue;
    }
    for (size_t u = 0; u < live.size() && cert.holds; ++u)
      for (size_t v = u + 1; v < live.size(); ++v) {
        CMatrix nu = a.effect(live[u]).matrix();
        nu *= Complex(1.0 / a.effect(live[u]).trace_real(), 0.0);
        CMatrix nv = a.effect(live[v]).matrix();
        nv *= Complex(1.0 / a.effect(live[v]).trace_real(), 0.0);
        if (frobenius_distance(nu, nv) > tol.prop) {
          cert.holds = false;
          cert.failure = "fiber \"" + target + "\" mixes non-proportional effects \"" +
                         a.label(live[u]) + "\" and \"" + a.label(live[v]) + "\"";
          break;
        }
      }
    sum *= Complex(1.0 / trace_sum, 0.0);
    cert.fiber_g.emplace(target, HermitianMatrix(sum, 1e-8));
  }
  if (!cert.holds) {
    cert.h.clear();
    cert.fiber_g.clear();
  }
  return cert;
}

namespace {

// Kuhn augmenting paths; adjacency is tiny at desk scale.
bool try_augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& match_b,
                 std::vector<bool>& visited) {
  for (int v : adj[u]) {
    if (visited[v]) continue;
    visited[v] = true;
    if (match_b[v] < 0 || try_augment(match_b[v], adj, match_b, visited)) {
      match_b[v] = u;
      return true;
    }
  }
  return false;
}

std::optional<Bijection> match_povms(const DiscretePovm& a, const DiscretePovm& b,
                                     const Tolerances& tol) {
  if (a.dim() != b.dim() || a.size() != b.size()) return std::nullopt;
  const int n = a.size();

  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (frobenius_distance(a.effect(i).matrix(), b.effect(j).matrix()) <= tol.iso)
        adj[i].push_back(j);

  // Ambiguity: one effect compatible with two partners that are themselves
  // far apart means the matching depends on the tolerance. Refuse to guess.
  for (int i = 0; i < n; ++i)
    for (size_t u = 0; u < adj[i].size(); ++u)
      for (size_t v = u + 1; v < adj[i].size(); ++v)
        if (frobenius_distance(b.effect(adj[i][u]).matrix(), b.effect(adj[i][v]).matrix()) >
            tol.iso)
          throw ToleranceAmbiguity("ambiguous matching: \"" + a.label(i) +
                                   "\" matches non-equivalent partners \"" +
                                   b.label(adj[i][u]) + "\" and \"" + b.label(adj[i][v]) +
                                   "\"");
  std::vector<std::vector<int>> radj(n);
  for (int i = 0; i < n; ++i)
    for (int j : adj[i]) radj[j].push_back(i);
  for (int j = 0; j < n; ++j)
    for (size_t u = 0; u < radj[j].size(); ++u)
      for (size_t v = u + 1; v < radj[j].size(); ++v)
        if (frobenius_distance(a.effect(radj[j][u]).matrix(),
                               a.effect(radj[j][v]).matrix()) > tol.iso)
          throw ToleranceAmbiguity("ambiguous matching: \"" + b.label(j) +
                                   "\" matches non-equivalent partners \"" +
                                   a.label(radj[j][u]) + "\" and \"" + a.label(radj[j][v]) +
                                   "\"");

  std::vector<int> match_b(n, -1);
  int matched = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<bool> visited(n, false);
    if (try_augment(i, adj, match_b, visited)) ++matched;
  }
  if (matched != n) return std::nullopt;

  Bijection out(n);
  for (int j = 0; j < n; ++j) out[match_b[j]] = {a.label(match_b[j]), b.label(j)};
  return out;
}

DiscretePovm drop_vanishing(const DiscretePovm& a, const Tolerances& tol) {
  std::vector<std::pair<std::string, CMatrix>> outcomes;
  for (int i = 0; i < a.size(); ++i)
    if (a.effect(i).trace_real() >= tol.zero)
      outcomes.emplace_back(a.label(i), a.effect(i).matrix());
  if (outcomes.empty()) throw ValidationError("POVM has no non-vanishing outcomes");
  return DiscretePovm(std::move(outcomes), tol);
}

}  // namespace

std::optional<Bijection> strict_isomorphic(const DiscretePovm& a, const DiscretePovm& b,
                                           const Tolerances& tol) {
  return match_povms(a, b, tol);
}

std::optional<Bijection> almost_isomorphic(const DiscretePovm& a, const DiscretePovm& b,
                                           const Tolerances& tol) {
  return match_povms(drop_vanishing(a, tol), drop_vanishing(b, tol), tol);
}

}  // namespace povmkit
