#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "o1p/errors.hpp"
#include "o1p/graph.hpp"

namespace o1p {

/// SR(x -> v): delete x and chord a-b, join v to w1 (planar) and w2, w3.
struct SrStep {
  VertexId x = kNoVertex;
  VertexId v = kNoVertex;
  VertexId a = kNoVertex, b = kNoVertex;  // a < b
  VertexId w1 = kNoVertex;
  VertexId w2 = kNoVertex, w3 = kNoVertex;  // w2 < w3

  friend bool operator==(const SrStep&, const SrStep&) = default;
};

/// CR on the inner quad x1..x4 with outer cycle v1..v4; x_i is tied to v_i
/// by a planar edge and misses v_{i+2}.
struct CrStep {
  std::array<VertexId, 4> inner{};
  std::array<VertexId, 4> outer{};

  friend bool operator==(const CrStep&, const CrStep&) = default;
};

using ReductionStep = std::variant<SrStep, CrStep>;

struct EdgeChange {
  std::vector<Edge> removed;
  std::vector<Edge> added;
  std::vector<VertexId> removed_vertices;
};

inline EdgeChange edge_change(const SrStep& s, const Graph& before) {
  EdgeChange c;
  for (VertexId y : before.neighbors(s.x)) c.removed.push_back(make_edge(s.x, y));
  c.removed.push_back(make_edge(s.a, s.b));
  c.added = {make_edge(s.v, s.w1), make_edge(s.v, s.w2), make_edge(s.v, s.w3)};
  c.removed_vertices = {s.x};
  return c;
}

inline EdgeChange edge_change(const CrStep& s) {
  EdgeChange c;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) c.removed.push_back(make_edge(s.inner[i], s.inner[j]));
    c.removed.push_back(make_edge(s.inner[i], s.outer[i]));
    c.removed.push_back(make_edge(s.inner[i], s.outer[(i + 1) % 4]));
    c.removed.push_back(make_edge(s.inner[i], s.outer[(i + 3) % 4]));
  }
  c.added = {make_edge(s.outer[0], s.outer[2]), make_edge(s.outer[1], s.outer[3])};
  c.removed_vertices.assign(s.inner.begin(), s.inner.end());
  return c;
}

/// Sorted local degrees inside the subgraph induced by x and its neighbors.
struct DegreeVector {
  std::array<int, 7> tuple{};
  int tau() const { return tuple[0]; }

  friend bool operator==(const DegreeVector&, const DegreeVector&) = default;
};

inline constexpr std::array<int, 7> kCrVector{4, 4, 5, 5, 5, 5, 6};

struct LocalView {
  std::array<VertexId, 6> nbr{};
  std::array<int, 6> local{};  // local degree of nbr[i] in H(x)
  std::array<std::array<bool, 6>, 6> adj{};
};

inline LocalView local_view(const Graph& g, VertexId x) {
  if (!g.has_vertex(x) || g.degree(x) != 6)
    throw FeasibilityError("degree_vector: vertex " + std::to_string(x) + " does not have degree 6");
  LocalView lv;
  auto ns = g.neighbors(x);
  std::copy(ns.begin(), ns.end(), lv.nbr.begin());
  std::sort(lv.nbr.begin(), lv.nbr.end());
  // short adjacency lists are scanned once; pairs of long ones are probed
  constexpr std::size_t kScan = 12;
  std::array<bool, 6> scanned{};
  for (int i = 0; i < 6; ++i) {
    if (g.degree(lv.nbr[i]) > kScan) continue;
    scanned[i] = true;
    for (VertexId z : g.neighbors(lv.nbr[i]))
      for (int j = 0; j < 6; ++j)
        if (lv.nbr[j] == z) lv.adj[i][j] = lv.adj[j][i] = true;
  }
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (!scanned[i] && !scanned[j] && g.has_edge(lv.nbr[i], lv.nbr[j])) lv.adj[i][j] = lv.adj[j][i] = true;
  for (int i = 0; i < 6; ++i) {
    lv.local[i] = 1;
    for (int j = 0; j < 6; ++j) lv.local[i] += lv.adj[i][j];
  }
  return lv;
}

inline DegreeVector degree_vector(const Graph& g, VertexId x) {
  const LocalView lv = local_view(g, x);
  DegreeVector dv;
  for (int i = 0; i < 6; ++i) dv.tuple[i] = lv.local[i];
  dv.tuple[6] = 6;
  std::sort(dv.tuple.begin(), dv.tuple.end());
  return dv;
}

/// Resolves SR(x -> v) on the current graph, or explains why it cannot fire.
struct SrResolution {
  std::optional<SrStep> step;
  std::string reason;
};

inline SrResolution resolve_sr(const Graph& g, const LocalView& lv, VertexId x, VertexId v) {
  SrResolution r;
  int vi = -1;
  for (int i = 0; i < 6; ++i)
    if (lv.nbr[i] == v) vi = i;
  if (vi < 0) {
    r.reason = std::to_string(v) + " is not a neighbor of " + std::to_string(x);
    return r;
  }
  if (lv.local[vi] != 3) {
    r.reason = "target " + std::to_string(v) + " has local degree " + std::to_string(lv.local[vi]);
    return r;
  }
  std::vector<int> ab, rest;
  for (int i = 0; i < 6; ++i) {
    if (i == vi) continue;
    (lv.adj[vi][i] ? ab : rest).push_back(i);
  }
  const int ia = ab[0], ib = ab[1];
  if (!lv.adj[ia][ib]) {
    r.reason = "chord " + std::to_string(lv.nbr[ia]) + "-" + std::to_string(lv.nbr[ib]) + " is absent";
    return r;
  }
  int black = -1;
  for (int i : rest) {
    bool hub = lv.adj[i][ia] && lv.adj[i][ib];
    for (int j : rest)
      if (j != i) hub = hub && lv.adj[i][j];
    if (!hub) continue;
    if (black >= 0) {
      r.reason = "planar partner of " + std::to_string(v) + " is ambiguous";
      return r;
    }
    black = i;
  }
  if (black < 0) {
    r.reason = "no planar partner for " + std::to_string(v);
    return r;
  }
  SrStep s;
  s.x = x;
  s.v = v;
  s.a = std::min(lv.nbr[ia], lv.nbr[ib]);
  s.b = std::max(lv.nbr[ia], lv.nbr[ib]);
  s.w1 = lv.nbr[black];
  std::vector<VertexId> reds;
  for (int i : rest)
    if (i != black) reds.push_back(lv.nbr[i]);
  s.w2 = std::min(reds[0], reds[1]);
  s.w3 = std::max(reds[0], reds[1]);
  for (VertexId w : {s.w1, s.w2, s.w3})
    if (g.has_edge(v, w)) {
      r.reason = "blocking edge " + std::to_string(std::min(v, w)) + "-" + std::to_string(std::max(v, w));
      return r;
    }
  r.step = s;
  return r;
}

inline SrResolution resolve_sr(const Graph& g, VertexId x, VertexId v) {
  if (!g.has_vertex(x) || g.degree(x) != 6) return {std::nullopt, "vertex " + std::to_string(x) + " is not a candidate"};
  return resolve_sr(g, local_view(g, x), x, v);
}

/// Checks that `quad` is the inner 4-cycle of a crossed cube and orders it.
inline std::optional<CrStep> match_crossed_cube(const Graph& g, std::array<VertexId, 4> quad) {
  for (VertexId y : quad)
    if (!g.has_vertex(y) || g.degree(y) != 6) return std::nullopt;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (quad[i] == quad[j] || !g.has_edge(quad[i], quad[j])) return std::nullopt;
  std::vector<VertexId> outer;
  for (VertexId y : quad)
    for (VertexId z : g.neighbors(y))
      if (std::find(quad.begin(), quad.end(), z) == quad.end()) outer.push_back(z);
  std::sort(outer.begin(), outer.end());
  outer.erase(std::unique(outer.begin(), outer.end()), outer.end());
  if (outer.size() != 4) return std::nullopt;
  CrStep s;
  s.outer[0] = outer[0];
  std::vector<VertexId> cyc_nbrs, opposite;
  for (int i = 1; i < 4; ++i) (g.has_edge(outer[0], outer[i]) ? cyc_nbrs : opposite).push_back(outer[i]);
  if (cyc_nbrs.size() != 2) return std::nullopt;
  s.outer[1] = cyc_nbrs[0];
  s.outer[2] = opposite[0];
  s.outer[3] = cyc_nbrs[1];
  if (!g.has_edge(s.outer[1], s.outer[2]) || !g.has_edge(s.outer[2], s.outer[3]) ||
      g.has_edge(s.outer[1], s.outer[3]))
    return std::nullopt;
  std::array<bool, 4> used{};
  for (int i = 0; i < 4; ++i) {
    int found = -1;
    for (int j = 0; j < 4; ++j) {
      const VertexId y = quad[j];
      const bool miss = !g.has_edge(y, s.outer[(i + 2) % 4]);
      const bool hit = g.has_edge(y, s.outer[i]) && g.has_edge(y, s.outer[(i + 1) % 4]) &&
                       g.has_edge(y, s.outer[(i + 3) % 4]);
      if (miss && hit) {
        if (found >= 0) return std::nullopt;
        found = j;
      }
    }
    if (found < 0 || used[found]) return std::nullopt;
    used[found] = true;
    s.inner[i] = quad[found];
  }
  return s;
}

struct NonCandidate {
  friend bool operator==(const NonCandidate&, const NonCandidate&) = default;
};
struct GoodSR {
  std::vector<VertexId> targets;  // ascending
  friend bool operator==(const GoodSR&, const GoodSR&) = default;
};
struct GoodCR {
  std::array<VertexId, 4> quad{};  // ascending
  friend bool operator==(const GoodCR&, const GoodCR&) = default;
};
struct Bad {
  friend bool operator==(const Bad&, const Bad&) = default;
};

using CandidateStatus = std::variant<NonCandidate, GoodSR, GoodCR, Bad>;

inline bool is_good(const CandidateStatus& s) {
  return std::holds_alternative<GoodSR>(s) || std::holds_alternative<GoodCR>(s);
}

inline std::string status_name(const CandidateStatus& s) {
  switch (s.index()) {
    case 0: return "non-candidate";
    case 1: return "good-sr";
    case 2: return "good-cr";
    default: return "bad";
  }
}

/// All K4s {x, y1, y2, y3} of candidates whose members carry the crossed
/// cube vector, ascending, lexicographically ordered.
inline std::vector<std::array<VertexId, 4>> cr_quads(const Graph& g, VertexId x, const LocalView& lv) {
  std::vector<std::array<VertexId, 4>> out;
  std::array<bool, 6> ok{};
  for (int i = 0; i < 6; ++i)
    ok[i] = g.degree(lv.nbr[i]) == 6 && lv.local[i] >= 4 && degree_vector(g, lv.nbr[i]).tuple == kCrVector;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int l = j + 1; l < 6; ++l) {
        if (!ok[i] || !ok[j] || !ok[l]) continue;
        if (!lv.adj[i][j] || !lv.adj[i][l] || !lv.adj[j][l]) continue;
        std::array<VertexId, 4> q{x, lv.nbr[i], lv.nbr[j], lv.nbr[l]};
        std::sort(q.begin(), q.end());
        out.push_back(q);
      }
  std::sort(out.begin(), out.end());
  return out;
}

inline CandidateStatus classify(const Graph& g, VertexId x) {
  if (!g.has_vertex(x) || g.degree(x) != 6) return NonCandidate{};
  const LocalView lv = local_view(g, x);
  const int tau = *std::min_element(lv.local.begin(), lv.local.end());
  if (tau == 3) {
    GoodSR sr;
    for (int i = 0; i < 6; ++i)
      if (lv.local[i] == 3 && resolve_sr(g, lv, x, lv.nbr[i]).step) sr.targets.push_back(lv.nbr[i]);
    if (sr.targets.empty()) return Bad{};
    return sr;
  }
  if (tau == 4) {
    std::array<int, 7> own{};
    for (int i = 0; i < 6; ++i) own[i] = lv.local[i];
    own[6] = 6;
    std::sort(own.begin(), own.end());
    if (own != kCrVector) return Bad{};
    for (const auto& q : cr_quads(g, x, lv))
      if (match_crossed_cube(g, q)) return GoodCR{q};
  }
  return Bad{};
}

inline SrStep make_sr_step(const Graph& g, VertexId x, VertexId v) {
  auto r = resolve_sr(g, x, v);
  if (!r.step) throw FeasibilityError("SR(" + std::to_string(x) + "->" + std::to_string(v) + "): " + r.reason);
  return *r.step;
}

inline CrStep make_cr_step(const Graph& g, std::array<VertexId, 4> quad) {
  std::sort(quad.begin(), quad.end());
  auto s = match_crossed_cube(g, quad);
  if (!s)
    throw FeasibilityError("CR(" + std::to_string(quad[0]) + "," + std::to_string(quad[1]) + "," +
                           std::to_string(quad[2]) + "," + std::to_string(quad[3]) +
                           "): not the inner cycle of a crossed cube");
  return *s;
}

/// Superset of the vertices whose status can differ after `change` was
/// applied to produce `g`. Work is bounded by the degrees of the changed
/// endpoints' common candidates.
inline std::vector<VertexId> affected_vertices(const Graph& g, const EdgeChange& change) {
  std::vector<VertexId> s1;
  auto touch_edge = [&](const Edge& e) {
    for (VertexId u : {e.first, e.second})
      if (g.has_vertex(u)) s1.push_back(u);
    if (!g.has_vertex(e.first) || !g.has_vertex(e.second)) return;
    VertexId lo = e.first, hi = e.second;
    if (g.degree(lo) > g.degree(hi)) std::swap(lo, hi);
    for (VertexId z : g.neighbors(lo))
      if (g.degree(z) == 6 && g.has_edge(z, hi)) s1.push_back(z);
  };
  for (const Edge& e : change.added) touch_edge(e);
  for (const Edge& e : change.removed) touch_edge(e);
  std::sort(s1.begin(), s1.end());
  s1.erase(std::unique(s1.begin(), s1.end()), s1.end());
  std::vector<VertexId> out(s1);
  for (VertexId y : s1)
    if (g.degree(y) <= 8)
      for (VertexId z : g.neighbors(y))
        if (g.degree(z) == 6) out.push_back(z);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace o1p
