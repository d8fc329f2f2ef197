#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "o1p/candidates.hpp"
#include "o1p/embedding.hpp"
#include "o1p/errors.hpp"
#include "o1p/families.hpp"
#include "o1p/graph.hpp"

namespace o1p {

namespace detail {

inline std::string edge_name(VertexId u, VertexId w) {
  return std::to_string(std::min(u, w)) + "-" + std::to_string(std::max(u, w));
}

inline void require_edge(const Graph& g, VertexId u, VertexId w, const char* what) {
  if (!g.has_edge(u, w)) throw FeasibilityError(std::string(what) + ": edge " + edge_name(u, w) + " is absent");
}

inline void require_no_edge(const Graph& g, VertexId u, VertexId w, const char* what) {
  if (g.has_edge(u, w))
    throw FeasibilityError(std::string(what) + ": blocking edge " + edge_name(u, w));
}

}  // namespace detail

/// Mutates `g` by the recorded SR step after checking that every removed
/// edge exists, every inserted edge is absent and x has exactly the six
/// recorded neighbors.
inline void apply_step(Graph& g, const SrStep& s) {
  if (!g.has_vertex(s.x) || g.degree(s.x) != 6)
    throw FeasibilityError("SR: vertex " + std::to_string(s.x) + " is not a candidate");
  for (VertexId y : {s.v, s.a, s.b, s.w1, s.w2, s.w3}) detail::require_edge(g, s.x, y, "SR");
  detail::require_edge(g, s.a, s.b, "SR");
  for (VertexId w : {s.w1, s.w2, s.w3}) detail::require_no_edge(g, s.v, w, "SR");
  g.remove_vertex(s.x);
  g.remove_edge(s.a, s.b);
  for (VertexId w : {s.w1, s.w2, s.w3}) g.add_edge(s.v, w);
}

inline void apply_step(Graph& g, const CrStep& s) {
  for (int i = 0; i < 4; ++i) {
    const VertexId y = s.inner[i];
    if (!g.has_vertex(y) || g.degree(y) != 6)
      throw FeasibilityError("CR: vertex " + std::to_string(y) + " is not a candidate");
    for (int j = i + 1; j < 4; ++j) detail::require_edge(g, y, s.inner[j], "CR");
    detail::require_edge(g, y, s.outer[i], "CR");
    detail::require_edge(g, y, s.outer[(i + 1) % 4], "CR");
    detail::require_edge(g, y, s.outer[(i + 3) % 4], "CR");
    detail::require_edge(g, s.outer[i], s.outer[(i + 1) % 4], "CR");
  }
  detail::require_no_edge(g, s.outer[0], s.outer[2], "CR");
  detail::require_no_edge(g, s.outer[1], s.outer[3], "CR");
  for (VertexId y : s.inner) g.remove_vertex(y);
  g.add_edge(s.outer[0], s.outer[2]);
  g.add_edge(s.outer[1], s.outer[3]);
}

inline void apply_step(Graph& g, const ReductionStep& s) {
  std::visit([&](const auto& st) { apply_step(g, st); }, s);
}

/// SR(x -> v) on a good candidate. Returns the fully resolved step.
inline SrStep apply_sr(Graph& g, VertexId x, VertexId v) {
  const SrStep s = make_sr_step(g, x, v);
  apply_step(g, s);
  return s;
}

inline CrStep apply_cr(Graph& g, std::array<VertexId, 4> quad) {
  const CrStep s = make_cr_step(g, quad);
  apply_step(g, s);
  return s;
}

/// Exact inverse of `apply_step` on abstract graphs.
inline void undo_step(Graph& g, const SrStep& s) {
  for (VertexId w : {s.w1, s.w2, s.w3}) g.remove_edge(s.v, w);
  g.add_edge(s.a, s.b);
  g.add_vertex(s.x);
  for (VertexId y : {s.v, s.a, s.b, s.w1, s.w2, s.w3}) g.add_edge(s.x, y);
}

inline void undo_step(Graph& g, const CrStep& s) {
  g.remove_edge(s.outer[0], s.outer[2]);
  g.remove_edge(s.outer[1], s.outer[3]);
  for (VertexId y : s.inner) g.add_vertex(y);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) g.add_edge(s.inner[i], s.inner[j]);
    g.add_edge(s.inner[i], s.outer[i]);
    g.add_edge(s.inner[i], s.outer[(i + 1) % 4]);
    g.add_edge(s.inner[i], s.outer[(i + 3) % 4]);
  }
}

inline void undo_step(Graph& g, const ReductionStep& s) {
  std::visit([&](const auto& st) { undo_step(g, st); }, s);
}

/// Checked inverse on an abstract graph: the step's removed vertices must
/// be absent and its inserted edges present before they are reverted.
inline void apply_inverse(Graph& g, const SrStep& s) {
  if (g.has_vertex(s.x)) throw FeasibilityError("SR inverse: vertex " + std::to_string(s.x) + " exists");
  for (VertexId y : {s.v, s.a, s.b, s.w1, s.w2, s.w3})
    if (!g.has_vertex(y)) throw FeasibilityError("SR inverse: vertex " + std::to_string(y) + " is missing");
  for (VertexId w : {s.w1, s.w2, s.w3}) detail::require_edge(g, s.v, w, "SR inverse");
  detail::require_no_edge(g, s.a, s.b, "SR inverse");
  undo_step(g, s);
}

inline void apply_inverse(Graph& g, const CrStep& s) {
  for (int i = 0; i < 4; ++i) {
    if (g.has_vertex(s.inner[i]))
      throw FeasibilityError("CR inverse: vertex " + std::to_string(s.inner[i]) + " exists");
    detail::require_edge(g, s.outer[i], s.outer[(i + 1) % 4], "CR inverse");
  }
  detail::require_edge(g, s.outer[0], s.outer[2], "CR inverse");
  detail::require_edge(g, s.outer[1], s.outer[3], "CR inverse");
  undo_step(g, s);
}

inline void apply_inverse(Graph& g, const ReductionStep& s) {
  std::visit([&](const auto& st) { apply_inverse(g, st); }, s);
}

inline EdgeChange edge_change(const ReductionStep& s, const Graph& before) {
  if (auto* sr = std::get_if<SrStep>(&s)) return edge_change(*sr, before);
  return edge_change(std::get<CrStep>(s));
}

/// Rotates/reflects a crossed cube so outer[0] is its smallest outer vertex
/// and outer[1] the smaller of that vertex's two cycle neighbors.
inline CrStep normalize(CrStep s) {
  int start = static_cast<int>(std::min_element(s.outer.begin(), s.outer.end()) - s.outer.begin());
  CrStep out;
  const bool reflect = s.outer[(start + 3) % 4] < s.outer[(start + 1) % 4];
  for (int i = 0; i < 4; ++i) {
    const int j = reflect ? (start - i + 4) % 4 : (start + i) % 4;
    out.outer[i] = s.outer[j];
    out.inner[i] = s.inner[j];
  }
  return out;
}

/// An inverse reduction applied to an embedding; `forward` is the step
/// that undoes it.
struct ExpansionStep {
  ReductionStep forward;

  friend bool operator==(const ExpansionStep&, const ExpansionStep&) = default;
};

/// The two kites on either side of the planar edge w1-v, seen from v.
struct SplitSite {
  VertexId r1, c1, r2, c2;
};

inline std::optional<SplitSite> split_site(const Embedding& e, VertexId w1, VertexId v) {
  if (!e.has_dart(v, w1) || e.color(v, w1) != EdgeColor::planar) return std::nullopt;
  SplitSite s;
  s.r1 = e.succ(v, w1);
  s.c1 = e.succ(v, s.r1);
  s.r2 = e.pred(v, w1);
  s.c2 = e.pred(v, s.r2);
  return s;
}

/// Why a Q_v-splitting at w1-v cannot be performed, or empty if it can.
inline std::string sr_inverse_blocker(const Embedding& e, VertexId w1, VertexId v) {
  auto site = split_site(e, w1, v);
  if (!site) return "edge " + detail::edge_name(w1, v) + " is not a planar edge";
  if (e.degree(v) < 8) return "vertex " + std::to_string(v) + " has degree " + std::to_string(e.degree(v));
  if (site->c1 == site->c2) return "kites around " + detail::edge_name(w1, v) + " are degenerate";
  if (e.has_edge(site->c1, site->c2))
    return "chord " + detail::edge_name(site->c1, site->c2) + " is already present";
  return {};
}

/// Splits v along the planar edge w1-v, inserting vertex `x` as the centre
/// of a crossed star. n+1, m+4.
inline ExpansionStep expand_sr_inverse(Embedding& e, VertexId w1, VertexId v, VertexId x,
                                       RewriteDelta* delta = nullptr) {
  if (auto why = sr_inverse_blocker(e, w1, v); !why.empty())
    throw FeasibilityError("infeasible expansion: " + why);
  if (e.has_vertex(x)) throw FeasibilityError("infeasible expansion: vertex " + std::to_string(x) + " exists");
  const SplitSite s = *split_site(e, w1, v);
  const Face old_faces[] = {Face{{v, w1, s.r1, s.c1}}, Face{{v, s.c2, s.r2, w1}}};
  const Face new_faces[] = {Face{{x, w1, s.r1, s.c1}}, Face{{x, s.c1, v, s.c2}}, Face{{x, s.c2, s.r2, w1}}};
  RewriteDelta d = e.rewrite(old_faces, new_faces);
  if (delta) *delta = std::move(d);
  SrStep st;
  st.x = x;
  st.v = v;
  st.a = std::min(s.c1, s.c2);
  st.b = std::max(s.c1, s.c2);
  st.w1 = w1;
  st.w2 = std::min(s.r1, s.r2);
  st.w3 = std::max(s.r1, s.r2);
  return ExpansionStep{st};
}

/// Inserts a crossed cube into the kite `f`; ids[i] is tied to corner f[i].
inline ExpansionStep expand_cr_inverse(Embedding& e, const Face& f, std::array<VertexId, 4> ids,
                                       RewriteDelta* delta = nullptr) {
  if (!e.has_kite(f)) throw FeasibilityError("infeasible expansion: face is not a kite");
  for (VertexId y : ids)
    if (e.has_vertex(y)) throw FeasibilityError("infeasible expansion: vertex " + std::to_string(y) + " exists");
  const Face old_faces[] = {f};
  std::vector<Face> new_faces;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    new_faces.push_back(Face{{f[i], f[j], ids[j], ids[i]}});
  }
  new_faces.push_back(Face{ids});
  RewriteDelta d = e.rewrite(old_faces, new_faces);
  if (delta) *delta = std::move(d);
  CrStep st;
  for (int i = 0; i < 4; ++i) {
    st.outer[i] = f[i];
    st.inner[i] = ids[i];
  }
  return ExpansionStep{normalize(st)};
}

/// Re-performs, on an embedding, the expansion that `forward` undoes.
inline void expand_matching(Embedding& e, const ReductionStep& forward) {
  if (auto* sr = std::get_if<SrStep>(&forward)) {
    if (e.has_vertex(sr->x)) throw CertificateError("SR " + std::to_string(sr->x) + ": vertex already present");
    auto site = split_site(e, sr->w1, sr->v);
    if (!site) throw CertificateError("SR " + std::to_string(sr->x) + ": " + detail::edge_name(sr->w1, sr->v) + " is not planar");
    const bool ab = std::minmax(site->c1, site->c2) == std::minmax(sr->a, sr->b);
    const bool ww = std::minmax(site->r1, site->r2) == std::minmax(sr->w2, sr->w3);
    if (!ab || !ww) throw CertificateError("SR " + std::to_string(sr->x) + ": recorded neighbors do not match the embedding");
    try {
      expand_sr_inverse(e, sr->w1, sr->v, sr->x);
    } catch (const FeasibilityError& ex) {
      throw CertificateError("SR " + std::to_string(sr->x) + ": " + ex.what());
    }
    return;
  }
  const CrStep& cr = std::get<CrStep>(forward);
  for (int dir : {1, 3}) {
    Face f;
    std::array<VertexId, 4> ids{};
    for (int i = 0; i < 4; ++i) {
      f.corner[i] = cr.outer[(i * dir) % 4];
      ids[i] = cr.inner[(i * dir) % 4];
    }
    if (!e.has_kite(f)) continue;
    try {
      expand_cr_inverse(e, f, ids);
    } catch (const FeasibilityError& ex) {
      throw CertificateError("CR " + std::to_string(cr.inner[0]) + ": " + ex.what());
    }
    return;
  }
  throw CertificateError("CR " + std::to_string(cr.inner[0]) + ": outer cycle is not a kite");
}

struct Trace {
  std::size_t initial_n = 0;
  std::size_t initial_m = 0;
  std::vector<ReductionStep> steps;
  std::optional<XwDescriptor> terminal;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Applies the inverses of `trace` to `seed`, last step first.
inline Embedding replay_inverse(Embedding seed, const Trace& trace) {
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) expand_matching(seed, *it);
  return seed;
}

namespace detail {

/// Candidate seed embeddings of an extended wheel, up to reflection.
inline std::vector<XwDescriptor> xw_variants(const XwDescriptor& d) {
  if (d.k != 3) return {d};
  std::vector<VertexId> all(d.cycle);
  all.push_back(d.pole_p);
  all.push_back(d.pole_q);
  // antipode[v]: the one vertex of XW_6 not adjacent to v
  std::vector<std::pair<VertexId, VertexId>> pairs{{d.pole_p, d.pole_q}};
  for (int i = 0; i < 3; ++i) pairs.emplace_back(d.cycle[i], d.cycle[i + 3]);
  std::vector<XwDescriptor> out;
  for (int pi = 0; pi < 4; ++pi) {
    std::vector<std::pair<VertexId, VertexId>> rest;
    for (int j = 0; j < 4; ++j)
      if (j != pi) rest.push_back(pairs[j]);
    for (int flip1 = 0; flip1 < 2; ++flip1)
      for (int flip2 = 0; flip2 < 2; ++flip2)
        for (int order = 0; order < 2; ++order) {
          auto p1 = rest[order == 0 ? 1 : 2];
          auto p2 = rest[order == 0 ? 2 : 1];
          if (flip1) std::swap(p1.first, p1.second);
          if (flip2) std::swap(p2.first, p2.second);
          XwDescriptor v;
          v.k = 3;
          v.pole_p = pairs[pi].first;
          v.pole_q = pairs[pi].second;
          v.cycle = {rest[0].first, p1.first, p2.first, rest[0].second, p1.second, p2.second};
          out.push_back(v);
        }
  }
  return out;
}

}  // namespace detail

/// Every embedding seed tried for a terminal wheel.
inline std::vector<Embedding> xw_seed_embeddings(const XwDescriptor& d) {
  std::vector<Embedding> out;
  for (const auto& v : detail::xw_variants(d))
    for (int parity = 0; parity < 2; ++parity) out.push_back(xw_embedding(v, parity));
  return out;
}

/// Replays `trace` from its terminal wheel, trying the wheel's embeddings
/// until one admits the whole inverse sequence.
inline Embedding replay_from_xw(const Trace& trace) {
  if (!trace.terminal) throw CertificateError("trace has no terminal wheel");
  std::string last_error = "no seed embedding";
  for (Embedding seed : xw_seed_embeddings(*trace.terminal)) {
    if (trace.steps.empty()) return seed;
    try {
      expand_matching(seed, trace.steps.back());
    } catch (const CertificateError& ex) {
      last_error = ex.what();
      continue;
    }
    try {
      for (auto it = std::next(trace.steps.rbegin()); it < trace.steps.rend(); ++it) expand_matching(seed, *it);
      return seed;
    } catch (const CertificateError& ex) {
      last_error = ex.what();
    }
  }
  throw CertificateError("replay failed: " + last_error);
}

}  // namespace o1p
