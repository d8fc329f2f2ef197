#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>
#include <vector>

#include "o1p/errors.hpp"
#include "o1p/families.hpp"
#include "o1p/graph.hpp"

namespace o1p {

enum class EdgeColor : std::uint8_t { planar, crossing };

/// A quadrilateral skeleton face, corners in counter-clockwise order.
/// Sides corner[i]-corner[i+1] are planar; corner[0]-corner[2] and
/// corner[1]-corner[3] are the crossing pair drawn inside it.
struct Face {
  std::array<VertexId, 4> corner{};

  VertexId operator[](std::size_t i) const { return corner[i % 4]; }
  friend bool operator==(const Face&, const Face&) = default;
};

/// Edges changed by `Embedding::rewrite`.
struct RewriteDelta {
  std::vector<std::pair<Edge, EdgeColor>> removed;
  std::vector<std::pair<Edge, EdgeColor>> added;
};

/// 1-planar embedding: a counter-clockwise rotation of all incident edges
/// at every vertex, a planar/crossing color per edge, and the crossing
/// partner of each crossing edge.
///
/// Rotations are doubly linked through a dart table so local rewrites cost
/// O(1) per touched dart regardless of vertex degree.
class Embedding {
 public:
  Embedding() = default;

  /// Kite embedding whose skeleton faces are exactly `faces`.
  static Embedding from_faces(std::span<const Face> faces) {
    Embedding e;
    absl::flat_hash_map<VertexId, std::vector<std::array<VertexId, 3>>> chains;
    for (const Face& f : faces)
      for (int i = 0; i < 4; ++i) chains[f[i]].push_back({f[i + 1], f[i + 2], f[i + 3]});
    std::vector<VertexId> order;
    order.reserve(chains.size());
    for (const auto& [v, _] : chains) order.push_back(v);
    std::sort(order.begin(), order.end());
    for (VertexId v : order) {
      auto linked = link_chains(chains[v]);
      if (!linked.closed)
        throw InternalError("from_faces: faces around vertex " + std::to_string(v) +
                            " do not close up");
      e.ensure_vertex(v);
      e.set_rotation(v, linked.sequence);
    }
    for (const Face& f : faces) e.stamp_face(f);
    return e;
  }

  /// Raw construction from per-vertex rotations and crossing pairs. No
  /// consistency is enforced; see `validate_embedding`.
  static Embedding from_rotation(
      const std::vector<std::pair<VertexId, std::vector<VertexId>>>& rotation,
      const std::vector<std::pair<Edge, Edge>>& crossings) {
    Embedding e;
    for (const auto& [v, nbrs] : rotation) {
      e.ensure_vertex(v);
      if (e.degree_[v] != 0) throw FormatError("vertex " + std::to_string(v) + " listed twice");
      std::vector<VertexId> seen(nbrs);
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw FormatError("vertex " + std::to_string(v) + " lists an edge twice");
      for (VertexId w : nbrs)
        if (w == v) throw FormatError("loop edge at vertex " + std::to_string(v));
      e.set_rotation(v, nbrs);
      for (VertexId w : nbrs) e.edges_.try_emplace(edge_key(v, w), EdgeInfo{});
    }
    for (const auto& [a, b] : crossings) {
      for (const Edge& ed : {a, b}) {
        auto it = e.edges_.find(edge_key(ed.first, ed.second));
        if (it == e.edges_.end())
          throw FormatError("crossing edge " + std::to_string(ed.first) + "-" +
                            std::to_string(ed.second) + " is not in the rotation");
        if (it->second.color == EdgeColor::crossing)
          e.multi_paired_ = true;  // reported by validation
        it->second.color = EdgeColor::crossing;
      }
      e.edges_[edge_key(a.first, a.second)].partner = edge_key(b.first, b.second);
      e.edges_[edge_key(b.first, b.second)].partner = edge_key(a.first, a.second);
    }
    return e;
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t id_bound() const noexcept { return degree_.size(); }

  bool has_vertex(VertexId v) const noexcept { return v < present_.size() && present_[v]; }
  std::size_t degree(VertexId v) const noexcept { return has_vertex(v) ? degree_[v] : 0; }

  bool has_dart(VertexId u, VertexId w) const { return darts_.count(dart_key(u, w)) != 0; }
  bool has_edge(VertexId u, VertexId w) const { return edges_.count(edge_key(u, w)) != 0; }

  EdgeColor color(VertexId u, VertexId w) const { return edge_info(u, w).color; }

  std::optional<Edge> partner(VertexId u, VertexId w) const {
    const auto& info = edge_info(u, w);
    if (info.partner == kNoPartner) return std::nullopt;
    return edge_from_key(info.partner);
  }

  /// Counter-clockwise successor of neighbor `u` around `v`.
  VertexId succ(VertexId v, VertexId u) const { return dart(v, u).next; }
  VertexId pred(VertexId v, VertexId u) const { return dart(v, u).prev; }

  /// Nearest planar neighbor clockwise from `u` around `v`.
  VertexId pred_planar(VertexId v, VertexId u) const {
    VertexId w = pred(v, u);
    for (std::size_t guard = 0; guard <= degree(v); ++guard) {
      if (color(v, w) == EdgeColor::planar) return w;
      w = pred(v, w);
    }
    throw InternalError("vertex " + std::to_string(v) + " has no planar edge");
  }

  VertexId succ_planar(VertexId v, VertexId u) const {
    VertexId w = succ(v, u);
    for (std::size_t guard = 0; guard <= degree(v); ++guard) {
      if (color(v, w) == EdgeColor::planar) return w;
      w = succ(v, w);
    }
    throw InternalError("vertex " + std::to_string(v) + " has no planar edge");
  }

  /// Counter-clockwise neighbor order starting at the smallest neighbor.
  std::vector<VertexId> rotation(VertexId v) const {
    std::vector<VertexId> out;
    if (!has_vertex(v) || degree_[v] == 0) return out;
    VertexId start = anchor_[v];
    VertexId w = start;
    do {
      out.push_back(w);
      w = succ(v, w);
    } while (w != start && out.size() <= degree_[v]);
    auto min_it = std::min_element(out.begin(), out.end());
    std::rotate(out.begin(), min_it, out.end());
    return out;
  }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < present_.size(); ++v)
      if (present_[v]) out.push_back(v);
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto& [key, _] : edges_) out.push_back(edge_from_key(key));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Edge> edges_of_color(EdgeColor c) const {
    std::vector<Edge> out;
    for (const auto& [key, info] : edges_)
      if (info.color == c) out.push_back(edge_from_key(key));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Visits every edge once in unspecified order: f(u, w, color), u < w.
  template <class F>
  void for_each_edge(F&& f) const {
    for (const auto& [key, info] : edges_) {
      const auto [u, w] = edge_from_key(key);
      f(u, w, info.color);
    }
  }

  /// Each crossing pair once, as (smaller edge, larger edge), sorted.
  std::vector<std::pair<Edge, Edge>> crossing_pairs() const {
    std::vector<std::pair<Edge, Edge>> out;
    for (const auto& [key, info] : edges_)
      if (info.color == EdgeColor::crossing && info.partner != kNoPartner && key < info.partner)
        out.emplace_back(edge_from_key(key), edge_from_key(info.partner));
    std::sort(out.begin(), out.end());
    return out;
  }

  Graph to_graph() const {
    Graph g;
    for (VertexId v : vertices()) g.add_vertex(v);
    for (const auto& [key, _] : edges_) {
      auto [u, w] = edge_from_key(key);
      g.add_edge(u, w);
    }
    return g;
  }

  /// True if `f` is a skeleton face carrying its crossing pair, in exactly
  /// this counter-clockwise orientation.
  bool has_kite(const Face& f) const {
    for (int i = 0; i < 4; ++i) {
      const VertexId a = f[i], b = f[i + 1], c = f[i + 2], d = f[i + 3];
      if (!has_dart(a, b) || !has_dart(a, c) || !has_dart(a, d)) return false;
      if (succ(a, b) != c || succ(a, c) != d) return false;
      if (color(a, b) != EdgeColor::planar || color(a, c) != EdgeColor::crossing) return false;
      auto p = partner(a, c);
      if (!p || *p != make_edge(b, d)) return false;
    }
    return true;
  }

  /// The kite to the left of the planar dart u->w, if that face is a
  /// well-formed kite.
  std::optional<Face> kite_left_of(VertexId u, VertexId w) const {
    if (!has_dart(u, w) || color(u, w) != EdgeColor::planar) return std::nullopt;
    const VertexId c = pred_planar(w, u);
    const VertexId d = pred_planar(c, w);
    Face f{{u, w, c, d}};
    if (!has_kite(f)) return std::nullopt;
    return f;
  }

  /// Replaces the kites `old_faces` by the kites `new_faces`. Vertices that
  /// appear only in old faces are deleted; only in new faces, created. For
  /// every other vertex the new corners must span the same wedge as the old.
  RewriteDelta rewrite(std::span<const Face> old_faces, std::span<const Face> new_faces) {
    for (const Face& f : old_faces)
      if (!has_kite(f)) throw FeasibilityError("rewrite: region face is not a kite");

    using Wedge = std::pair<VertexId, std::array<VertexId, 3>>;
    std::vector<Wedge> old_w, new_w;
    for (const Face& f : old_faces)
      for (int i = 0; i < 4; ++i) old_w.push_back({f[i], {f[i + 1], f[i + 2], f[i + 3]}});
    for (const Face& f : new_faces)
      for (int i = 0; i < 4; ++i) new_w.push_back({f[i], {f[i + 1], f[i + 2], f[i + 3]}});
    std::sort(old_w.begin(), old_w.end());
    std::sort(new_w.begin(), new_w.end());
    std::vector<VertexId> touched;
    for (const auto& [v, _] : old_w) touched.push_back(v);
    for (const auto& [v, _] : new_w) touched.push_back(v);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    auto wedges_of = [](const std::vector<Wedge>& all, VertexId v) {
      std::vector<std::array<VertexId, 3>> out;
      auto it = std::lower_bound(all.begin(), all.end(), Wedge{v, {}});
      for (; it != all.end() && it->first == v; ++it) out.push_back(it->second);
      return out;
    };

    struct Plan {
      VertexId v;
      LinkedChain before, after;
      bool in_old, in_new;
    };
    std::vector<Plan> plans;
    for (VertexId v : touched) {
      const auto ow = wedges_of(old_w, v), nw = wedges_of(new_w, v);
      Plan p{v, {}, {}, !ow.empty(), !nw.empty()};
      if (p.in_old) p.before = link_chains(ow);
      if (p.in_new) p.after = link_chains(nw);
      if (p.in_old && p.before.closed && p.before.sequence.size() != degree(v))
        throw FeasibilityError("rewrite: vertex " + std::to_string(v) +
                               " has edges outside the region");
      if (p.in_old && p.in_new && !p.before.closed && !p.after.closed &&
          (p.before.sequence.front() != p.after.sequence.front() ||
           p.before.sequence.back() != p.after.sequence.back()))
        throw InternalError("rewrite: wedge mismatch at vertex " + std::to_string(v));
      if (!p.in_old && !p.after.closed)
        throw InternalError("rewrite: new faces leave vertex " + std::to_string(v) + " open");
      if (!p.in_old && has_vertex(v))
        throw FeasibilityError("rewrite: vertex " + std::to_string(v) + " already exists");
      if (p.in_old && p.in_new && (p.before.closed != p.after.closed))
        throw InternalError("rewrite: vertex " + std::to_string(v) + " changes closure");
      plans.push_back(std::move(p));
    }

    using KeyedColor = std::pair<std::uint64_t, EdgeColor>;
    auto collect = [](std::span<const Face> faces) {
      std::vector<KeyedColor> out;
      for (const Face& f : faces)
        for (int i = 0; i < 4; ++i) {
          out.emplace_back(edge_key(f[i], f[i + 1]), EdgeColor::planar);
          if (i < 2) out.emplace_back(edge_key(f[i], f[i + 2]), EdgeColor::crossing);
        }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end(),
                            [](const KeyedColor& a, const KeyedColor& b) { return a.first == b.first; }),
                out.end());
      return out;
    };
    const auto old_edges = collect(old_faces), new_edges = collect(new_faces);
    auto contains = [](const std::vector<KeyedColor>& list, std::uint64_t key) {
      auto it = std::lower_bound(list.begin(), list.end(), KeyedColor{key, EdgeColor::planar});
      return it != list.end() && it->first == key;
    };
    RewriteDelta delta;
    for (const auto& [key, c] : old_edges)
      if (!contains(new_edges, key)) delta.removed.emplace_back(edge_from_key(key), c);
    for (const auto& [key, c] : new_edges) {
      if (contains(old_edges, key)) continue;
      if (edges_.count(key)) {
        auto [u, w] = edge_from_key(key);
        throw FeasibilityError("rewrite: edge " + std::to_string(u) + "-" + std::to_string(w) +
                               " would be doubled");
      }
      delta.added.emplace_back(edge_from_key(key), c);
    }
    std::sort(delta.removed.begin(), delta.removed.end());
    std::sort(delta.added.begin(), delta.added.end());

    for (const Plan& p : plans) {
      const VertexId v = p.v;
      if (p.in_old && p.before.closed) {
        for (VertexId w : p.before.sequence) darts_.erase(dart_key(v, w));
        degree_[v] = 0;
        anchor_[v] = kNoVertex;
        if (!p.in_new) {
          present_[v] = 0;
          --vertex_count_;
        }
      } else if (p.in_old) {
        const auto& seq = p.before.sequence;
        for (std::size_t i = 1; i + 1 < seq.size(); ++i) unlink(v, seq[i]);
      }
      if (!p.in_new) continue;
      if (p.after.closed) {
        ensure_vertex(v);
        set_rotation(v, p.after.sequence);
      } else {
        const auto& seq = p.after.sequence;
        VertexId at = seq.front();
        for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
          link_after(v, at, seq[i]);
          at = seq[i];
        }
      }
    }
    for (const auto& [edge, _] : delta.removed) edges_.erase(edge_key(edge.first, edge.second));
    for (const Face& f : new_faces) stamp_face(f);
    return delta;
  }

 private:
  static constexpr std::uint64_t kNoPartner = ~std::uint64_t{0};

  struct Dart {
    VertexId next = kNoVertex;
    VertexId prev = kNoVertex;
  };
  struct EdgeInfo {
    EdgeColor color = EdgeColor::planar;
    std::uint64_t partner = kNoPartner;
  };

  struct LinkedChain {
    std::vector<VertexId> sequence;
    bool closed = false;
  };

  static std::uint64_t dart_key(VertexId u, VertexId w) {
    return (static_cast<std::uint64_t>(u) << 32) | w;
  }

  /// Joins corner wedges [b, c, d] at one vertex into a single path or cycle.
  static LinkedChain link_chains(const std::vector<std::array<VertexId, 3>>& chains) {
    std::vector<std::pair<VertexId, std::size_t>> by_first;
    std::vector<VertexId> lasts;
    for (std::size_t i = 0; i < chains.size(); ++i) {
      by_first.emplace_back(chains[i][0], i);
      lasts.push_back(chains[i][2]);
    }
    std::sort(by_first.begin(), by_first.end());
    std::sort(lasts.begin(), lasts.end());
    for (std::size_t i = 1; i < by_first.size(); ++i)
      if (by_first[i].first == by_first[i - 1].first) throw InternalError("corner wedges overlap");
    auto find_first = [&](VertexId v) -> std::optional<std::size_t> {
      auto it = std::lower_bound(by_first.begin(), by_first.end(), std::pair<VertexId, std::size_t>{v, 0});
      if (it == by_first.end() || it->first != v) return std::nullopt;
      return it->second;
    };
    std::size_t start = 0;
    bool closed = true;
    for (std::size_t i = 0; i < chains.size(); ++i)
      if (!std::binary_search(lasts.begin(), lasts.end(), chains[i][0])) {
        start = i;
        closed = false;
        break;
      }
    LinkedChain out;
    out.closed = closed;
    std::size_t cur = start;
    std::size_t used = 0;
    out.sequence.push_back(chains[cur][0]);
    while (true) {
      out.sequence.push_back(chains[cur][1]);
      out.sequence.push_back(chains[cur][2]);
      ++used;
      auto nxt = find_first(chains[cur][2]);
      if (!nxt || *nxt == start || used > chains.size()) break;
      cur = *nxt;
    }
    if (used != chains.size()) throw InternalError("corner wedges do not form one fan");
    if (closed) out.sequence.pop_back();
    return out;
  }

  const Dart& dart(VertexId v, VertexId u) const {
    auto it = darts_.find(dart_key(v, u));
    if (it == darts_.end())
      throw InternalError("no dart " + std::to_string(v) + "->" + std::to_string(u));
    return it->second;
  }

  const EdgeInfo& edge_info(VertexId u, VertexId w) const {
    auto it = edges_.find(edge_key(u, w));
    if (it == edges_.end())
      throw InternalError("no edge " + std::to_string(u) + "-" + std::to_string(w));
    return it->second;
  }

  void ensure_vertex(VertexId v) {
    if (v >= present_.size()) {
      present_.resize(static_cast<std::size_t>(v) + 1, 0);
      degree_.resize(static_cast<std::size_t>(v) + 1, 0);
      anchor_.resize(static_cast<std::size_t>(v) + 1, kNoVertex);
    }
    if (!present_[v]) {
      present_[v] = 1;
      ++vertex_count_;
    }
  }

  void set_rotation(VertexId v, const std::vector<VertexId>& cyc) {
    const std::size_t d = cyc.size();
    for (std::size_t i = 0; i < d; ++i)
      darts_[dart_key(v, cyc[i])] = Dart{cyc[(i + 1) % d], cyc[(i + d - 1) % d]};
    degree_[v] = static_cast<std::uint32_t>(d);
    anchor_[v] = d ? cyc.front() : kNoVertex;
  }

  void unlink(VertexId v, VertexId w) {
    auto it = darts_.find(dart_key(v, w));
    const Dart d = it->second;
    darts_.erase(it);
    darts_[dart_key(v, d.prev)].next = d.next;
    darts_[dart_key(v, d.next)].prev = d.prev;
    --degree_[v];
    if (anchor_[v] == w) anchor_[v] = d.next;
  }

  void link_after(VertexId v, VertexId at, VertexId w) {
    Dart& a = darts_.at(dart_key(v, at));
    const VertexId nxt = a.next;
    a.next = w;
    darts_[dart_key(v, nxt)].prev = w;
    darts_[dart_key(v, w)] = Dart{nxt, at};
    ++degree_[v];
  }

  void stamp_face(const Face& f) {
    for (int i = 0; i < 4; ++i) {
      auto& side = edges_[edge_key(f[i], f[i + 1])];
      side.color = EdgeColor::planar;
      side.partner = kNoPartner;
    }
    const auto d1 = edge_key(f[0], f[2]);
    const auto d2 = edge_key(f[1], f[3]);
    edges_[d1] = EdgeInfo{EdgeColor::crossing, d2};
    edges_[d2] = EdgeInfo{EdgeColor::crossing, d1};
  }

  friend struct EmbeddingInspector;

  absl::flat_hash_map<std::uint64_t, Dart> darts_;
  absl::flat_hash_map<std::uint64_t, EdgeInfo> edges_;
  std::vector<std::uint8_t> present_;
  std::vector<std::uint32_t> degree_;
  std::vector<VertexId> anchor_;
  std::size_t vertex_count_ = 0;
  bool multi_paired_ = false;
};

/// Read access to raw rotation data for validation.
struct EmbeddingInspector {
  static bool multi_paired(const Embedding& e) { return e.multi_paired_; }
};

namespace detail {

/// Walks the face left of each listed dart; every dart must be planar.
inline std::vector<std::vector<VertexId>> walk_faces(const Embedding& e,
                                                     const std::vector<std::pair<VertexId, VertexId>>& darts) {
  absl::flat_hash_set<std::uint64_t> used;
  used.reserve(darts.size());
  auto key = [](VertexId u, VertexId w) { return (static_cast<std::uint64_t>(u) << 32) | w; };
  std::vector<std::vector<VertexId>> faces;
  for (const auto& [u0, w0] : darts) {
    if (used.count(key(u0, w0))) continue;
    std::vector<VertexId> face;
    VertexId u = u0, w = w0;
    while (used.insert(key(u, w)).second) {
      face.push_back(u);
      const VertexId nxt = e.pred_planar(w, u);
      u = w;
      w = nxt;
    }
    if (u != u0 || w != w0) throw Error("face walk from " + std::to_string(u0) + " did not close");
    faces.push_back(std::move(face));
  }
  if (used.size() != darts.size()) throw Error("face walk used a non-planar dart");
  return faces;
}

}  // namespace detail

/// Faces of the planar skeleton by walking each planar dart once, keeping
/// the face on the left. Faces are returned as corner sequences.
inline std::vector<std::vector<VertexId>> skeleton_faces(const Embedding& e) {
  std::vector<std::pair<VertexId, VertexId>> darts;
  bool missing = false;
  Edge bad{};
  e.for_each_edge([&](VertexId u, VertexId w, EdgeColor c) {
    if (!e.has_dart(u, w) || !e.has_dart(w, u)) {
      if (!missing || Edge{u, w} < bad) bad = {u, w};
      missing = true;
    }
    if (c == EdgeColor::planar) {
      darts.emplace_back(u, w);
      darts.emplace_back(w, u);
    }
  });
  if (missing)
    throw Error("skeleton_faces: edge " + std::to_string(bad.first) + "-" + std::to_string(bad.second) +
                " is missing from an endpoint's rotation");
  std::sort(darts.begin(), darts.end());
  return detail::walk_faces(e, darts);
}

struct ValidationReport {
  bool ok = true;
  /// First violated condition: edge-set, rotation, pairing, counts, euler,
  /// quadrilateral-faces, kite, bipartite, 3-connected.
  std::string condition;
  std::string detail;

  explicit operator bool() const noexcept { return ok; }
};

namespace detail {

inline ValidationReport fail(std::string condition, std::string detail) {
  return ValidationReport{false, std::move(condition), std::move(detail)};
}

inline std::string edge_str(const Edge& e) {
  return std::to_string(e.first) + "-" + std::to_string(e.second);
}

/// Brute-force skeleton 3-connectivity: remove every single vertex and
/// every pair and test connectivity.
inline bool three_connected_bruteforce(const Graph& g) {
  if (g.vertex_count() < 4) return false;
  auto vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const VertexId one[] = {vs[i]};
    if (!is_connected_without(g, one)) return false;
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const VertexId two[] = {vs[i], vs[j]};
      if (!is_connected_without(g, two)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Checks that `e` is an optimal 1-planar embedding of exactly `g`.
///
/// Skeleton 3-connectivity uses the face criterion: a 2-connected plane
/// quadrangulation is 3-connected iff no face repeats a corner and no face
/// diagonal joins two vertices that are adjacent or opposite elsewhere.
/// The crossing pair in each face makes both conditions visible as
/// duplicate or colliding edges.
inline ValidationReport validate_embedding(const Embedding& e, const Graph& g) {
  using detail::edge_str;
  using detail::fail;
  if (e.vertex_count() != g.vertex_count()) return fail("edge-set", "vertex sets differ");
  for (VertexId v : g.vertices())
    if (!e.has_vertex(v)) return fail("edge-set", "vertex " + std::to_string(v) + " is not embedded");
  if (e.edge_count() != g.edge_count()) return fail("edge-set", "edge counts differ");
  for (VertexId u : g.vertices())
    for (VertexId w : g.neighbors(u))
      if (u < w && !e.has_edge(u, w)) return fail("edge-set", "edge " + edge_str({u, w}) + " is not embedded");

  for (VertexId v : e.vertices()) {
    auto rot = e.rotation(v);
    if (rot.size() != e.degree(v)) return fail("rotation", "broken rotation at " + std::to_string(v));
    for (VertexId w : rot)
      if (!e.has_dart(w, v))
        return fail("rotation", "edge " + edge_str(make_edge(v, w)) + " is missing from the rotation of " +
                                    std::to_string(w));
  }
  if (EmbeddingInspector::multi_paired(e)) return fail("pairing", "an edge is paired twice");

  std::optional<ValidationReport> first;
  std::size_t planar = 0, crossing = 0;
  std::vector<std::pair<VertexId, VertexId>> darts;
  darts.reserve(e.edge_count());
  e.for_each_edge([&](VertexId u, VertexId w, EdgeColor c) {
    if (c == EdgeColor::planar) {
      ++planar;
      darts.emplace_back(u, w);
      darts.emplace_back(w, u);
      return;
    }
    ++crossing;
    if (first) return;
    auto p = e.partner(u, w);
    if (!p) {
      first = fail("pairing", "crossing edge " + edge_str({u, w}) + " has no partner");
    } else if (!e.has_edge(p->first, p->second) || e.color(p->first, p->second) != EdgeColor::crossing) {
      first = fail("pairing", "partner of " + edge_str({u, w}) + " is not a crossing edge");
    } else if (auto back = e.partner(p->first, p->second); !back || *back != Edge{u, w}) {
      first = fail("pairing", "pairing of " + edge_str({u, w}) + " is not symmetric");
    } else if (p->first == u || p->first == w || p->second == u || p->second == w) {
      first = fail("pairing", "crossing pair " + edge_str({u, w}) + " shares an endpoint");
    }
  });
  if (first) return *first;
  const std::size_t n = e.vertex_count();
  if (n < 4 || planar != 2 * n - 4 || crossing != 2 * (n - 2))
    return fail("counts", std::to_string(planar) + " planar and " + std::to_string(crossing) +
                              " crossing edges for n=" + std::to_string(n));

  // connectivity and 2-coloring of the skeleton in one sweep
  std::vector<std::int8_t> side(e.id_bound(), -1);
  const auto vs = e.vertices();
  std::vector<VertexId> stack{vs.front()};
  side[vs.front()] = 0;
  std::size_t reached = 1;
  std::optional<Edge> odd;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : e.rotation(u)) {
      if (e.color(u, w) != EdgeColor::planar) continue;
      if (side[w] < 0) {
        side[w] = static_cast<std::int8_t>(1 - side[u]);
        ++reached;
        stack.push_back(w);
      } else if (side[w] == side[u] && !odd) {
        odd = make_edge(u, w);
      }
    }
  }
  if (reached != n) return fail("euler", "planar skeleton is disconnected");

  std::vector<std::vector<VertexId>> faces;
  try {
    faces = detail::walk_faces(e, darts);
  } catch (const Error& ex) {
    return fail("rotation", ex.what());
  }
  const long euler = static_cast<long>(n) - static_cast<long>(planar) + static_cast<long>(faces.size());
  if (euler != 2) return fail("euler", "V - E + F = " + std::to_string(euler));
  for (const auto& f : faces)
    if (f.size() != 4)
      return fail("quadrilateral-faces",
                  "face at " + std::to_string(f.front()) + " has " + std::to_string(f.size()) + " corners");

  std::vector<std::uint64_t> diagonals;
  diagonals.reserve(2 * faces.size());
  for (const auto& f : faces) {
    std::array<VertexId, 4> sorted{f[0], f[1], f[2], f[3]};
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return fail("3-connected", "face at " + std::to_string(f[0]) + " repeats a corner");
    // each corner wedge between consecutive planar edges holds exactly the diagonal
    for (int i = 0; i < 4; ++i) {
      const VertexId a = f[i], b = f[(i + 1) % 4], c = f[(i + 2) % 4];
      if (e.succ(a, b) != c || e.pred(a, f[(i + 3) % 4]) != c)
        return fail("kite", "face corner " + std::to_string(a) + " does not hold diagonal " + edge_str(make_edge(a, c)));
    }
    if (!e.has_edge(f[0], f[2]) || !e.has_edge(f[1], f[3]))
      return fail("kite", "face at " + std::to_string(f[0]) + " lacks a diagonal");
    auto p = e.partner(f[0], f[2]);
    if (e.color(f[0], f[2]) != EdgeColor::crossing || !p || *p != make_edge(f[1], f[3]))
      return fail("kite", "diagonals of face at " + std::to_string(f[0]) + " are not a crossing pair");
    diagonals.push_back(edge_key(f[0], f[2]));
    diagonals.push_back(edge_key(f[1], f[3]));
  }
  std::sort(diagonals.begin(), diagonals.end());
  if (auto it = std::adjacent_find(diagonals.begin(), diagonals.end()); it != diagonals.end())
    return fail("kite", "crossing edge " + edge_str(edge_from_key(*it)) + " sits in two faces");
  if (diagonals.size() != crossing) return fail("kite", "a crossing pair is not inside any face");
  if (odd) return fail("bipartite", "planar edge " + edge_str(*odd) + " is odd");
  // crossing edges coinciding with planar ones are ruled out by the
  // edge-key table, so distinct diagonals are all that is left to check
  return ValidationReport{};
}

/// Embedding of an extended wheel graph. parity 0: pole_p has planar edges
/// to even cycle positions and pole_q to odd ones; parity 1 swaps them.
inline Embedding xw_embedding(const XwDescriptor& d, int parity = 0) {
  const std::size_t len = d.cycle.size();
  if (d.k < 3 || len != static_cast<std::size_t>(2 * d.k))
    throw std::invalid_argument("xw_embedding: malformed descriptor");
  auto c = [&](std::size_t i) { return d.cycle[i % len]; };
  const VertexId inner = parity == 0 ? d.pole_p : d.pole_q;
  const VertexId outer = parity == 0 ? d.pole_q : d.pole_p;
  std::vector<Face> faces;
  for (std::size_t j = 0; j < static_cast<std::size_t>(d.k); ++j) {
    faces.push_back(Face{{inner, c(2 * j), c(2 * j + 1), c(2 * j + 2)}});
    faces.push_back(Face{{outer, c(2 * j + 3), c(2 * j + 2), c(2 * j + 1)}});
  }
  return Embedding::from_faces(faces);
}

/// The fixed embedding of make_xw(k): pole p planar to even positions.
inline Embedding canonical_xw_embedding(int k) {
  if (k < 3)
    throw std::invalid_argument("canonical_xw_embedding: k must be at least 3, got " +
                                std::to_string(k));
  return xw_embedding(make_xw(k).descriptor, 0);
}

}  // namespace o1p
