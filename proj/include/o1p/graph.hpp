#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <absl/container/flat_hash_set.h>
#include <utility>
#include <vector>

#include "o1p/errors.hpp"

namespace o1p {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Undirected edge with normalized endpoints (first < second).
using Edge = std::pair<VertexId, VertexId>;

inline Edge make_edge(VertexId u, VertexId w) { return u < w ? Edge{u, w} : Edge{w, u}; }

inline std::uint64_t edge_key(VertexId u, VertexId w) {
  if (u > w) std::swap(u, w);
  return (static_cast<std::uint64_t>(u) << 32) | w;
}

inline Edge edge_from_key(std::uint64_t key) {
  return {static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffu)};
}

/// Simple undirected graph over stable integer ids.
///
/// Removed vertices leave a tombstone: their id stays reserved so that
/// reduction traces can keep referring to it. `compact` renumbers.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n), alive_(n, 1), alive_count_(n) {}

  std::size_t vertex_count() const noexcept { return alive_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  /// One past the largest id ever allocated.
  std::size_t id_bound() const noexcept { return adj_.size(); }

  bool has_vertex(VertexId v) const noexcept { return v < adj_.size() && alive_[v]; }

  std::size_t degree(VertexId v) const {
    check_vertex(v);
    return adj_[v].size();
  }

  std::span<const VertexId> neighbors(VertexId v) const {
    check_vertex(v);
    return adj_[v];
  }

  std::vector<VertexId> sorted_neighbors(VertexId v) const {
    check_vertex(v);
    std::vector<VertexId> out(adj_[v].begin(), adj_[v].end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_edge(VertexId u, VertexId w) const {
    if (u == w) return false;
    return edge_set_.count(edge_key(u, w)) != 0;
  }

  /// Alive vertices in ascending order.
  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(alive_count_);
    for (VertexId v = 0; v < adj_.size(); ++v)
      if (alive_[v]) out.push_back(v);
    return out;
  }

  /// All edges, normalized and sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < adj_.size(); ++u) {
      if (!alive_[u]) continue;
      for (VertexId w : adj_[u])
        if (u < w) out.emplace_back(u, w);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  VertexId add_vertex() {
    adj_.emplace_back();
    alive_.push_back(1);
    ++alive_count_;
    return static_cast<VertexId>(adj_.size() - 1);
  }

  /// Revives a tombstoned id or extends the id range up to `v`.
  void add_vertex(VertexId v) {
    if (v == kNoVertex) throw InternalError("vertex id out of range");
    if (v >= adj_.size()) {
      adj_.resize(static_cast<std::size_t>(v) + 1);
      alive_.resize(static_cast<std::size_t>(v) + 1, 0);
    }
    if (alive_[v]) throw InternalError("vertex " + std::to_string(v) + " already present");
    alive_[v] = 1;
    ++alive_count_;
  }

  void remove_vertex(VertexId v) {
    check_vertex(v);
    for (VertexId w : adj_[v]) {
      erase_from(adj_[w], v);
      edge_set_.erase(edge_key(v, w));
    }
    edge_count_ -= adj_[v].size();
    adj_[v].clear();
    adj_[v].shrink_to_fit();
    alive_[v] = 0;
    --alive_count_;
  }

  /// Returns false if the edge was already present.
  bool add_edge(VertexId u, VertexId w) {
    check_vertex(u);
    check_vertex(w);
    if (u == w) throw InternalError("loop edge at vertex " + std::to_string(u));
    if (!edge_set_.insert(edge_key(u, w)).second) return false;
    adj_[u].push_back(w);
    adj_[w].push_back(u);
    ++edge_count_;
    return true;
  }

  /// Returns false if the edge was absent.
  bool remove_edge(VertexId u, VertexId w) {
    if (edge_set_.erase(edge_key(u, w)) == 0) return false;
    erase_from(adj_[u], w);
    erase_from(adj_[w], u);
    --edge_count_;
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices() == b.vertices() && a.edges() == b.edges();
  }

 private:
  void check_vertex(VertexId v) const {
    if (!has_vertex(v)) throw InternalError("no vertex " + std::to_string(v));
  }

  static void erase_from(std::vector<VertexId>& list, VertexId v) {
    auto it = std::find(list.begin(), list.end(), v);
    if (it == list.end()) return;
    *it = list.back();
    list.pop_back();
  }

  std::vector<std::vector<VertexId>> adj_;
  std::vector<std::uint8_t> alive_;
  absl::flat_hash_set<std::uint64_t> edge_set_;
  std::size_t alive_count_ = 0;
  std::size_t edge_count_ = 0;
};

struct BuildResult {
  Graph graph;
  /// Edges listed more than once; each repeat is reported once per extra occurrence.
  std::vector<Edge> duplicates;
};

inline BuildResult build_graph(std::size_t n, std::span<const Edge> edges) {
  BuildResult out{Graph(n), {}};
  for (const auto& [u, w] : edges) {
    if (u >= n || w >= n)
      throw FormatError("edge " + std::to_string(u) + "-" + std::to_string(w) +
                        " references a vertex outside [0, " + std::to_string(n) + ")");
    if (u == w) throw FormatError("loop edge at vertex " + std::to_string(u));
    if (!out.graph.add_edge(u, w)) out.duplicates.push_back(make_edge(u, w));
  }
  return out;
}

inline Graph build_graph_strict(std::size_t n, std::span<const Edge> edges) {
  auto built = build_graph(n, edges);
  if (!built.duplicates.empty())
    throw FormatError("duplicate edge " + std::to_string(built.duplicates.front().first) + "-" +
                      std::to_string(built.duplicates.front().second));
  return std::move(built.graph);
}

inline std::map<std::size_t, std::size_t> degree_histogram(const Graph& g) {
  std::map<std::size_t, std::size_t> hist;
  for (VertexId v : g.vertices()) ++hist[g.degree(v)];
  return hist;
}

struct Compacted {
  Graph graph;
  /// old id -> new id, kNoVertex for tombstones.
  std::vector<VertexId> new_id;
};

/// Renumbers alive vertices to 0..n-1 preserving their relative order.
inline Compacted compact(const Graph& g) {
  Compacted out{Graph(g.vertex_count()), std::vector<VertexId>(g.id_bound(), kNoVertex)};
  VertexId next = 0;
  for (VertexId v : g.vertices()) out.new_id[v] = next++;
  for (const auto& [u, w] : g.edges()) out.graph.add_edge(out.new_id[u], out.new_id[w]);
  return out;
}

/// Connectivity of `g` with the vertices in `removed` deleted.
inline bool is_connected_without(const Graph& g, std::span<const VertexId> removed) {
  std::vector<std::uint8_t> seen(g.id_bound(), 0);
  for (VertexId r : removed)
    if (g.has_vertex(r)) seen[r] = 1;
  std::size_t remaining = g.vertex_count();
  for (VertexId r : removed)
    if (g.has_vertex(r)) --remaining;
  if (remaining == 0) return true;
  VertexId start = kNoVertex;
  for (VertexId v : g.vertices())
    if (!seen[v]) {
      start = v;
      break;
    }
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(u)) {
      if (seen[w]) continue;
      seen[w] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == remaining;
}

inline bool is_connected(const Graph& g) { return is_connected_without(g, {}); }

using FourCycle = std::array<VertexId, 4>;

namespace detail {

/// Rotate/reflect so the smallest vertex comes first and the second entry
/// is the smaller of its two cycle neighbors.
inline FourCycle normalize_cycle(FourCycle c) {
  auto min_it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), min_it, c.end());
  if (c[3] < c[1]) std::swap(c[1], c[3]);
  return c;
}

}  // namespace detail

/// Every 4-cycle whose vertex removal disconnects the graph, normalized and
/// deduplicated up to rotation and reflection. Validation-grade cost.
inline std::vector<FourCycle> find_separating_4cycles(const Graph& g) {
  if (!is_connected(g)) throw Error("find_separating_4cycles: graph is disconnected");
  std::set<FourCycle> cycles;
  std::map<VertexId, std::vector<VertexId>> middles;
  for (VertexId a : g.vertices()) {
    middles.clear();
    for (VertexId b : g.neighbors(a))
      for (VertexId c : g.neighbors(b))
        if (c > a) middles[c].push_back(b);
    for (auto& [c, mids] : middles) {
      if (mids.size() < 2) continue;
      std::sort(mids.begin(), mids.end());
      for (std::size_t i = 0; i < mids.size(); ++i)
        for (std::size_t j = i + 1; j < mids.size(); ++j)
          cycles.insert(detail::normalize_cycle({a, mids[i], c, mids[j]}));
    }
  }
  std::map<std::array<VertexId, 4>, bool> separates;
  std::vector<FourCycle> out;
  for (const auto& cyc : cycles) {
    auto key = cyc;
    std::sort(key.begin(), key.end());
    auto it = separates.find(key);
    if (it == separates.end())
      it = separates.emplace(key, g.vertex_count() > 4 && !is_connected_without(g, key)).first;
    if (it->second) out.push_back(cyc);
  }
  return out;
}

inline bool has_separating_4cycle(const Graph& g) { return !find_separating_4cycles(g).empty(); }

}  // namespace o1p
