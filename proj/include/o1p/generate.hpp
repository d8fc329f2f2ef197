#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <absl/container/flat_hash_map.h>
#include <vector>

#include "o1p/embedding.hpp"
#include "o1p/errors.hpp"
#include "o1p/families.hpp"
#include "o1p/graph.hpp"
#include "o1p/reduce.hpp"

namespace o1p {

/// Seeded stream: std::mt19937_64, bounded draws by rejection of the low
/// (2^64 mod bound) outputs followed by modulo.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/reject-mod";

  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InternalError("Rng::below(0)");
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t r;
    do r = eng_();
    while (r < threshold);
    return r % bound;
  }

 private:
  std::mt19937_64 eng_;
};

struct Member {
  Graph graph;
  Embedding embedding;
};

namespace detail {

/// Planar edges kept in an indexable vector for O(1) uniform picks.
class PlanarIndex {
 public:
  explicit PlanarIndex(const Embedding& e) {
    for (const Edge& ed : e.edges_of_color(EdgeColor::planar)) insert(ed);
  }

  std::size_t size() const { return edges_.size(); }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }

  void update(const RewriteDelta& d) {
    for (const auto& [ed, c] : d.removed)
      if (c == EdgeColor::planar) erase(ed);
    for (const auto& [ed, c] : d.added)
      if (c == EdgeColor::planar) insert(ed);
  }

 private:
  void insert(const Edge& ed) {
    pos_[edge_key(ed.first, ed.second)] = edges_.size();
    edges_.push_back(ed);
  }
  void erase(const Edge& ed) {
    auto it = pos_.find(edge_key(ed.first, ed.second));
    const std::size_t i = it->second;
    pos_.erase(it);
    if (i + 1 != edges_.size()) {
      edges_[i] = edges_.back();
      pos_[edge_key(edges_[i].first, edges_[i].second)] = i;
    }
    edges_.pop_back();
  }

  std::vector<Edge> edges_;
  absl::flat_hash_map<std::uint64_t, std::size_t> pos_;
};

}  // namespace detail

/// Random class member on exactly `n` vertices, built from an extended
/// wheel by expansions chosen uniformly over (rule, position) pairs:
/// position r < D picks the r-th planar dart for a Q_v-splitting, the rest
/// pick the kite left of a random planar dart for a crossed cube insertion.
/// Infeasible picks are redrawn. For n >= 12 the seed chooses XW_6 or XW_8
/// as the start.
inline Member random_member(std::size_t n, std::uint64_t seed) {
  if (n < 8 || n == 9) throw Error("random_member: no member has " + std::to_string(n) + " vertices");
  Rng rng(seed);
  int k = 3;
  if (n == 10 || n == 11) k = 4;
  if (n >= 12 && rng.below(2) == 1) k = 4;
  Embedding e = canonical_xw_embedding(k);
  detail::PlanarIndex planar(e);
  std::size_t stalls = 0;
  while (e.vertex_count() < n) {
    const std::size_t remaining = n - e.vertex_count();
    const std::size_t darts = 2 * planar.size();
    const std::size_t faces = e.vertex_count() - 2;
    const std::uint64_t r = rng.below(darts + faces);
    const std::uint64_t pick = r < darts ? r : rng.below(darts);
    const Edge ed = planar[pick / 2];
    const VertexId from = pick % 2 ? ed.second : ed.first;
    const VertexId to = pick % 2 ? ed.first : ed.second;
    const auto next_id = static_cast<VertexId>(e.id_bound());
    if (r < darts) {
      if (!sr_inverse_blocker(e, from, to).empty()) {
        if (++stalls > 1000000) throw InternalError("random_member: no feasible expansion found");
        continue;
      }
      RewriteDelta d;
      expand_sr_inverse(e, from, to, next_id, &d);
      planar.update(d);
    } else {
      if (remaining < 4) {
        if (++stalls > 1000000) throw InternalError("random_member: no feasible expansion found");
        continue;
      }
      auto f = e.kite_left_of(from, to);
      if (!f) throw InternalError("random_member: planar dart without a kite");
      RewriteDelta d;
      expand_cr_inverse(e, *f, {next_id, next_id + 1, next_id + 2, next_id + 3}, &d);
      planar.update(d);
    }
    stalls = 0;
  }
  Graph g = e.to_graph();
  return Member{std::move(g), std::move(e)};
}

}  // namespace o1p
