#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "o1p/graph.hpp"

namespace o1p {

/// Structure of an extended wheel graph: two poles joined to every vertex
/// of an even cycle whose vertices are adjacent at distance one and two.
struct XwDescriptor {
  int k = 0;
  VertexId pole_p = kNoVertex;
  VertexId pole_q = kNoVertex;
  std::vector<VertexId> cycle;  // 2k vertices in cyclic order

  friend bool operator==(const XwDescriptor&, const XwDescriptor&) = default;
};

struct XwGraph {
  Graph graph;
  XwDescriptor descriptor;
};

/// Cycle ids 0..2k-1 in order, poles 2k and 2k+1.
inline XwGraph make_xw(int k) {
  if (k < 3) throw std::invalid_argument("make_xw: k must be at least 3, got " + std::to_string(k));
  const auto len = static_cast<VertexId>(2 * k);
  XwGraph out{Graph(len + 2), {}};
  out.descriptor.k = k;
  out.descriptor.pole_p = len;
  out.descriptor.pole_q = len + 1;
  for (VertexId i = 0; i < len; ++i) {
    out.descriptor.cycle.push_back(i);
    out.graph.add_edge(i, (i + 1) % len);
    out.graph.add_edge(i, (i + 2) % len);
    out.graph.add_edge(i, len);
    out.graph.add_edge(i, len + 1);
  }
  return out;
}

/// r concentric 4-cycles, ring i on ids 4i..4i+3. Consecutive rings are
/// joined by a matching; every quadrilateral face, including the innermost
/// and outermost 4-gons, carries both diagonals.
inline Graph make_nested_crossed_cubes(int r) {
  if (r < 2)
    throw std::invalid_argument("make_nested_crossed_cubes: r must be at least 2, got " +
                                std::to_string(r));
  const auto rings = static_cast<VertexId>(r);
  Graph g(4 * rings);
  auto id = [](VertexId ring, VertexId j) { return 4 * ring + (j % 4); };
  for (VertexId i = 0; i < rings; ++i)
    for (VertexId j = 0; j < 4; ++j) g.add_edge(id(i, j), id(i, j + 1));
  for (VertexId j = 0; j < 2; ++j) {
    g.add_edge(id(0, j), id(0, j + 2));
    g.add_edge(id(rings - 1, j), id(rings - 1, j + 2));
  }
  for (VertexId i = 0; i + 1 < rings; ++i)
    for (VertexId j = 0; j < 4; ++j) {
      g.add_edge(id(i, j), id(i + 1, j));
      g.add_edge(id(i, j), id(i + 1, j + 1));
      g.add_edge(id(i, j + 1), id(i + 1, j));
    }
  return g;
}

enum class PreXwKind { sr, cr };

/// One representative of the graphs a single reduction away from XW_{2k}.
///
/// sr: vertex 2k+2 is inserted as the centre of a crossed star replacing the
///     pole edges p-v1, p-v0, p-v2; the chord v3-v_{2k-1} is added.
/// cr: the kite (p, v0, v1, v2) loses its diagonals p-v1, v0-v2 and a
///     crossed cube on ids 2k+2..2k+5 is inserted, x_i tied to corner i.
inline Graph make_pre_xw(PreXwKind kind, int k) {
  if (kind == PreXwKind::sr && k < 4)
    throw std::invalid_argument("make_pre_xw(S, k) needs k >= 4, got " + std::to_string(k));
  if (kind == PreXwKind::cr && k < 3)
    throw std::invalid_argument("make_pre_xw(C, k) needs k >= 3, got " + std::to_string(k));
  auto [g, desc] = make_xw(k);
  const VertexId p = desc.pole_p;
  const auto len = static_cast<VertexId>(2 * k);
  auto v = [len](long i) { return static_cast<VertexId>(((i % len) + len) % len); };
  if (kind == PreXwKind::sr) {
    const VertexId x = g.add_vertex();
    g.remove_edge(p, v(1));
    g.remove_edge(p, v(0));
    g.remove_edge(p, v(2));
    for (VertexId nb : {v(1), v(2), v(3), p, v(-1), v(0)}) g.add_edge(x, nb);
    g.add_edge(v(3), v(-1));
    return g;
  }
  const std::array<VertexId, 4> outer{p, v(0), v(1), v(2)};
  g.remove_edge(p, v(1));
  g.remove_edge(v(0), v(2));
  std::array<VertexId, 4> inner{};
  for (auto& x : inner) x = g.add_vertex();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) g.add_edge(inner[i], inner[j]);
    g.add_edge(inner[i], outer[i]);
    g.add_edge(inner[i], outer[(i + 1) % 4]);
    g.add_edge(inner[i], outer[(i + 3) % 4]);
  }
  return g;
}

}  // namespace o1p
