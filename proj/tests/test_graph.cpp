#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "o1p/families.hpp"
#include "o1p/graph.hpp"
#include "o1p/oracle.hpp"

using namespace o1p;

namespace {

// every 4-subset whose removal disconnects g, for each cyclic order that
// is present as a cycle
std::set<FourCycle> naive_separating(const Graph& g) {
  std::set<FourCycle> out;
  auto vs = g.vertices();
  const std::size_t n = vs.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const VertexId s[] = {vs[a], vs[b], vs[c], vs[d]};
          if (n <= 4 || is_connected_without(g, s)) continue;
          const FourCycle orders[] = {{s[0], s[1], s[2], s[3]}, {s[0], s[1], s[3], s[2]}, {s[0], s[2], s[1], s[3]}};
          for (const auto& o : orders) {
            bool cyc = true;
            for (int i = 0; i < 4; ++i) cyc = cyc && g.has_edge(o[i], o[(i + 1) % 4]);
            if (cyc) out.insert(detail::normalize_cycle(o));
          }
        }
  return out;
}

}  // namespace

TEST_CASE("build_graph counts and rejects malformed edges") {
  CHECK(build_graph(3, std::vector<Edge>{}).graph.edge_count() == 0);

  auto xw = make_xw(3).graph;
  auto built = build_graph_strict(8, xw.edges());
  CHECK(built.edge_count() == 24);
  for (VertexId v : built.vertices()) CHECK(built.degree(v) == 6);

  CHECK_THROWS_AS(build_graph(2, std::vector<Edge>{{0, 0}}), FormatError);
  CHECK_THROWS_AS(build_graph(2, std::vector<Edge>{{0, 2}}), FormatError);

  auto dup = build_graph(3, std::vector<Edge>{{0, 1}, {1, 0}, {1, 2}});
  CHECK(dup.graph.edge_count() == 2);
  REQUIRE(dup.duplicates.size() == 1);
  CHECK(dup.duplicates[0] == Edge{0, 1});
  CHECK_THROWS_AS(build_graph_strict(3, std::vector<Edge>{{0, 1}, {1, 0}}), FormatError);
}

TEST_CASE("degree histogram") {
  using H = std::map<std::size_t, std::size_t>;
  CHECK(degree_histogram(make_xw(3).graph) == H{{6, 8}});
  CHECK(degree_histogram(make_xw(5).graph) == H{{6, 10}, {10, 2}});
  CHECK(degree_histogram(Graph(1)) == H{{0, 1}});
  for (int k = 3; k <= 9; ++k) {
    const Graph g = make_xw(k).graph;
    std::size_t count = 0, weighted = 0;
    for (const auto& [d, c] : degree_histogram(g)) {
      count += c;
      weighted += d * c;
    }
    CHECK(count == g.vertex_count());
    CHECK(weighted == 2 * g.edge_count());
  }
}

TEST_CASE("random mutations keep the graph symmetric and simple") {
  std::mt19937_64 rng(7);
  Graph g(12);
  std::set<Edge> mirror;
  std::set<VertexId> alive;
  for (VertexId v = 0; v < 12; ++v) alive.insert(v);
  for (int step = 0; step < 4000; ++step) {
    const int op = static_cast<int>(rng() % 10);
    const auto u = static_cast<VertexId>(rng() % g.id_bound());
    const auto w = static_cast<VertexId>(rng() % g.id_bound());
    if (op < 5) {
      if (!alive.count(u) || !alive.count(w) || u == w) continue;
      CHECK(g.add_edge(u, w) == mirror.insert(make_edge(u, w)).second);
    } else if (op < 8) {
      CHECK(g.remove_edge(u, w) == (mirror.erase(make_edge(u, w)) == 1));
    } else if (op == 8) {
      if (!alive.count(u) || alive.size() < 4) continue;
      g.remove_vertex(u);
      alive.erase(u);
      std::erase_if(mirror, [u](const Edge& e) { return e.first == u || e.second == u; });
    } else {
      alive.insert(g.add_vertex());
    }
  }
  CHECK(g.edges() == std::vector<Edge>(mirror.begin(), mirror.end()));
  CHECK(g.vertex_count() == alive.size());
  std::size_t sum = 0;
  for (VertexId v : g.vertices()) {
    sum += g.degree(v);
    for (VertexId w : g.neighbors(v)) {
      CHECK(w != v);
      CHECK(g.has_edge(w, v));
    }
  }
  CHECK(sum == 2 * g.edge_count());
}

TEST_CASE("tombstoned ids are not reused and compaction renumbers") {
  Graph g(5);
  g.add_edge(0, 4);
  g.add_edge(3, 4);
  g.remove_vertex(1);
  CHECK(g.add_vertex() == 5);
  auto c = compact(g);
  CHECK(c.graph.vertex_count() == 5);
  CHECK(c.new_id[1] == kNoVertex);
  CHECK(c.new_id[4] == 3);
  CHECK(c.graph.has_edge(0, 3));
  CHECK(c.graph.has_edge(2, 3));
}

TEST_CASE("separating 4-cycles of the families") {
  CHECK(find_separating_4cycles(make_xw(3).graph).empty());
  CHECK(naive_separating(make_xw(3).graph).empty());

  auto nested = find_separating_4cycles(make_nested_crossed_cubes(3));
  CHECK(std::find(nested.begin(), nested.end(), FourCycle{4, 5, 6, 7}) != nested.end());

  // outer cycle of the inserted cube: pole 8 and cycle vertices 0, 1, 2
  auto cxw = find_separating_4cycles(make_pre_xw(PreXwKind::cr, 4));
  CHECK(std::find(cxw.begin(), cxw.end(), detail::normalize_cycle({8, 0, 1, 2})) != cxw.end());

  Graph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  CHECK_THROWS_AS(find_separating_4cycles(two), Error);
}

TEST_CASE("separating 4-cycles agree with the naive oracle up to 14 vertices") {
  const Census c = enumerate(14);
  std::size_t checked = 0;
  for (const auto& [n, bucket] : c.members)
    for (const auto& [_, entry] : bucket) {
      auto fast = find_separating_4cycles(entry.graph);
      CHECK(std::set<FourCycle>(fast.begin(), fast.end()) == naive_separating(entry.graph));
      ++checked;
    }
  for (int r = 2; r <= 3; ++r) {
    Graph g = make_nested_crossed_cubes(r);
    auto fast = find_separating_4cycles(g);
    CHECK(std::set<FourCycle>(fast.begin(), fast.end()) == naive_separating(g));
  }
  CHECK(checked == 1 + 1 + 1 + 3 + 3 + 11);
}
