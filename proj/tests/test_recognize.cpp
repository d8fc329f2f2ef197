#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "o1p/generate.hpp"
#include "o1p/recognize.hpp"

using namespace o1p;

namespace {

Graph permuted(const Graph& g, std::uint64_t seed) {
  std::vector<VertexId> perm(g.id_bound());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  Graph h(g.id_bound());
  for (const auto& [u, w] : g.edges()) h.add_edge(perm[u], perm[w]);
  return h;
}

}  // namespace

TEST_CASE("quick rejection") {
  CHECK(quick_reject(Graph(7)).value().rfind("size", 0) == 0);
  CHECK(quick_reject(Graph(9)).value().rfind("size", 0) == 0);
  CHECK_FALSE(quick_reject(make_xw(3).graph));

  Graph fewer = make_xw(4).graph;
  fewer.remove_edge(0, 1);
  CHECK(quick_reject(fewer).value().rfind("edge count", 0) == 0);

  // degree-preserving except two vertices that become odd
  Graph odd = make_xw(4).graph;
  odd.remove_edge(0, 1);
  odd.add_edge(8, 9);
  CHECK(quick_reject(odd).value().rfind("degree", 0) == 0);

  Recognition r = recognize(Graph(5));
  CHECK_FALSE(r.accepted);
  CHECK(r.stage == "quick-reject");
  CHECK(verdict_line(r) == "REJECT stage=quick-reject");
}

TEST_CASE("extended wheel detection") {
  for (int k = 3; k <= 10; ++k) {
    const auto xw = make_xw(k);
    auto d = is_extended_wheel(xw.graph);
    REQUIRE(d);
    CHECK(d->k == k);
    // every vertex of the smallest wheel can serve as a pole
    if (k > 3) CHECK(std::minmax(d->pole_p, d->pole_q) == std::minmax(xw.descriptor.pole_p, xw.descriptor.pole_q));
    // the recovered descriptor must generate the same graph
    for (std::size_t i = 0; i < d->cycle.size(); ++i) {
      const VertexId a = d->cycle[i];
      CHECK(xw.graph.has_edge(a, d->cycle[(i + 1) % d->cycle.size()]));
      CHECK(xw.graph.has_edge(a, d->cycle[(i + 2) % d->cycle.size()]));
    }
    for (std::uint64_t s = 1; s <= 3; ++s) {
      auto pd = is_extended_wheel(permuted(xw.graph, s));
      REQUIRE(pd);
      CHECK(pd->k == k);
    }
  }
  CHECK_FALSE(is_extended_wheel(make_nested_crossed_cubes(3)));
  CHECK_FALSE(is_extended_wheel(make_pre_xw(PreXwKind::sr, 4)));
  CHECK_FALSE(is_extended_wheel(Graph(8)));
}

TEST_CASE("nested cubes peel off one ring per step") {
  const Recognition r = recognize(make_nested_crossed_cubes(4));
  REQUIRE(r.accepted);
  CHECK(r.certificate->terminal.k == 3);
  REQUIRE(r.certificate->trace.steps.size() == 2);
  for (const auto& s : r.certificate->trace.steps) CHECK(std::holds_alternative<CrStep>(s));
  CHECK(verdict_line(r) == "ACCEPT k=3 steps=2");
}

TEST_CASE("every policy accepts generated members") {
  for (const char* name : {"smallest-id", "largest-id", "cr-first", "sr-first", "random:7"}) {
    const Policy p = Policy::parse(name);
    CHECK(p.name() == (std::string(name) == "random:7" ? "random:7" : name));
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const Member m = random_member(20 + 13 * seed, seed);
      const Recognition r = recognize(permuted(m.graph, seed), p);
      INFO(name << " seed " << seed << " " << r.reason);
      CHECK(r.accepted);
    }
  }
  CHECK_THROWS_AS(Policy::parse("fastest"), FormatError);
  CHECK_THROWS_AS(Policy::parse("random:x"), FormatError);
  CHECK(Policy::parse("random").seed == 0);
}

TEST_CASE("degree-preserving perturbations") {
  std::mt19937_64 rng(11);
  std::size_t rejected = 0, tried = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Graph g = random_member(16 + seed * 3, seed).graph;
    const auto edges = g.edges();
    for (int attempt = 0; attempt < 100; ++attempt) {
      const Edge e1 = edges[rng() % edges.size()], e2 = edges[rng() % edges.size()];
      const VertexId a = e1.first, b = e1.second, c = e2.first, d = e2.second;
      if (a == c || a == d || b == c || b == d || g.has_edge(a, c) || g.has_edge(b, d)) continue;
      g.remove_edge(a, b);
      g.remove_edge(c, d);
      g.add_edge(a, c);
      g.add_edge(b, d);
      break;
    }
    ++tried;
    const Recognition r = recognize(g);
    if (!r.accepted) {
      ++rejected;
      CHECK((r.stage == "wheel" || r.stage == "reduce" || r.stage == "certificate"));
    } else {
      // a swap can land on another member; the certificate must then hold
      CHECK(validate_embedding(r.certificate->embedding, g).ok);
      CHECK_NOTHROW(certify(g, r.certificate->trace));
    }
  }
  CHECK(rejected * 2 > tried);
}
