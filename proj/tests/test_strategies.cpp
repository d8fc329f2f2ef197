#include <catch_amalgamated.hpp>

#include "o1p/generate.hpp"
#include "o1p/oracle.hpp"
#include "o1p/strategies.hpp"

using namespace o1p;

TEST_CASE("reduction bounds") {
  for (int k = 3; k <= 10; ++k) {
    const StatsReport r = reduction_bounds(make_xw(k).graph);
    CHECK(r.n == static_cast<std::size_t>(2 * k + 2));
    CHECK(r.m == static_cast<std::size_t>(8 * k));
    CHECK(r.p == static_cast<std::size_t>(k == 3 ? 6 : 2 * k));
    CHECK(r.t == k);
    CHECK(r.s == 4);
    CHECK(r.s_may_be_3);
  }
  const StatsReport nested = reduction_bounds(make_nested_crossed_cubes(3));
  CHECK(nested.p == 8);
  CHECK(nested.q == 8);
  CHECK(nested.t == 4);
  CHECK(nested.s == 3);
  CHECK_FALSE(nested.s_may_be_3);
  CHECK(reduction_bounds(make_pre_xw(PreXwKind::cr, 3)).s == 3);
  CHECK_THROWS_AS(reduction_bounds(Graph(9)), StrategyError);
}

TEST_CASE("reduction towards a chosen wheel") {
  for (int r = 2; r <= 8; ++r) {
    const Graph g = make_nested_crossed_cubes(r);
    const Trace t = reduce_to_target(g, 3);
    REQUIRE(t.terminal);
    CHECK(t.terminal->k == 3);
    CHECK(validate_embedding(certify(g, t), g).ok);
  }
  // one CR step from a wheel can be undone by the greedy, then redone
  for (int k = 4; k <= 7; ++k) {
    const Graph c = make_pre_xw(PreXwKind::cr, k);
    const Trace t = reduce_to_target(c, k);
    CHECK(t.terminal->k == k);
    CHECK_NOTHROW(certify(c, t));
    CHECK(reduce_to_target(c, 3).terminal->k == 3);
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = random_member(40 + 5 * seed, seed).graph;
    const Trace t = reduce_to_target(g, 4);
    CHECK(t.terminal->k == 4);
    CHECK_NOTHROW(certify(g, t));
  }
  CHECK_THROWS_AS(reduce_to_target(make_xw(4).graph, 3), StrategyError);
  CHECK_THROWS_AS(reduce_to_target(make_xw(4).graph, 2), StrategyError);
  CHECK(reduce_to_target(make_xw(4).graph, 4).steps.empty());
}

TEST_CASE("SR-only reductions") {
  const Reduction stuck = reduce_sr_only(make_pre_xw(PreXwKind::cr, 4));
  CHECK_FALSE(stuck.trace.terminal);
  for (const auto& s : stuck.trace.steps) CHECK(std::holds_alternative<SrStep>(s));

  const Reduction easy = reduce_sr_only(make_pre_xw(PreXwKind::sr, 5));
  REQUIRE(easy.trace.terminal);
  CHECK(easy.trace.terminal->k <= 5);

  // some member free of separating 4-cycles reaches XW_8 by SR steps alone
  const Census c = enumerate(14);
  bool found = false;
  for (const auto& [n, bucket] : c.members)
    for (const auto& [_, entry] : bucket) {
      if (found || n <= 10 || has_separating_4cycle(entry.graph)) continue;
      if (auto t = sr_only_reaching(entry.graph, 4)) {
        CHECK(t->terminal->k == 4);
        for (const auto& s : t->steps) CHECK(std::holds_alternative<SrStep>(s));
        CHECK_NOTHROW(certify(entry.graph, *t));
        found = true;
      }
    }
  CHECK(found);
}

TEST_CASE("transform scripts between members") {
  const Graph xw6 = make_xw(3).graph;
  const Equivalence same = equivalence_transform(xw6, xw6);
  REQUIRE(same);
  CHECK(same.script.ops.empty());

  const Graph xw8 = make_xw(4).graph;
  const Equivalence down = equivalence_transform(xw8, xw6);
  REQUIRE(down);
  CHECK(replay_script(xw8, down.script) == xw6);
  CHECK(replay_script(xw6, inverse(down.script)) == xw8);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph a = random_member(20, seed).graph;
    const Graph b = random_member(20, seed + 100).graph;
    const Equivalence eq = equivalence_transform(a, b);
    REQUIRE(eq);
    CHECK(replay_script(a, eq.script) == b);
    CHECK(replay_script(b, inverse(eq.script)) == a);
  }
  const Graph a = random_member(120, 3).graph, b = random_member(57, 4).graph;
  const Equivalence eq = equivalence_transform(a, b);
  REQUIRE(eq);
  CHECK(replay_script(a, eq.script) == b);

  Graph broken = a;
  broken.remove_edge(a.edges().front().first, a.edges().front().second);
  const Equivalence no = equivalence_transform(broken, b);
  CHECK_FALSE(no);
  CHECK(no.reason.find("first graph rejected") == 0);
  CHECK_FALSE(equivalence_transform(b, Graph(9)));
}

TEST_CASE("tampered scripts do not replay") {
  const Graph a = random_member(30, 8).graph, b = random_member(30, 9).graph;
  Equivalence eq = equivalence_transform(a, b);
  REQUIRE(eq);
  REQUIRE(eq.script.ops.size() > 2);
  TransformScript cut = eq.script;
  cut.ops.erase(cut.ops.begin());
  CHECK_THROWS_AS(replay_script(a, cut), CertificateError);

  CHECK_THROWS_AS(relabel(make_xw(3).graph, {{0, 1}}), FeasibilityError);
}
