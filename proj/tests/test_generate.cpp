#include <catch_amalgamated.hpp>

#include "o1p/bench.hpp"
#include "o1p/generate.hpp"
#include "o1p/io.hpp"

using namespace o1p;

TEST_CASE("random stream is the standard 64-bit twister") {
  Rng r(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = r.next();
  CHECK(x == 9981545732273789042ULL);
  Rng b(1);
  for (int i = 0; i < 1000; ++i) CHECK(b.below(7) < 7);
  CHECK_THROWS_AS(b.below(0), InternalError);
}

TEST_CASE("smallest sizes") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Member m = random_member(8, seed);
    CHECK(m.graph.vertex_count() == 8);
    CHECK(m.graph.edge_count() == 24);
    CHECK(is_extended_wheel(m.graph));
  }
  for (std::size_t n : {0u, 4u, 7u, 9u}) CHECK_THROWS_AS(random_member(n, 1), Error);
  for (std::size_t n = 10; n <= 30; ++n) {
    const Member m = random_member(n, n);
    CHECK(m.graph.vertex_count() == n);
    CHECK(validate_embedding(m.embedding, m.graph).ok);
  }
}

TEST_CASE("large member is accepted") {
  const Member m = random_member(1000, 42);
  CHECK(m.graph.vertex_count() == 1000);
  CHECK(m.graph.edge_count() == 3992);
  CHECK(validate_embedding(m.embedding, m.graph).ok);
  const Recognition r = recognize(m.graph);
  CHECK(r.accepted);
  CHECK(r.certificate->trace.steps.size() <= 1000);
}

TEST_CASE("generation is deterministic in the seed") {
  const Member a = random_member(200, 7), b = random_member(200, 7), c = random_member(200, 8);
  CHECK(a.graph == b.graph);
  CHECK(serialize_embedding(a.embedding) == serialize_embedding(b.embedding));
  CHECK_FALSE(a.graph == c.graph);
  CHECK(serialize_edge_list(a.graph) == serialize_edge_list(b.graph));
}

TEST_CASE("benchmark harness") {
  CHECK(bench_recognition({}, {1}).empty());
  CHECK(format_bench_table({}) == "n\tgraphs\tmedian_s\tmax_steps\taccepted\tratio\n");
  const auto rows = bench_recognition({64, 128, 200}, {1, 2}, 3);
  REQUIRE(rows.size() == 3);
  CHECK_FALSE(rows[0].ratio);
  CHECK(rows[1].ratio);
  CHECK_FALSE(rows[2].ratio);
  for (const auto& r : rows) {
    CHECK(r.all_accepted);
    CHECK(r.samples.size() == 3);
    CHECK(r.max_steps <= r.n);
    CHECK(r.graphs == 2);
  }
  CHECK(median_of({3, 1, 2}) == 2);
  CHECK(median_of({4, 1, 2, 3}) == 2.5);
  CHECK(median_of({}) == 0);
}
