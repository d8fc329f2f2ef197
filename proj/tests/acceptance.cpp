// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "o1p/o1p.hpp"

using namespace o1p;

namespace {

// pinned limits
constexpr double kFamilySeconds = 1.0;
constexpr double kCensusSeconds = 300.0;
constexpr std::size_t kCensusMaxN = 14;
constexpr int kNestedMax = 8;
constexpr std::size_t kCertificateGraphs = 10000;
constexpr std::size_t kCertificateMaxN = 2000;
constexpr std::uint64_t kCertificateSeed = 20240101;
constexpr std::size_t kEquivPairs = 100;
constexpr std::size_t kEquivMaxN = 500;
constexpr std::uint64_t kEquivSeed = 777;
constexpr double kDoublingRatioMax = 2.4;
constexpr double kBenchSeconds = 600.0;
constexpr std::size_t kBenchReps = 7;
constexpr std::uint64_t kBenchSeed = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

const Census& census() {
  static const Census c = enumerate(kCensusMaxN);
  return c;
}

template <class F>
void for_each_member(F&& f) {
  for (const auto& [n, bucket] : census().members)
    for (const auto& [_, entry] : bucket) f(entry.graph);
}

std::vector<ReductionStep> all_good_steps(const Graph& g) {
  std::vector<ReductionStep> out;
  for (VertexId x : g.vertices()) {
    const CandidateStatus st = classify(g, x);
    if (auto* sr = std::get_if<GoodSR>(&st))
      for (VertexId v : sr->targets) out.push_back(make_sr_step(g, x, v));
    if (auto* cr = std::get_if<GoodCR>(&st)) out.push_back(make_cr_step(g, cr->quad));
  }
  return out;
}

// removing any 4 vertices leaves the graph connected
bool five_connected(const Graph& g) {
  const auto vs = g.vertices();
  const std::size_t n = vs.size();
  if (n < 6) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const VertexId s[] = {vs[a], vs[b], vs[c], vs[d]};
          if (!is_connected_without(g, s)) return false;
        }
  return true;
}

Outcome family_arithmetic() {
  const auto t0 = Clock::now();
  Outcome o;
  for (int k = 3; k <= 12; ++k) {
    const Graph g = make_xw(k).graph;
    const auto ku = static_cast<std::size_t>(k);
    bool ok = g.vertex_count() == 2 * ku + 2 && g.edge_count() == 8 * ku;
    if (k >= 4) ok = ok && degree_histogram(g) == std::map<std::size_t, std::size_t>{{6, 2 * ku}, {2 * ku, 2}};
    if (!ok) {
      o.pass = false;
      o.detail = "k=" + std::to_string(k) + " wrong size or degree profile";
      return o;
    }
  }
  const double s = seconds_since(t0);
  o.pass = s < kFamilySeconds;
  o.detail = "k=3..12 exact in " + std::to_string(s) + "s";
  return o;
}

Outcome existence_boundary() {
  const auto t0 = Clock::now();
  const Census& c = census();
  const double s = seconds_since(t0);
  Outcome o;
  std::string counts;
  for (std::size_t n = 4; n <= kCensusMaxN; ++n) counts += (n > 4 ? "," : "") + std::to_string(c.count(n));
  for (std::size_t n : {4, 5, 6, 7, 9})
    if (c.count(n) != 0) o.pass = false;
  if (c.count(8) != 1) o.pass = false;
  o.pass = o.pass && s < kCensusSeconds;
  o.detail = "counts n=4..14: " + counts + " in " + std::to_string(s) + "s";
  return o;
}

Outcome oracle_agreement() {
  std::size_t vertices = 0, disagreements = 0;
  std::string first;
  for_each_member([&](const Graph& g) {
    for (VertexId x : g.vertices()) {
      if (g.degree(x) != 6) continue;
      ++vertices;
      std::vector<VertexId> sr;
      std::vector<std::array<VertexId, 4>> cr;
      for (const ProposedStep& p : proposed_steps(g, x)) {
        if (!feasibility_oracle(census(), g, p)) continue;
        if (auto* s = std::get_if<ProposedSr>(&p)) sr.push_back(s->v);
        if (auto* c = std::get_if<ProposedCr>(&p)) cr.push_back(c->quad);
      }
      const CandidateStatus st = classify(g, x);
      CandidateStatus expected = Bad{};
      if (!sr.empty() && cr.empty()) expected = GoodSR{sr};
      if (sr.empty() && cr.size() == 1) expected = GoodCR{cr[0]};
      const bool mixed = !sr.empty() && !cr.empty();
      if (mixed || st != expected) {
        if (disagreements++ == 0)
          first = "n=" + std::to_string(g.vertex_count()) + " x=" + std::to_string(x) + " classify=" + status_name(st) +
                  " oracle=" + (mixed ? "sr+cr" : status_name(expected));
      }
    }
  });
  Outcome o;
  o.pass = disagreements == 0 && vertices > 0;
  o.detail = std::to_string(vertices) + " candidates, " + std::to_string(disagreements) + " disagreements" +
             (first.empty() ? "" : " (first: " + first + ")");
  return o;
}

Outcome closure() {
  std::size_t steps = 0, bad = 0;
  for_each_member([&](const Graph& g) {
    for (const ReductionStep& s : all_good_steps(g)) {
      Graph h = g;
      apply_step(h, s);
      ++steps;
      if (h.edge_count() + 8 != 4 * h.vertex_count() || !census().contains(h)) ++bad;
    }
  });
  Outcome o;
  o.pass = bad == 0 && steps > 0;
  o.detail = std::to_string(steps) + " good steps, " + std::to_string(bad) + " leave the census";
  return o;
}

Outcome irreducibility() {
  Outcome o;
  for (int k = 3; k <= 12; ++k) {
    const Graph g = make_xw(k).graph;
    const Reducer r(g, Policy{});
    const Recognition rec = recognize(g);
    if (r.good_count() != 0 || !rec || !rec.certificate->trace.steps.empty()) {
      o.pass = false;
      o.detail = "k=" + std::to_string(k) + " is reducible or not accepted";
      return o;
    }
  }
  o.detail = "k=3..12: no good candidates, empty traces";
  return o;
}

Outcome reach_smallest_wheel() {
  std::size_t tried = 0, failed = 0;
  std::string first;
  auto attempt = [&](const Graph& g, const std::string& name) {
    ++tried;
    try {
      const Trace t = reduce_to_target(g, 3);
      certify(g, t);
      if (!t.terminal || t.terminal->k != 3) throw StrategyError("wrong terminal");
    } catch (const Error& ex) {
      if (failed++ == 0) first = name + ": " + ex.what();
    }
  };
  for_each_member([&](const Graph& g) {
    if (has_separating_4cycle(g)) attempt(g, "census n=" + std::to_string(g.vertex_count()));
  });
  for (int r = 2; r <= kNestedMax; ++r) attempt(make_nested_crossed_cubes(r), "nested r=" + std::to_string(r));
  Outcome o;
  o.pass = failed == 0;
  o.detail = std::to_string(tried - failed) + "/" + std::to_string(tried) + " reach XW_6" +
             (first.empty() ? "" : " (first failure " + first + ")");
  return o;
}

Outcome nested_only_cr() {
  Outcome o;
  for (int r = 3; r <= kNestedMax; ++r) {
    Reducer red(make_nested_crossed_cubes(r), Policy{});
    bool sr_seen = false;
    auto scan = [&] {
      for (const auto& [_, st] : red.cached_statuses()) sr_seen = sr_seen || std::holds_alternative<GoodSR>(st);
    };
    scan();
    while (red.has_good()) {
      red.apply(*red.next_step());
      scan();
    }
    bool only_cr = true;
    for (const auto& s : red.trace().steps) only_cr = only_cr && std::holds_alternative<CrStep>(s);
    const auto w = is_extended_wheel(red.graph());
    if (sr_seen || !only_cr || !w || w->k != 3 || red.trace().steps.size() != static_cast<std::size_t>(r - 2)) {
      o.pass = false;
      o.detail = "r=" + std::to_string(r) + (sr_seen ? " has a good SR candidate" : " does not end at XW_6 by CR");
      return o;
    }
  }
  o.detail = "r=3..8: CR only, no good SR candidate at any step, terminal XW_6";
  return o;
}

Outcome sr_only_non_closure() {
  Outcome o;
  std::size_t blocked = 0, tried = 0;
  auto stuck = [&](const Graph& g) {
    ++tried;
    const Reduction red = reduce_sr_only(g);
    if (!red.trace.terminal) ++blocked;
  };
  stuck(make_pre_xw(PreXwKind::cr, 4));
  for_each_member([&](const Graph& g) {
    if (has_separating_4cycle(g)) stuck(g);
  });
  std::size_t five = 0;
  std::string reached;
  for_each_member([&](const Graph& g) {
    // XW_8 itself would succeed with an empty trace
    if (!reached.empty() || g.vertex_count() <= 10 || !five_connected(g)) return;
    ++five;
    if (auto t = sr_only_reaching(g, 4)) {
      bool all_sr = true;
      for (const auto& s : t->steps) all_sr = all_sr && std::holds_alternative<SrStep>(s);
      try {
        certify(g, *t);
      } catch (const Error&) {
        all_sr = false;
      }
      if (all_sr)
        reached = "n=" + std::to_string(g.vertex_count()) + " in " + std::to_string(t->steps.size()) + " SR steps";
    }
  });
  o.pass = blocked == tried && !reached.empty();
  o.detail = std::to_string(blocked) + "/" + std::to_string(tried) + " stop short of a wheel; XW_8 by SR only: " +
             (reached.empty() ? "none of " + std::to_string(five) + " 5-connected members" : reached);
  return o;
}

Outcome certificate_soundness() {
  std::mt19937_64 rng(kCertificateSeed);
  const double lo = std::log(8.0), hi = std::log(static_cast<double>(kCertificateMaxN));
  std::size_t accepted = 0, false_rejects = 0, bad_certs = 0;
  std::size_t swapped = 0, rejected = 0, member_swaps = 0, false_accepts = 0, unswappable = 0;
  for (std::size_t i = 0; i < kCertificateGraphs; ++i) {
    std::size_t n = static_cast<std::size_t>(std::exp(lo + (hi - lo) * std::uniform_real_distribution<double>()(rng)));
    n = std::clamp<std::size_t>(n, 8, kCertificateMaxN);
    if (n == 9) n = 10;
    const Member m = random_member(n, rng());
    const Recognition r = recognize(m.graph);
    if (!r) {
      ++false_rejects;
    } else {
      ++accepted;
      if (!validate_embedding(r.certificate->embedding, m.graph).ok || !(r.certificate->embedding.to_graph() == m.graph))
        ++bad_certs;
    }

    // degree-preserving swap: a-b, c-d -> a-c, b-d
    Graph g = m.graph;
    const auto edges = g.edges();
    bool done = false;
    for (int tries = 0; tries < 200 && !done; ++tries) {
      const Edge e1 = edges[rng() % edges.size()], e2 = edges[rng() % edges.size()];
      const VertexId a = e1.first, b = e1.second;
      VertexId c = e2.first, d = e2.second;
      if (rng() & 1) std::swap(c, d);
      if (a == c || a == d || b == c || b == d || g.has_edge(a, c) || g.has_edge(b, d)) continue;
      g.remove_edge(a, b);
      g.remove_edge(c, d);
      g.add_edge(a, c);
      g.add_edge(b, d);
      done = true;
    }
    if (!done) {
      ++unswappable;
      continue;
    }
    ++swapped;
    const Recognition p = recognize(g);
    if (!p) {
      ++rejected;
    } else if (validate_embedding(p.certificate->embedding, g).ok && p.certificate->embedding.to_graph() == g) {
      ++member_swaps;  // the swap produced another member; its embedding proves it
    } else {
      ++false_accepts;
    }
  }
  Outcome o;
  o.pass = false_rejects == 0 && bad_certs == 0 && false_accepts == 0 && accepted == kCertificateGraphs;
  o.detail = std::to_string(accepted) + "/" + std::to_string(kCertificateGraphs) + " accepted with valid embeddings; " +
             std::to_string(rejected) + "/" + std::to_string(swapped) + " swaps rejected, " + std::to_string(member_swaps) +
             " swaps are members (certified), " + std::to_string(false_accepts) + " false accepts, " +
             std::to_string(unswappable) + " without a swap";
  return o;
}

Outcome equivalence() {
  std::mt19937_64 rng(kEquivSeed);
  auto size = [&] {
    std::size_t n = 8 + rng() % (kEquivMaxN - 7);
    return n == 9 ? std::size_t{10} : n;
  };
  std::size_t exact = 0;
  std::size_t ops = 0;
  std::string first;
  for (std::size_t i = 0; i < kEquivPairs; ++i) {
    const Graph a = random_member(size(), rng()).graph;
    const Graph b = random_member(size(), rng()).graph;
    try {
      const Equivalence eq = equivalence_transform(a, b);
      if (!eq) throw InternalError(eq.reason);
      // round-trip through the text format as well
      const TransformScript s = parse_script(serialize_script(eq.script));
      if (replay_script(a, s) == b) ++exact;
      ops += s.ops.size();
    } catch (const Error& ex) {
      if (first.empty()) first = ex.what();
    }
  }
  const Graph member = random_member(40, 1).graph;
  Graph broken = member;
  const Edge e = broken.edges().front();
  broken.remove_edge(e.first, e.second);
  Graph odd = make_xw(5).graph;
  odd.remove_edge(0, 1);
  odd.add_edge(10, 11);
  const bool rejects = !equivalence_transform(broken, member) && !equivalence_transform(member, odd);
  Outcome o;
  o.pass = exact == kEquivPairs && rejects;
  o.detail = std::to_string(exact) + "/" + std::to_string(kEquivPairs) + " scripts replay exactly (" +
             std::to_string(ops) + " ops); rejected inputs " + (rejects ? "not equivalent" : "MISJUDGED") +
             (first.empty() ? "" : "; first error: " + first);
  return o;
}

Outcome near_linear() {
  const auto t0 = Clock::now();
  std::vector<std::size_t> sizes;
  for (int p = 12; p <= 17; ++p) sizes.push_back(std::size_t{1} << p);
  const auto rows = bench_recognition(sizes, {kBenchSeed}, kBenchReps);
  const double total = seconds_since(t0);
  Outcome o;
  std::ostringstream d;
  d.precision(3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BenchRow& r = rows[i];
    if (!r.all_accepted || r.max_steps > r.n) o.pass = false;
    if (i + 3 >= rows.size() && (!r.ratio || *r.ratio > kDoublingRatioMax)) o.pass = false;
    if (r.ratio) d << " " << *r.ratio;
  }
  o.pass = o.pass && total < kBenchSeconds;
  d << std::fixed << "; bench " << total << "s";
  o.detail = "doubling ratios" + d.str();
  return o;
}

}  // namespace

// Optional arguments select criteria by number; default runs all.
int main(int argc, char** argv) {
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"family arithmetic", family_arithmetic},
      {"existence boundary", existence_boundary},
      {"classification matches the oracle", oracle_agreement},
      {"good steps stay in the class", closure},
      {"extended wheels are irreducible", irreducibility},
      {"separating 4-cycle reaches XW_6", reach_smallest_wheel},
      {"nested cubes reduce by CR only", nested_only_cr},
      {"SR-only reductions are not closed", sr_only_non_closure},
      {"certificate soundness", certificate_soundness},
      {"equivalence scripts", equivalence},
      {"near-linear recognition", near_linear},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o = Outcome{false, std::string("exception: ") + ex.what()};
    }
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, only.empty() ? criteria.size() : only.size());
  return failed == 0 ? 0 : 1;
}
