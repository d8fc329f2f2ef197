#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "o1p/candidates.hpp"
#include "o1p/errors.hpp"
#include "o1p/families.hpp"
#include "o1p/graph.hpp"
#include "o1p/recognize.hpp"
#include "o1p/reduce.hpp"

namespace o1p {

struct StatsReport {
  std::size_t n = 0, m = 0;
  std::size_t p = 0, q = 0;  // two largest degrees, p >= q
  int t = 0;
  int s = 4;
  /// s = 4 only says no separating 4-cycle forces XW_6; XW_6 may still be reachable.
  bool s_may_be_3 = true;
};

inline StatsReport reduction_bounds(const Graph& g) {
  if (auto why = quick_reject(g)) throw StrategyError("bounds: input rejected: " + *why);
  StatsReport r;
  r.n = g.vertex_count();
  r.m = g.edge_count();
  for (VertexId v : g.vertices()) {
    const std::size_t d = g.degree(v);
    if (d > r.p) {
      r.q = r.p;
      r.p = d;
    } else if (d > r.q) {
      r.q = d;
    }
  }
  r.t = static_cast<int>((2 * r.n + r.p + r.q - 4) / 8);
  if (has_separating_4cycle(g)) {
    r.s = 3;
    r.s_may_be_3 = false;
  }
  return r;
}

/// Every good step available in the reducer's current graph. CR steps are
/// listed once per crossed cube.
inline std::vector<ReductionStep> good_steps(const Reducer& r) {
  std::vector<ReductionStep> out;
  std::vector<CrStep> seen;
  for (VertexId x : r.good_candidates()) {
    const CandidateStatus& st = r.status(x);
    if (auto* sr = std::get_if<GoodSR>(&st)) {
      for (VertexId v : sr->targets) out.emplace_back(make_sr_step(r.graph(), x, v));
    } else if (auto* cr = std::get_if<GoodCR>(&st)) {
      CrStep s = normalize(make_cr_step(r.graph(), cr->quad));
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
      seen.push_back(s);
      out.emplace_back(s);
    }
  }
  return out;
}

inline std::size_t removed_vertex_count(const ReductionStep& s) {
  return std::holds_alternative<SrStep>(s) ? 1 : 4;
}

namespace detail {

/// Searches good-step sequences of length <= depth removing exactly
/// `remove` vertices and ending at XW_{2k}. `done` decides whether a found
/// wheel is final; on success the steps stay applied to `r`.
inline bool reach_wheel(Reducer& r, int k, std::size_t remove, int depth, std::size_t& budget,
                        const std::function<bool(Reducer&)>& done) {
  if (remove == 0) {
    auto w = is_extended_wheel(r.graph());
    return w && w->k == k && done(r);
  }
  if (depth == 0) return false;
  for (const ReductionStep& s : good_steps(r)) {
    if (removed_vertex_count(s) > remove) continue;
    if (budget == 0) return false;
    --budget;
    r.apply(s);
    if (reach_wheel(r, k, remove - removed_vertex_count(s), depth - 1, budget, done)) return true;
    r.undo();
  }
  return false;
}

/// r sits at XW_{2u} after at least one step. Steps back to the pre-wheel
/// graph and descends one index at a time towards XW_{2 target}.
inline bool descend(Reducer& r, int u, int target, std::size_t& budget) {
  if (u == target) return true;
  if (u < target || r.trace().steps.empty()) return false;
  const ReductionStep last = r.trace().steps.back();
  r.undo();
  const std::size_t n = r.graph().vertex_count();
  const std::size_t wheel_n = static_cast<std::size_t>(2 * (u - 1) + 2);
  if (n > wheel_n &&
      reach_wheel(r, u - 1, n - wheel_n, 3, budget, [&](Reducer& rr) { return descend(rr, u - 1, target, budget); }))
    return true;
  r.apply(last);
  return false;
}

inline Trace finished_trace(const Reducer& r) {
  Trace t = r.trace();
  t.terminal = is_extended_wheel(r.graph());
  return t;
}

inline std::vector<Policy> portfolio(std::size_t random_runs) {
  std::vector<Policy> out;
  for (auto kind : {Policy::Kind::smallest_id, Policy::Kind::largest_id, Policy::Kind::cr_first,
                    Policy::Kind::sr_first}) {
    Policy p;
    p.kind = kind;
    out.push_back(p);
  }
  for (std::size_t i = 1; i <= random_runs; ++i) {
    Policy p;
    p.kind = Policy::Kind::random;
    p.seed = i;
    out.push_back(p);
  }
  return out;
}

/// Depth-first search over all good-step sequences, skipping graphs seen
/// before. Only used on small inputs.
inline std::optional<Trace> exhaustive_search(const Graph& g, int k_target, bool sr_only, std::size_t node_limit) {
  Policy p;
  p.sr_only = sr_only;
  Reducer r(g, p);
  std::set<std::vector<Edge>> seen;
  std::size_t nodes = 0;
  std::function<bool()> dfs = [&]() -> bool {
    if (++nodes > node_limit) return false;
    if (r.graph().vertex_count() == static_cast<std::size_t>(2 * k_target + 2)) {
      auto w = is_extended_wheel(r.graph());
      if (w && w->k == k_target) return true;
    }
    if (r.graph().vertex_count() < static_cast<std::size_t>(2 * k_target + 2)) return false;
    if (!seen.insert(r.graph().edges()).second) return false;
    for (const ReductionStep& s : good_steps(r)) {
      r.apply(s);
      if (dfs()) return true;
      r.undo();
    }
    return false;
  };
  if (!dfs()) return std::nullopt;
  return finished_trace(r);
}

}  // namespace detail

struct TargetOptions {
  std::size_t random_runs = 12;
  std::size_t descent_budget = 20000;
  std::size_t exhaustive_max_n = 16;
  std::size_t exhaustive_nodes = 2000000;
};

/// A trace from `g` to exactly XW_{2 k_target}.
inline Trace reduce_to_target(const Graph& g, int k_target, const TargetOptions& opt = {}) {
  if (k_target < 3) throw StrategyError("target index must be at least 3");
  if (auto why = quick_reject(g)) throw StrategyError("input rejected: " + *why);
  std::set<int> reached;
  std::size_t budget = opt.descent_budget;
  for (const Policy& pol : detail::portfolio(opt.random_runs)) {
    Reducer r(g, pol);
    r.run();
    auto w = is_extended_wheel(r.graph());
    if (!w) throw StrategyError("input does not reduce to an extended wheel");
    reached.insert(w->k);
    if (w->k == k_target) return detail::finished_trace(r);
    if (w->k > k_target && detail::descend(r, w->k, k_target, budget)) return detail::finished_trace(r);
  }
  if (g.vertex_count() <= opt.exhaustive_max_n)
    if (auto t = detail::exhaustive_search(g, k_target, false, opt.exhaustive_nodes)) return *t;
  std::string list;
  for (int k : reached) list += (list.empty() ? "" : ", ") + std::string("XW_") + std::to_string(2 * k);
  throw StrategyError("no reduction to XW_" + std::to_string(2 * k_target) + " found; reached " + list);
}

/// Greedy reduction restricted to SR steps. May stop at a graph that is
/// not an extended wheel.
inline Reduction reduce_sr_only(const Graph& g, Policy policy = {}) {
  policy.sr_only = true;
  Reduction out = reduce_to_irreducible(g, policy);
  for (const auto& s : out.trace.steps)
    if (!std::holds_alternative<SrStep>(s)) throw InternalError("CR step in an SR-only reduction");
  return out;
}

/// Tries candidate orderings (and, for small inputs, all orderings) for an
/// SR-only reduction ending at XW_{2 k_target}.
inline std::optional<Trace> sr_only_reaching(const Graph& g, int k_target, std::size_t restarts = 32,
                                             std::size_t exhaustive_max_n = 16) {
  for (const Policy& pol : detail::portfolio(restarts)) {
    Reduction red = reduce_sr_only(g, pol);
    if (red.trace.terminal && red.trace.terminal->k == k_target) return red.trace;
  }
  if (g.vertex_count() <= exhaustive_max_n) return detail::exhaustive_search(g, k_target, true, 2000000);
  return std::nullopt;
}

struct ScriptOp {
  enum class Kind { reduce, expand, relabel };
  Kind kind = Kind::reduce;
  ReductionStep step{};
  /// relabel only: (old id, new id) for every vertex present.
  std::vector<std::pair<VertexId, VertexId>> mapping;

  friend bool operator==(const ScriptOp&, const ScriptOp&) = default;
};

struct TransformScript {
  std::vector<ScriptOp> ops;

  friend bool operator==(const TransformScript&, const TransformScript&) = default;
};

inline TransformScript inverse(const TransformScript& s) {
  TransformScript out;
  for (auto it = s.ops.rbegin(); it != s.ops.rend(); ++it) {
    ScriptOp op = *it;
    if (op.kind == ScriptOp::Kind::reduce)
      op.kind = ScriptOp::Kind::expand;
    else if (op.kind == ScriptOp::Kind::expand)
      op.kind = ScriptOp::Kind::reduce;
    else
      for (auto& [a, b] : op.mapping) std::swap(a, b);
    out.ops.push_back(std::move(op));
  }
  return out;
}

inline Graph relabel(const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& mapping) {
  std::vector<VertexId> to(g.id_bound(), kNoVertex);
  VertexId bound = 0;
  std::set<VertexId> images;
  for (const auto& [a, b] : mapping) {
    if (!g.has_vertex(a) || to[a] != kNoVertex)
      throw FeasibilityError("relabel: bad source vertex " + std::to_string(a));
    if (b == kNoVertex || !images.insert(b).second)
      throw FeasibilityError("relabel: target " + std::to_string(b) + " used twice");
    to[a] = b;
    bound = std::max<VertexId>(bound, b + 1);
  }
  if (mapping.size() != g.vertex_count()) throw FeasibilityError("relabel: mapping does not cover every vertex");
  Graph out(bound);
  for (VertexId v = 0; v < bound; ++v)
    if (!images.count(v)) out.remove_vertex(v);
  for (const auto& [u, w] : g.edges()) out.add_edge(to[u], to[w]);
  return out;
}

/// Runs a script on `g`, checking every step and the edge count after it.
inline Graph replay_script(Graph g, const TransformScript& script) {
  for (std::size_t i = 0; i < script.ops.size(); ++i) {
    const ScriptOp& op = script.ops[i];
    try {
      switch (op.kind) {
        case ScriptOp::Kind::reduce: apply_step(g, op.step); break;
        case ScriptOp::Kind::expand: apply_inverse(g, op.step); break;
        case ScriptOp::Kind::relabel: g = relabel(g, op.mapping); break;
      }
    } catch (const FeasibilityError& ex) {
      throw CertificateError("script op " + std::to_string(i + 1) + ": " + ex.what());
    }
    if (g.edge_count() + 8 != 4 * g.vertex_count())
      throw CertificateError("script op " + std::to_string(i + 1) + " leaves the class");
  }
  return g;
}

namespace detail {

/// Walks the wheel `w` (graph `g`) down to XW_{2 target}: insert a crossed
/// cube into the kite at a pole and three consecutive cycle vertices, then
/// reduce the resulting pre-wheel to the next smaller wheel.
inline void bridge_down(Graph& g, XwDescriptor& w, int target, VertexId& next_id, std::vector<ScriptOp>& ops) {
  while (w.k > target) {
    CrStep cube;
    cube.outer = {w.pole_p, w.cycle[0], w.cycle[1], w.cycle[2]};
    for (int i = 0; i < 4; ++i) cube.inner[i] = next_id++;
    cube = normalize(cube);
    apply_inverse(g, cube);
    ops.push_back(ScriptOp{ScriptOp::Kind::expand, cube, {}});
    Reducer r(std::move(g), Policy{});
    std::size_t budget = 100000;
    const int k = w.k - 1;
    if (!reach_wheel(r, k, 6, 3, budget, [](Reducer&) { return true; }))
      throw InternalError("no descent from CXW_" + std::to_string(2 * w.k));
    for (const auto& s : r.trace().steps) ops.push_back(ScriptOp{ScriptOp::Kind::reduce, s, {}});
    g = r.release_graph();
    w = *is_extended_wheel(g);
  }
}

}  // namespace detail

struct Equivalence {
  bool equivalent = false;
  std::string reason;
  TransformScript script;

  explicit operator bool() const noexcept { return equivalent; }
};

/// Script taking g1 to g2 through reductions, inverse reductions and one
/// renumbering of an extended wheel, or a non-equivalence verdict.
inline Equivalence equivalence_transform(const Graph& g1, const Graph& g2) {
  Equivalence out;
  const Recognition r1 = recognize(g1);
  if (!r1) {
    out.reason = "first graph rejected at stage " + r1.stage + ": " + r1.reason;
    return out;
  }
  const Recognition r2 = recognize(g2);
  if (!r2) {
    out.reason = "second graph rejected at stage " + r2.stage + ": " + r2.reason;
    return out;
  }
  auto side = [](const Recognition& r, std::vector<ScriptOp>& ops) {
    for (const auto& s : r.certificate->trace.steps) ops.push_back(ScriptOp{ScriptOp::Kind::reduce, s, {}});
  };
  std::vector<ScriptOp> ops1, ops2;
  side(r1, ops1);
  side(r2, ops2);
  Graph w1 = *r1.terminal_graph, w2 = *r2.terminal_graph;
  XwDescriptor d1 = r1.certificate->terminal, d2 = r2.certificate->terminal;
  VertexId next1 = static_cast<VertexId>(g1.id_bound()), next2 = static_cast<VertexId>(g2.id_bound());
  if (d1.k > d2.k) detail::bridge_down(w1, d1, d2.k, next1, ops1);
  if (d2.k > d1.k) detail::bridge_down(w2, d2, d1.k, next2, ops2);
  ScriptOp rel;
  rel.kind = ScriptOp::Kind::relabel;
  rel.mapping = {{d1.pole_p, d2.pole_p}, {d1.pole_q, d2.pole_q}};
  for (std::size_t i = 0; i < d1.cycle.size(); ++i) rel.mapping.emplace_back(d1.cycle[i], d2.cycle[i]);
  std::sort(rel.mapping.begin(), rel.mapping.end());
  const bool identity =
      std::all_of(rel.mapping.begin(), rel.mapping.end(), [](const auto& ab) { return ab.first == ab.second; });
  out.script.ops = std::move(ops1);
  if (!identity) out.script.ops.push_back(std::move(rel));
  for (auto& op : inverse(TransformScript{std::move(ops2)}).ops) out.script.ops.push_back(std::move(op));
  out.equivalent = true;
  return out;
}

}  // namespace o1p
