#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "o1p/candidates.hpp"
#include "o1p/embedding.hpp"
#include "o1p/errors.hpp"
#include "o1p/families.hpp"
#include "o1p/graph.hpp"
#include "o1p/reduce.hpp"

namespace o1p {

/// Necessary global conditions; returns the first violated one.
inline std::optional<std::string> quick_reject(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 8 || n == 9) return "size: no member has " + std::to_string(n) + " vertices";
  if (g.edge_count() != 4 * n - 8)
    return "edge count: m=" + std::to_string(g.edge_count()) + ", expected " + std::to_string(4 * n - 8);
  std::size_t six = 0;
  for (VertexId v : g.vertices()) {
    const std::size_t d = g.degree(v);
    if (d < 6 || d % 2 != 0) return "degree: vertex " + std::to_string(v) + " has degree " + std::to_string(d);
    if (d == 6) ++six;
  }
  if (six < 8) return "degree: only " + std::to_string(six) + " vertices of degree 6";
  return std::nullopt;
}

/// Recognizes XW_{2k} and recovers its poles and cycle order.
inline std::optional<XwDescriptor> is_extended_wheel(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 8 || n % 2 != 0) return std::nullopt;
  const int k = static_cast<int>((n - 2) / 2);
  if (g.edge_count() != static_cast<std::size_t>(8 * k)) return std::nullopt;
  const auto vs = g.vertices();
  if (k == 3) {
    std::vector<VertexId> anti(g.id_bound(), kNoVertex);
    for (VertexId v : vs) {
      if (g.degree(v) != 6) return std::nullopt;
      for (VertexId w : vs)
        if (w != v && !g.has_edge(v, w)) anti[v] = w;
    }
    XwDescriptor d;
    d.k = 3;
    d.pole_p = vs[0];
    d.pole_q = anti[vs[0]];
    std::vector<VertexId> firsts;
    for (VertexId v : vs)
      if (v != d.pole_p && v != d.pole_q && v < anti[v]) firsts.push_back(v);
    if (firsts.size() != 3) return std::nullopt;
    d.cycle = {firsts[0], firsts[1], firsts[2], anti[firsts[0]], anti[firsts[1]], anti[firsts[2]]};
    return d;
  }
  std::vector<VertexId> poles;
  for (VertexId v : vs) {
    const std::size_t deg = g.degree(v);
    if (deg == static_cast<std::size_t>(2 * k))
      poles.push_back(v);
    else if (deg != 6)
      return std::nullopt;
  }
  if (poles.size() != 2 || g.has_edge(poles[0], poles[1])) return std::nullopt;
  auto is_pole = [&](VertexId v) { return v == poles[0] || v == poles[1]; };
  auto ring = [&](VertexId v) {
    std::vector<VertexId> out;
    for (VertexId w : g.neighbors(v))
      if (!is_pole(w)) out.push_back(w);
    return out;
  };
  auto common = [&](VertexId u, VertexId w) {
    int c = 0;
    for (VertexId z : ring(u))
      if (g.has_edge(z, w)) ++c;
    return c;
  };
  XwDescriptor d;
  d.k = k;
  d.pole_p = poles[0];
  d.pole_q = poles[1];
  VertexId start = kNoVertex;
  for (VertexId v : vs)
    if (!is_pole(v)) {
      start = v;
      break;
    }
  std::vector<VertexId> near;
  for (VertexId w : ring(start))
    if (common(start, w) == 2) near.push_back(w);
  if (near.size() != 2) return std::nullopt;
  d.cycle = {start, std::min(near[0], near[1])};
  const std::size_t len = static_cast<std::size_t>(2 * k);
  while (d.cycle.size() < len) {
    const VertexId cur = d.cycle.back(), prev = d.cycle[d.cycle.size() - 2];
    VertexId next = kNoVertex;
    for (VertexId w : ring(cur))
      if (w != prev && common(cur, w) == 2) next = w;
    if (next == kNoVertex || next == start) return std::nullopt;
    d.cycle.push_back(next);
  }
  std::vector<std::uint8_t> seen(g.id_bound(), 0);
  for (VertexId c : d.cycle) {
    if (seen[c]) return std::nullopt;
    seen[c] = 1;
  }
  for (std::size_t i = 0; i < len; ++i) {
    const VertexId c = d.cycle[i];
    if (!g.has_edge(c, d.cycle[(i + 1) % len]) || !g.has_edge(c, d.cycle[(i + 2) % len]) ||
        !g.has_edge(c, d.pole_p) || !g.has_edge(c, d.pole_q))
      return std::nullopt;
  }
  return d;
}

/// Order in which good candidates are reduced.
struct Policy {
  enum class Kind { smallest_id, largest_id, cr_first, sr_first, random };
  Kind kind = Kind::smallest_id;
  std::uint64_t seed = 0;
  bool sr_only = false;

  static Policy parse(const std::string& name) {
    Policy p;
    if (name == "smallest-id") return p;
    if (name == "largest-id") p.kind = Kind::largest_id;
    else if (name == "cr-first") p.kind = Kind::cr_first;
    else if (name == "sr-first") p.kind = Kind::sr_first;
    else if (name.rfind("random", 0) == 0) {
      p.kind = Kind::random;
      if (name.size() > 6) {
        if (name[6] != ':') throw FormatError("unknown policy '" + name + "'");
        try {
          p.seed = std::stoull(name.substr(7));
        } catch (const std::exception&) {
          throw FormatError("bad seed in policy '" + name + "'");
        }
      }
    } else {
      throw FormatError("unknown policy '" + name + "'");
    }
    return p;
  }

  std::string name() const {
    switch (kind) {
      case Kind::smallest_id: return "smallest-id";
      case Kind::largest_id: return "largest-id";
      case Kind::cr_first: return "cr-first";
      case Kind::sr_first: return "sr-first";
      case Kind::random: return "random:" + std::to_string(seed);
    }
    return "?";
  }
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Worklist reduction with cached statuses. Only vertices near a change
/// are re-classified after each step.
class Reducer {
 public:
  Reducer(Graph g, Policy policy) : g_(std::move(g)), policy_(policy) {
    trace_.initial_n = g_.vertex_count();
    trace_.initial_m = g_.edge_count();
    status_.assign(g_.id_bound(), NonCandidate{});
    for (VertexId v : g_.vertices())
      if (g_.degree(v) == 6) refresh(v);
  }

  const Graph& graph() const { return g_; }
  const Trace& trace() const { return trace_; }
  Graph release_graph() { return std::move(g_); }
  Trace release_trace() { return std::move(trace_); }

  const CandidateStatus& status(VertexId v) const {
    static const CandidateStatus none = NonCandidate{};
    return v < status_.size() ? status_[v] : none;
  }

  bool has_good() const { return !good_.empty(); }
  std::size_t good_count() const { return good_.size(); }

  /// Good candidates in policy order.
  std::vector<VertexId> good_candidates() const {
    std::vector<VertexId> out;
    for (const auto& [_, v] : good_) out.push_back(v);
    return out;
  }

  /// The step the policy would take next, if any.
  std::optional<ReductionStep> next_step() const {
    if (good_.empty()) return std::nullopt;
    return step_for(good_.begin()->second);
  }

  /// Resolves the step for candidate `x` under the current policy.
  ReductionStep step_for(VertexId x) const {
    const CandidateStatus& st = status(x);
    if (auto* cr = std::get_if<GoodCR>(&st)) return make_cr_step(g_, cr->quad);
    const auto& targets = std::get<GoodSR>(st).targets;
    VertexId v = targets.front();
    if (policy_.kind == Policy::Kind::largest_id) v = targets.back();
    if (policy_.kind == Policy::Kind::random)
      v = targets[detail::mix64(policy_.seed ^ (static_cast<std::uint64_t>(x) << 20) ^ trace_.steps.size()) %
                  targets.size()];
    return make_sr_step(g_, x, v);
  }

  /// Applies one reduction and re-classifies the affected vertices.
  void apply(const ReductionStep& step) {
    EdgeChange change = edge_change(step, g_);
    try {
      apply_step(g_, step);
    } catch (const FeasibilityError& ex) {
      throw InternalError(std::string("reduction failed after a good classification: ") + ex.what());
    }
    for (VertexId y : change.removed_vertices) set_status(y, NonCandidate{});
    for (VertexId y : affected_vertices(g_, change)) refresh(y);
    trace_.steps.push_back(step);
  }

  /// Reverts the last applied step.
  void undo() {
    if (trace_.steps.empty()) throw InternalError("undo on an empty trace");
    const ReductionStep step = trace_.steps.back();
    trace_.steps.pop_back();
    undo_step(g_, step);
    for (VertexId y : affected_vertices(g_, edge_change(step, g_))) refresh(y);
  }

  /// Reduces until no good candidate is left. Returns the number of steps.
  std::size_t run(std::size_t max_steps = static_cast<std::size_t>(-1)) {
    std::size_t done = 0;
    while (!good_.empty() && done < max_steps) {
      apply(*next_step());
      ++done;
      if (g_.edge_count() + 8 != 4 * g_.vertex_count())
        throw InternalError("edge count left the class after step " + std::to_string(trace_.steps.size()));
    }
    return done;
  }

  /// Full re-classification; used by tests to check the incremental cache.
  std::vector<std::pair<VertexId, CandidateStatus>> cached_statuses() const {
    std::vector<std::pair<VertexId, CandidateStatus>> out;
    for (VertexId v : g_.vertices()) out.emplace_back(v, status(v));
    return out;
  }

 private:
  std::pair<std::uint64_t, VertexId> order_key(VertexId v, const CandidateStatus& st) const {
    const bool cr = std::holds_alternative<GoodCR>(st);
    switch (policy_.kind) {
      case Policy::Kind::smallest_id: return {0, v};
      case Policy::Kind::largest_id: return {~static_cast<std::uint64_t>(v), v};
      case Policy::Kind::cr_first: return {cr ? 0u : 1u, v};
      case Policy::Kind::sr_first: return {cr ? 1u : 0u, v};
      case Policy::Kind::random: return {detail::mix64(policy_.seed ^ v), v};
    }
    return {0, v};
  }

  void refresh(VertexId v) {
    CandidateStatus st = g_.has_vertex(v) ? classify(g_, v) : CandidateStatus{NonCandidate{}};
    if (policy_.sr_only && std::holds_alternative<GoodCR>(st)) st = Bad{};
    set_status(v, std::move(st));
  }

  void set_status(VertexId v, CandidateStatus st) {
    if (v >= status_.size()) status_.resize(static_cast<std::size_t>(v) + 1, NonCandidate{});
    const bool was = is_good(status_[v]), now = is_good(st);
    if (was && now && status_[v].index() == st.index()) {
      status_[v] = std::move(st);
      return;
    }
    if (was) good_.erase(order_key(v, status_[v]));
    status_[v] = std::move(st);
    if (now) good_.insert(order_key(v, status_[v]));
  }

  Graph g_;
  Policy policy_;
  Trace trace_;
  std::vector<CandidateStatus> status_;
  std::set<std::pair<std::uint64_t, VertexId>> good_;
};

struct Reduction {
  Graph graph;
  Trace trace;
};

inline Reduction reduce_to_irreducible(Graph g, Policy policy = {}) {
  Reducer r(std::move(g), policy);
  r.run();
  Reduction out{r.release_graph(), r.release_trace()};
  out.trace.terminal = is_extended_wheel(out.graph);
  return out;
}

struct Certificate {
  Trace trace;
  XwDescriptor terminal;
  Embedding embedding;
};

struct Recognition {
  bool accepted = false;
  /// quick-reject, reduce, wheel or certificate when rejected.
  std::string stage;
  std::string reason;
  std::optional<Certificate> certificate;
  /// Terminal graph of the reduction, when one was reached.
  std::optional<Graph> terminal_graph;

  explicit operator bool() const noexcept { return accepted; }
};

inline std::string verdict_line(const Recognition& r) {
  if (r.accepted)
    return "ACCEPT k=" + std::to_string(r.certificate->terminal.k) +
           " steps=" + std::to_string(r.certificate->trace.steps.size());
  return "REJECT stage=" + r.stage;
}

/// Independent check of a trace against `g`: forward replay must reach the
/// recorded wheel, and the inverse replay must give an embedding of `g`.
inline Embedding certify(const Graph& g, const Trace& trace) {
  if (trace.initial_n != g.vertex_count() || trace.initial_m != g.edge_count())
    throw CertificateError("trace header does not match the graph");
  Graph h = g;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    try {
      apply_step(h, trace.steps[i]);
    } catch (const FeasibilityError& ex) {
      throw CertificateError("step " + std::to_string(i + 1) + ": " + ex.what());
    }
  }
  auto wheel = is_extended_wheel(h);
  if (!wheel) throw CertificateError("trace does not end at an extended wheel");
  if (trace.terminal && (trace.terminal->k != wheel->k ||
                         std::minmax(trace.terminal->pole_p, trace.terminal->pole_q) !=
                             std::minmax(wheel->pole_p, wheel->pole_q)))
    throw CertificateError("recorded wheel does not match the terminal graph");
  Trace seeded = trace;
  seeded.terminal = wheel;
  Embedding e = replay_from_xw(seeded);
  auto report = validate_embedding(e, g);
  if (!report) throw CertificateError("replayed embedding fails " + report.condition + ": " + report.detail);
  return e;
}

inline Recognition recognize(const Graph& g, Policy policy = {}) {
  Recognition out;
  if (auto why = quick_reject(g)) {
    out.stage = "quick-reject";
    out.reason = *why;
    return out;
  }
  Reduction red;
  try {
    red = reduce_to_irreducible(g, policy);
  } catch (const Error& ex) {
    out.stage = "reduce";
    out.reason = ex.what();
    return out;
  }
  out.terminal_graph = red.graph;
  if (!red.trace.terminal) {
    out.stage = "wheel";
    out.reason = "irreducible graph with " + std::to_string(red.graph.vertex_count()) +
                 " vertices is not an extended wheel";
    return out;
  }
  try {
    Embedding e = replay_from_xw(red.trace);
    auto report = validate_embedding(e, g);
    if (!report) throw CertificateError(report.condition + ": " + report.detail);
    out.certificate = Certificate{red.trace, *red.trace.terminal, std::move(e)};
  } catch (const Error& ex) {
    out.stage = "certificate";
    out.reason = ex.what();
    return out;
  }
  out.accepted = true;
  return out;
}

}  // namespace o1p
