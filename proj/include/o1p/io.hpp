#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "o1p/embedding.hpp"
#include "o1p/errors.hpp"
#include "o1p/graph.hpp"
#include "o1p/reduce.hpp"
#include "o1p/strategies.hpp"

namespace o1p {

namespace io {

struct Token {
  std::string_view text;
  std::size_t line = 0, column = 0;
};

/// Whitespace-separated tokens of one significant line.
struct Line {
  std::size_t number = 0;
  std::size_t end_column = 1;
  std::vector<Token> tokens;
};

/// Splits text into non-blank lines that are not `#` comments.
inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++number;
    Line line;
    line.number = number;
    line.end_column = raw.size() + 1;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
      line.tokens.push_back(Token{raw.substr(start, i - start), number, start + 1});
    }
    if (!line.tokens.empty() && line.tokens.front().text.front() != '#') out.push_back(std::move(line));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view s, std::size_t line, std::size_t column, const char* what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw FormatError(std::string("expected ") + what + ", found '" + std::string(s) + "'", line, column);
  return v;
}

inline std::uint64_t parse_uint(const Token& t, const char* what) {
  return parse_uint(t.text, t.line, t.column, what);
}

inline VertexId parse_vertex(std::string_view s, std::size_t line, std::size_t column) {
  const std::uint64_t v = parse_uint(s, line, column, "vertex id");
  if (v >= kNoVertex) throw FormatError("vertex id too large", line, column);
  return static_cast<VertexId>(v);
}

inline VertexId parse_vertex(const Token& t) { return parse_vertex(t.text, t.line, t.column); }

/// Parses `u-w`.
inline Edge parse_edge_token(const Token& t) {
  const std::size_t dash = t.text.find('-');
  if (dash == std::string_view::npos) throw FormatError("expected edge u-w, found '" + std::string(t.text) + "'", t.line, t.column);
  const VertexId u = parse_vertex(t.text.substr(0, dash), t.line, t.column);
  const VertexId w = parse_vertex(t.text.substr(dash + 1), t.line, t.column + dash + 1);
  if (u == w) throw FormatError("loop edge " + std::string(t.text), t.line, t.column);
  return {u, w};
}

inline void expect_count(const Line& l, std::size_t n, const char* what) {
  if (l.tokens.size() < n)
    throw FormatError(std::string(what) + ": expected " + std::to_string(n - 1) + " arguments", l.number, l.end_column);
  if (l.tokens.size() > n)
    throw FormatError(std::string(what) + ": unexpected token '" + std::string(l.tokens[n].text) + "'", l.number,
                      l.tokens[n].column);
}

inline std::string edge_text(Edge e) {
  e = make_edge(e.first, e.second);
  return std::to_string(e.first) + "-" + std::to_string(e.second);
}

/// Parses a step whose opcode is token `at` of the line.
inline ReductionStep parse_step(const Line& l, std::size_t at) {
  const Token& op = l.tokens[at];
  if (op.text == "SR") {
    Line rest = l;
    rest.tokens.erase(rest.tokens.begin(), rest.tokens.begin() + static_cast<long>(at));
    expect_count(rest, 8, "SR");
    SrStep s;
    VertexId* f[] = {&s.x, &s.v, &s.a, &s.b, &s.w1, &s.w2, &s.w3};
    for (int i = 0; i < 7; ++i) *f[i] = parse_vertex(rest.tokens[i + 1]);
    return s;
  }
  if (op.text == "CR") {
    Line rest = l;
    rest.tokens.erase(rest.tokens.begin(), rest.tokens.begin() + static_cast<long>(at));
    expect_count(rest, 9, "CR");
    CrStep s;
    for (int i = 0; i < 4; ++i) {
      s.inner[i] = parse_vertex(rest.tokens[i + 1]);
      s.outer[i] = parse_vertex(rest.tokens[i + 5]);
    }
    return s;
  }
  throw FormatError("unknown opcode '" + std::string(op.text) + "'", op.line, op.column);
}

inline std::string step_text(const ReductionStep& step) {
  std::ostringstream os;
  if (auto* s = std::get_if<SrStep>(&step)) {
    os << "SR " << s->x << ' ' << s->v << ' ' << s->a << ' ' << s->b << ' ' << s->w1 << ' ' << s->w2 << ' ' << s->w3;
  } else {
    const auto& c = std::get<CrStep>(step);
    os << "CR";
    for (VertexId y : c.inner) os << ' ' << y;
    for (VertexId y : c.outer) os << ' ' << y;
  }
  return os.str();
}

}  // namespace io

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

// ---- edge lists ----

struct ParsedGraph {
  Graph graph;
  std::vector<Edge> duplicates;
};

/// `n m` header, then m lines `u v`.
inline ParsedGraph parse_edge_list(std::string_view text) {
  auto lines = io::split_lines(text);
  if (lines.empty()) throw FormatError("empty graph file: missing 'n m' header", 1, 1);
  const io::Line& head = lines.front();
  io::expect_count(head, 2, "header");
  const std::uint64_t n = io::parse_uint(head.tokens[0], "vertex count");
  const std::uint64_t m = io::parse_uint(head.tokens[1], "edge count");
  if (n >= kNoVertex) throw FormatError("vertex count too large", head.number, head.tokens[0].column);
  if (lines.size() - 1 != m)
    throw FormatError("header announces " + std::to_string(m) + " edges, file has " + std::to_string(lines.size() - 1),
                      head.number, head.tokens[1].column);
  ParsedGraph out{Graph(n), {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const io::Line& l = lines[i];
    io::expect_count(l, 2, "edge");
    const VertexId u = io::parse_vertex(l.tokens[0]);
    const VertexId w = io::parse_vertex(l.tokens[1]);
    if (u >= n) throw FormatError("vertex " + std::to_string(u) + " out of range", l.number, l.tokens[0].column);
    if (w >= n) throw FormatError("vertex " + std::to_string(w) + " out of range", l.number, l.tokens[1].column);
    if (u == w) throw FormatError("loop edge at vertex " + std::to_string(u), l.number, l.tokens[0].column);
    if (!out.graph.add_edge(u, w)) out.duplicates.push_back(make_edge(u, w));
  }
  return out;
}

/// Tombstoned ids are compacted away first, keeping relative order.
inline std::string serialize_edge_list(const Graph& g) {
  const bool dense = g.vertex_count() == g.id_bound();
  const Graph compacted = dense ? Graph() : compact(g).graph;
  const Graph& h = dense ? g : compacted;
  std::string out = std::to_string(h.vertex_count()) + " " + std::to_string(h.edge_count()) + "\n";
  for (const auto& [u, w] : h.edges()) out += std::to_string(u) + " " + std::to_string(w) + "\n";
  return out;
}

inline Graph load_graph(const std::string& path) {
  auto parsed = parse_edge_list(read_file(path));
  if (!parsed.duplicates.empty())
    throw FormatError("duplicate edge " + io::edge_text(parsed.duplicates.front()) + " in " + path);
  return std::move(parsed.graph);
}

// ---- embeddings ----

inline Embedding parse_embedding(std::string_view text) {
  auto lines = io::split_lines(text);
  std::size_t i = 0;
  if (lines.empty() || lines[0].tokens.size() != 1 || lines[0].tokens[0].text != "ROT")
    throw FormatError("embedding must start with a ROT section", lines.empty() ? 1 : lines[0].number, 1);
  std::vector<std::pair<VertexId, std::vector<VertexId>>> rotation;
  for (i = 1; i < lines.size(); ++i) {
    const io::Line& l = lines[i];
    if (l.tokens[0].text == "CROSS") break;
    const io::Token& head = l.tokens[0];
    if (head.text.back() != ':') throw FormatError("expected 'v:'", l.number, head.column);
    const VertexId v = io::parse_vertex(head.text.substr(0, head.text.size() - 1), l.number, head.column);
    std::vector<VertexId> nbrs;
    for (std::size_t j = 1; j < l.tokens.size(); ++j) {
      const Edge e = io::parse_edge_token(l.tokens[j]);
      if (e.first != v && e.second != v)
        throw FormatError("edge " + std::string(l.tokens[j].text) + " is not incident to " + std::to_string(v), l.number,
                          l.tokens[j].column);
      nbrs.push_back(e.first == v ? e.second : e.first);
    }
    rotation.emplace_back(v, std::move(nbrs));
  }
  if (i == lines.size()) throw FormatError("missing CROSS section", lines.back().number + 1, 1);
  io::expect_count(lines[i], 1, "CROSS");
  std::vector<std::pair<Edge, Edge>> crossings;
  for (++i; i < lines.size(); ++i) {
    const io::Line& l = lines[i];
    io::expect_count(l, 3, "crossing pair");
    if (l.tokens[1].text != "x") throw FormatError("expected 'x'", l.number, l.tokens[1].column);
    const Edge a = io::parse_edge_token(l.tokens[0]);
    const Edge b = io::parse_edge_token(l.tokens[2]);
    crossings.emplace_back(make_edge(a.first, a.second), make_edge(b.first, b.second));
  }
  try {
    return Embedding::from_rotation(rotation, crossings);
  } catch (const FormatError& ex) {
    throw FormatError(std::string("embedding: ") + ex.what());
  }
}

inline std::string serialize_embedding(const Embedding& e) {
  std::string out = "ROT\n";
  for (VertexId v : e.vertices()) {
    out += std::to_string(v) + ":";
    for (VertexId w : e.rotation(v)) out += " " + io::edge_text({v, w});
    out += "\n";
  }
  out += "CROSS\n";
  for (const auto& [a, b] : e.crossing_pairs()) out += io::edge_text(a) + " x " + io::edge_text(b) + "\n";
  return out;
}

// ---- traces ----

/// `INIT n m`, one step per line, optional `XW k pole pole` footer. The
/// footer carries no cycle order; certification recomputes it.
inline Trace parse_trace(std::string_view text) {
  auto lines = io::split_lines(text);
  if (lines.empty() || lines[0].tokens[0].text != "INIT")
    throw FormatError("trace must start with INIT n m", lines.empty() ? 1 : lines[0].number, 1);
  io::expect_count(lines[0], 3, "INIT");
  Trace t;
  t.initial_n = io::parse_uint(lines[0].tokens[1], "vertex count");
  t.initial_m = io::parse_uint(lines[0].tokens[2], "edge count");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const io::Line& l = lines[i];
    if (t.terminal) throw FormatError("content after the XW footer", l.number, 1);
    if (l.tokens[0].text == "XW") {
      io::expect_count(l, 4, "XW");
      XwDescriptor d;
      d.k = static_cast<int>(io::parse_uint(l.tokens[1], "wheel index"));
      if (d.k < 3) throw FormatError("wheel index below 3", l.number, l.tokens[1].column);
      d.pole_p = io::parse_vertex(l.tokens[2]);
      d.pole_q = io::parse_vertex(l.tokens[3]);
      t.terminal = d;
      continue;
    }
    t.steps.push_back(io::parse_step(l, 0));
  }
  return t;
}

inline std::string serialize_trace(const Trace& t) {
  std::string out = "INIT " + std::to_string(t.initial_n) + " " + std::to_string(t.initial_m) + "\n";
  for (const auto& s : t.steps) out += io::step_text(s) + "\n";
  if (t.terminal)
    out += "XW " + std::to_string(t.terminal->k) + " " + std::to_string(t.terminal->pole_p) + " " +
           std::to_string(t.terminal->pole_q) + "\n";
  return out;
}

// ---- transform scripts ----

/// Lines `SR ...` / `CR ...` (reduce), `EXPAND SR ...` / `EXPAND CR ...`
/// and `RELABEL old:new ...`.
inline TransformScript parse_script(std::string_view text) {
  TransformScript s;
  for (const io::Line& l : io::split_lines(text)) {
    const io::Token& op = l.tokens[0];
    ScriptOp o;
    if (op.text == "EXPAND") {
      if (l.tokens.size() < 2) throw FormatError("EXPAND needs a step", l.number, l.end_column);
      o.kind = ScriptOp::Kind::expand;
      o.step = io::parse_step(l, 1);
    } else if (op.text == "RELABEL") {
      o.kind = ScriptOp::Kind::relabel;
      for (std::size_t j = 1; j < l.tokens.size(); ++j) {
        const io::Token& t = l.tokens[j];
        const std::size_t colon = t.text.find(':');
        if (colon == std::string_view::npos) throw FormatError("expected old:new", l.number, t.column);
        o.mapping.emplace_back(io::parse_vertex(t.text.substr(0, colon), l.number, t.column),
                               io::parse_vertex(t.text.substr(colon + 1), l.number, t.column + colon + 1));
      }
    } else {
      o.step = io::parse_step(l, 0);
    }
    s.ops.push_back(std::move(o));
  }
  return s;
}

inline std::string serialize_script(const TransformScript& s) {
  std::string out;
  for (const ScriptOp& op : s.ops) {
    switch (op.kind) {
      case ScriptOp::Kind::reduce: out += io::step_text(op.step); break;
      case ScriptOp::Kind::expand: out += "EXPAND " + io::step_text(op.step); break;
      case ScriptOp::Kind::relabel:
        out += "RELABEL";
        for (const auto& [a, b] : op.mapping) out += " " + std::to_string(a) + ":" + std::to_string(b);
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace o1p
