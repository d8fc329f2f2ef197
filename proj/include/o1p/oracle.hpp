#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "o1p/candidates.hpp"
#include "o1p/embedding.hpp"
#include "o1p/errors.hpp"
#include "o1p/families.hpp"
#include "o1p/graph.hpp"
#include "o1p/io.hpp"
#include "o1p/recognize.hpp"
#include "o1p/reduce.hpp"

namespace o1p {

/// Byte string equal for two graphs iff they are isomorphic.
using CanonicalForm = std::string;

namespace detail {

class Canonizer {
 public:
  explicit Canonizer(const Graph& g) {
    const auto vs = g.vertices();
    n_ = static_cast<int>(vs.size());
    words_ = (n_ + 63) / 64;
    std::vector<int> index(g.id_bound(), -1);
    for (int i = 0; i < n_; ++i) index[vs[i]] = i;
    rows_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (const auto& [u, w] : g.edges()) {
      set_bit(index[u], index[w]);
      set_bit(index[w], index[u]);
    }
  }

  CanonicalForm run() {
    std::vector<std::vector<int>> cells(1);
    for (int v = 0; v < n_; ++v) cells[0].push_back(v);
    if (n_ == 0) cells.clear();
    refine(cells);
    search(cells);
    return best_;
  }

 private:
  bool adjacent(int u, int w) const { return (rows_[static_cast<std::size_t>(u) * words_ + w / 64] >> (w % 64)) & 1; }
  void set_bit(int u, int w) { rows_[static_cast<std::size_t>(u) * words_ + w / 64] |= std::uint64_t{1} << (w % 64); }

  int count_into(int v, const std::vector<std::uint64_t>& mask) const {
    int c = 0;
    for (int i = 0; i < words_; ++i) c += std::popcount(rows_[static_cast<std::size_t>(v) * words_ + i] & mask[i]);
    return c;
  }

  /// Splits cells by neighbor counts into every cell until stable. The
  /// result depends only on the graph and the incoming ordered partition.
  void refine(std::vector<std::vector<int>>& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
        std::vector<std::uint64_t> mask(words_, 0);
        for (int v : cells[s]) mask[v / 64] |= std::uint64_t{1} << (v % 64);
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (cells[c].size() < 2) continue;
          std::vector<std::pair<int, int>> keyed;
          for (int v : cells[c]) keyed.emplace_back(count_into(v, mask), v);
          std::stable_sort(keyed.begin(), keyed.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
          if (keyed.front().first == keyed.back().first) continue;
          std::vector<std::vector<int>> parts;
          for (std::size_t i = 0; i < keyed.size(); ++i) {
            if (i == 0 || keyed[i].first != keyed[i - 1].first) parts.emplace_back();
            parts.back().push_back(keyed[i].second);
          }
          cells.erase(cells.begin() + static_cast<long>(c));
          cells.insert(cells.begin() + static_cast<long>(c), parts.begin(), parts.end());
          changed = true;
          break;
        }
      }
    }
  }

  CanonicalForm encode(const std::vector<std::vector<int>>& cells) const {
    std::vector<int> order;
    for (const auto& c : cells) order.push_back(c.front());
    CanonicalForm out;
    out.push_back(static_cast<char>(n_ >> 24));
    out.push_back(static_cast<char>(n_ >> 16));
    out.push_back(static_cast<char>(n_ >> 8));
    out.push_back(static_cast<char>(n_));
    unsigned char byte = 0;
    int bits = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        byte = static_cast<unsigned char>((byte << 1) | (adjacent(order[i], order[j]) ? 1 : 0));
        if (++bits == 8) {
          out.push_back(static_cast<char>(byte));
          byte = 0;
          bits = 0;
        }
      }
    if (bits) out.push_back(static_cast<char>(byte << (8 - bits)));
    return out;
  }

  void search(const std::vector<std::vector<int>>& cells) {
    std::size_t target = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (cells[c].size() > 1 && (target == cells.size() || cells[c].size() > cells[target].size())) target = c;
    if (target == cells.size()) {
      CanonicalForm f = encode(cells);
      if (!have_ || f < best_) {
        best_ = std::move(f);
        have_ = true;
      }
      return;
    }
    for (int v : cells[target]) {
      std::vector<std::vector<int>> next;
      next.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != target) {
          next.push_back(cells[c]);
          continue;
        }
        next.push_back({v});
        std::vector<int> rest;
        for (int w : cells[c])
          if (w != v) rest.push_back(w);
        next.push_back(std::move(rest));
      }
      refine(next);
      search(next);
    }
  }

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> rows_;
  CanonicalForm best_;
  bool have_ = false;
};

}  // namespace detail

/// Lexicographically smallest upper-triangle adjacency encoding over the
/// leaves of a refinement/individualization search.
inline CanonicalForm canonical_form(const Graph& g) { return detail::Canonizer(g).run(); }

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string digest_hex(const CanonicalForm& f) {
  static const char* hex = "0123456789abcdef";
  const std::uint64_t h = fnv1a64(f);
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) out[15 - i] = hex[(h >> (4 * i)) & 0xf];
  return out;
}

struct CensusEntry {
  Graph graph;
  Embedding witness;
};

struct Census {
  std::size_t n_max = 0;
  std::map<std::size_t, std::map<CanonicalForm, CensusEntry>> members;

  std::size_t count(std::size_t n) const {
    auto it = members.find(n);
    return it == members.end() ? 0 : it->second.size();
  }

  bool contains(const Graph& g) const {
    auto it = members.find(g.vertex_count());
    return it != members.end() && it->second.count(canonical_form(g)) != 0;
  }

  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& [_, m] : members) s += m.size();
    return s;
  }
};

inline constexpr std::size_t kCensusCap = 16;

namespace detail {

inline void census_insert(Census& c, Embedding e) {
  Graph g = e.to_graph();
  auto form = canonical_form(g);
  auto& bucket = c.members[g.vertex_count()];
  bucket.try_emplace(std::move(form), CensusEntry{std::move(g), std::move(e)});
}

}  // namespace detail

/// All class members with at most `n_max` vertices up to isomorphism, grown
/// from wheel embeddings by every feasible splitting and cube insertion.
inline Census enumerate(std::size_t n_max, std::size_t cap = kCensusCap) {
  if (n_max > cap)
    throw Error("enumerate: n_max=" + std::to_string(n_max) + " exceeds the cap " + std::to_string(cap));
  Census c;
  c.n_max = n_max;
  for (int k = 3; static_cast<std::size_t>(2 * k + 2) <= n_max; ++k) detail::census_insert(c, canonical_xw_embedding(k));
  for (std::size_t n = 8; n < n_max; ++n) {
    auto it = c.members.find(n);
    if (it == c.members.end()) continue;
    for (const auto& [form, entry] : it->second) {
      std::vector<Embedding> starts;
      if (auto w = is_extended_wheel(entry.graph))
        starts = xw_seed_embeddings(*w);
      else
        starts.push_back(entry.witness);
      for (const Embedding& base : starts) {
        const auto next = static_cast<VertexId>(base.id_bound());
        if (n + 1 <= n_max) {
          for (const Edge& ed : base.edges_of_color(EdgeColor::planar))
            for (auto [w1, v] : {ed, Edge{ed.second, ed.first}}) {
              if (!sr_inverse_blocker(base, w1, v).empty()) continue;
              Embedding e = base;
              expand_sr_inverse(e, w1, v, next);
              detail::census_insert(c, std::move(e));
            }
        }
        if (n + 4 <= n_max) {
          for (const auto& f : skeleton_faces(base)) {
            Embedding e = base;
            expand_cr_inverse(e, Face{{f[0], f[1], f[2], f[3]}}, {next, next + 1, next + 2, next + 3});
            detail::census_insert(c, std::move(e));
          }
        }
      }
    }
  }
  return c;
}

/// Writes `index` (lines `n count`) and one `<digest>.graph` plus
/// `<digest>.emb` per member.
inline void save_census(const Census& c, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string index;
  std::set<std::string> digests;
  for (std::size_t n = 0; n <= c.n_max; ++n) {
    index += std::to_string(n) + " " + std::to_string(c.count(n)) + "\n";
    auto it = c.members.find(n);
    if (it == c.members.end()) continue;
    for (const auto& [form, entry] : it->second) {
      const std::string d = digest_hex(form);
      if (!digests.insert(d).second) throw InternalError("census digest collision at " + d);
      write_file((dir / (d + ".graph")).string(), serialize_edge_list(entry.graph));
      write_file((dir / (d + ".emb")).string(), serialize_embedding(entry.witness));
    }
  }
  write_file((dir / "index").string(), index);
}

inline Census load_census(const std::filesystem::path& dir) {
  Census c;
  std::map<std::size_t, std::size_t> expected;
  const std::string index = read_file((dir / "index").string());
  for (const io::Line& l : io::split_lines(index)) {
    io::expect_count(l, 2, "index");
    const std::size_t n = io::parse_uint(l.tokens[0], "size");
    expected[n] = io::parse_uint(l.tokens[1], "count");
    c.n_max = std::max(c.n_max, n);
  }
  std::vector<std::filesystem::path> files;
  for (const auto& ent : std::filesystem::directory_iterator(dir))
    if (ent.path().extension() == ".graph") files.push_back(ent.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    Graph g = load_graph(p.string());
    std::filesystem::path emb = p;
    emb.replace_extension(".emb");
    Embedding e = parse_embedding(read_file(emb.string()));
    auto form = canonical_form(g);
    if (digest_hex(form) != p.stem().string()) throw FormatError("census file " + p.string() + " has the wrong digest");
    c.members[g.vertex_count()].try_emplace(std::move(form), CensusEntry{std::move(g), std::move(e)});
  }
  for (const auto& [n, cnt] : expected)
    if (c.count(n) != cnt)
      throw FormatError("census index lists " + std::to_string(cnt) + " members with n=" + std::to_string(n) + ", found " +
                        std::to_string(c.count(n)));
  return c;
}

/// SR(x -> v) proposed without any local test.
struct ProposedSr {
  VertexId x, v;
};

/// CR on four mutually adjacent vertices, proposed without any local test.
struct ProposedCr {
  std::array<VertexId, 4> quad;  // sorted
};

using ProposedStep = std::variant<ProposedSr, ProposedCr>;

/// Every SR and CR a degree-six vertex could take part in: one SR per
/// neighbor and one CR per K4 through x inside its neighborhood.
inline std::vector<ProposedStep> proposed_steps(const Graph& g, VertexId x) {
  std::vector<ProposedStep> out;
  if (!g.has_vertex(x) || g.degree(x) != 6) return out;
  auto nb = g.sorted_neighbors(x);
  for (VertexId v : nb) out.emplace_back(ProposedSr{x, v});
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int l = j + 1; l < 6; ++l)
        if (g.has_edge(nb[i], nb[j]) && g.has_edge(nb[i], nb[l]) && g.has_edge(nb[j], nb[l])) {
          std::array<VertexId, 4> q{x, nb[i], nb[j], nb[l]};
          std::sort(q.begin(), q.end());
          out.emplace_back(ProposedCr{q});
        }
  return out;
}

/// Edge-level effect of a proposed step, or nothing when the step has no
/// well-defined result (no unique chord, outer neighborhood not a 4-cycle,
/// or an inserted edge would be parallel).
inline std::optional<Graph> hypothetical_result(const Graph& g, const ProposedStep& p) {
  Graph h = g;
  if (auto* sr = std::get_if<ProposedSr>(&p)) {
    if (!g.has_edge(sr->x, sr->v)) return std::nullopt;
    std::vector<VertexId> chord, rest;
    for (VertexId y : g.neighbors(sr->x)) {
      if (y == sr->v) continue;
      (g.has_edge(y, sr->v) ? chord : rest).push_back(y);
    }
    if (chord.size() != 2 || !g.has_edge(chord[0], chord[1])) return std::nullopt;
    h.remove_vertex(sr->x);
    h.remove_edge(chord[0], chord[1]);
    for (VertexId w : rest)
      if (!h.add_edge(sr->v, w)) return std::nullopt;
    return h;
  }
  const auto& quad = std::get<ProposedCr>(p).quad;
  std::set<VertexId> outer;
  for (VertexId y : quad)
    for (VertexId z : g.neighbors(y))
      if (std::find(quad.begin(), quad.end(), z) == quad.end()) outer.insert(z);
  if (outer.size() != 4) return std::nullopt;
  std::vector<VertexId> o(outer.begin(), outer.end());
  std::vector<Edge> missing;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!g.has_edge(o[i], o[j])) missing.emplace_back(o[i], o[j]);
  // an induced 4-cycle misses exactly its two diagonals, which are disjoint
  if (missing.size() != 2) return std::nullopt;
  if (missing[0].first == missing[1].first || missing[0].first == missing[1].second ||
      missing[0].second == missing[1].first || missing[0].second == missing[1].second)
    return std::nullopt;
  for (VertexId y : quad) h.remove_vertex(y);
  for (const auto& [a, b] : missing) h.add_edge(a, b);
  return h;
}

/// Ground truth for a proposed step on a census member: the result exists
/// and is itself a census member.
inline bool feasibility_oracle(const Census& c, const Graph& g, const ProposedStep& p) {
  auto h = hypothetical_result(g, p);
  return h && h->edge_count() + 8 == 4 * h->vertex_count() && c.contains(*h);
}

}  // namespace o1p
