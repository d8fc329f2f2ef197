#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "o1p/o1p.hpp"

using namespace o1p;

namespace {

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

Graph read_graph(const std::string& path) {
  if (path != "-") return load_graph(path);
  std::ostringstream ss;
  ss << std::cin.rdbuf();
  auto parsed = parse_edge_list(ss.str());
  if (!parsed.duplicates.empty()) throw FormatError("duplicate edge in input");
  return std::move(parsed.graph);
}

std::string vector_text(const DegreeVector& dv) {
  std::string s = "(";
  for (int i = 0; i < 7; ++i) s += (i ? "," : "") + std::to_string(dv.tuple[i]);
  return s + ")";
}

template <class C>
std::string join(const C& c) {
  std::string s;
  for (auto v : c) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal 1-planar graph toolkit"};
  app.require_subcommand(1);
  std::string format = "edges";
  app.add_option("--format", format, "Graph file format")->check(CLI::IsMember({"edges"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Write a family member or a random member");
  std::string family, gen_out = "-", gen_emb;
  int gen_k = 3;
  std::size_t gen_n = 8;
  std::uint64_t gen_seed = 1;
  gen->add_option("--family", family, "xw | nested | sxw | cxw | random")
      ->required()
      ->check(CLI::IsMember({"xw", "nested", "sxw", "cxw", "random"}));
  gen->add_option("--k", gen_k, "Wheel half-size, or ring count for nested");
  gen->add_option("--n", gen_n, "Vertex count for random");
  gen->add_option("--seed", gen_seed, "Seed for random");
  gen->add_option("-o,--out", gen_out, "Output file, - for stdout");
  gen->add_option("--emit-embedding", gen_emb, "Write an embedding (xw, random)");

  // classify
  auto* cls = app.add_subcommand("classify", "Print the status of every degree-6 vertex");
  std::string cls_in;
  cls->add_option("graph", cls_in)->required();

  // recognize
  auto* rec = app.add_subcommand("recognize", "Recognize and certify");
  std::string rec_in, rec_trace, rec_emb, rec_policy = "smallest-id";
  rec->add_option("graph", rec_in)->required();
  rec->add_option("--emit-trace", rec_trace);
  rec->add_option("--emit-embedding", rec_emb);
  rec->add_option("--policy", rec_policy, "smallest-id | largest-id | cr-first | sr-first | random[:seed]");

  // reduce
  auto* red = app.add_subcommand("reduce", "Reduce to an extended wheel");
  std::string red_in, red_target = "auto", red_trace;
  bool red_sr_only = false;
  red->add_option("graph", red_in)->required();
  red->add_option("--target", red_target)->check(CLI::IsMember({"6", "8", "auto"}));
  red->add_flag("--sr-only", red_sr_only);
  red->add_option("--emit-trace", red_trace);

  // equiv
  auto* eqv = app.add_subcommand("equiv", "Transform one member into another");
  std::string eq_a, eq_b, eq_script;
  eqv->add_option("g1", eq_a)->required();
  eqv->add_option("g2", eq_b)->required();
  eqv->add_option("--emit-script", eq_script);

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Reduction range bounds");
  std::string bnd_in;
  bnd->add_option("graph", bnd_in)->required();

  // enumerate
  auto* enm = app.add_subcommand("enumerate", "Enumerate all members up to a size");
  std::size_t enm_max = 14;
  std::string enm_out;
  enm->add_option("--max-n", enm_max);
  enm->add_option("--out", enm_out, "Census directory");

  // bench
  auto* bch = app.add_subcommand("bench", "Time recognition on generated members");
  std::vector<std::size_t> bch_sizes{4096, 8192, 16384};
  std::vector<std::uint64_t> bch_seeds{1};
  std::size_t bch_reps = 3;
  bch->add_option("--sizes", bch_sizes)->delimiter(',');
  bch->add_option("--seeds", bch_seeds)->delimiter(',');
  bch->add_option("--reps", bch_reps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      Graph g;
      std::optional<Embedding> e;
      if (family == "xw") {
        g = make_xw(gen_k).graph;
        e = canonical_xw_embedding(gen_k);
      } else if (family == "nested") {
        g = make_nested_crossed_cubes(gen_k);
      } else if (family == "sxw") {
        g = make_pre_xw(PreXwKind::sr, gen_k);
      } else if (family == "cxw") {
        g = make_pre_xw(PreXwKind::cr, gen_k);
      } else {
        Member m = random_member(gen_n, gen_seed);
        g = std::move(m.graph);
        e = std::move(m.embedding);
      }
      emit(gen_out, serialize_edge_list(g));
      if (!gen_emb.empty()) {
        if (!e) {
          std::cerr << "no embedding available for family " << family << "\n";
          return kUsage;
        }
        emit(gen_emb, serialize_embedding(*e));
      }
      return kOk;
    }

    if (*cls) {
      Graph g = read_graph(cls_in);
      for (VertexId v : g.vertices()) {
        if (g.degree(v) != 6) continue;
        const CandidateStatus st = classify(g, v);
        std::cout << v << " " << vector_text(degree_vector(g, v)) << " " << status_name(st);
        if (auto* s = std::get_if<GoodSR>(&st)) std::cout << " targets=" << join(s->targets);
        if (auto* s = std::get_if<GoodCR>(&st)) std::cout << " quad=" << join(s->quad);
        std::cout << "\n";
      }
      return kOk;
    }

    if (*rec) {
      Graph g = read_graph(rec_in);
      Policy policy;
      try {
        policy = Policy::parse(rec_policy);
      } catch (const FormatError& ex) {
        std::cerr << ex.what() << "\n";
        return kUsage;
      }
      const Recognition r = recognize(g, policy);
      std::cout << verdict_line(r) << "\n";
      if (!r) {
        std::cerr << r.reason << "\n";
        return kReject;
      }
      emit(rec_trace, serialize_trace(r.certificate->trace));
      emit(rec_emb, serialize_embedding(r.certificate->embedding));
      return kOk;
    }

    if (*red) {
      Graph g = read_graph(red_in);
      if (auto why = quick_reject(g)) {
        std::cout << "REJECT stage=quick-reject\n";
        std::cerr << *why << "\n";
        return kReject;
      }
      std::optional<Trace> trace;
      try {
        if (red_target == "auto") {
          Policy p;
          Reduction r = red_sr_only ? reduce_sr_only(g, p) : reduce_to_irreducible(g, p);
          if (!r.trace.terminal) {
            std::cout << "STUCK n=" << r.graph.vertex_count() << " steps=" << r.trace.steps.size() << "\n";
            emit(red_trace, serialize_trace(r.trace));
            return kReject;
          }
          trace = std::move(r.trace);
        } else {
          const int k = red_target == "6" ? 3 : 4;
          trace = red_sr_only ? sr_only_reaching(g, k) : std::optional<Trace>(reduce_to_target(g, k));
          if (!trace) {
            std::cout << "NO-PATH target=XW_" << red_target << "\n";
            return kReject;
          }
        }
      } catch (const StrategyError& ex) {
        std::cout << "NO-PATH target=XW_" << red_target << "\n";
        std::cerr << ex.what() << "\n";
        return kReject;
      }
      std::cout << "TERMINAL XW_" << 2 * trace->terminal->k << " steps=" << trace->steps.size() << "\n";
      emit(red_trace, serialize_trace(*trace));
      return kOk;
    }

    if (*eqv) {
      Graph a = read_graph(eq_a), b = read_graph(eq_b);
      const Equivalence eq = equivalence_transform(a, b);
      if (!eq) {
        std::cout << "NOT-EQUIVALENT\n";
        std::cerr << eq.reason << "\n";
        return kReject;
      }
      if (!(replay_script(a, eq.script) == b)) throw InternalError("transform script does not reproduce g2");
      std::cout << "EQUIVALENT ops=" << eq.script.ops.size() << "\n";
      emit(eq_script, serialize_script(eq.script));
      return kOk;
    }

    if (*bnd) {
      Graph g = read_graph(bnd_in);
      if (auto why = quick_reject(g)) {
        std::cout << "REJECT stage=quick-reject\n";
        std::cerr << *why << "\n";
        return kReject;
      }
      const StatsReport r = reduction_bounds(g);
      std::cout << "n=" << r.n << " m=" << r.m << " p=" << r.p << " q=" << r.q << " t=" << r.t << " s=" << r.s
                << (r.s_may_be_3 ? " (3 possible)" : "") << "\n";
      return kOk;
    }

    if (*enm) {
      const Census c = enumerate(enm_max);
      for (std::size_t n = 0; n <= enm_max; ++n) std::cout << n << " " << c.count(n) << "\n";
      if (!enm_out.empty()) save_census(c, enm_out);
      return kOk;
    }

    if (*bch) {
      std::cout << format_bench_table(bench_recognition(bch_sizes, bch_seeds, bch_reps));
      return kOk;
    }
  } catch (const InternalError& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kInternal;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
