#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "o1p/generate.hpp"
#include "o1p/recognize.hpp"

namespace o1p {

struct BenchRow {
  std::size_t n = 0;
  std::size_t graphs = 0;
  /// Seconds to recognize all graphs of this size, per repetition.
  std::vector<double> samples;
  double median = 0;
  std::size_t max_steps = 0;
  bool all_accepted = true;
  /// Median over repetitions of time(n) / time(n/2), both taken in the same
  /// repetition, when the previous row has half the size.
  std::optional<double> ratio;
};

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
}

/// Times `recognize` on generated members. Every repetition visits all
/// sizes back to back, alternating ascending and descending order, so each
/// doubling ratio compares two measurements taken close together in time.
inline std::vector<BenchRow> bench_recognition(const std::vector<std::size_t>& sizes,
                                               const std::vector<std::uint64_t>& seeds, std::size_t reps = 3) {
  std::vector<BenchRow> rows;
  std::vector<std::vector<Graph>> inputs;
  for (std::size_t n : sizes) {
    BenchRow r;
    r.n = n;
    r.graphs = seeds.size();
    rows.push_back(r);
    inputs.emplace_back();
    for (std::uint64_t s : seeds) inputs.back().push_back(random_member(n, s).graph);
  }
  for (std::size_t rep = 0; rep < reps; ++rep)
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const std::size_t i = rep % 2 ? rows.size() - 1 - j : j;
      double total = 0;
      for (const Graph& g : inputs[i]) {
        const auto t0 = std::chrono::steady_clock::now();
        const Recognition res = recognize(g);
        total += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!res) {
          rows[i].all_accepted = false;
        } else {
          rows[i].max_steps = std::max(rows[i].max_steps, res.certificate->trace.steps.size());
        }
      }
      rows[i].samples.push_back(total);
    }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].median = median_of(rows[i].samples);
    if (i == 0 || rows[i].n != 2 * rows[i - 1].n || rows[i - 1].median <= 0) continue;
    std::vector<double> paired;
    for (std::size_t rep = 0; rep < reps; ++rep) paired.push_back(rows[i].samples[rep] / rows[i - 1].samples[rep]);
    rows[i].ratio = median_of(paired);
  }
  return rows;
}

inline std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::string out = "n\tgraphs\tmedian_s\tmax_steps\taccepted\tratio\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu\t%zu\t%.4f\t%zu\t%s\t", r.n, r.graphs, r.median, r.max_steps,
                  r.all_accepted ? "yes" : "no");
    out += buf;
    if (r.ratio) {
      std::snprintf(buf, sizeof buf, "%.3f", *r.ratio);
      out += buf;
    } else {
      out += "-";
    }
    out += "\n";
  }
  return out;
}

}  // namespace o1p
