#include "ntwfsm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ntwfsm/alignment.hpp"
#include "ntwfsm/error.hpp"
#include "ntwfsm/search.hpp"

namespace ntwfsm {
namespace {

using Clock = std::chrono::steady_clock;

SymbolString repeat(const SymbolString& s, int r) {
  SymbolString out;
  for (int i = 0; i < r; ++i) out += s;
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Median over trials of the time per search; every trial runs the search
// `reps` times, with `reps` grown until one trial takes min_trial_time.
double time_search(const Machine<TropicalMin>& aligner, const StringTuple& input, HeapKind heap,
                   const BenchConfig& config, std::int64_t& weight) {
  SearchOptions options;
  options.heap = heap;
  auto run = [&](std::size_t reps) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < reps; ++i) {
      auto best = fsm_viterbi(aligner, input, TapeList{0, 1}, options);
      weight = best ? best->weight : TropicalMin::zero();
    }
    return Clock::now() - start;
  };
  std::size_t reps = 1;
  while (run(reps) < config.min_trial_time) reps *= 2;
  std::vector<double> samples;
  for (int t = 0; t < config.trials; ++t)
    samples.push_back(std::chrono::duration<double>(run(reps)).count() / static_cast<double>(reps));
  return median(std::move(samples));
}

}  // namespace

double quadratic_ratio(int r) { return static_cast<double>(r) * r; }

double worst_case_ratio(int r, std::size_t la, std::size_t lb) {
  const double base = static_cast<double>(la) * static_cast<double>(lb);
  if (base <= 1.0) return quadratic_ratio(r);
  const double scaled = base * r * r;
  return scaled * std::log(scaled) / (base * std::log(base));
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.rmax < 1) throw Error(ErrorCode::InvalidArgument, "rmax must be at least 1");
  if (config.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (config.a.empty() || config.b.empty()) throw Error(ErrorCode::InvalidArgument, "benchmark words must be non-empty");

  const auto aligner = build_aligner(AlignerSpec{});
  BenchReport report;
  double base_seconds = 0.0;
  for (int r = 1; r <= config.rmax; ++r) {
    BenchRow row;
    row.r = r;
    const StringTuple input{repeat(config.a, r), repeat(config.b, r)};
    row.length_a = input[0].size();
    row.length_b = input[1].size();
    row.seconds = time_search(aligner, input, HeapKind::Binary, config, row.weight);
    if (r == 1) base_seconds = row.seconds;
    row.column_a = quadratic_ratio(r);
    row.column_b = row.seconds / base_seconds;
    row.column_c = worst_case_ratio(r, config.a.size(), config.b.size());
    if (config.compare_heaps) {
      std::int64_t fib_weight = 0;
      const double fib = time_search(aligner, input, HeapKind::Fibonacci, config, fib_weight);
      row.column_d = row.seconds / fib;
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string format_bench_text(const BenchReport& report) {
  const bool with_d = !report.rows.empty() && report.rows.front().column_d.has_value();
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%3s %6s %6s %12s %8s %8s %8s%s\n", "r", "|a|", "|b|", "time(ms)", "A", "B", "C",
                with_d ? "        D" : "");
  out += line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%3d %6zu %6zu %12.4f %8.0f %8.2f %8.2f", row.r, row.length_a, row.length_b,
                  row.seconds * 1e3, row.column_a, row.column_b, row.column_c);
    out += line;
    if (row.column_d) {
      std::snprintf(line, sizeof line, " %8.3f", *row.column_d);
      out += line;
    }
    out += '\n';
  }
  return out;
}

std::string format_bench_csv(const BenchReport& report) {
  const bool with_d = !report.rows.empty() && report.rows.front().column_d.has_value();
  std::string out = with_d ? "r,len_a,len_b,time_ms,weight,A,B,C,D\n" : "r,len_a,len_b,time_ms,weight,A,B,C\n";
  char line[256];
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%d,%zu,%zu,%.6f,%lld,%.0f,%.4f,%.4f", row.r, row.length_a, row.length_b,
                  row.seconds * 1e3, static_cast<long long>(row.weight), row.column_a, row.column_b, row.column_c);
    out += line;
    if (row.column_d) {
      std::snprintf(line, sizeof line, ",%.4f", *row.column_d);
      out += line;
    }
    out += '\n';
  }
  return out;
}

}  // namespace ntwfsm
