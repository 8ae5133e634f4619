#pragma once

// Scaling benchmark for word-pair alignment on r-fold repeated words.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ntwfsm/text.hpp"

namespace ntwfsm {

struct BenchConfig {
  int rmax = 8;
  SymbolString a = U"gemacht";
  SymbolString b = U"machen";
  int trials = 5;
  /// Also time the Fibonacci-heap search and report binary/Fibonacci.
  bool compare_heaps = false;
  /// Each trial repeats the alignment until at least this much time passed.
  std::chrono::nanoseconds min_trial_time = std::chrono::milliseconds(20);
};

struct BenchRow {
  int r = 0;
  std::size_t length_a = 0;
  std::size_t length_b = 0;
  double seconds = 0.0;     // median time per alignment
  std::int64_t weight = 0;  // alignment weight, as a sanity column
  double column_a = 0.0;    // r^2, the edit-distance-matrix estimate
  double column_b = 0.0;    // measured ratio to r = 1
  double column_c = 0.0;    // worst-case estimate (n log n in the pointer count)
  std::optional<double> column_d;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

/// r^2.
double quadratic_ratio(int r);

/// (la r * lb r) log(la r * lb r) / ((la lb) log(la lb)); equals
/// r^2 (1 + 2 log r / log(la lb)). Falls back to r^2 when la lb <= 1.
double worst_case_ratio(int r, std::size_t la, std::size_t lb);

/// Throws InvalidArgument for rmax < 1, trials < 1 or empty words.
BenchReport run_bench(const BenchConfig& config);

std::string format_bench_text(const BenchReport& report);
std::string format_bench_csv(const BenchReport& report);

}  // namespace ntwfsm
