#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <vector>

namespace bnsl {

/// Counters filled in by the solvers when a SolveStats* is supplied.
struct SolveStats {
  /// Largest number of score-valued table entries alive at once
  /// (per worker for the orientation-parallel driver).
  std::uint64_t peak_table_entries = 0;
  /// Listed local scores read while filling tables.
  std::uint64_t score_evaluations = 0;
  /// Family membership lookups, hits and misses.
  std::uint64_t membership_probes = 0;
  /// Independent work units run (orientations, partitions).
  std::uint64_t units = 0;
  /// Wall time per work unit, in unit order.
  std::vector<double> unit_seconds;
  double total_seconds = 0.0;
};

/// Tracks live and peak table entries; thread-safe.
class TableMeter {
 public:
  void acquire(std::uint64_t entries) {
    const auto now = live_.fetch_add(entries, std::memory_order_relaxed) + entries;
    auto peak = peak_.load(std::memory_order_relaxed);
    while (now > peak && !peak_.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
    }
  }
  void release(std::uint64_t entries) { live_.fetch_sub(entries, std::memory_order_relaxed); }
  std::uint64_t peak() const { return peak_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> live_{0};
  std::atomic<std::uint64_t> peak_{0};
};

}  // namespace bnsl
