#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bnsl/dag_result.hpp"
#include "bnsl/score_table.hpp"
#include "bnsl/solve_stats.hpp"

namespace bnsl {

/// Best listed parent set of `node` inside `allowed`, by scanning the
/// family. Ties go to the smaller bit value. Returns (-inf, {}) when no
/// listed set fits. Throws std::invalid_argument if node is in `allowed`.
std::pair<double, NodeSet> best_parents_direct(int node, NodeSet allowed, const LocalScoreTable& table);

/// Dense table of best scores for one node over all subsets of N\{node}.
/// Subsets are indexed with the node's own bit squeezed out (skip_bit).
class FhatTable {
 public:
  FhatTable(int node, std::vector<double> values) : node_(node), values_(std::move(values)) {}

  int node() const { return node_; }
  double at(NodeSet allowed) const { return values_[skip_bit(allowed, node_)]; }
  const std::vector<double>& values() const { return values_; }

 private:
  int node_;
  std::vector<double> values_;
};

/// Fills the FhatTable by the subset recurrence
/// fhat(Y) = max{ f(Y), max_{u in Y} fhat(Y\{u}) }.
FhatTable build_fhat(int node, const LocalScoreTable& table);

/// Best DAG scores over every node subset plus the sink that attains each.
struct GTable {
  std::vector<double> values;
  std::vector<std::uint8_t> choice;
};

/// Subset recurrence g(Y) = max_{v in Y} { g(Y\{v}) + fhat_v(Y\{v}) } with
/// g({}) = 0; the smallest maximizing v is recorded.
GTable build_gtable(const std::vector<FhatTable>& fhat, int n);

struct FullDpOptions {
  int max_nodes = 26;
};

/// Two-phase dynamic program over all 2^n subsets. Throws ResourceError
/// above options.max_nodes and InfeasibleError if no finite DAG exists.
DagResult solve_full(const LocalScoreTable& table, const FullDpOptions& options = {}, SolveStats* stats = nullptr);

/// Score-valued entries held by solve_full: 2^n for g plus n*2^(n-1) for the
/// per-node best-score tables.
std::uint64_t full_dp_table_entries(int n);

}  // namespace bnsl
