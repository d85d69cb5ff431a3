#include "bnsl/full_dp.hpp"

#include <chrono>
#include <stdexcept>

#include "bnsl/errors.hpp"

namespace bnsl {

std::pair<double, NodeSet> best_parents_direct(int node, NodeSet allowed, const LocalScoreTable& table) {
  if (allowed.contains(node)) throw std::invalid_argument("best_parents_direct: node is in the allowed set");
  double best = kNegInf;
  NodeSet argmax;
  for (const auto& e : table.family(node).entries()) {
    if (!e.parents.is_subset_of(allowed)) continue;
    if (e.score > best || (e.score == best && e.parents < argmax)) {
      best = e.score;
      argmax = e.parents;
    }
  }
  return {best, argmax};
}

FhatTable build_fhat(int node, const LocalScoreTable& table) {
  const int n = table.node_count();
  const std::uint64_t low_mask = (std::uint64_t{1} << node) - 1;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  std::vector<double> values(count, kNegInf);
  const auto& family = table.family(node);

  // Packed index order visits every subset after all of its subsets.
  for (std::uint64_t packed = 0; packed < count; ++packed) {
    double best = kNegInf;
    const NodeSet y((packed & low_mask) | ((packed & ~low_mask) << 1));
    if (const double* s = family.find(y)) best = *s;
    for (std::uint64_t rest = packed; rest; rest &= rest - 1) {
      const double sub = values[packed & ~(rest & (~rest + 1))];
      if (sub > best) best = sub;
    }
    values[packed] = best;
  }
  return FhatTable(node, std::move(values));
}

GTable build_gtable(const std::vector<FhatTable>& fhat, int n) {
  const std::uint64_t count = std::uint64_t{1} << n;
  GTable g{std::vector<double>(count, kNegInf), std::vector<std::uint8_t>(count, 0)};
  g.values[0] = 0.0;
  for (std::uint64_t bits = 1; bits < count; ++bits) {
    const NodeSet y(bits);
    double best = kNegInf;
    int choice = y.first();
    for (int v : y) {
      const NodeSet rest = y.without(v);
      const double value = g.values[rest.bits()] + fhat[v].at(rest);
      if (value > best) {
        best = value;
        choice = v;
      }
    }
    g.values[bits] = best;
    g.choice[bits] = static_cast<std::uint8_t>(choice);
  }
  return g;
}

std::uint64_t full_dp_table_entries(int n) {
  return (std::uint64_t{1} << n) + static_cast<std::uint64_t>(n) * (std::uint64_t{1} << (n - 1));
}

DagResult solve_full(const LocalScoreTable& table, const FullDpOptions& options, SolveStats* stats) {
  const int n = table.node_count();
  if (n > options.max_nodes) {
    throw ResourceError("full dynamic program limited to " + std::to_string(options.max_nodes) + " nodes, got " +
                        std::to_string(n));
  }
  const auto start = std::chrono::steady_clock::now();

  std::vector<FhatTable> fhat;
  fhat.reserve(n);
  for (int v = 0; v < n; ++v) fhat.push_back(build_fhat(v, table));
  const GTable g = build_gtable(fhat, n);

  const NodeSet all = NodeSet::full(n);
  const double best = g.values[all.bits()];
  if (best == kNegInf) throw InfeasibleError("no DAG with finite score exists");

  std::vector<NodeSet> parents(n);
  for (NodeSet y = all; !y.empty();) {
    const int v = g.choice[y.bits()];
    y = y.without(v);
    parents[v] = best_parents_direct(v, y, table).second;
  }

  if (stats) {
    stats->peak_table_entries = full_dp_table_entries(n);
    stats->score_evaluations = table.total_family_size();
    stats->membership_probes = static_cast<std::uint64_t>(n) << (n - 1);
    stats->units = 1;
    stats->total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stats->unit_seconds = {stats->total_seconds};
  }
  return DagResult::make(table, std::move(parents), best, Algorithm::full);
}

}  // namespace bnsl
