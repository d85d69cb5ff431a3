#include "bnsl/dag_result.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bnsl/full_dp.hpp"

namespace bnsl {

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::full: return "full";
    case Algorithm::partitioned: return "part";
    case Algorithm::dnc: return "dnc";
    case Algorithm::pairwise: return "pairwise";
    case Algorithm::oracle: return "oracle";
  }
  return "unknown";
}

double rescore(const LocalScoreTable& table, const std::vector<NodeSet>& parents) {
  double total = 0.0;
  for (int v = 0; v < table.node_count(); ++v) total += table.score(v, parents[v]);
  return total;
}

bool is_acyclic(const std::vector<NodeSet>& parents) {
  // Kahn: repeatedly drop nodes whose parents are all placed.
  const int n = static_cast<int>(parents.size());
  NodeSet placed;
  for (int round = 0; round < n; ++round) {
    bool progress = false;
    for (int v = 0; v < n; ++v) {
      if (!placed.contains(v) && parents[v].is_subset_of(placed)) {
        placed = placed.with(v);
        progress = true;
      }
    }
    if (!progress) break;
  }
  return placed == NodeSet::full(n);
}

DagResult DagResult::make(const LocalScoreTable& table, std::vector<NodeSet> parents, double total_score,
                          Algorithm algorithm, std::optional<std::uint64_t> orientation) {
  const int n = table.node_count();
  if (static_cast<int>(parents.size()) != n) throw std::logic_error("parent list has wrong length");
  for (int v = 0; v < n; ++v) {
    if (!table.family(v).contains(parents[v])) {
      throw std::logic_error("parent set of '" + table.name(v) + "' is not listed");
    }
  }
  if (!is_acyclic(parents)) throw std::logic_error("reconstructed graph has a cycle");
  const double recomputed = rescore(table, parents);
  if (!(std::abs(recomputed - total_score) <= 1e-9)) {
    throw std::logic_error("reconstructed graph scores " + format_score(recomputed) + ", solver reported " +
                           format_score(total_score));
  }
  return DagResult{total_score, std::move(parents), algorithm, orientation};
}

DagResult DagResult::from_order(const LocalScoreTable& table, const std::vector<int>& order, double total_score,
                                Algorithm algorithm, std::optional<std::uint64_t> orientation) {
  std::vector<NodeSet> parents(table.node_count());
  NodeSet before;
  for (int v : order) {
    parents[v] = best_parents_direct(v, before, table).second;
    before = before.with(v);
  }
  return make(table, std::move(parents), total_score, algorithm, orientation);
}

std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string serialize_dag(const LocalScoreTable& table, const DagResult& result) {
  std::string out;
  for (int v = 0; v < table.node_count(); ++v) {
    out += table.name(v) + " <- {";
    bool first = true;
    for (int u : result.parents[v]) {
      if (!first) out += ",";
      out += table.name(u);
      first = false;
    }
    out += "}\n";
  }
  out += "score " + format_score(result.total_score) + "\n";
  return out;
}

}  // namespace bnsl
