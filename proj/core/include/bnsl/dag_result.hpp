#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnsl/node_set.hpp"
#include "bnsl/score_table.hpp"

namespace bnsl {

enum class Algorithm { full, partitioned, dnc, pairwise, oracle };

const char* algorithm_name(Algorithm algo);

/// An optimal network: one parent set per node and the total score.
struct DagResult {
  double total_score = 0.0;
  std::vector<NodeSet> parents;
  Algorithm algorithm = Algorithm::full;
  /// Winning orientation for the pairwise scheme.
  std::optional<std::uint64_t> orientation;

  /// Checks acyclicity, that every parent set is listed, and that the
  /// parent sets re-score to `total_score` within 1e-9. Throws
  /// std::logic_error otherwise; a violation is a solver bug.
  static DagResult make(const LocalScoreTable& table, std::vector<NodeSet> parents, double total_score,
                        Algorithm algorithm, std::optional<std::uint64_t> orientation = std::nullopt);

  /// Builds the result for a node order: every node takes its best listed
  /// parent set among its predecessors.
  static DagResult from_order(const LocalScoreTable& table, const std::vector<int>& order, double total_score,
                              Algorithm algorithm, std::optional<std::uint64_t> orientation = std::nullopt);
};

/// Sum of f_v(parents[v]); -inf if any set is unlisted.
double rescore(const LocalScoreTable& table, const std::vector<NodeSet>& parents);

bool is_acyclic(const std::vector<NodeSet>& parents);

/// `name <- {p1,p2}` per node, then `score <value>` with 17 significant digits.
std::string serialize_dag(const LocalScoreTable& table, const DagResult& result);

/// printf("%.17g").
std::string format_score(double value);

}  // namespace bnsl
