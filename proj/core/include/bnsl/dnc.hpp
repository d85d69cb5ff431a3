#pragma once

#include <cstdint>
#include <vector>

#include "bnsl/dag_result.hpp"
#include "bnsl/score_table.hpp"
#include "bnsl/solve_stats.hpp"

namespace bnsl {

/// Order the `members` after all of `allowed_predecessors`; parents of a
/// member may come from the predecessors and from earlier members.
struct SubProblem {
  NodeSet allowed_predecessors;
  NodeSet members;
};

/// Dense solution of one SubProblem; subsets of the members are indexed
/// by their packed bits (extract_bits).
struct SubproblemSolution {
  SubProblem problem;
  double score = kNegInf;
  std::vector<std::uint8_t> choice;

  /// Members in the optimal order, recovered from the sink choices.
  std::vector<int> order() const;
};

struct DncOptions {
  /// Largest member count solved with a dense table.
  int max_block = 30;
};

/// DP over subsets Y of the members:
/// g(Y) = max_{v in Y} { g(Y\{v}) + fhat_v(P u Y\{v}) }, fhat by family scan.
SubproblemSolution solve_subproblem_dp(const SubProblem& problem, const LocalScoreTable& table,
                                       const DncOptions& options = {}, SolveStats* stats = nullptr);

/// Tries every first block N0 of size s (ceil(n/2) <= s <= n) and solves
/// (∅, N0) and (N0, N\N0) independently. Ties go to the smaller N0.
DagResult solve_partitioned(const LocalScoreTable& table, int s, const DncOptions& options = {},
                            SolveStats* stats = nullptr);

/// Balanced recursive partitioning: a subproblem with more than
/// ceil(n/2^depth) members is split into an ordered pair of halves
/// (first half ceil(m/2)) over all choices of the first half.
DagResult solve_dnc(const LocalScoreTable& table, int depth, const DncOptions& options = {},
                    SolveStats* stats = nullptr);

/// ceil(n / 2^depth), at least 1.
int dnc_block_size(int n, int depth);

}  // namespace bnsl
