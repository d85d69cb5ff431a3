#pragma once

#include <vector>

#include "bnsl/dag_result.hpp"
#include "bnsl/pairwise.hpp"
#include "bnsl/score_table.hpp"

namespace bnsl {

inline constexpr int kOracleMaxNodes = 8;
inline constexpr int kOracleLatticeMaxNodes = 20;

// Brute-force references for tests. Nothing here is meant to be fast.

/// Tries every node order (lexicographic) and gives each node its best
/// listed parents among its predecessors. Throws InputError for n > 8.
DagResult oracle_solve(const LocalScoreTable& table);

/// Same, restricted to orders that extend `order`.
double oracle_restricted(const LocalScoreTable& table, const PairedOrder& order);

/// All subsets of the n nodes that are prefix sets of `order`, in
/// increasing bit order. Throws InputError for n > 20.
std::vector<NodeSet> oracle_lattice(int n, const PairedOrder& order);

}  // namespace bnsl
