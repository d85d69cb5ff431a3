#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnsl/score_table.hpp"

namespace bnsl {

/// Parses the line-oriented score format:
///
///     <n>
///     <name> <m_v>                      (one header per node)
///     <score> <j> <parent_1> ... <parent_j>   (m_v lines)
///
/// Blank lines and text after '#' are ignored. Parent names may refer to
/// nodes declared later in the file. Throws ParseError with the offending line.
LocalScoreTable parse_scores(std::string_view text);

/// Inverse of parse_scores. Scores use 17 significant digits so the table
/// round-trips exactly.
std::string write_scores(const LocalScoreTable& table);

LocalScoreTable load_scores(const std::filesystem::path& path);
void save_scores(const LocalScoreTable& table, const std::filesystem::path& path);

/// Every node gets all parent sets of size <= max_indegree, scored i.i.d.
/// uniform in [-10, 0] from a seeded mt19937_64. Node names are X0, X1, ...
LocalScoreTable gen_random_instance(int n, int max_indegree, std::uint64_t seed);

/// All subsets of `universe` with at most `max_size` members, by
/// increasing size and then increasing bit value.
std::vector<NodeSet> bounded_subsets(NodeSet universe, int max_size);

/// True iff removing any single element of any member yields a member.
bool check_downward_closed(std::span<const NodeSet> family);

}  // namespace bnsl
