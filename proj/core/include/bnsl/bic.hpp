#pragma once

#include <string_view>

#include "bnsl/score_table.hpp"

namespace bnsl {

/// Builds a score table from categorical data using BIC:
/// maximized log-likelihood of each child given its parent configuration
/// minus (log m)/2 times the number of free parameters q*(r-1), where r is
/// the child's level count and q the product of the parents' level counts.
///
/// `text` holds delimiter-separated values with a header row of column
/// names. Families are all parent sets with at most `max_indegree` members.
LocalScoreTable bic_from_data(std::string_view text, int max_indegree, char delimiter = ',');

}  // namespace bnsl
