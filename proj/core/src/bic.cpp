#include "bnsl/bic.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "bnsl/errors.hpp"
#include "bnsl/score_io.hpp"

namespace bnsl {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(delimiter, start);
    cells.push_back(trim(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return cells;
}

struct Dataset {
  std::vector<std::string> names;
  std::vector<int> levels;                 // per column
  std::vector<std::vector<int>> columns;   // columns[c][row] = level index
  std::size_t rows = 0;
};

Dataset read_dataset(std::string_view text, char delimiter) {
  Dataset data;
  std::vector<std::unordered_map<std::string, int>> level_ids;
  int number = 0;
  std::size_t start = 0;
  bool header_seen = false;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;
    const auto cells = split(line, delimiter);
    if (!header_seen) {
      for (auto c : cells) {
        if (c.empty()) throw ParseError(number, "empty column name");
        data.names.emplace_back(c);
      }
      if (data.names.size() > static_cast<std::size_t>(kMaxNodes)) throw ParseError(number, "too many columns (> 64)");
      level_ids.resize(data.names.size());
      data.columns.resize(data.names.size());
      data.levels.assign(data.names.size(), 0);
      header_seen = true;
      continue;
    }
    if (cells.size() != data.names.size()) {
      throw ParseError(number, "expected " + std::to_string(data.names.size()) + " cells, got " +
                                   std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty()) throw ParseError(number, "empty cell in column '" + data.names[c] + "'");
      auto [it, inserted] = level_ids[c].emplace(std::string(cells[c]), data.levels[c]);
      if (inserted) ++data.levels[c];
      data.columns[c].push_back(it->second);
    }
    ++data.rows;
  }
  if (!header_seen) throw InputError("data file is empty");
  if (data.rows == 0) throw InputError("data file has no rows");
  return data;
}

double bic_score(const Dataset& data, int child, NodeSet parents) {
  const int r = data.levels[child];
  double q = 1.0;
  for (int u : parents) q *= data.levels[u];
  if (q > 0x1.0p63) throw InputError("too many parent configurations for '" + data.names[child] + "'");
  std::unordered_map<std::uint64_t, std::vector<int>> counts;
  for (std::size_t row = 0; row < data.rows; ++row) {
    std::uint64_t key = 0;
    for (int u : parents) key = key * static_cast<std::uint64_t>(data.levels[u]) + data.columns[u][row];
    auto& cell = counts[key];
    if (cell.empty()) cell.assign(r, 0);
    ++cell[data.columns[child][row]];
  }

  double log_likelihood = 0.0;
  for (const auto& [key, cell] : counts) {
    int total = 0;
    for (int c : cell) total += c;
    for (int c : cell) {
      if (c > 0) log_likelihood += c * std::log(static_cast<double>(c) / total);
    }
  }
  const double free_parameters = q * (r - 1);
  return log_likelihood - 0.5 * std::log(static_cast<double>(data.rows)) * free_parameters;
}

}  // namespace

LocalScoreTable bic_from_data(std::string_view text, int max_indegree, char delimiter) {
  const Dataset data = read_dataset(text, delimiter);
  const int n = static_cast<int>(data.names.size());
  if (max_indegree < 0 || max_indegree > n - 1) throw InputError("max indegree must be in [0, n-1]");

  std::vector<std::vector<ScoredParentSet>> families(n);
  for (int v = 0; v < n; ++v) {
    for (NodeSet parents : bounded_subsets(NodeSet::full(n).without(v), max_indegree)) {
      families[v].push_back({parents, bic_score(data, v, parents)});
    }
  }
  return LocalScoreTable(data.names, std::move(families));
}

}  // namespace bnsl
