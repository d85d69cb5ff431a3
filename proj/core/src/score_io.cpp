#include "bnsl/score_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bnsl/dag_result.hpp"
#include "bnsl/errors.hpp"

namespace bnsl {
namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

long long parse_count(std::string_view token, int line, const char* what) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

double parse_real(std::string_view token, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw ParseError(line, "malformed score '" + std::string(token) + "'");
  }
  return value;
}

struct PendingEntry {
  int line;
  double score;
  std::vector<std::string_view> parent_names;
};

struct PendingNode {
  int line;
  std::string name;
  std::vector<PendingEntry> entries;
};

}  // namespace

LocalScoreTable parse_scores(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty score file");

  const Line& first = lines.front();
  if (first.tokens.size() != 1) throw ParseError(first.number, "malformed line: expected node count");
  const long long n = parse_count(first.tokens[0], first.number, "node count");
  if (n < 1) throw ParseError(first.number, "node count must be positive");
  if (n > kMaxNodes) throw ParseError(first.number, "too many nodes (" + std::to_string(n) + " > 64)");

  std::vector<PendingNode> nodes;
  std::size_t pos = 1;
  auto next_line = [&](const char* expecting) -> const Line& {
    if (pos >= lines.size()) {
      throw ParseError(lines.back().number, std::string("unexpected end of file, expected ") + expecting);
    }
    return lines[pos++];
  };

  for (long long v = 0; v < n; ++v) {
    const Line& header = next_line("node header");
    if (header.tokens.size() != 2) throw ParseError(header.number, "malformed line: expected '<name> <count>'");
    PendingNode node{header.number, std::string(header.tokens[0]), {}};
    const long long m = parse_count(header.tokens[1], header.number, "parent set count");
    for (long long i = 0; i < m; ++i) {
      const Line& entry = next_line("parent set line");
      if (entry.tokens.size() < 2) throw ParseError(entry.number, "malformed line: expected '<score> <j> ...'");
      const double score = parse_real(entry.tokens[0], entry.number);
      const long long j = parse_count(entry.tokens[1], entry.number, "parent count");
      if (static_cast<long long>(entry.tokens.size()) != j + 2) {
        throw ParseError(entry.number, "malformed line: parent count does not match listed parents");
      }
      node.entries.push_back({entry.number, score, {entry.tokens.begin() + 2, entry.tokens.end()}});
    }
    nodes.push_back(std::move(node));
  }
  if (pos < lines.size()) throw ParseError(lines[pos].number, "malformed line: unexpected content after last node");

  std::unordered_map<std::string_view, int> index;
  std::vector<std::string> names;
  for (const auto& node : nodes) {
    if (!index.emplace(node.name, static_cast<int>(names.size())).second) {
      throw ParseError(node.line, "duplicate node name '" + node.name + "'");
    }
    names.push_back(node.name);
  }

  std::vector<std::vector<ScoredParentSet>> families(nodes.size());
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    std::unordered_map<NodeSet, int, NodeSetHash> lines_by_set;
    for (const auto& entry : nodes[v].entries) {
      NodeSet parents;
      for (auto name : entry.parent_names) {
        const auto it = index.find(name);
        if (it == index.end()) throw ParseError(entry.line, "unknown node '" + std::string(name) + "'");
        if (it->second == static_cast<int>(v)) {
          throw ParseError(entry.line, "self-parent: '" + nodes[v].name + "' lists itself");
        }
        if (parents.contains(it->second)) {
          throw ParseError(entry.line, "malformed line: parent '" + std::string(name) + "' repeated");
        }
        parents = parents.with(it->second);
      }
      if (!lines_by_set.emplace(parents, entry.line).second) {
        throw ParseError(entry.line, "duplicate parent set for '" + nodes[v].name + "'");
      }
      families[v].push_back({parents, entry.score});
    }
    for (const auto& [parents, line] : lines_by_set) {
      for (int x : parents) {
        if (!lines_by_set.contains(parents.without(x))) {
          throw ParseError(line, "not downward closed: '" + nodes[v].name + "' lists a set without its subset lacking '" +
                                     names[x] + "'");
        }
      }
    }
  }
  return LocalScoreTable(std::move(names), std::move(families));
}

std::string write_scores(const LocalScoreTable& table) {
  std::string out = std::to_string(table.node_count()) + "\n";
  for (int v = 0; v < table.node_count(); ++v) {
    const auto& family = table.family(v);
    out += table.name(v) + " " + std::to_string(family.size()) + "\n";
    for (const auto& e : family.entries()) {
      out += format_score(e.score) + " " + std::to_string(e.parents.size());
      for (int u : e.parents) out += " " + table.name(u);
      out += "\n";
    }
  }
  return out;
}

LocalScoreTable load_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open score file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scores(buffer.str());
}

void save_scores(const LocalScoreTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write score file '" + path.string() + "'");
  out << write_scores(table);
}

LocalScoreTable gen_random_instance(int n, int max_indegree, std::uint64_t seed) {
  if (n < 1 || n > kMaxNodes) throw InputError("n must be in [1, 64]");
  if (max_indegree < 0 || max_indegree > n - 1) throw InputError("max indegree must be in [0, n-1]");

  // Sum_{i<=k} C(n-1, i) sets per node.
  double per_node = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= max_indegree; ++i) {
    per_node += binom;
    binom = binom * (n - 1 - i) / (i + 1);
  }
  if (per_node * n > 5.0e7) throw InputError("instance too large: more than 5e7 parent sets");

  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  std::vector<std::vector<ScoredParentSet>> families(n);
  for (int v = 0; v < n; ++v) {
    names.push_back("X" + std::to_string(v));
    const NodeSet others = NodeSet::full(n).without(v);
    auto& family = families[v];
    family.reserve(static_cast<std::size_t>(per_node));
    for (NodeSet parents : bounded_subsets(others, max_indegree)) family.push_back({parents, 0.0});
    for (auto& e : family) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      e.score = -10.0 * unit;
    }
  }
  return LocalScoreTable(std::move(names), std::move(families));
}

std::vector<NodeSet> bounded_subsets(NodeSet universe, int max_size) {
  std::vector<NodeSet> out;
  const int width = universe.size();
  for (int size = 0; size <= std::min(max_size, width); ++size) {
    if (size == 0) {
      out.emplace_back();
      continue;
    }
    const std::uint64_t ones = size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
    const std::uint64_t last = ones << (width - size);
    for (std::uint64_t packed = ones;; packed = next_same_popcount(packed)) {
      out.push_back(deposit_bits(packed, universe));
      if (packed == last) break;
    }
  }
  return out;
}

bool check_downward_closed(std::span<const NodeSet> family) {
  const std::unordered_set<NodeSet, NodeSetHash> members(family.begin(), family.end());
  for (NodeSet s : family) {
    for (int x : s) {
      if (!members.contains(s.without(x))) return false;
    }
  }
  return true;
}

}  // namespace bnsl
