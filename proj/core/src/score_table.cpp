#include "bnsl/score_table.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "bnsl/errors.hpp"

namespace bnsl {

ParentFamily::ParentFamily(std::vector<ScoredParentSet> entries) : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (const auto& e : entries_) {
    index_.emplace(e.parents, e.score);
    max_cardinality_ = std::max(max_cardinality_, e.parents.size());
  }
  sorted_ = entries_;
  std::sort(sorted_.begin(), sorted_.end(), [](const ScoredParentSet& a, const ScoredParentSet& b) {
    if (a.parents.size() != b.parents.size()) return a.parents.size() < b.parents.size();
    return a.parents < b.parents;
  });
}

double ParentFamily::score(NodeSet parents) const {
  const auto it = index_.find(parents);
  return it == index_.end() ? kNegInf : it->second;
}

const double* ParentFamily::find(NodeSet parents) const {
  const auto it = index_.find(parents);
  return it == index_.end() ? nullptr : &it->second;
}

LocalScoreTable::LocalScoreTable(std::vector<std::string> names,
                                 std::vector<std::vector<ScoredParentSet>> families)
    : names_(std::move(names)) {
  const int n = static_cast<int>(names_.size());
  if (n < 1 || n > kMaxNodes) {
    throw InputError("node count must be in [1, 64], got " + std::to_string(n));
  }
  if (families.size() != names_.size()) throw InputError("one family per node is required");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw InputError("empty node name");
    if (!seen.insert(name).second) throw InputError("duplicate node name '" + name + "'");
  }

  const NodeSet all = NodeSet::full(n);
  families_.reserve(n);
  for (int v = 0; v < n; ++v) {
    std::unordered_set<NodeSet, NodeSetHash> members;
    for (const auto& e : families[v]) {
      if (!e.parents.is_subset_of(all)) throw InputError("node '" + names_[v] + "': parent outside node range");
      if (e.parents.contains(v)) throw InputError("node '" + names_[v] + "': self-parent");
      if (!std::isfinite(e.score)) throw InputError("node '" + names_[v] + "': non-finite score");
      if (!members.insert(e.parents).second) throw InputError("node '" + names_[v] + "': duplicate parent set");
    }
    for (const auto& e : families[v]) {
      for (int x : e.parents) {
        if (!members.contains(e.parents.without(x))) {
          throw InputError("node '" + names_[v] + "': family not downward closed");
        }
      }
    }
    families_.emplace_back(std::move(families[v]));
    max_indegree_ = std::max(max_indegree_, families_.back().max_cardinality());
  }
}

int LocalScoreTable::find_node(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

std::size_t LocalScoreTable::max_family_size() const {
  std::size_t best = 0;
  for (const auto& f : families_) best = std::max(best, f.size());
  return best;
}

std::size_t LocalScoreTable::total_family_size() const {
  std::size_t total = 0;
  for (const auto& f : families_) total += f.size();
  return total;
}

}  // namespace bnsl
