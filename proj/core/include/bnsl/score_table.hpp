#pragma once

#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bnsl/node_set.hpp"

namespace bnsl {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// One listed parent set of a node together with its local score.
struct ScoredParentSet {
  NodeSet parents;
  double score = 0.0;

  bool operator==(const ScoredParentSet&) const = default;
};

/// The listed parent sets of one node. Unlisted sets score -inf.
class ParentFamily {
 public:
  ParentFamily() = default;
  explicit ParentFamily(std::vector<ScoredParentSet> entries);

  /// Entries in the order they were supplied.
  std::span<const ScoredParentSet> entries() const { return entries_; }
  /// Entries sorted by (cardinality, bit value).
  std::span<const ScoredParentSet> by_cardinality() const { return sorted_; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(NodeSet parents) const { return index_.contains(parents); }
  double score(NodeSet parents) const;
  /// Pointer to the score or nullptr when the set is unlisted.
  const double* find(NodeSet parents) const;
  int max_cardinality() const { return max_cardinality_; }

  bool operator==(const ParentFamily& o) const { return entries_ == o.entries_; }

 private:
  std::vector<ScoredParentSet> entries_;
  std::vector<ScoredParentSet> sorted_;
  std::unordered_map<NodeSet, double, NodeSetHash> index_;
  int max_cardinality_ = 0;
};

/// A problem instance: per-node downward-closed families of scored parent
/// sets. Immutable once built; safe to share across threads.
class LocalScoreTable {
 public:
  /// Validates every invariant and throws InputError on violation.
  LocalScoreTable(std::vector<std::string> names, std::vector<std::vector<ScoredParentSet>> families);

  int node_count() const { return static_cast<int>(names_.size()); }
  NodeSet all_nodes() const { return NodeSet::full(node_count()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int node) const { return names_[node]; }
  /// Index of a node name, or -1.
  int find_node(const std::string& name) const;

  const ParentFamily& family(int node) const { return families_[node]; }
  double score(int node, NodeSet parents) const { return families_[node].score(parents); }

  /// Smallest k such that every listed set has at most k members.
  int max_indegree() const { return max_indegree_; }
  /// Largest family size (F).
  std::size_t max_family_size() const;
  /// Sum of all family sizes.
  std::size_t total_family_size() const;

  bool operator==(const LocalScoreTable& o) const {
    return names_ == o.names_ && families_ == o.families_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<ParentFamily> families_;
  int max_indegree_ = 0;
};

}  // namespace bnsl
