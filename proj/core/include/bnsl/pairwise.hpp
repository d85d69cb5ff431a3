#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bnsl/dag_result.hpp"
#include "bnsl/node_set.hpp"
#include "bnsl/score_table.hpp"
#include "bnsl/solve_stats.hpp"

namespace bnsl {

/// Two distinct nodes whose relative order is fixed by an orientation bit.
struct NodePair {
  int first = 0;
  int second = 0;

  bool operator==(const NodePair&) const = default;
};

enum class PairStrategy { consecutive, seeded };

/// p disjoint pairs. `consecutive` gives (0,1),(2,3),...; `seeded` pairs up
/// the first 2p nodes of a seeded shuffle. Throws InputError unless
/// 0 <= p <= n/2.
std::vector<NodePair> make_pairs(int n, int p, PairStrategy strategy, std::uint64_t seed = 0);

/// A member of the class of partial orders spanned by a fixed pair list:
/// bit q of the orientation is 0 when pairs[q].first precedes
/// pairs[q].second and 1 for the reverse.
class PairedOrder {
 public:
  PairedOrder(int n, std::vector<NodePair> pairs, std::uint64_t orientation);

  int node_count() const { return n_; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  const std::vector<NodePair>& pairs() const { return pairs_; }
  std::uint64_t orientation() const { return orientation_; }

  /// The node of pair q that must come first under this orientation.
  int earlier(int q) const { return (orientation_ >> q) & 1U ? pairs_[q].second : pairs_[q].first; }
  int later(int q) const { return (orientation_ >> q) & 1U ? pairs_[q].first : pairs_[q].second; }

  /// Y can be the set of the first |Y| nodes of a linear extension: for
  /// every pair, later in Y implies earlier in Y.
  bool admits_prefix(NodeSet y) const;
  /// The permutation (a list of all nodes) respects every oriented pair.
  bool extended_by(std::span<const int> permutation) const;

 private:
  int n_;
  std::vector<NodePair> pairs_;
  std::uint64_t orientation_;
};

/// Dense mixed-radix index of the prefix sets of a PairedOrder.
///
/// Digit q < p encodes pair q as 0 (neither node), 1 (earlier node only)
/// or 2 (both); the remaining binary digits encode the unpaired nodes in
/// node order. Pair 0 is the least significant digit. Each node carries a
/// weight such that rank(Y) is the sum of its members' weights, so dropping
/// a removable node u from Y moves the index down by weight(u).
class RestrictedLattice {
 public:
  explicit RestrictedLattice(const PairedOrder& order);

  const PairedOrder& order() const { return order_; }
  /// 3^p * 2^(n-2p).
  std::uint64_t size() const { return size_; }
  std::uint64_t weight(int node) const { return weights_[node]; }

  /// Throws std::invalid_argument when Y is not a prefix set.
  std::uint64_t rank(NodeSet y) const;
  NodeSet unrank(std::uint64_t index) const;

  /// Position j of the odometer: its radix, its place value and the nodes
  /// it controls (one for an unpaired node, earlier/later for a pair).
  struct Digit {
    int radix;
    std::uint64_t place;
    int earlier;
    int later;  // -1 for unpaired digits
  };
  const std::vector<Digit>& digits() const { return digits_; }

 private:
  PairedOrder order_;
  std::vector<Digit> digits_;
  std::vector<std::uint64_t> weights_;
  std::uint64_t size_ = 1;
};

/// Members of Y with no later partner inside Y: Y minus every earlier node
/// whose later node is also in Y.
NodeSet max_free_set(NodeSet y, const PairedOrder& order);

/// Whether Y\{u} is still a prefix set; equivalent to u in max_free_set(Y).
bool removable_test(NodeSet y, int u, const PairedOrder& order);

struct TailMax {
  double score = kNegInf;
  NodeSet argmax;
};

/// Maximum of f_node(Z) over listed Z with X ⊆ Z ⊆ Y (ties to the smaller
/// bit value). Lists the members by growing Z upward from X one node of
/// Y\X at a time in increasing node order, stopping at unlisted sets;
/// downward closure makes that complete. Throws std::invalid_argument
/// unless node ∉ Y and X ⊆ Y.
TailMax tail_scan_max(NodeSet y, NodeSet x, int node, const LocalScoreTable& table, SolveStats* stats = nullptr);

/// Working storage for one orientation; reusable across orientations.
struct RestrictedTables {
  int n = 0;
  std::uint64_t size = 0;
  std::vector<double> g_values;
  std::vector<std::uint8_t> g_choice;
  /// fhat_values[index * n + v], meaningful when v is not in the set.
  std::vector<double> fhat_values;

  void reset(int nodes, std::uint64_t lattice_size);
  double fhat(std::uint64_t index, int node) const { return fhat_values[index * n + node]; }
  /// Score-valued entries: (n + 1) per lattice member.
  std::uint64_t score_entries() const { return g_values.size() + fhat_values.size(); }
};

/// Restricted dynamic program for one orientation, visiting prefix sets in
/// increasing rank (every removable predecessor has a smaller rank):
///
///   g[Y]      = max_{v in X_Y} g[Y\{v}] + fhat_v[Y\{v}]
///   fhat_v[Y] = max( tail_scan_max(Y, X_Y, v), max_{u in X_Y} fhat_v[Y\{u}] )
///               for every v not in Y.
///
/// Returns g[N], the best score over DAGs compatible with the order.
double solve_restricted(const RestrictedLattice& lattice, const LocalScoreTable& table, RestrictedTables& tables,
                        SolveStats* stats = nullptr);

/// Node order recovered from the sink choices of a solved table.
std::vector<int> restricted_order(const RestrictedLattice& lattice, const RestrictedTables& tables);

struct PairwiseOptions {
  int p = 0;
  PairStrategy strategy = PairStrategy::consecutive;
  std::uint64_t pair_seed = 0;
  int workers = 1;
};

/// Runs solve_restricted for all 2^p orientations over `workers` threads and
/// keeps the best; ties go to the smaller orientation index, so the result
/// does not depend on the worker count.
DagResult solve_pairwise(const LocalScoreTable& table, const PairwiseOptions& options = {},
                         SolveStats* stats = nullptr);

/// (n + 1) * 3^p * 2^(n - 2p): score entries held per orientation.
std::uint64_t pairwise_table_entries(int n, int p);

/// The orientation of `pairs` that `permutation` extends.
PairedOrder coverage_check(std::span<const int> permutation, const std::vector<NodePair>& pairs);

}  // namespace bnsl
