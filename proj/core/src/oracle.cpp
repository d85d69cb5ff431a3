#include "bnsl/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "bnsl/errors.hpp"
#include "bnsl/full_dp.hpp"

namespace bnsl {
namespace {

double order_score(const LocalScoreTable& table, const std::vector<int>& order) {
  double total = 0.0;
  NodeSet before;
  for (int v : order) {
    total += best_parents_direct(v, before, table).first;
    before = before.with(v);
  }
  return total;
}

void require_small(const LocalScoreTable& table) {
  if (table.node_count() > kOracleMaxNodes) {
    throw InputError("oracle enumerates all orders and is limited to " + std::to_string(kOracleMaxNodes) +
                     " nodes, got " + std::to_string(table.node_count()));
  }
}

}  // namespace

DagResult oracle_solve(const LocalScoreTable& table) {
  require_small(table);
  std::vector<int> order(table.node_count());
  std::iota(order.begin(), order.end(), 0);
  double best = kNegInf;
  std::vector<int> best_order = order;
  do {
    const double total = order_score(table, order);
    if (total > best) {
      best = total;
      best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  if (best == kNegInf) throw InfeasibleError("no DAG with finite score exists");
  return DagResult::from_order(table, best_order, best, Algorithm::oracle);
}

double oracle_restricted(const LocalScoreTable& table, const PairedOrder& order) {
  require_small(table);
  std::vector<int> perm(table.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  double best = kNegInf;
  do {
    if (order.extended_by(perm)) best = std::max(best, order_score(table, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<NodeSet> oracle_lattice(int n, const PairedOrder& order) {
  if (n > kOracleLatticeMaxNodes) throw InputError("oracle_lattice is limited to 20 nodes");
  std::vector<NodeSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const NodeSet y(bits);
    bool ok = true;
    for (int q = 0; q < order.pair_count(); ++q) {
      const auto [a, b] = order.pairs()[q];
      const bool flipped = (order.orientation() >> q) & 1U;
      const int first = flipped ? b : a;
      const int second = flipped ? a : b;
      if (y.contains(second) && !y.contains(first)) ok = false;
    }
    if (ok) out.push_back(y);
  }
  return out;
}

}  // namespace bnsl
