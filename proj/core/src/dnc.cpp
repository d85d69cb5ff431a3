#include "bnsl/dnc.hpp"

#include <algorithm>
#include <chrono>

#include "bnsl/errors.hpp"
#include "bnsl/full_dp.hpp"

namespace bnsl {
namespace {

using Clock = std::chrono::steady_clock;

struct ScoredOrder {
  double score = kNegInf;
  std::vector<int> order;
};

struct Context {
  const LocalScoreTable& table;
  const DncOptions& options;
  TableMeter meter;
  std::uint64_t evaluations = 0;
};

SubproblemSolution solve_leaf(const SubProblem& problem, Context& ctx) {
  const int m = problem.members.size();
  if (m > ctx.options.max_block) {
    throw ResourceError("subproblem with " + std::to_string(m) + " members exceeds the dense limit of " +
                        std::to_string(ctx.options.max_block));
  }
  std::vector<int> members(problem.members.begin(), problem.members.end());
  const std::uint64_t count = std::uint64_t{1} << m;

  ctx.meter.acquire(count);
  std::vector<double> g(count, kNegInf);
  std::vector<std::uint8_t> choice(count, 0);
  g[0] = 0.0;
  for (std::uint64_t packed = 1; packed < count; ++packed) {
    const NodeSet placed = deposit_bits(packed, problem.members) | problem.allowed_predecessors;
    double best = kNegInf;
    int best_pos = std::countr_zero(packed);
    for (std::uint64_t rest = packed; rest; rest &= rest - 1) {
      const int pos = std::countr_zero(rest);
      const int v = members[pos];
      const std::uint64_t prev = packed & ~(std::uint64_t{1} << pos);
      if (g[prev] == kNegInf) continue;
      const double value = g[prev] + best_parents_direct(v, placed.without(v), ctx.table).first;
      ++ctx.evaluations;
      if (value > best) {
        best = value;
        best_pos = pos;
      }
    }
    g[packed] = best;
    choice[packed] = static_cast<std::uint8_t>(best_pos);
  }
  SubproblemSolution solution{problem, g[count - 1], std::move(choice)};
  ctx.meter.release(count);
  return solution;
}

ScoredOrder solve_recursive(NodeSet predecessors, NodeSet members, int block, Context& ctx,
                            std::vector<double>* unit_seconds) {
  const int m = members.size();
  if (m <= block) {
    auto leaf = solve_leaf({predecessors, members}, ctx);
    return {leaf.score, leaf.order()};
  }
  const int first_size = (m + 1) / 2;
  const std::uint64_t ones = (std::uint64_t{1} << first_size) - 1;
  const std::uint64_t last = ones << (m - first_size);
  ScoredOrder best;
  for (std::uint64_t packed = ones;; packed = next_same_popcount(packed)) {
    const auto start = Clock::now();
    const NodeSet first = deposit_bits(packed, members);
    ScoredOrder head = solve_recursive(predecessors, first, block, ctx, nullptr);
    if (head.score != kNegInf) {
      ScoredOrder tail = solve_recursive(predecessors | first, members - first, block, ctx, nullptr);
      const double total = head.score + tail.score;
      if (total > best.score) {
        best.score = total;
        best.order = std::move(head.order);
        best.order.insert(best.order.end(), tail.order.begin(), tail.order.end());
      }
    }
    if (unit_seconds) unit_seconds->push_back(std::chrono::duration<double>(Clock::now() - start).count());
    if (packed == last) break;
  }
  return best;
}

void fill_stats(SolveStats* stats, const Context& ctx, std::vector<double> units, Clock::time_point start) {
  if (!stats) return;
  stats->peak_table_entries = ctx.meter.peak();
  stats->score_evaluations = ctx.evaluations;
  stats->membership_probes = 0;
  stats->units = units.size();
  stats->unit_seconds = std::move(units);
  stats->total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<int> SubproblemSolution::order() const {
  std::vector<int> members(problem.members.begin(), problem.members.end());
  std::vector<int> out;
  out.reserve(members.size());
  std::uint64_t packed = members.empty() ? 0 : (std::uint64_t{1} << members.size()) - 1;
  while (packed) {
    const int pos = choice[packed];
    out.push_back(members[pos]);
    packed &= ~(std::uint64_t{1} << pos);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

SubproblemSolution solve_subproblem_dp(const SubProblem& problem, const LocalScoreTable& table,
                                       const DncOptions& options, SolveStats* stats) {
  if (!(problem.allowed_predecessors & problem.members).empty()) {
    throw InputError("subproblem members overlap the allowed predecessors");
  }
  const auto start = Clock::now();
  Context ctx{table, options, {}, 0};
  auto solution = solve_leaf(problem, ctx);
  fill_stats(stats, ctx, {}, start);
  return solution;
}

int dnc_block_size(int n, int depth) {
  if (depth >= 31) return 1;
  const long long parts = 1LL << depth;
  return static_cast<int>(std::max(1LL, (n + parts - 1) / parts));
}

DagResult solve_partitioned(const LocalScoreTable& table, int s, const DncOptions& options, SolveStats* stats) {
  const int n = table.node_count();
  if (2 * s < n || s > n) {
    throw InputError("split size s must satisfy n/2 <= s <= n (n=" + std::to_string(n) + ", s=" + std::to_string(s) +
                     ")");
  }
  const auto start = Clock::now();
  Context ctx{table, options, {}, 0};
  std::vector<double> units;
  const NodeSet all = table.all_nodes();

  ScoredOrder best;
  const std::uint64_t ones = s == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s) - 1;
  const std::uint64_t last = ones << (n - s);
  for (std::uint64_t bits = ones;; bits = next_same_popcount(bits)) {
    const auto unit_start = Clock::now();
    const NodeSet first(bits);
    ScoredOrder head;
    {
      auto sol = solve_leaf({NodeSet(), first}, ctx);
      head = {sol.score, sol.order()};
    }
    if (head.score != kNegInf) {
      auto sol = solve_leaf({first, all - first}, ctx);
      const double total = head.score + sol.score;
      if (total > best.score) {
        best.score = total;
        best.order = std::move(head.order);
        const auto tail = sol.order();
        best.order.insert(best.order.end(), tail.begin(), tail.end());
      }
    }
    units.push_back(std::chrono::duration<double>(Clock::now() - unit_start).count());
    if (bits == last) break;
  }
  if (best.score == kNegInf) throw InfeasibleError("no DAG with finite score exists");
  fill_stats(stats, ctx, std::move(units), start);
  return DagResult::from_order(table, best.order, best.score, Algorithm::partitioned);
}

DagResult solve_dnc(const LocalScoreTable& table, int depth, const DncOptions& options, SolveStats* stats) {
  if (depth < 0) throw InputError("depth must be nonnegative");
  const auto start = Clock::now();
  Context ctx{table, options, {}, 0};
  std::vector<double> units;
  const int block = dnc_block_size(table.node_count(), depth);
  ScoredOrder best = solve_recursive(NodeSet(), table.all_nodes(), block, ctx, &units);
  if (best.score == kNegInf) throw InfeasibleError("no DAG with finite score exists");
  if (units.empty()) units.push_back(std::chrono::duration<double>(Clock::now() - start).count());
  fill_stats(stats, ctx, std::move(units), start);
  return DagResult::from_order(table, best.order, best.score, Algorithm::dnc);
}

}  // namespace bnsl
