#include "bnsl/pairwise.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "bnsl/errors.hpp"
#include "bnsl/full_dp.hpp"

namespace bnsl {
namespace {

using Clock = std::chrono::steady_clock;

// Unbiased draw in [0, bound) from a 64-bit engine; portable across
// standard libraries, unlike std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<NodePair> make_pairs(int n, int p, PairStrategy strategy, std::uint64_t seed) {
  if (n < 1 || n > kMaxNodes) throw InputError("node count must be in [1, 64]");
  if (p < 0 || 2 * p > n) throw InputError("pair count p must satisfy 0 <= p <= n/2");
  std::vector<int> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  if (strategy == PairStrategy::seeded) {
    std::mt19937_64 rng(seed);
    for (int i = n - 1; i > 0; --i) std::swap(nodes[i], nodes[bounded(rng, i + 1)]);
  }
  std::vector<NodePair> pairs;
  for (int q = 0; q < p; ++q) pairs.push_back({nodes[2 * q], nodes[2 * q + 1]});
  return pairs;
}

PairedOrder::PairedOrder(int n, std::vector<NodePair> pairs, std::uint64_t orientation)
    : n_(n), pairs_(std::move(pairs)), orientation_(orientation) {
  if (n < 1 || n > kMaxNodes) throw InputError("node count must be in [1, 64]");
  if (2 * pairs_.size() > static_cast<std::size_t>(n)) throw InputError("too many pairs for the node count");
  NodeSet used;
  for (const auto& [a, b] : pairs_) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b || used.contains(a) || used.contains(b)) {
      throw InputError("pairs must consist of 2p distinct nodes in range");
    }
    used = used.with(a).with(b);
  }
  if (pairs_.size() < 64 && (orientation_ >> pairs_.size()) != 0) {
    throw InputError("orientation has bits beyond the pair count");
  }
}

bool PairedOrder::admits_prefix(NodeSet y) const {
  for (int q = 0; q < pair_count(); ++q) {
    if (y.contains(later(q)) && !y.contains(earlier(q))) return false;
  }
  return true;
}

bool PairedOrder::extended_by(std::span<const int> permutation) const {
  std::vector<int> position(n_, -1);
  for (std::size_t i = 0; i < permutation.size(); ++i) position[permutation[i]] = static_cast<int>(i);
  for (int q = 0; q < pair_count(); ++q) {
    if (position[earlier(q)] > position[later(q)]) return false;
  }
  return true;
}

RestrictedLattice::RestrictedLattice(const PairedOrder& order) : order_(order), weights_(order.node_count(), 0) {
  const int n = order.node_count();
  NodeSet paired;
  for (int q = 0; q < order.pair_count(); ++q) {
    digits_.push_back({3, size_, order.earlier(q), order.later(q)});
    weights_[order.earlier(q)] = size_;
    weights_[order.later(q)] = size_;
    paired = paired.with(order.earlier(q)).with(order.later(q));
    size_ *= 3;
  }
  for (int v = 0; v < n; ++v) {
    if (paired.contains(v)) continue;
    digits_.push_back({2, size_, v, -1});
    weights_[v] = size_;
    size_ *= 2;
  }
}

std::uint64_t RestrictedLattice::rank(NodeSet y) const {
  if (!order_.admits_prefix(y) || !y.is_subset_of(NodeSet::full(order_.node_count()))) {
    throw std::invalid_argument("set is not a prefix set of the paired order");
  }
  std::uint64_t index = 0;
  for (int v : y) index += weights_[v];
  return index;
}

NodeSet RestrictedLattice::unrank(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("lattice index out of range");
  NodeSet y;
  for (const auto& d : digits_) {
    const auto digit = index % d.radix;
    index /= d.radix;
    if (digit >= 1) y = y.with(d.earlier);
    if (digit == 2) y = y.with(d.later);
  }
  return y;
}

NodeSet max_free_set(NodeSet y, const PairedOrder& order) {
  NodeSet blocked;
  for (int q = 0; q < order.pair_count(); ++q) {
    if (y.contains(order.later(q))) blocked = blocked.with(order.earlier(q));
  }
  return y - blocked;
}

bool removable_test(NodeSet y, int u, const PairedOrder& order) {
  return y.contains(u) && max_free_set(y, order).contains(u);
}

namespace {

struct TailCounters {
  std::uint64_t evaluations = 0;
  std::uint64_t probes = 0;
};

// Depth-first listing of the listed sets between X and Y. `z` is listed;
// its children add one node of `extra` above `min_node`.
void grow_tail(NodeSet z, NodeSet extra, int min_node, const ParentFamily& family, TailMax& best,
               TailCounters& counters) {
  if (z.size() >= family.max_cardinality()) return;
  for (int u : extra) {
    if (u <= min_node) continue;
    const NodeSet child = z.with(u);
    ++counters.probes;
    const double* s = family.find(child);
    if (!s) continue;
    ++counters.evaluations;
    if (*s > best.score || (*s == best.score && child < best.argmax)) best = {*s, child};
    grow_tail(child, extra, u, family, best, counters);
  }
}

TailMax tail_max(NodeSet y, NodeSet x, const ParentFamily& family, TailCounters& counters) {
  TailMax best;
  if (x.size() > family.max_cardinality() || family.empty()) return best;
  ++counters.probes;
  const double* s = family.find(x);
  if (!s) return best;
  ++counters.evaluations;
  best = {*s, x};
  grow_tail(x, y - x, -1, family, best, counters);
  return best;
}

}  // namespace

TailMax tail_scan_max(NodeSet y, NodeSet x, int node, const LocalScoreTable& table, SolveStats* stats) {
  if (y.contains(node)) throw std::invalid_argument("tail_scan_max: node is in Y");
  if (!x.is_subset_of(y)) throw std::invalid_argument("tail_scan_max: X is not a subset of Y");
  TailCounters counters;
  const TailMax best = tail_max(y, x, table.family(node), counters);
  if (stats) {
    stats->score_evaluations += counters.evaluations;
    stats->membership_probes += counters.probes;
  }
  return best;
}

void RestrictedTables::reset(int nodes, std::uint64_t lattice_size) {
  n = nodes;
  size = lattice_size;
  g_values.assign(lattice_size, kNegInf);
  g_choice.assign(lattice_size, 0);
  fhat_values.assign(lattice_size * static_cast<std::uint64_t>(nodes), kNegInf);
}

double solve_restricted(const RestrictedLattice& lattice, const LocalScoreTable& table, RestrictedTables& tables,
                        SolveStats* stats) {
  const PairedOrder& order = lattice.order();
  const int n = table.node_count();
  if (order.node_count() != n) throw InputError("paired order and score table disagree on n");
  const std::uint64_t size = lattice.size();
  tables.reset(n, size);

  TailCounters counters;
  const NodeSet all = NodeSet::full(n);
  std::vector<const ParentFamily*> families(n);
  for (int v = 0; v < n; ++v) families[v] = &table.family(v);

  tables.g_values[0] = 0.0;
  for (int v = 0; v < n; ++v) {
    ++counters.probes;
    if (const double* s = families[v]->find(NodeSet())) {
      ++counters.evaluations;
      tables.fhat_values[v] = *s;
    }
  }

  const auto& digits = lattice.digits();
  std::vector<int> state(digits.size(), 0);
  NodeSet y;
  for (std::uint64_t index = 1; index < size; ++index) {
    // Odometer step from index-1 to index.
    for (std::size_t j = 0;; ++j) {
      const auto& d = digits[j];
      if (state[j] + 1 < d.radix) {
        ++state[j];
        y = y.with(state[j] == 1 ? d.earlier : d.later);
        break;
      }
      state[j] = 0;
      y = y.without(d.earlier);
      if (d.later >= 0) y = y.without(d.later);
    }

    const NodeSet free = max_free_set(y, order);

    double best = kNegInf;
    int choice = free.first();
    for (int v : free) {
      const std::uint64_t prev = index - lattice.weight(v);
      const double value = tables.g_values[prev] + tables.fhat_values[prev * n + v];
      if (value > best) {
        best = value;
        choice = v;
      }
    }
    tables.g_values[index] = best;
    tables.g_choice[index] = static_cast<std::uint8_t>(choice);

    double* row = &tables.fhat_values[index * n];
    for (int v : all - y) {
      double value = tail_max(y, free, *families[v], counters).score;
      for (int u : free) {
        const double sub = tables.fhat_values[(index - lattice.weight(u)) * n + v];
        if (sub > value) value = sub;
      }
      row[v] = value;
    }
  }

  if (stats) {
    stats->score_evaluations += counters.evaluations;
    stats->membership_probes += counters.probes;
    stats->peak_table_entries = std::max(stats->peak_table_entries, tables.score_entries());
  }
  return tables.g_values[size - 1];
}

std::vector<int> restricted_order(const RestrictedLattice& lattice, const RestrictedTables& tables) {
  std::vector<int> order;
  std::uint64_t index = lattice.size() - 1;
  for (int step = 0; step < tables.n; ++step) {
    const int v = tables.g_choice[index];
    order.push_back(v);
    index -= lattice.weight(v);
  }
  std::reverse(order.begin(), order.end());
  return order;
}

std::uint64_t pairwise_table_entries(int n, int p) {
  std::uint64_t size = 1;
  for (int q = 0; q < p; ++q) size *= 3;
  size <<= (n - 2 * p);
  return static_cast<std::uint64_t>(n + 1) * size;
}

DagResult solve_pairwise(const LocalScoreTable& table, const PairwiseOptions& options, SolveStats* stats) {
  const int n = table.node_count();
  const auto pairs = make_pairs(n, options.p, options.strategy, options.pair_seed);
  if (options.p > 40) throw ResourceError("more than 2^40 orientations requested");
  const std::uint64_t orientations = std::uint64_t{1} << options.p;
  const int workers =
      static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(options.workers, 1)), 1,
                                                  orientations));
  const auto start = Clock::now();

  struct WorkerResult {
    double score = kNegInf;
    std::uint64_t orientation = 0;
    std::vector<int> order;
    bool found = false;
    SolveStats stats;
  };
  std::vector<WorkerResult> results(workers);
  std::vector<double> unit_seconds(orientations, 0.0);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](int w) {
    try {
      RestrictedTables tables;
      WorkerResult& mine = results[w];
      for (std::uint64_t r = next.fetch_add(1); r < orientations; r = next.fetch_add(1)) {
        const auto unit_start = Clock::now();
        const RestrictedLattice lattice(PairedOrder(n, pairs, r));
        const double score = solve_restricted(lattice, table, tables, &mine.stats);
        if (!mine.found || score > mine.score || (score == mine.score && r < mine.orientation)) {
          mine.found = true;
          mine.score = score;
          mine.orientation = r;
          mine.order = restricted_order(lattice, tables);
        }
        unit_seconds[r] = std::chrono::duration<double>(Clock::now() - unit_start).count();
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(orientations);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);

  const WorkerResult* best = nullptr;
  for (const auto& r : results) {
    if (!r.found) continue;
    if (!best || r.score > best->score || (r.score == best->score && r.orientation < best->orientation)) best = &r;
  }
  if (!best || best->score == kNegInf) throw InfeasibleError("no DAG with finite score exists");

  if (stats) {
    *stats = SolveStats{};
    for (const auto& r : results) {
      stats->score_evaluations += r.stats.score_evaluations;
      stats->membership_probes += r.stats.membership_probes;
      stats->peak_table_entries = std::max(stats->peak_table_entries, r.stats.peak_table_entries);
    }
    stats->units = orientations;
    stats->unit_seconds = std::move(unit_seconds);
    stats->total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  }
  return DagResult::from_order(table, best->order, best->score, Algorithm::pairwise, best->orientation);
}

PairedOrder coverage_check(std::span<const int> permutation, const std::vector<NodePair>& pairs) {
  const int n = static_cast<int>(permutation.size());
  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i) {
    const int v = permutation[i];
    if (v < 0 || v >= n || position[v] != -1) throw InputError("not a permutation");
    position[v] = i;
  }
  std::uint64_t orientation = 0;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    if (position[pairs[q].second] < position[pairs[q].first]) orientation |= std::uint64_t{1} << q;
  }
  return PairedOrder(n, pairs, orientation);
}

}  // namespace bnsl
