// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bnsl/dnc.hpp"
#include "bnsl/full_dp.hpp"
#include "bnsl/oracle.hpp"
#include "bnsl/pairwise.hpp"
#include "bnsl/score_io.hpp"
#include "bnsl/tradeoff.hpp"
#include "support/brute_force.hpp"

using namespace bnsl;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    if (ok) detail << what;
    ok = false;
  }
};

std::uint64_t pow3(int p) {
  std::uint64_t r = 1;
  for (int i = 0; i < p; ++i) r *= 3;
  return r;
}

bool dag_ok(const LocalScoreTable& table, const DagResult& result) {
  for (int v = 0; v < table.node_count(); ++v) {
    if (!table.family(v).contains(result.parents[v])) return false;
  }
  return brute::brute_acyclic(result.parents) && std::abs(rescore(table, result.parents) - result.total_score) <= 1e-9;
}

// 1. Every solver agrees with the brute-force optimum.
void oracle_equivalence(Check& c) {
  for (std::uint64_t seed = 0; seed < 100 && c.ok; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const int k = 1 + static_cast<int>((seed / 6) % 3);
    const auto table = gen_random_instance(n, std::min(k, n - 1), seed);
    const double best = oracle_solve(table).total_score;
    std::vector<std::pair<std::string, DagResult>> runs;
    runs.emplace_back("full", solve_full(table));
    for (int s = (n + 1) / 2; s <= n; ++s) runs.emplace_back("part s=" + std::to_string(s), solve_partitioned(table, s));
    for (int depth = 0; (1 << depth) <= 2 * n; ++depth) {
      runs.emplace_back("dnc depth=" + std::to_string(depth), solve_dnc(table, depth));
    }
    for (int p = 0; p <= n / 2; ++p) {
      for (auto strategy : {PairStrategy::consecutive, PairStrategy::seeded}) {
        runs.emplace_back("pairwise p=" + std::to_string(p),
                          solve_pairwise(table, {.p = p, .strategy = strategy, .pair_seed = seed}));
      }
    }
    for (const auto& [name, result] : runs) {
      if (std::abs(result.total_score - best) > 1e-9 || !dag_ok(table, result)) {
        c.fail("seed " + std::to_string(seed) + " " + name);
      }
    }
  }
  c.detail << (c.ok ? "100 instances, n 3..8, k 1..3" : "");
}

// 2. Lattice cardinality.
void lattice_cardinality(Check& c) {
  for (int n = 1; n <= 16; ++n) {
    for (int p = 0; p <= n / 2; ++p) {
      const PairedOrder order(n, make_pairs(n, p, PairStrategy::consecutive), (1ULL << p) / 3);
      const RestrictedLattice lattice(order);
      std::uint64_t count = 0;
      for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) count += order.admits_prefix(NodeSet(bits));
      const std::uint64_t expected = pow3(p) << (n - 2 * p);
      if (count != expected || lattice.size() != expected) {
        c.fail("n=" + std::to_string(n) + " p=" + std::to_string(p));
      }
    }
  }
  c.detail << (c.ok ? "n <= 16, all p" : "");
}

// 3. Tails of lattice members partition the powerset.
void tail_partition(Check& c) {
  for (int n = 1; n <= 12; ++n) {
    for (int p = 0; p <= std::min(6, n / 2); ++p) {
      for (std::uint64_t orientation : {std::uint64_t{0}, std::uint64_t{(1ULL << p) - 1}}) {
        const PairedOrder order(n, make_pairs(n, p, PairStrategy::seeded, n * 31 + p), orientation);
        const RestrictedLattice lattice(order);
        std::vector<std::uint8_t> hit(1ULL << n, 0);
        std::uint64_t total = 0;
        bool disjoint = true;
        for (std::uint64_t i = 0; i < lattice.size(); ++i) {
          const NodeSet y = lattice.unrank(i);
          const NodeSet x = max_free_set(y, order);
          const NodeSet free_part = y - x;
          total += 1ULL << free_part.size();
          for (NodeSet rest : brute::all_subsets(free_part)) {
            auto& h = hit[(x | rest).bits()];
            if (h) disjoint = false;
            h = 1;
          }
        }
        if (!disjoint || total != (1ULL << n)) c.fail("n=" + std::to_string(n) + " p=" + std::to_string(p));
      }
    }
  }
  c.detail << (c.ok ? "n <= 12, p <= 6" : "");
}

// 4. Removability equals the max-free test.
void removability(Check& c) {
  std::uint64_t cases = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int p = 0; p <= n / 2; ++p) {
      const auto pairs = make_pairs(n, p, PairStrategy::consecutive);
      for (std::uint64_t o = 0; o < (1ULL << p); ++o) {
        const PairedOrder order(n, pairs, o);
        std::vector<std::pair<int, int>> oriented;
        for (int q = 0; q < p; ++q) oriented.emplace_back(order.earlier(q), order.later(q));
        for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
          const NodeSet y(bits);
          if (!brute::brute_is_prefix(y, oriented)) continue;
          for (int u : y) {
            ++cases;
            if (removable_test(y, u, order) != brute::brute_is_prefix(y.without(u), oriented)) {
              c.fail("n=" + std::to_string(n) + " Y=" + std::to_string(bits) + " u=" + std::to_string(u));
            }
          }
        }
      }
    }
  }
  if (c.ok) c.detail << cases << " (Y, u) cases";
}

// 5. Restricted optimum per orientation.
void restricted_optimum(Check& c) {
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (int n = 1; n <= 5; ++n) {
      const auto table = gen_random_instance(n, std::min(2, n - 1), seed * 7 + n);
      for (int p = 0; p <= n / 2; ++p) {
        const auto pairs = make_pairs(n, p, PairStrategy::seeded, seed);
        for (std::uint64_t o = 0; o < (1ULL << p); ++o) {
          const PairedOrder order(n, pairs, o);
          const RestrictedLattice lattice(order);
          RestrictedTables tables;
          ++runs;
          if (std::abs(solve_restricted(lattice, table, tables) - oracle_restricted(table, order)) > 1e-9) {
            c.fail("seed " + std::to_string(seed) + " n=" + std::to_string(n));
          }
        }
      }
    }
  }
  if (c.ok) c.detail << runs << " orientations";
}

// 6. Every permutation extends some orientation.
void coverage(Check& c) {
  std::uint64_t perms = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto pairs = make_pairs(n, n / 2, PairStrategy::consecutive);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
      ++perms;
      if (!coverage_check(perm, pairs).extended_by(perm)) c.fail("n=" + std::to_string(n));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (c.ok) c.detail << perms << " permutations";
}

// 7. Score evaluations stay within the additive bound.
void work_accounting(Check& c) {
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for (int p = 0; p <= n / 2; ++p) {
        const auto table = gen_random_instance(n, std::min(k, n - 1), n * 100 + k * 10 + p);
        const PairedOrder order(n, make_pairs(n, p, PairStrategy::seeded, p), (1ULL << p) - 1);
        const RestrictedLattice lattice(order);
        RestrictedTables tables;
        SolveStats stats;
        solve_restricted(lattice, table, tables, &stats);
        const double bound = static_cast<double>(table.total_family_size()) + 16.0 * n * lattice.size();
        worst = std::max(worst, stats.score_evaluations / bound);
        if (stats.score_evaluations > bound) {
          c.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + " p=" + std::to_string(p));
        }
      }
    }
  }
  if (c.ok) c.detail << "max evaluations/bound " << worst;
}

// 8. Peak table entries at n = 18.
void space_scaling(Check& c) {
  const int n = 18;
  const auto table = gen_random_instance(n, 2, 18);
  std::vector<double> peaks;
  for (int p : {0, 3, 6, 9}) {
    SolveStats stats;
    solve_pairwise(table, {.p = p, .workers = 1}, &stats);
    const double predicted = static_cast<double>(n + 1) * static_cast<double>(pow3(p)) * std::ldexp(1.0, n - 2 * p);
    const double measured = static_cast<double>(stats.peak_table_entries);
    if (measured < predicted || measured > 1.05 * predicted) c.fail("p=" + std::to_string(p) + " peak off");
    peaks.push_back(measured);
  }
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    const double ratio = peaks[i] / peaks[i - 1];
    const double target = std::pow(0.75, 3);
    if (std::abs(ratio - target) > 0.02 * target) c.fail("step ratio " + std::to_string(ratio));
  }
  if (c.ok) c.detail << "peaks " << peaks[0] << " " << peaks[1] << " " << peaks[2] << " " << peaks[3];
}

// 9. Tradeoff headline numbers.
void tradeoff(Check& c) {
  const double partition_base = std::exp2(compute_tradeoff(0.8).a);
  const auto half = pairwise_bases(0.5);
  if (std::abs(partition_base - 2.872) > 0.001) c.fail("partition base " + std::to_string(partition_base));
  if (std::abs(half.time - 2.4495) > 0.0001) c.fail("pairwise time base " + std::to_string(half.time));
  if (std::abs(half.space - 1.7321) > 0.0001) c.fail("pairwise space base " + std::to_string(half.space));
  for (int i = 73; i <= 99; ++i) {
    const auto point = compute_tradeoff(i / 100.0);
    if (!point.b || !(*point.b < point.a)) c.fail("b >= a at r=" + std::to_string(i / 100.0));
  }
  if (c.ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.4f %.5f %.5f", partition_base, half.time, half.space);
    c.detail << buf;
  }
}

// 10. Worker count does not change the output.
void determinism(Check& c) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 8 + static_cast<int>(seed % 4);
    const auto table = brute::random_sparse_instance(n, 3, seed, 0.7, seed % 2 == 0);
    std::string reference;
    for (int workers : {1, 2, 8}) {
      const auto result = solve_pairwise(table, {.p = n / 2 - 1, .workers = workers});
      std::string text = serialize_dag(table, result);
      char buf[40];
      std::snprintf(buf, sizeof buf, "%a", result.total_score);
      text += buf;
      if (workers == 1) {
        reference = text;
      } else if (text != reference) {
        c.fail("seed " + std::to_string(seed) + " workers " + std::to_string(workers));
      }
    }
  }
  if (c.ok) c.detail << "20 instances, workers 1/2/8";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"lattice cardinality", lattice_cardinality},
      {"tail partition", tail_partition},
      {"removability test", removability},
      {"restricted optimum", restricted_optimum},
      {"order coverage", coverage},
      {"work accounting", work_accounting},
      {"space scaling", space_scaling},
      {"tradeoff reproduction", tradeoff},
      {"determinism under parallelism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !check.ok;
    std::printf("criterion %zu %s: %s (%s; %.2fs)\n", i + 1, criteria[i].first.c_str(), check.ok ? "PASS" : "FAIL",
                check.detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("criterion 11 wall-clock tables at n=25..31: NOT REPRODUCIBLE (covered by criteria 7-8 and "
              "bench --single-orientation extrapolation)\n");
  return failures == 0 ? 0 : 1;
}
