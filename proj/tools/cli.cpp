#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "bnsl/bic.hpp"
#include "bnsl/dnc.hpp"
#include "bnsl/errors.hpp"
#include "bnsl/full_dp.hpp"
#include "bnsl/oracle.hpp"
#include "bnsl/pairwise.hpp"
#include "bnsl/score_io.hpp"
#include "bnsl/tradeoff.hpp"

namespace bnsl::cli {
namespace {

constexpr double kBytesPerEntry = 8.0;

// Flag values that parse but do not make sense together.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kGiB = 1024.0 * 1024.0 * 1024.0;

struct SolveFlags {
  std::string scores;
  std::string algo = "full";
  int p = 0;
  std::optional<int> s;
  int depth = 0;
  int threads = 1;
  double max_gib = 8.0;
  bool auto_p = false;
  std::string pair_strategy = "consecutive";
  std::uint64_t pair_seed = 0;
  std::string output;
  std::string csv;
};

struct BenchFlags {
  std::string scores;
  int n = 16;
  int max_indegree = 3;
  std::uint64_t seed = 1;
  std::vector<std::string> cells;
  std::vector<int> grid_p;
  bool single_orientation = false;
  int threads = 1;
  double max_gib = 8.0;
  std::string csv;
};

std::string fmt_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", s);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double predicted_entries(const std::string& algo, int n, int p, int s, int depth, int threads) {
  if (algo == "full") return (n + 1.0) * std::ldexp(1.0, n);
  if (algo == "pairwise") {
    const double workers = std::min(static_cast<double>(std::max(threads, 1)), std::ldexp(1.0, p));
    return (n + 1.0) * std::pow(3.0, p) * std::ldexp(1.0, n - 2 * p) * workers;
  }
  if (algo == "dnc") return std::ldexp(1.0, dnc_block_size(n, depth));
  if (algo == "part") return std::ldexp(1.0, s);
  return 0.0;
}

void check_budget(double entries, double max_gib) {
  const double bytes = entries * kBytesPerEntry;
  if (bytes > max_gib * kGiB) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "predicted tables need %.3f GiB, above the --max-gib budget of %.3f GiB",
                  bytes / kGiB, max_gib);
    throw ResourceError(buf);
  }
}

/// Smallest p whose pairwise tables fit the budget.
int minimal_p(int n, int threads, double max_gib) {
  for (int p = 0; 2 * p <= n; ++p) {
    if (predicted_entries("pairwise", n, p, 0, 0, threads) * kBytesPerEntry <= max_gib * kGiB) return p;
  }
  throw ResourceError("no pair count p <= n/2 fits the --max-gib budget");
}

PairStrategy parse_strategy(const std::string& name) {
  if (name == "consecutive") return PairStrategy::consecutive;
  if (name == "seeded") return PairStrategy::seeded;
  throw InputError("unknown pair strategy '" + name + "'");
}

RunReport make_report(const std::string& algo, int n, const SolveStats& stats, double score) {
  RunReport r;
  r.algorithm = algo;
  r.n = n;
  r.score = score;
  r.units = stats.units;
  r.total_seconds = stats.total_seconds;
  r.unit_seconds = stats.unit_seconds.empty() ? stats.total_seconds
                                              : *std::max_element(stats.unit_seconds.begin(), stats.unit_seconds.end());
  r.peak_table_entries = stats.peak_table_entries;
  r.score_evaluations = stats.score_evaluations;
  return r;
}

struct SolveOutcome {
  DagResult dag;
  RunReport report;
};

SolveOutcome run_solver(const LocalScoreTable& table, const std::string& algo, int p, int s, int depth, int threads,
                        PairStrategy strategy, std::uint64_t pair_seed) {
  SolveStats stats;
  const int n = table.node_count();
  std::optional<DagResult> dag;
  if (algo == "full") {
    dag = solve_full(table, {}, &stats);
  } else if (algo == "part") {
    dag = solve_partitioned(table, s, {}, &stats);
  } else if (algo == "dnc") {
    dag = solve_dnc(table, depth, {}, &stats);
  } else if (algo == "pairwise") {
    dag = solve_pairwise(table, {p, strategy, pair_seed, threads}, &stats);
  } else {
    throw InputError("unknown algorithm '" + algo + "'");
  }
  RunReport report = make_report(algo, n, stats, dag->total_score);
  report.p = p;
  report.s = s;
  report.depth = depth;
  report.threads = threads;
  report.seed = pair_seed;
  return {std::move(*dag), report};
}

void print_report(std::ostream& err, const RunReport& report) {
  err << report_csv_header() << report_csv_row(report);
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  const auto table = load_scores(f.scores);
  const int n = table.node_count();
  std::string algo = f.algo;
  int p = f.p;
  if (f.auto_p) {
    algo = "pairwise";
    p = minimal_p(n, f.threads, f.max_gib);
  }
  const int s = f.s.value_or(n);
  if (algo == "part" && !f.s) throw UsageError("--algo part requires --s");
  check_budget(predicted_entries(algo, n, p, s, f.depth, f.threads), f.max_gib);

  auto outcome = run_solver(table, algo, p, s, f.depth, f.threads, parse_strategy(f.pair_strategy), f.pair_seed);
  const std::string text = serialize_dag(table, outcome.dag);
  if (f.output.empty()) {
    out << text;
  } else {
    write_file(f.output, text);
  }
  print_report(err, outcome.report);
  if (!f.csv.empty()) write_file(f.csv, report_csv_header() + report_csv_row(outcome.report));
  return kSuccess;
}

struct Cell {
  std::string algo;
  int p = 0;
  int s = 0;
  int depth = 0;
};

Cell parse_cell(const std::string& text, int n) {
  Cell cell;
  const auto colon = text.find(':');
  cell.algo = text.substr(0, colon);
  cell.s = n;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("malformed cell '" + text + "'");
      const std::string key = item.substr(0, eq);
      int value = 0;
      try {
        value = std::stoi(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("malformed cell '" + text + "'");
      }
      if (key == "p") {
        cell.p = value;
      } else if (key == "s") {
        cell.s = value;
      } else if (key == "depth") {
        cell.depth = value;
      } else {
        throw UsageError("unknown cell parameter '" + key + "'");
      }
    }
  }
  if (cell.algo != "full" && cell.algo != "part" && cell.algo != "dnc" && cell.algo != "pairwise") {
    throw UsageError("unknown algorithm in cell '" + text + "'");
  }
  return cell;
}

RunReport run_single_orientation(const LocalScoreTable& table, int p, std::uint64_t seed) {
  const int n = table.node_count();
  const auto pairs = make_pairs(n, p, PairStrategy::consecutive);
  const RestrictedLattice lattice(PairedOrder(n, pairs, 0));
  RestrictedTables tables;
  SolveStats stats;
  const auto start = std::chrono::steady_clock::now();
  const double score = solve_restricted(lattice, table, tables, &stats);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunReport r;
  r.algorithm = "pairwise";
  r.n = n;
  r.p = p;
  r.s = n;
  r.seed = seed;
  r.score = score;
  r.units = std::uint64_t{1} << p;
  r.unit_seconds = seconds;
  r.total_seconds = seconds * std::ldexp(1.0, p);
  r.peak_table_entries = stats.peak_table_entries;
  r.score_evaluations = stats.score_evaluations;
  r.extrapolated = true;
  return r;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  const auto table = f.scores.empty() ? gen_random_instance(f.n, f.max_indegree, f.seed) : load_scores(f.scores);
  const int n = table.node_count();
  std::vector<Cell> cells;
  for (const auto& text : f.cells) cells.push_back(parse_cell(text, n));
  for (int p : f.grid_p) cells.push_back({"pairwise", p, n, 0});
  if (cells.empty()) throw UsageError("bench needs at least one --cell or --grid-p entry");

  std::string csv = report_csv_header();
  for (const auto& cell : cells) {
    RunReport report;
    if (cell.algo == "pairwise" && f.single_orientation) {
      check_budget(predicted_entries("pairwise", n, cell.p, n, 0, 1), f.max_gib);
      report = run_single_orientation(table, cell.p, f.seed);
    } else {
      check_budget(predicted_entries(cell.algo, n, cell.p, cell.s, cell.depth, f.threads), f.max_gib);
      report = run_solver(table, cell.algo, cell.p, cell.s, cell.depth, f.threads, PairStrategy::consecutive, 0)
                   .report;
    }
    report.seed = f.seed;
    csv += report_csv_row(report);
    err << "bench: " << cell.algo << " done in " << fmt_seconds(report.total_seconds) << " s\n";
  }
  if (f.csv.empty()) {
    out << csv;
  } else {
    write_file(f.csv, csv);
  }
  return kSuccess;
}

int cmd_oracle(const std::string& scores, const std::string& output, std::ostream& out) {
  const auto table = load_scores(scores);
  if (table.node_count() > kOracleMaxNodes) {
    throw ResourceError("oracle refuses n = " + std::to_string(table.node_count()) + ": enumeration is limited to n <= " +
                        std::to_string(kOracleMaxNodes));
  }
  const std::string text = serialize_dag(table, oracle_solve(table));
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
  }
  return kSuccess;
}

int cmd_gen(int n, int k, std::uint64_t seed, const std::string& data, const std::string& delimiter,
            const std::string& output, std::ostream& out) {
  std::optional<LocalScoreTable> table;
  if (!data.empty()) {
    if (delimiter.size() != 1) throw InputError("--delimiter must be a single character");
    table = bic_from_data(read_file(data), k, delimiter[0]);
  } else {
    table = gen_random_instance(n, k, seed);
  }
  const std::string text = write_scores(*table);
  if (output.empty()) {
    out << text;
  } else {
    write_file(output, text);
  }
  return kSuccess;
}

int cmd_tradeoff(int n, double step, const std::string& csv, bool headline, std::ostream& out) {
  const std::string text = emit_curve(n, step);
  if (csv.empty()) {
    out << text;
  } else {
    write_file(csv, text);
  }
  if (headline) {
    const double r_pair = pairwise_min_ratio();
    const auto half = pairwise_bases(0.5);
    char buf[400];
    std::snprintf(buf, sizeof buf,
                  "# partition s=4n/5: time base %.4f, space base %.4f\n"
                  "# pairwise p=n/2: time base %.4f, space base %.4f (r = %.4f)\n"
                  "# pairwise exponent reported from r >= %.3f\n",
                  std::exp2(partition_time_exponent(0.8)), std::exp2(0.8), half.time, half.space, r_pair,
                  kPairwiseQuotedMinRatio);
    out << buf;
  }
  return kSuccess;
}

}  // namespace

std::string report_csv_header() {
  return "algo,n,p,s,depth,threads,seed,score,units,unit_seconds,total_seconds,peak_table_entries,"
         "score_evaluations,extrapolated\n";
}

std::string report_csv_row(const RunReport& r) {
  std::ostringstream os;
  os << r.algorithm << ',' << r.n << ',' << r.p << ',' << r.s << ',' << r.depth << ',' << r.threads << ',' << r.seed
     << ',' << format_score(r.score) << ',' << r.units << ',' << fmt_seconds(r.unit_seconds) << ','
     << fmt_seconds(r.total_seconds) << ',' << r.peak_table_entries << ',' << r.score_evaluations << ','
     << (r.extrapolated ? "extrapolated=true" : "extrapolated=false") << '\n';
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Bayesian network structure discovery"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Find an optimal DAG for a score file");
  solve_cmd->add_option("--scores", solve.scores, "Score file")->required();
  solve_cmd->add_option("--algo", solve.algo, "full|part|dnc|pairwise")
      ->check(CLI::IsMember({"full", "part", "dnc", "pairwise"}));
  solve_cmd->add_option("--p", solve.p, "Node pairs for the pairwise scheme");
  solve_cmd->add_option("--s", solve.s, "First-block size for --algo part");
  solve_cmd->add_option("--depth", solve.depth, "Recursion depth for --algo dnc");
  solve_cmd->add_option("--threads", solve.threads, "Worker threads for the pairwise scheme")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-gib", solve.max_gib, "Refuse runs whose predicted tables exceed this");
  solve_cmd->add_flag("--auto-p", solve.auto_p, "Use the pairwise scheme with the smallest p that fits --max-gib");
  solve_cmd->add_option("--pair-strategy", solve.pair_strategy, "consecutive|seeded")
      ->check(CLI::IsMember({"consecutive", "seeded"}));
  solve_cmd->add_option("--pair-seed,--seed", solve.pair_seed, "Seed for --pair-strategy seeded");
  solve_cmd->add_option("--output", solve.output, "Write the DAG here instead of standard output");
  solve_cmd->add_option("--csv", solve.csv, "Write the run report as CSV");
  solve_cmd->footer(
      "Report columns: algo,n,p,s,depth,threads,seed,score,units,unit_seconds,total_seconds,"
      "peak_table_entries,score_evaluations,extrapolated");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time solver cells on one instance and emit CSV");
  bench_cmd->add_option("--scores", bench.scores, "Score file (otherwise a random instance is generated)");
  bench_cmd->add_option("--n", bench.n, "Nodes of the generated instance");
  bench_cmd->add_option("--max-indegree", bench.max_indegree, "Indegree bound of the generated instance");
  bench_cmd->add_option("--seed", bench.seed, "Seed of the generated instance");
  bench_cmd->add_option("--cell", bench.cells, "full | part:s=S | dnc:depth=D | pairwise:p=P (repeatable)");
  bench_cmd->add_option("--grid-p", bench.grid_p, "Pairwise cells for these p values")->delimiter(',');
  bench_cmd->add_flag("--single-orientation", bench.single_orientation,
                      "Run one orientation per pairwise cell and extrapolate the total by 2^p");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-gib", bench.max_gib, "Refuse cells whose predicted tables exceed this");
  bench_cmd->add_option("--csv", bench.csv, "Write CSV here instead of standard output");
  bench_cmd->footer(
      "CSV columns: algo,n,p,s,depth,threads,seed,score,units,unit_seconds,total_seconds,"
      "peak_table_entries,score_evaluations,extrapolated");

  std::string oracle_scores, oracle_output;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum over all node orders (n <= 8)");
  oracle_cmd->add_option("--scores", oracle_scores, "Score file")->required();
  oracle_cmd->add_option("--output", oracle_output, "Write the DAG here instead of standard output");

  int gen_n = 5, gen_k = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_data, gen_delimiter = ",", gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "Write a score file (random, or BIC from categorical data)");
  gen_cmd->add_option("--n", gen_n, "Node count");
  gen_cmd->add_option("--max-indegree", gen_k, "Largest parent set size");
  gen_cmd->add_option("--seed", gen_seed, "Random seed");
  gen_cmd->add_option("--data", gen_data, "Delimited categorical data with a header row; scores by BIC");
  gen_cmd->add_option("--delimiter", gen_delimiter, "Cell delimiter for --data");
  gen_cmd->add_option("--output", gen_output, "Write here instead of standard output");

  int trade_n = 30;
  double trade_step = 0.01;
  std::string trade_csv;
  bool trade_headline = false;
  auto* trade_cmd = app.add_subcommand("tradeoff", "Emit the space-time tradeoff curves as CSV");
  trade_cmd->add_option("--n", trade_n, "Node count for p_equiv and s_equiv")->required();
  trade_cmd->add_option("--step", trade_step, "Spacing of r")->required();
  trade_cmd->add_option("--csv", trade_csv, "Write CSV here instead of standard output");
  trade_cmd->add_flag("--headline", trade_headline, "Also print the headline time/space bases");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    for (auto* sub : app.get_subcommands()) out << sub->help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? kSuccess : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*bench_cmd) return cmd_bench(bench, out, err);
    if (*oracle_cmd) return cmd_oracle(oracle_scores, oracle_output, out);
    if (*gen_cmd) return cmd_gen(gen_n, gen_k, gen_seed, gen_data, gen_delimiter, gen_output, out);
    if (*trade_cmd) return cmd_tradeoff(trade_n, trade_step, trade_csv, trade_headline, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "refused: " << e.what() << "\n";
    return kResourceRefusal;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace bnsl::cli
