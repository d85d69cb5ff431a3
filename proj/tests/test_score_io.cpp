#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <unordered_set>

#include "bnsl/errors.hpp"
#include "bnsl/score_io.hpp"
#include "support/brute_force.hpp"

using namespace bnsl;

namespace {

std::string parse_error(const std::string& text, int* line = nullptr) {
  try {
    parse_scores(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.what();
  }
  return "";
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

}  // namespace

TEST(ParseScores, SmallestInstance) {
  const auto table = parse_scores("1\nA 1\n0.0 0\n");
  EXPECT_EQ(table.node_count(), 1);
  EXPECT_EQ(table.family(0).size(), 1u);
  EXPECT_EQ(table.score(0, NodeSet()), 0.0);
  EXPECT_EQ(table.max_indegree(), 0);
}

TEST(ParseScores, CommentsBlankLinesAndForwardReferences) {
  const auto table = parse_scores(
      "# three nodes\n3\n\nA 2\n-1.5 0\n-0.5 1 C   # C declared later\nB 1\n-2 0\nC 1\n-3 0\n");
  EXPECT_EQ(table.names(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(table.score(0, NodeSet::single(2)), -0.5);
  EXPECT_EQ(table.score(0, NodeSet::single(1)), kNegInf);
  EXPECT_EQ(table.max_indegree(), 1);
}

TEST(ParseScores, RejectsSelfParent) {
  int line = 0;
  const auto msg = parse_error("2\nA 1\n0 0\nB 2\n0 0\n1 1 B\n", &line);
  EXPECT_NE(msg.find("self-parent"), std::string::npos) << msg;
  EXPECT_EQ(line, 6);
}

TEST(ParseScores, RejectsNonDownwardClosedFamily) {
  int line = 0;
  const auto msg = parse_error("3\nA 1\n0 0\nB 1\n0 0\nC 3\n0 0\n-1 1 B\n-2 2 A B\n", &line);
  EXPECT_NE(msg.find("not downward closed"), std::string::npos) << msg;
  EXPECT_EQ(line, 9);
}

TEST(ParseScores, ReportsEachErrorKindWithLine) {
  int line = 0;
  EXPECT_NE(parse_error("2\nA 1\n0 0\nB 1\n0 1 Q\n", &line).find("unknown node"), std::string::npos);
  EXPECT_EQ(line, 5);
  EXPECT_NE(parse_error("2\nA 2\n0 0\n1 0\nB 1\n0 0\n", &line).find("duplicate parent set"), std::string::npos);
  EXPECT_EQ(line, 4);
  EXPECT_NE(parse_error("65\n", &line).find("too many nodes"), std::string::npos);
  EXPECT_EQ(line, 1);
  EXPECT_NE(parse_error("1\nA 1\nabc 0\n", &line).find("malformed"), std::string::npos);
  EXPECT_EQ(line, 3);
  EXPECT_NE(parse_error("1\nA 1\n0 2 B\n").find("malformed"), std::string::npos);
  EXPECT_NE(parse_error("2\nA 1\n0 0\n").find("unexpected end"), std::string::npos);
  EXPECT_NE(parse_error("1\nA 1\n0 0\nextra 1\n").find("unexpected content"), std::string::npos);
  EXPECT_NE(parse_error("2\nA 1\n0 0\nA 1\n0 0\n").find("duplicate node name"), std::string::npos);
  EXPECT_NE(parse_error("1\nA 1\nnan 0\n").find("malformed score"), std::string::npos);
  EXPECT_NE(parse_error("").find("empty"), std::string::npos);
}

TEST(WriteScores, CanonicalSmallestFile) {
  const auto table = parse_scores("1\nA 1\n0.0 0\n");
  EXPECT_EQ(write_scores(table), "1\nA 1\n0 0\n");
}

TEST(WriteScores, RoundTripsGeneratedTablesExactly) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto table = gen_random_instance(2 + static_cast<int>(seed % 7), std::min(static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 7)), seed);
    EXPECT_EQ(parse_scores(write_scores(table)), table) << "seed " << seed;
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto table = brute::random_sparse_instance(6, 3, seed);
    EXPECT_EQ(parse_scores(write_scores(table)), table) << "seed " << seed;
  }
}

TEST(WriteScores, UnlistedSetsStillQueryMinusInfinityAfterRoundTrip) {
  const auto table = parse_scores("2\nA 1\n0 0\nB 1\n-1 0\n");
  const auto again = parse_scores(write_scores(table));
  EXPECT_EQ(table.score(1, NodeSet::single(0)), kNegInf);
  EXPECT_EQ(again.score(1, NodeSet::single(0)), kNegInf);
}

TEST(GenRandomInstance, IndegreeZeroGivesEmptySetsOnly) {
  const auto table = gen_random_instance(3, 0, 11);
  for (int v = 0; v < 3; ++v) {
    ASSERT_EQ(table.family(v).size(), 1u);
    EXPECT_TRUE(table.family(v).entries()[0].parents.empty());
  }
}

TEST(GenRandomInstance, FullIndegreeListsEverySubset) {
  const auto table = gen_random_instance(4, 3, 11);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(table.family(v).size(), 8u);
}

TEST(GenRandomInstance, FamilySizesMatchBinomialSums) {
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k < n; ++k) {
      const auto table = gen_random_instance(n, k, 3);
      double expected = 0.0;
      for (int i = 0; i <= k; ++i) expected += binomial(n - 1, i);
      for (int v = 0; v < n; ++v) ASSERT_EQ(static_cast<double>(table.family(v).size()), expected);
    }
  }
}

TEST(GenRandomInstance, DeterministicAndInRange) {
  const auto a = gen_random_instance(7, 2, 99);
  const auto b = gen_random_instance(7, 2, 99);
  EXPECT_EQ(write_scores(a), write_scores(b));
  EXPECT_NE(write_scores(a), write_scores(gen_random_instance(7, 2, 100)));
  for (int v = 0; v < 7; ++v) {
    for (const auto& e : a.family(v).entries()) {
      EXPECT_GE(e.score, -10.0);
      EXPECT_LE(e.score, 0.0);
    }
  }
}

TEST(GenRandomInstance, RejectsBadParameters) {
  EXPECT_THROW(gen_random_instance(0, 0, 1), InputError);
  EXPECT_THROW(gen_random_instance(65, 0, 1), InputError);
  EXPECT_THROW(gen_random_instance(4, 4, 1), InputError);
  EXPECT_THROW(gen_random_instance(4, -1, 1), InputError);
}

TEST(CheckDownwardClosed, Examples) {
  const NodeSet a = NodeSet::single(0), b = NodeSet::single(1);
  const std::vector<NodeSet> empty_only{NodeSet()};
  const std::vector<NodeSet> powerset{NodeSet(), a, b, a | b};
  const std::vector<NodeSet> gap{NodeSet(), a | b};
  EXPECT_TRUE(check_downward_closed(empty_only));
  EXPECT_TRUE(check_downward_closed(powerset));
  EXPECT_FALSE(check_downward_closed(gap));
}

TEST(CheckDownwardClosed, AgreesWithAllSubsetsDefinition) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<NodeSet> family;
    const int members = static_cast<int>(rng() % 13);
    for (int i = 0; i < members; ++i) family.emplace_back(rng() & 0x1F);
    std::unordered_set<NodeSet, NodeSetHash> lookup(family.begin(), family.end());
    bool brute = true;
    for (NodeSet s : family) {
      for (NodeSet sub : brute::all_subsets(s)) brute = brute && lookup.contains(sub);
    }
    ASSERT_EQ(check_downward_closed(family), brute);
  }
}

TEST(LocalScoreTable, ConstructorValidates) {
  using F = std::vector<std::vector<ScoredParentSet>>;
  EXPECT_THROW(LocalScoreTable({"A", "A"}, F{{{NodeSet(), 0}}, {{NodeSet(), 0}}}), InputError);
  EXPECT_THROW(LocalScoreTable({"A"}, F{{{NodeSet(1), 0}}}), InputError);
  EXPECT_THROW(LocalScoreTable({"A", "B"}, F{{{NodeSet(), 0}, {NodeSet(), 1}}, {}}), InputError);
  EXPECT_THROW(LocalScoreTable({"A", "B"}, F{{{NodeSet(2), 0}}, {}}), InputError);
  EXPECT_THROW(LocalScoreTable({"A"}, F{{{NodeSet(), std::nan("")}}}), InputError);
  EXPECT_NO_THROW(LocalScoreTable({"A", "B"}, F{{}, {{NodeSet(), 0}}}));
}
