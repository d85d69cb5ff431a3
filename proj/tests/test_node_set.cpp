#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "bnsl/node_set.hpp"

using bnsl::NodeSet;

TEST(NodeSet, BasicOperations) {
  const NodeSet a = NodeSet().with(0).with(3).with(5);
  EXPECT_EQ(a.size(), 3);
  EXPECT_TRUE(a.contains(3));
  EXPECT_FALSE(a.contains(4));
  EXPECT_EQ(a.without(3), NodeSet(0b100001));
  EXPECT_TRUE(NodeSet(0b1).is_subset_of(a));
  EXPECT_FALSE(NodeSet(0b10).is_subset_of(a));
  EXPECT_EQ((a | NodeSet(0b10)).bits(), 0b101011u);
  EXPECT_EQ((a - NodeSet(0b1)).bits(), 0b101000u);
  EXPECT_EQ((a & NodeSet(0b1001)).bits(), 0b1001u);
  EXPECT_EQ(a.first(), 0);
  EXPECT_EQ(NodeSet::full(64).size(), 64);
  EXPECT_EQ(NodeSet::full(3).bits(), 0b111u);
  EXPECT_TRUE(NodeSet::single(63).contains(63));
}

TEST(NodeSet, IteratesMembersInOrder) {
  std::vector<int> seen;
  for (int v : NodeSet(0b1010'0110)) seen.push_back(v);
  EXPECT_EQ(seen, (std::vector<int>{1, 2, 5, 7}));
}

TEST(NodeSet, ExtractDepositAreInverse) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const NodeSet universe(rng() & 0xFFFFF);
    const std::uint64_t width = universe.size();
    const std::uint64_t packed = width == 0 ? 0 : rng() & ((std::uint64_t{1} << width) - 1);
    const NodeSet spread = bnsl::deposit_bits(packed, universe);
    EXPECT_TRUE(spread.is_subset_of(universe));
    EXPECT_EQ(bnsl::extract_bits(spread, universe), packed);
  }
}

TEST(NodeSet, SkipBitMatchesExtract) {
  for (int node = 0; node < 6; ++node) {
    const NodeSet others = NodeSet::full(6).without(node);
    for (std::uint64_t bits = 0; bits < 64; ++bits) {
      const NodeSet y = NodeSet(bits).without(node);
      EXPECT_EQ(bnsl::skip_bit(y, node), bnsl::extract_bits(y, others));
    }
  }
  EXPECT_EQ(bnsl::skip_bit(NodeSet(0x7FFF'FFFF'FFFF'FFFFULL), 63), 0x7FFF'FFFF'FFFF'FFFFULL);
}

TEST(NodeSet, GosperVisitsAllCombinationsInIncreasingOrder) {
  std::vector<std::uint64_t> seen;
  for (std::uint64_t x = 0b111; x < 64; x = bnsl::next_same_popcount(x)) seen.push_back(x);
  EXPECT_EQ(seen.size(), 20u);  // C(6,3)
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}
