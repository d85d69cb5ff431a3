#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <iterator>

namespace bnsl {

/// Hard cap on the number of nodes; a NodeSet is one machine word.
inline constexpr int kMaxNodes = 64;

/// A subset of {0, ..., n-1}, bit i set iff node i is a member.
class NodeSet {
 public:
  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr NodeSet single(int node) { return NodeSet(std::uint64_t{1} << node); }
  static constexpr NodeSet full(int n) {
    return NodeSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int node) const { return (bits_ >> node) & 1U; }
  constexpr bool is_subset_of(NodeSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr NodeSet with(int node) const { return NodeSet(bits_ | (std::uint64_t{1} << node)); }
  constexpr NodeSet without(int node) const { return NodeSet(bits_ & ~(std::uint64_t{1} << node)); }

  constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
  constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
  constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
  constexpr NodeSet& operator|=(NodeSet o) { bits_ |= o.bits_; return *this; }
  constexpr NodeSet& operator&=(NodeSet o) { bits_ &= o.bits_; return *this; }
  constexpr NodeSet& operator-=(NodeSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr auto operator<=>(const NodeSet&) const = default;

  /// Lowest member; undefined on the empty set.
  constexpr int first() const { return std::countr_zero(bits_); }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  /// Members in increasing node order.
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  std::uint64_t bits_ = 0;
};

struct NodeSetHash {
  std::size_t operator()(NodeSet s) const noexcept {
    // splitmix64 finalizer
    std::uint64_t x = s.bits() + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

/// Packs the members of `sub` that lie in `universe` into the low bits, in
/// node order. Inverse of deposit_bits.
constexpr std::uint64_t extract_bits(NodeSet sub, NodeSet universe) {
  std::uint64_t out = 0;
  int k = 0;
  for (int node : universe) {
    if (sub.contains(node)) out |= std::uint64_t{1} << k;
    ++k;
  }
  return out;
}

/// Spreads the low bits of `packed` onto the members of `universe`.
constexpr NodeSet deposit_bits(std::uint64_t packed, NodeSet universe) {
  NodeSet out;
  int k = 0;
  for (int node : universe) {
    if ((packed >> k) & 1U) out = out.with(node);
    ++k;
  }
  return out;
}

/// Drops bit `node` and shifts higher bits down: indexes subsets of N\{node}.
constexpr std::uint64_t skip_bit(NodeSet set, int node) {
  const std::uint64_t low = set.bits() & ((std::uint64_t{1} << node) - 1);
  if (node == 63) return low;
  return low | ((set.bits() >> (node + 1)) << node);
}

/// Next integer with the same popcount (Gosper's hack). `x` must be nonzero.
constexpr std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

}  // namespace bnsl
