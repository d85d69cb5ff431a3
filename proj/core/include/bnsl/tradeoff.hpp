#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bnsl {

/// Smallest space ratio at which the pairwise exponent is reported, as
/// quoted with the original comparison.
inline constexpr double kPairwiseQuotedMinRatio = 0.724;

/// Space ratio reached by the pairwise scheme at p = n/2:
/// 2^n (3/4)^(n/2) = 2^(rn) gives r = 1 + log2(3/4)/2 ≈ 0.7925.
double pairwise_min_ratio();

/// Time exponent per node of the single-level partition scheme at space
/// ratio r: a(r) = r - r log2 r - (1-r) log2(1-r), with 0 log 0 = 0.
double partition_time_exponent(double r);

/// Time exponent per node of the pairwise scheme at space ratio r:
/// b(r) = 1 + (1-r) log2(2/3) / log2(3/4).
double pairwise_time_exponent(double r);

struct TradeoffPoint {
  double r = 1.0;
  double a = 1.0;
  /// Present only for r in [kPairwiseQuotedMinRatio, 1].
  std::optional<double> b;
  /// p/n that gives space 2^(rn): (1-r) / log2(4/3).
  double p_fraction = 0.0;
};

/// Throws InputError unless 0 < r <= 1.
TradeoffPoint compute_tradeoff(double r);

struct ExponentPair {
  double time = 0.0;
  double space = 0.0;
};

/// Balanced recursive partitioning with blocks of size s: time 2^(2n-s),
/// space 2^s. s must be n / 2^d for an integer d >= 0; throws InputError
/// otherwise.
ExponentPair dnc_tradeoff(double n, double s);

/// Per-node bases of the pairwise scheme with p = fraction * n:
/// time 2 (3/2)^fraction, space 2 (3/4)^fraction.
ExponentPair pairwise_bases(double p_fraction);

struct CurveRow {
  double r = 0.0;
  double a = 0.0;
  std::optional<double> b;
  /// Absent when the space ratio would need p > n/2.
  std::optional<double> p_equiv;
  double s_equiv = 0.0;
};

/// Rows at r = step, 2 step, ..., 1 (a final r = 1 row is always present).
/// Throws InputError unless 0 < step < 1 and n >= 1.
std::vector<CurveRow> tradeoff_curve(int n, double step);

/// CSV with header `r,a,b,p_equiv,s_equiv`; b and p_equiv are blank outside
/// their ranges.
std::string emit_curve(int n, double step);

}  // namespace bnsl
