#include "bnsl/tradeoff.hpp"

#include <cmath>
#include <cstdio>

#include "bnsl/errors.hpp"

namespace bnsl {
namespace {

double xlog2x(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

}  // namespace

double pairwise_min_ratio() { return 1.0 + 0.5 * std::log2(3.0 / 4.0); }

double partition_time_exponent(double r) { return r - xlog2x(r) - xlog2x(1.0 - r); }

double pairwise_time_exponent(double r) { return 1.0 + (1.0 - r) * std::log2(2.0 / 3.0) / std::log2(3.0 / 4.0); }

TradeoffPoint compute_tradeoff(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw InputError("space ratio r must lie in (0, 1]");
  TradeoffPoint point;
  point.r = r;
  point.a = partition_time_exponent(r);
  if (r >= kPairwiseQuotedMinRatio) point.b = pairwise_time_exponent(r);
  point.p_fraction = (1.0 - r) / std::log2(4.0 / 3.0);
  return point;
}

ExponentPair dnc_tradeoff(double n, double s) {
  if (!(n > 0.0) || !(s > 0.0) || s > n) throw InputError("need 0 < s <= n");
  const double depth = std::log2(n / s);
  if (std::abs(depth - std::round(depth)) > 1e-9) throw InputError("s must be n / 2^d for an integer d >= 0");
  return {2.0 * n - s, s};
}

ExponentPair pairwise_bases(double p_fraction) {
  return {2.0 * std::pow(1.5, p_fraction), 2.0 * std::pow(0.75, p_fraction)};
}

std::vector<CurveRow> tradeoff_curve(int n, double step) {
  if (!(step > 0.0 && step < 1.0)) throw InputError("step must lie in (0, 1)");
  if (n < 1) throw InputError("n must be positive");
  std::vector<CurveRow> rows;
  const auto count = static_cast<long long>(std::floor(1.0 / step + 1e-9));
  for (long long i = 1; i <= count; ++i) {
    double r = static_cast<double>(i) * step;
    if (std::abs(r - 1.0) < 1e-9) r = 1.0;
    if (r > 1.0) break;
    const auto point = compute_tradeoff(r);
    std::optional<double> p_equiv;
    if (point.p_fraction <= 0.5 + 1e-12) p_equiv = n * point.p_fraction;
    rows.push_back({r, point.a, point.b, p_equiv, n * r});
  }
  if (rows.empty() || rows.back().r != 1.0) {
    const auto point = compute_tradeoff(1.0);
    rows.push_back({1.0, point.a, point.b, 0.0, static_cast<double>(n)});
  }
  return rows;
}

std::string emit_curve(int n, double step) {
  std::string out = "r,a,b,p_equiv,s_equiv\n";
  char buf[160];
  for (const auto& row : tradeoff_curve(n, step)) {
    std::snprintf(buf, sizeof buf, "%.10g,%.17g,", row.r, row.a);
    out += buf;
    if (row.b) {
      std::snprintf(buf, sizeof buf, "%.17g", *row.b);
      out += buf;
    }
    out += ',';
    if (row.p_equiv) {
      std::snprintf(buf, sizeof buf, "%.17g", *row.p_equiv);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g\n", row.s_equiv);
    out += buf;
  }
  return out;
}

}  // namespace bnsl
