#include "shtarkov/poisson_class.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shtarkov/numerics.hpp"

namespace shtarkov {

namespace {

// sum_{i=1}^{m} e^{-i} i^i / i!, terms computed in log space so i^i never
// overflows, accumulated linearly (every term is in (0, 1]).
double diagonal_sum(std::int64_t m) {
  KahanSum s;
  for (std::int64_t i = 1; i <= m; ++i) {
    double di = static_cast<double>(i);
    s.add(std::exp(-di + di * std::log(di) - log_factorial(i)));
  }
  return s.value();
}

double upper_tail_mass(double lambda, std::int64_t m) {
  // 1 - CDF(m), via expm1 so the near-zero and near-one regimes both keep
  // full precision.
  return -std::expm1(poisson_cdf(PoissonParam(lambda), m).value());
}

}  // namespace

BoundedPoissonClass::BoundedPoissonClass(double cap) : upper(cap) {
  if (!std::isfinite(cap) || cap < 0.0)
    throw std::invalid_argument(
        "BoundedPoissonClass: mean cap must be finite and >= 0");
}

RedundancyValue shtarkov_bounded_poisson(const BoundedPoissonClass& c) {
  const double lambda = c.upper;
  const auto floor_l = static_cast<std::int64_t>(std::floor(lambda));
  // Per-symbol suprema: Poi(i)(i) on the diagonal i <= floor(L), Poi(L)(i)
  // for i beyond; the second group sums to the upper tail of Poi(L).
  double s = 1.0 + diagonal_sum(floor_l);
  if (lambda > 0.0) s += upper_tail_mass(lambda, floor_l);
  return RedundancyValue::from_linear(s);
}

RedundancyInterval closed_form_bounds_bounded_poisson(
    const BoundedPoissonClass& c) {
  const double lambda = c.upper;
  if (lambda <= 1.0) {
    double exact = std::log2(2.0 - std::exp(-lambda));
    return {exact, exact, 0.0, false};
  }
  double lower = 0.5 * std::log2((2.0 * lambda + 2.0) / std::numbers::pi);
  double upper =
      std::log2(std::sqrt(2.0 * lambda / std::numbers::pi) + 2.0);
  return {lower, upper, 0.0, false};
}

double lambda_cap_bits(double lambda) {
  if (!(lambda >= 0.0))
    throw std::invalid_argument("lambda_cap_bits: lambda must be >= 0");
  return lambda * std::numbers::log2e;
}

BitsInterval bounded_poisson_bits_interval(double lambda,
                                           double stirling_threshold) {
  if (!(std::isfinite(lambda) && lambda >= 0.0))
    throw std::invalid_argument(
        "bounded_poisson_bits_interval: lambda must be finite and >= 0");
  if (lambda <= 1.0) {
    // Exact per Lemma equality; log1p(-expm1(-L)) = ln(2 - e^{-L}).
    double bits = std::log1p(-std::expm1(-lambda)) * std::numbers::log2e;
    return {bits, bits};
  }
  if (lambda <= stirling_threshold) {
    double bits = shtarkov_bounded_poisson(BoundedPoissonClass(lambda)).bits;
    return {bits, bits};
  }
  // Stirling bracket of the diagonal: e^{-i} i^i / i! = e^{-theta_i}/sqrt(2 pi i)
  // with theta_i in (1/(12i+1), 1/(12i)). Integral sandwich on sum 1/sqrt(i),
  // and sum i^{-3/2} <= zeta(3/2) for the theta correction.
  const double m = std::floor(lambda);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double zeta_3_2 = 2.612375348685488;
  double diag_hi = inv_sqrt_2pi * (2.0 * std::sqrt(m) - 1.0);
  double diag_lo = inv_sqrt_2pi * (2.0 * std::sqrt(m + 1.0) - 2.0) -
                   inv_sqrt_2pi * zeta_3_2 / 12.0;
  // Upper Poisson tail term lies in [0, 1]; at this scale the slack is
  // far below the bracket's own relative width.
  double s_lo = 1.0 + std::max(diag_lo, 0.0);
  double s_hi = 1.0 + diag_hi + 1.0;
  return {std::log2(s_lo), std::log2(s_hi)};
}

}  // namespace shtarkov
