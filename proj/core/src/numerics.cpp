#include "shtarkov/numerics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace shtarkov {

namespace {

constexpr std::int64_t kExactFactorialLimit = 256;

const std::array<double, kExactFactorialLimit + 1>& exact_log_factorials() {
  static const auto table = [] {
    std::array<double, kExactFactorialLimit + 1> t{};
    t[0] = 0.0;
    for (std::int64_t i = 1; i <= kExactFactorialLimit; ++i)
      t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return table;
}

}  // namespace

PoissonParam::PoissonParam(double l) : lambda(l) {
  if (!std::isfinite(l) || l < 0.0)
    throw std::invalid_argument("PoissonParam: lambda must be finite and >= 0");
}

double log_factorial(std::int64_t i) {
  if (i < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (i <= kExactFactorialLimit) return exact_log_factorials()[i];
  return std::lgamma(static_cast<double>(i) + 1.0);
}

LogSpace log_poisson_pmf(PoissonParam p, std::int64_t i) {
  if (i < 0) throw std::invalid_argument("log_poisson_pmf: i must be >= 0");
  if (p.lambda == 0.0) return i == 0 ? LogSpace::one() : LogSpace::bottom();
  double li = static_cast<double>(i);
  return LogSpace(-p.lambda + li * std::log(p.lambda) - log_factorial(i));
}

LogSpace poisson_cdf(PoissonParam p, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("poisson_cdf: m must be >= 0");
  if (p.lambda == 0.0) return LogSpace::one();
  // Terms relative to exp(log_scale); rescale keeps them in range for any
  // lambda without leaving linear space.
  double log_scale = -p.lambda;
  double term = 1.0;
  double sum = 1.0;
  for (std::int64_t i = 1; i <= m; ++i) {
    term *= p.lambda / static_cast<double>(i);
    sum += term;
    if (sum > 1e280) {
      sum *= 1e-280;
      term *= 1e-280;
      log_scale += std::log(1e280);
    }
  }
  double v = log_scale + std::log(sum);
  return LogSpace(std::min(v, 0.0));
}

double poisson_tail_bound(PoissonParam p, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("poisson_tail_bound: x must be >= 0");
  if (x == p.lambda) return 1.0;
  double d = x - p.lambda;
  double denom = (x >= p.lambda) ? 2.0 * x : 2.0 * p.lambda;
  return std::exp(-(d * d) / denom);
}

}  // namespace shtarkov
