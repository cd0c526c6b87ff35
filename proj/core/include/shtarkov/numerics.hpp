#pragma once

#include <cstdint>

#include "shtarkov/logspace.hpp"

namespace shtarkov {

/// The mean of a Poisson distribution. Finite and nonnegative.
struct PoissonParam {
  double lambda;
  explicit PoissonParam(double l);
};

/// ln i!, exact summation for i <= 256, log-gamma beyond.
double log_factorial(std::int64_t i);

/// ln Poi(lambda)(i) = -lambda + i ln lambda - ln i!.
/// lambda = 0 degenerates to the point mass at 0.
LogSpace log_poisson_pmf(PoissonParam p, std::int64_t i);

/// ln sum_{i=0}^{m} Poi(lambda)(i), by stable forward recurrence in linear
/// space with a rescale guard. Result lies in [bottom, ln 1].
LogSpace poisson_cdf(PoissonParam p, std::int64_t m);

/// Gaussian-style Poisson concentration bound. For x >= lambda the value
/// bounds P(X >= x); for x <= lambda it bounds P(X <= x). Always in (0, 1].
double poisson_tail_bound(PoissonParam p, double x);

}  // namespace shtarkov
