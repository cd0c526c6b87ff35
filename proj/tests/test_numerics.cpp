#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "shtarkov/numerics.hpp"

using namespace shtarkov;

TEST_CASE("log_sum_exp basics") {
  LogSpace one = LogSpace::one();
  std::vector<LogSpace> two{one, one};
  CHECK(log_sum_exp(two).value() == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  std::vector<LogSpace> just_bottom{LogSpace::bottom()};
  CHECK(log_sum_exp(just_bottom).is_bottom());
  CHECK(log_sum_exp({}).is_bottom());

  // Direct linear-space oracle at small magnitude.
  double a = 0.3678794;
  double b = 0.2706706;
  std::vector<LogSpace> pair{LogSpace(std::log(a)), LogSpace(std::log(b))};
  CHECK(log_sum_exp(pair).value() ==
        doctest::Approx(std::log(a + b)).epsilon(1e-14));

  std::vector<LogSpace> single{LogSpace(-3.25)};
  CHECK(log_sum_exp(single).value() == -3.25);
}

TEST_CASE("bottom is an identity and operator semantics hold") {
  LogSpace x(1.5);
  CHECK((LogSpace::bottom() + x).value() == 1.5);
  CHECK((x + LogSpace::bottom()).value() == 1.5);
  CHECK((x * LogSpace::bottom()).is_bottom());
  CHECK((x * LogSpace(0.5)).value() == doctest::Approx(2.0));
  // Log-space addition is linear-space addition.
  LogSpace y(-0.7);
  CHECK((x + y).to_linear() ==
        doctest::Approx(std::exp(1.5) + std::exp(-0.7)).epsilon(1e-14));
}

TEST_CASE("log_sum_exp permutation invariance") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LogSpace> terms;
    for (int i = 0; i < 64; ++i) {
      double v = -40.0 + 80.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      terms.emplace_back(v);
    }
    double reference = log_sum_exp(terms).value();
    std::shuffle(terms.begin(), terms.end(), rng);
    double shuffled = log_sum_exp(terms).value();
    CHECK(std::abs(shuffled - reference) <=
          1e-13 * std::max(1.0, std::abs(reference)));
  }
}

TEST_CASE("poisson pmf") {
  CHECK(log_poisson_pmf(PoissonParam(1.0), 0).value() == doctest::Approx(-1.0));
  CHECK(log_poisson_pmf(PoissonParam(0.0), 0).value() == 0.0);
  CHECK(log_poisson_pmf(PoissonParam(0.0), 3).is_bottom());
  // Direct evaluation oracle.
  double expected = std::exp(-2.5) * 6.25 / 2.0;
  CHECK(log_poisson_pmf(PoissonParam(2.5), 2).to_linear() ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.2565156).epsilon(1e-6));
  CHECK_THROWS_AS(PoissonParam(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(log_poisson_pmf(PoissonParam(1.0), -1), std::invalid_argument);
}

TEST_CASE("poisson cdf") {
  // Three-term oracle.
  double expected = std::exp(-2.5) * (1.0 + 2.5 + 3.125);
  CHECK(poisson_cdf(PoissonParam(2.5), 2).to_linear() ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.5438131).epsilon(1e-6));

  CHECK(poisson_cdf(PoissonParam(0.0), 0).value() == 0.0);
  for (double lambda : {0.5, 3.0, 40.0, 500.0}) {
    auto far = static_cast<std::int64_t>(lambda + 40.0 * std::sqrt(lambda) + 50.0);
    CHECK(poisson_cdf(PoissonParam(lambda), far).value() ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(poisson_cdf(PoissonParam(lambda), far).value() <= 0.0);
  }
}

TEST_CASE("log_sum_exp of pmf values equals cdf") {
  for (double lambda : {0.5, 1.0, 5.0, 20.0, 123.0}) {
    PoissonParam p(lambda);
    for (std::int64_t m : {std::int64_t{0}, std::int64_t{3}, std::int64_t{17},
                           std::int64_t{160}}) {
      std::vector<LogSpace> terms;
      for (std::int64_t i = 0; i <= m; ++i) terms.push_back(log_poisson_pmf(p, i));
      double lhs = log_sum_exp(terms).value();
      double rhs = poisson_cdf(p, m).value();
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("poisson tail bound values") {
  CHECK(poisson_tail_bound(PoissonParam(1.0), 1.0) == 1.0);
  CHECK(poisson_tail_bound(PoissonParam(1.0), 2.0) ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-14));
  CHECK(poisson_tail_bound(PoissonParam(4.0), 2.0) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(poisson_tail_bound(PoissonParam(1.0), -0.5),
                  std::invalid_argument);
}

TEST_CASE("tail bound dominates the exact tail") {
  for (double lambda : {0.5, 1.0, 5.0, 20.0}) {
    PoissonParam p(lambda);
    auto x_hi =
        static_cast<std::int64_t>(std::ceil(lambda + 10.0 * std::sqrt(lambda)));
    for (std::int64_t x = 0; x <= x_hi; ++x) {
      double bound = poisson_tail_bound(p, static_cast<double>(x));
      double exact_tail;
      if (static_cast<double>(x) >= lambda)
        exact_tail = x == 0 ? 1.0 : -std::expm1(poisson_cdf(p, x - 1).value());
      else
        exact_tail = poisson_cdf(p, x).to_linear();
      CHECK(exact_tail <= bound + 1e-15);
    }
  }
}

TEST_CASE("log_factorial") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));

  auto theta = [](std::int64_t n) {
    double dn = static_cast<double>(n);
    return log_factorial(n) -
           (0.5 * std::log(2.0 * std::numbers::pi * dn) +
            dn * (std::log(dn) - 1.0));
  };
  CHECK(theta(50) > 1.0 / 601.0);
  CHECK(theta(50) < 1.0 / 600.0);
  for (std::int64_t n = 1; n <= 10000; ++n) {
    double t = theta(n);
    CHECK(t > 1.0 / (12.0 * static_cast<double>(n) + 1.0));
    CHECK(t < 1.0 / (12.0 * static_cast<double>(n)));
  }
}
