#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "shtarkov/classes.hpp"
#include "shtarkov/iid_small.hpp"
#include "shtarkov/numerics.hpp"
#include "shtarkov/poisson_class.hpp"

using namespace shtarkov;

namespace {

// Independent oracle for S(bounded Poisson at integer cap): explicit
// diagonal terms plus the complementary CDF, assembled with plain
// arithmetic.
double bounded_poisson_oracle(std::int64_t cap) {
  double diag = 0.0;
  double fact = 1.0;
  for (std::int64_t i = 1; i <= cap; ++i) {
    fact *= static_cast<double>(i);
    diag += std::exp(-static_cast<double>(i)) *
            std::pow(static_cast<double>(i), static_cast<double>(i)) / fact;
  }
  double cdf = 0.0;
  double term = 1.0;
  for (std::int64_t i = 0; i <= cap; ++i) {
    if (i > 0) term *= static_cast<double>(cap) / static_cast<double>(i);
    cdf += term;
  }
  cdf *= std::exp(-static_cast<double>(cap));
  return 1.0 + diag + (1.0 - cdf);
}

}  // namespace

TEST_CASE("upper chain values") {
  CHECK(iid_upper_bound({1, 5}) == 1.0);

  // k = 2, n = 2: S(Poi class, cap 2) = 1.9618737 by the explicit oracle.
  double s2 = bounded_poisson_oracle(2);
  CHECK(s2 == doctest::Approx(1.9618737).epsilon(1e-7));
  CHECK(iid_upper_bound({2, 2}) ==
        doctest::Approx(std::log2(s2) + 1.0).epsilon(1e-12));
  CHECK(iid_upper_bound({2, 2}) == doctest::Approx(1.9722).epsilon(1e-4));

  CHECK(iid_exact({3, 10}).bits <= iid_upper_bound({3, 10}));
  CHECK_THROWS_AS(iid_upper_bound({0, 5}), std::invalid_argument);
}

TEST_CASE("upper chain dominates the exact value exhaustively") {
  for (int k = 1; k <= 4; ++k)
    for (std::int64_t n = 1; n <= 10; ++n)
      CHECK(iid_exact({k, n}).bits <= iid_upper_bound({k, n}));
}

TEST_CASE("lower chain guards") {
  CHECK_FALSE(iid_lower_chain({1, 100}).has_value());
  // n' = 10 - 10^{3/4} 2^{1/4} log2 10 is negative.
  CHECK_FALSE(iid_lower_chain({2, 10}).has_value());

  auto big2 = iid_lower_chain({2, 1000000});
  REQUIRE(big2.has_value());
  double n_prime = 1e6 - std::pow(1e6, 0.75) * std::pow(2.0, 0.25) *
                             std::log2(1e6);
  CHECK(big2->n_prime == doctest::Approx(n_prime));
  CHECK(big2->bits ==
        doctest::Approx(
            shtarkov_bounded_poisson(BoundedPoissonClass(n_prime)).bits));

  auto big3 = iid_lower_chain({3, 1000000});
  REQUIRE(big3.has_value());
  double n_prime3 = 1e6 - std::pow(1e6, 0.75) * std::pow(3.0, 0.25) *
                              std::log2(1e6);
  CHECK(big3->bits ==
        doctest::Approx(2.0 * shtarkov_bounded_poisson(
                                  BoundedPoissonClass(n_prime3 / 2.0))
                                  .bits));
  // Advisory lower stays below the certified upper chain.
  CHECK(big3->bits <= iid_upper_bound({3, 1000000}));
}

TEST_CASE("exact values against sequence enumeration") {
  CHECK(iid_exact({2, 2}).bits == doctest::Approx(1.3219281).epsilon(1e-7));
  CHECK(iid_exact({2, 3}).bits ==
        doctest::Approx(std::log2(2.0 + 8.0 / 9.0)).epsilon(1e-12));
  CHECK(iid_exact({3, 2}).bits == doctest::Approx(std::log2(4.5)).epsilon(1e-12));
  for (int k = 2; k <= 3; ++k)
    for (std::int64_t n = 1; n <= 5; ++n)
      CHECK(iid_exact({k, n}).s() ==
            doctest::Approx(shtarkov_iid_sequences(k, n).s()).epsilon(1e-12));
}

TEST_CASE("abbreviated types biject with full types") {
  // Abbreviated-type count oracle: tuples (m_1..m_{k-1}) with sum <= n,
  // counted by direct enumeration over the smaller alphabet.
  for (int k = 2; k <= 4; ++k) {
    for (std::int64_t n = 0; n <= 8; ++n) {
      std::int64_t full = 0;
      for (const auto& t : TypeRange(n, k)) {
        (void)t;
        ++full;
      }
      std::int64_t abbreviated = 0;
      for (std::int64_t s = 0; s <= n; ++s)
        for (const auto& t : TypeRange(s, k - 1)) {
          (void)t;
          ++abbreviated;
        }
      CHECK(full == abbreviated);
    }
  }
}

TEST_CASE("first-order trend at k = 3") {
  std::vector<double> residuals;
  for (std::int64_t n : {std::int64_t{100}, std::int64_t{400},
                         std::int64_t{1600}, std::int64_t{6400}}) {
    double bits = iid_exact({3, n}).bits;
    residuals.push_back(bits - std::log2(static_cast<double>(n)));
  }
  double mean = 0.0;
  for (double r : residuals) mean += r / static_cast<double>(residuals.size());
  for (double r : residuals) CHECK(std::abs(r - mean) <= 2.0);
  // Successive differences shrink: the residual is slowly varying.
  for (std::size_t i = 1; i < residuals.size(); ++i)
    CHECK(std::abs(residuals[i] - residuals[i - 1]) <= 0.5);
}
