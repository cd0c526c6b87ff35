#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "shtarkov/numerics.hpp"
#include "shtarkov/poissonization.hpp"

using namespace shtarkov;

namespace {

FiniteClass singleton_class() {
  return FiniteClass({FiniteDistribution({0.25, 0.75})});
}

// Independent per-length oracle: mixes brute-force sequence sums by
// Poisson weights.
double mixing_oracle(int k, double n, std::int64_t n_max) {
  double total = 0.0;
  for (std::int64_t np = 0; np <= n_max; ++np)
    total += log_poisson_pmf(PoissonParam(n), np).to_linear() *
             shtarkov_iid_sequences(k, np).s();
  return total;
}

}  // namespace

TEST_CASE("singleton classes have unit poissonized shtarkov sum") {
  PoissonizedClassHandle h{singleton_class(), 3.0};
  PoissonizedBracket b = poissonized_shtarkov_auto(h, 1e-10);
  CHECK(b.converged);
  CHECK(b.s_lower <= 1.0 + 1e-12);
  CHECK(b.s_upper >= 1.0 - 1e-12);
  CHECK(1.0 - b.s_lower <= b.residual_s + 1e-12);
  CHECK(b.s_upper - 1.0 <= 1e-9);
}

TEST_CASE("poissonized partial sum matches the per-length oracle") {
  PoissonizedClassHandle h{IidFamily{2}, 2.0};
  PoissonizedBracket b = poissonized_shtarkov(h, 4, 1e-8);
  double oracle = mixing_oracle(2, 2.0, 4);
  CHECK(b.s_lower == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(b.s_lower == doctest::Approx(2.165).epsilon(1e-3));
  CHECK_FALSE(b.converged);  // residual is still large at n_max = 4

  // The proof's half-inequality already shows at tiny n_max.
  CHECK(b.s_lower >= shtarkov_iid_types(2, 2).s() / 2.0);
}

TEST_CASE("bracket tightens monotonically and stays ordered") {
  PoissonizedClassHandle h{IidFamily{2}, 2.0};
  double prev_lo = 0.0;
  double prev_hi = std::numeric_limits<double>::infinity();
  for (std::int64_t n_max = 0; n_max <= 30; ++n_max) {
    PoissonizedBracket b = poissonized_shtarkov(h, n_max, 1e-8);
    CHECK(b.s_lower >= prev_lo - 1e-13);
    CHECK(b.s_upper <= prev_hi + 1e-13);
    CHECK(b.s_lower <= b.s_upper);
    prev_lo = b.s_lower;
    prev_hi = b.s_upper;
  }
}

TEST_CASE("residual certificate bounds later growth") {
  PoissonizedClassHandle h{IidFamily{3}, 4.0};
  PoissonizedBracket at_tol = poissonized_shtarkov_auto(h, 1e-8);
  CHECK(at_tol.converged);
  PoissonizedBracket beyond = poissonized_shtarkov(h, at_tol.n_max + 5, 1e-8);
  CHECK(std::abs(beyond.s_lower - at_tol.s_lower) <= at_tol.residual_s);
}

TEST_CASE("half-inequality for integer means") {
  for (int k = 2; k <= 3; ++k) {
    for (std::int64_t n = 1; n <= 8; ++n) {
      PoissonizedBracket b = poissonized_shtarkov_auto(
          {IidFamily{k}, static_cast<double>(n)}, 1e-8);
      CHECK(b.s_lower >= shtarkov_iid_types(k, n).s() / 2.0 - 1e-9);
    }
  }
}

TEST_CASE("fixed-length transfer upper bound") {
  // Singleton: R(P^n) = 0 and the certified bound is the +1 slack.
  double singleton_bound =
      fixed_upper_from_poisson({singleton_class(), 5.0}, 1e-10);
  CHECK(singleton_bound >= 1.0 - 1e-9);
  CHECK(singleton_bound <= 1.0 + 1e-6);

  for (std::int64_t n : {std::int64_t{2}, std::int64_t{10}}) {
    double bound = fixed_upper_from_poisson(
        {IidFamily{2}, static_cast<double>(n)}, 1e-8);
    CHECK(shtarkov_iid_types(2, n).bits <= bound);
  }
}

TEST_CASE("poisson lower from fixed: guards and assertion") {
  // Singleton: R = 0 < n/16, n1 = n, bound 0.
  auto s = poisson_lower_from_fixed(singleton_class(), 4);
  REQUIRE(s.has_value());
  CHECK(s->n1 == 4);
  CHECK(s->bound_bits == doctest::Approx(0.0));
  CHECK(s->inequality_holds);

  // R(D_2^4) = log2 3.21875 well above 4/16.
  CHECK_FALSE(poisson_lower_from_fixed(IidFamily{2}, 4).has_value());
  CHECK_FALSE(poisson_lower_from_fixed(IidFamily{2}, 3).has_value());

  auto big = poisson_lower_from_fixed(IidFamily{2}, 64);
  REQUIRE(big.has_value());
  double fixed_bits = shtarkov_iid_types(2, 64).bits;
  CHECK(fixed_bits < 4.0);
  auto expected_n1 = static_cast<std::int64_t>(
      std::floor(64.0 - 3.0 * std::sqrt(64.0 * fixed_bits)));
  CHECK(big->n1 == expected_n1);
  CHECK(big->bound_bits == doctest::Approx(fixed_bits));
  CHECK(big->inequality_holds);
  CHECK(big->poissonized_lower_bits <= big->bound_bits + 1e-9);
}

TEST_CASE("multiplicity independence monte carlo") {
  CheckReport r = verify_multiplicity_independence(
      FiniteDistribution({0.5, 0.5}), 8.0, 100000, 99);
  CHECK(r.passed);
  CHECK(r.instances_tested == 3);  // two means + one covariance

  CheckReport again = verify_multiplicity_independence(
      FiniteDistribution({0.5, 0.5}), 8.0, 100000, 99);
  CHECK(again.worst_violation == r.worst_violation);  // seed-deterministic

  CheckReport skewed = verify_multiplicity_independence(
      FiniteDistribution({0.9, 0.1}), 20.0, 100000, 7);
  CHECK(skewed.passed);

  CheckReport point = verify_multiplicity_independence(
      FiniteDistribution({1.0, 0.0}), 5.0, 10000, 3);
  CHECK(point.passed);

  CHECK_THROWS_AS(verify_multiplicity_independence(
                      FiniteDistribution({0.5, 0.5}), 8.0, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("conditional length identity") {
  CheckReport empty =
      verify_conditional_length(FiniteDistribution({0.5, 0.5}), 2.0, 0);
  CHECK(empty.passed);

  CheckReport uniform =
      verify_conditional_length(FiniteDistribution({0.5, 0.5}), 3.0, 2);
  CHECK(uniform.passed);

  // Product-evaluation oracle at p = (2/3, 1/3), n' = 2: conditionals are
  // 4/9, 2/9, 2/9, 1/9 regardless of the Poisson length parameter.
  CheckReport skewed = verify_conditional_length(
      FiniteDistribution({2.0 / 3.0, 1.0 / 3.0}), 1.0, 2);
  CHECK(skewed.passed);
  CHECK(skewed.worst_violation <= 1e-12);
}

TEST_CASE("type and sequence mixing agree") {
  CHECK(poisson_type_redundancy_check(1, 1.0, 6).passed);
  CHECK(poisson_type_redundancy_check(2, 2.0, 6).passed);
  CHECK(poisson_type_redundancy_check(2, 0.5, 6).passed);
}

TEST_CASE("invalid handles are rejected") {
  CHECK_THROWS_AS(
      poissonized_shtarkov({IidFamily{2}, 0.0}, 4), std::invalid_argument);
  CHECK_THROWS_AS(
      poissonized_shtarkov({IidFamily{2}, 2.0}, -1), std::invalid_argument);
}
