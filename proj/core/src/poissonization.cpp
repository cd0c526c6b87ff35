#include "shtarkov/poissonization.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "shtarkov/budget.hpp"
#include "shtarkov/errors.hpp"
#include "shtarkov/numerics.hpp"

namespace shtarkov {

namespace {

double one_letter_shtarkov(const ClassRef& c) {
  if (const auto* iid = std::get_if<IidFamily>(&c))
    return static_cast<double>(iid->k);
  return shtarkov_sum_explicit(std::get<FiniteClass>(c)).s();
}

LogSpace per_length_shtarkov_log(const ClassRef& c, std::int64_t n_prime,
                                 std::int64_t budget) {
  if (const auto* iid = std::get_if<IidFamily>(&c))
    return shtarkov_iid_types(iid->k, n_prime, budget).shtarkov_log;
  return shtarkov_class_product_power(std::get<FiniteClass>(c), n_prime, budget)
      .shtarkov_log;
}

// Certified bound on sum_{n' > m} Poi(n)(n') S1^{n'}; the concentration
// bound only covers the upper tail, so below the mean the trivial mass
// bound stands in.
double residual_bound(double n, double s1, std::int64_t m) {
  double mean = n * s1;
  double factor = std::exp(n * (s1 - 1.0));
  double x = static_cast<double>(m + 1);
  double tail =
      x >= mean ? poisson_tail_bound(PoissonParam(mean), x) : 1.0;
  return factor * tail;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Knuth's product method; means above 30 are split into chunks so the
// running product stays in range. Deterministic across platforms.
std::int64_t sample_poisson(std::mt19937_64& rng, double mean) {
  std::int64_t total = 0;
  while (mean > 30.0) {
    total += sample_poisson(rng, 30.0);
    mean -= 30.0;
  }
  if (mean <= 0.0) return total;
  double limit = std::exp(-mean);
  double prod = 1.0;
  std::int64_t count = -1;
  do {
    prod *= uniform01(rng);
    ++count;
  } while (prod > limit);
  return total + count;
}

int sample_symbol(std::mt19937_64& rng, const FiniteDistribution& p) {
  double u = uniform01(rng);
  double acc = 0.0;
  for (int x = 0; x < p.alphabet_size(); ++x) {
    acc += p.prob(x);
    if (u < acc) return x;
  }
  return p.alphabet_size() - 1;
}

}  // namespace

PoissonizedBracket poissonized_shtarkov(const PoissonizedClassHandle& h,
                                        std::int64_t n_max, double tolerance,
                                        std::int64_t budget) {
  if (!(h.n > 0.0) || !std::isfinite(h.n))
    throw std::invalid_argument("poissonized_shtarkov: n must be positive");
  if (n_max < 0)
    throw std::invalid_argument("poissonized_shtarkov: n_max must be >= 0");

  const double s1 = one_letter_shtarkov(h.base);
  const PoissonParam length(h.n);

  LogSpace partial = LogSpace::bottom();
  double best_upper = std::numeric_limits<double>::infinity();
  for (std::int64_t np = 0; np <= n_max; ++np) {
    partial += log_poisson_pmf(length, np) *
               per_length_shtarkov_log(h.base, np, budget);
    // Every prefix yields a certified upper bound; keep the best so the
    // reported bracket tightens monotonically in n_max.
    best_upper =
        std::min(best_upper, partial.to_linear() + residual_bound(h.n, s1, np));
  }

  PoissonizedBracket out;
  out.n_max = n_max;
  out.residual_s = residual_bound(h.n, s1, n_max);
  out.s_lower = partial.to_linear();
  out.s_upper = best_upper;
  out.lower_bits = partial.to_bits();
  out.upper_bits = std::log2(best_upper);
  out.converged = out.residual_s <= tolerance;
  return out;
}

PoissonizedBracket poissonized_shtarkov_auto(const PoissonizedClassHandle& h,
                                             double tolerance,
                                             std::int64_t budget) {
  const double s1 = one_letter_shtarkov(h.base);
  double mean = h.n * s1;
  auto n_max = static_cast<std::int64_t>(std::ceil(mean)) + 8;
  for (;;) {
    if (residual_bound(h.n, s1, n_max) <= tolerance) break;
    n_max += std::max<std::int64_t>(8, n_max / 2);
    if (n_max > (std::int64_t{1} << 24))
      throw BudgetExceeded("poissonized_shtarkov_auto: residual will not meet "
                           "tolerance within length budget");
  }
  return poissonized_shtarkov(h, n_max, tolerance, budget);
}

double fixed_upper_from_poisson(const PoissonizedClassHandle& h,
                                double tolerance) {
  return poissonized_shtarkov_auto(h, tolerance).upper_bits + 1.0;
}

std::optional<PoissonLowerResult> poisson_lower_from_fixed(const ClassRef& c,
                                                           std::int64_t n) {
  if (n < 4) return std::nullopt;
  double fixed_bits;
  if (const auto* iid = std::get_if<IidFamily>(&c))
    fixed_bits = shtarkov_iid_types(iid->k, n).bits;
  else
    fixed_bits = shtarkov_class_product_power(std::get<FiniteClass>(c), n).bits;
  if (!(fixed_bits < static_cast<double>(n) / 16.0)) return std::nullopt;

  auto n1 = static_cast<std::int64_t>(
      std::floor(static_cast<double>(n) -
                 3.0 * std::sqrt(static_cast<double>(n) * fixed_bits)));
  if (n1 < 1) return std::nullopt;

  PoissonizedBracket bracket =
      poissonized_shtarkov_auto({c, static_cast<double>(n1)});
  return PoissonLowerResult{n1, fixed_bits, bracket.lower_bits,
                            bracket.lower_bits <= fixed_bits + 1e-9};
}

CheckReport verify_multiplicity_independence(const FiniteDistribution& p,
                                             double n, std::int64_t trials,
                                             std::uint64_t seed) {
  if (trials < 1000)
    throw std::invalid_argument(
        "verify_multiplicity_independence: need trials >= 1000");
  if (!(n > 0.0))
    throw std::invalid_argument("verify_multiplicity_independence: n <= 0");

  const int k = p.alphabet_size();
  std::uint64_t mix = seed;
  std::mt19937_64 rng(splitmix64(mix));

  std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
  std::vector<double> cross(static_cast<std::size_t>(k) * k, 0.0);
  std::vector<std::int64_t> mult(static_cast<std::size_t>(k), 0);
  for (std::int64_t t = 0; t < trials; ++t) {
    std::fill(mult.begin(), mult.end(), 0);
    std::int64_t len = sample_poisson(rng, n);
    for (std::int64_t j = 0; j < len; ++j) ++mult[sample_symbol(rng, p)];
    for (int a = 0; a < k; ++a) {
      sum[a] += static_cast<double>(mult[a]);
      for (int b = a + 1; b < k; ++b)
        cross[static_cast<std::size_t>(a) * k + b] +=
            static_cast<double>(mult[a]) * static_cast<double>(mult[b]);
    }
  }

  CheckReport report;
  report.name = "poisson multiplicity independence";
  report.tolerance = 0.0;
  const double dt = static_cast<double>(trials);
  for (int a = 0; a < k; ++a) {
    double mean_hat = sum[a] / dt;
    double target = n * p.prob(a);
    double sigma = std::sqrt(target / dt);  // Var Poi(np_a) = np_a
    std::ostringstream os;
    os << "mean[" << a << "] = " << mean_hat << " target " << target;
    report.record(std::abs(mean_hat - target) - 4.0 * sigma, os.str());
  }
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      double mean_a = sum[a] / dt;
      double mean_b = sum[b] / dt;
      double cov_hat =
          cross[static_cast<std::size_t>(a) * k + b] / dt - mean_a * mean_b;
      double sigma =
          n * std::sqrt(p.prob(a) * p.prob(b)) / std::sqrt(dt);
      if (sigma == 0.0) sigma = 1e-12;  // a zero-probability coordinate
      std::ostringstream os;
      os << "cov[" << a << "," << b << "] = " << cov_hat;
      report.record(std::abs(cov_hat) - 4.0 * sigma, os.str());
    }
  }
  return report;
}

CheckReport verify_conditional_length(const FiniteDistribution& p, double n,
                                      std::int64_t n_prime,
                                      std::int64_t budget) {
  if (!(n > 0.0))
    throw std::invalid_argument("verify_conditional_length: n <= 0");
  if (n_prime < 0)
    throw std::invalid_argument("verify_conditional_length: n' < 0");
  const int k = p.alphabet_size();
  require_budget(std::pow(static_cast<double>(k), static_cast<double>(n_prime)),
                 budget, "verify_conditional_length");

  CheckReport report;
  report.name = "poisson conditional length";
  report.tolerance = 1e-12;
  if (n_prime == 0) {
    // One sequence (empty); its conditional probability is exactly 1.
    report.record(0.0, "empty sequence");
    return report;
  }

  const double weight = log_poisson_pmf(PoissonParam(n), n_prime).to_linear();
  // Joint probabilities P^{Poi n}(x^{n'}) = Poi(n)(n') prod p(x_i); the
  // length marginal is recovered by actually summing them.
  std::vector<int> seq(static_cast<std::size_t>(n_prime), 0);
  std::vector<double> joints;
  double marginal = 0.0;
  bool more = true;
  while (more) {
    double prod = 1.0;
    for (int x : seq) prod *= p.prob(x);
    joints.push_back(weight * prod);
    marginal += weight * prod;
    more = false;
    for (std::size_t pos = seq.size(); pos-- > 0;) {
      if (++seq[pos] < k) {
        more = true;
        break;
      }
      seq[pos] = 0;
    }
  }

  std::fill(seq.begin(), seq.end(), 0);
  std::size_t index = 0;
  more = true;
  while (more) {
    double prod = 1.0;
    for (int x : seq) prod *= p.prob(x);
    double conditional = marginal > 0.0 ? joints[index] / marginal : 0.0;
    std::ostringstream os;
    os << "sequence #" << index;
    report.record(std::abs(conditional - prod), os.str());
    ++index;
    more = false;
    for (std::size_t pos = seq.size(); pos-- > 0;) {
      if (++seq[pos] < k) {
        more = true;
        break;
      }
      seq[pos] = 0;
    }
  }
  return report;
}

CheckReport poisson_type_redundancy_check(int k, double n, std::int64_t n_max,
                                          std::int64_t budget) {
  if (!(n > 0.0))
    throw std::invalid_argument("poisson_type_redundancy_check: n <= 0");
  CheckReport report;
  report.name = "poisson type redundancy";
  report.tolerance = 1e-10;
  const PoissonParam length(n);
  LogSpace via_types = LogSpace::bottom();
  LogSpace via_sequences = LogSpace::bottom();
  for (std::int64_t np = 0; np <= n_max; ++np) {
    LogSpace w = log_poisson_pmf(length, np);
    via_types += w * shtarkov_iid_types(k, np, budget).shtarkov_log;
    via_sequences += w * shtarkov_iid_sequences(k, np, budget).shtarkov_log;
    double a = via_types.to_linear();
    double b = via_sequences.to_linear();
    std::ostringstream os;
    os << "k=" << k << " n=" << n << " n_max=" << np;
    report.record(std::abs(a - b) / std::max(a, b), os.str());
  }
  return report;
}

}  // namespace shtarkov
