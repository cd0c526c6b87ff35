#include "shtarkov/verify_suites.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "shtarkov/envelope.hpp"
#include "shtarkov/lemma_checks.hpp"
#include "shtarkov/numerics.hpp"
#include "shtarkov/poisson_class.hpp"
#include "shtarkov/poissonization.hpp"

namespace shtarkov {

namespace {

CheckReport check_tail_bound_domination() {
  CheckReport report;
  report.name = "poisson tail-bound domination";
  report.tolerance = 0.0;
  for (double lambda : {0.5, 1.0, 5.0, 20.0}) {
    PoissonParam p(lambda);
    auto x_hi = static_cast<std::int64_t>(
        std::ceil(lambda + 10.0 * std::sqrt(lambda)));
    for (std::int64_t x = 0; x <= x_hi; ++x) {
      double bound = poisson_tail_bound(p, static_cast<double>(x));
      double exact;
      if (static_cast<double>(x) >= lambda)
        exact = x == 0 ? 1.0 : -std::expm1(poisson_cdf(p, x - 1).value());
      else
        exact = poisson_cdf(p, x).to_linear();
      std::ostringstream os;
      os << "lambda=" << lambda << " x=" << x;
      report.record(exact - bound, os.str());
    }
  }
  return report;
}

CheckReport check_poisson_half_inequality() {
  CheckReport report;
  report.name = "poissonized half-inequality";
  report.tolerance = 1e-9;
  for (int k = 2; k <= 3; ++k) {
    for (std::int64_t n = 1; n <= 15; ++n) {
      double fixed_s = shtarkov_iid_types(k, n).s();
      PoissonizedBracket bracket = poissonized_shtarkov_auto(
          {IidFamily{k}, static_cast<double>(n)}, 1e-8);
      std::ostringstream os;
      os << "k=" << k << " n=" << n;
      report.record(0.5 * fixed_s - bracket.s_lower, os.str());
    }
  }
  return report;
}

CheckReport check_poisson_transfer() {
  CheckReport report;
  report.name = "fixed-to-poisson transfer";
  report.tolerance = 1e-9;
  for (int k = 2; k <= 3; ++k) {
    for (std::int64_t n = 1; n <= 15; ++n) {
      double fixed_bits = shtarkov_iid_types(k, n).bits;
      double bound = fixed_upper_from_poisson(
          {IidFamily{k}, static_cast<double>(n)}, 1e-8);
      std::ostringstream os;
      os << "k=" << k << " n=" << n;
      report.record(fixed_bits - bound, os.str());
    }
  }
  return report;
}

CheckReport check_poisson_lower_guard() {
  CheckReport report;
  report.name = "poisson lower from fixed";
  report.tolerance = 0.0;
  // n = 4 at k = 2 has R about 1.66 > 4/16: the theorem must not apply.
  auto small = poisson_lower_from_fixed(IidFamily{2}, 4);
  report.record(small.has_value() ? 1.0 : 0.0, "guard at k=2 n=4");
  auto large = poisson_lower_from_fixed(IidFamily{2}, 64);
  if (!large.has_value()) {
    report.record(1.0, "k=2 n=64 should satisfy the guard");
  } else {
    report.record(large->inequality_holds ? 0.0 : 1.0,
                  "poissonized lower exceeded the fixed-length bound");
  }
  return report;
}

CheckReport check_multiplicity_suite(std::uint64_t seed) {
  CheckReport merged;
  merged.name = "poisson multiplicity independence";
  merged.tolerance = 0.0;
  {
    CheckReport r = verify_multiplicity_independence(
        FiniteDistribution({0.5, 0.5}), 8.0, 100000, seed);
    merged.record(r.worst_violation, r.detail);
  }
  {
    CheckReport r = verify_multiplicity_independence(
        FiniteDistribution({0.9, 0.1}), 20.0, 100000, seed + 1);
    merged.record(r.worst_violation, r.detail);
  }
  {
    CheckReport r = verify_multiplicity_independence(
        FiniteDistribution({1.0, 0.0}), 5.0, 10000, seed + 2);
    merged.record(r.worst_violation, r.detail);
  }
  return merged;
}

CheckReport check_conditional_suite() {
  CheckReport merged;
  merged.name = "poisson conditional length";
  merged.tolerance = 1e-12;
  for (const auto& [p, n, np] :
       {std::tuple{FiniteDistribution({0.5, 0.5}), 3.0, std::int64_t{2}},
        std::tuple{FiniteDistribution({2.0 / 3.0, 1.0 / 3.0}), 1.0,
                   std::int64_t{2}},
        std::tuple{FiniteDistribution({0.25, 0.25, 0.5}), 2.5,
                   std::int64_t{3}},
        std::tuple{FiniteDistribution({0.5, 0.5}), 2.0, std::int64_t{0}}}) {
    CheckReport r = verify_conditional_length(p, n, np);
    merged.record(r.worst_violation, r.detail);
  }
  return merged;
}

CheckReport check_poisson_type_mixing() {
  CheckReport merged;
  merged.name = "poisson type redundancy";
  merged.tolerance = 1e-10;
  for (double n : {0.5, 2.0}) {
    CheckReport r = poisson_type_redundancy_check(2, n, 6);
    merged.record(r.worst_violation, r.detail);
    CheckReport r1 = poisson_type_redundancy_check(1, n, 6);
    merged.record(r1.worst_violation, r1.detail);
  }
  return merged;
}

CheckReport check_bracket_tightening() {
  CheckReport report;
  report.name = "poissonized bracket tightening";
  report.tolerance = 1e-12;
  PoissonizedClassHandle h{IidFamily{2}, 2.0};
  double prev_lo = 0.0;
  double prev_hi = std::numeric_limits<double>::infinity();
  for (std::int64_t n_max = 0; n_max <= 24; ++n_max) {
    PoissonizedBracket b = poissonized_shtarkov(h, n_max, 1e-8);
    std::ostringstream os;
    os << "n_max=" << n_max;
    report.record(prev_lo - b.s_lower, os.str());
    report.record(b.s_upper - prev_hi, os.str());
    report.record(b.s_lower - b.s_upper, os.str());
    prev_lo = b.s_lower;
    prev_hi = b.s_upper;
  }
  return report;
}

CheckReport check_bounded_poisson_exact_small() {
  CheckReport report;
  report.name = "bounded poisson exact formula (Lambda <= 1)";
  report.tolerance = 1e-12;
  std::mt19937_64 rng(20240913);
  for (int i = 0; i < 1000; ++i) {
    double lambda =
        (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 0.999999 + 1e-9;
    double s = shtarkov_bounded_poisson(BoundedPoissonClass(lambda)).s();
    std::ostringstream os;
    os << "lambda=" << lambda;
    report.record(std::abs(s - (2.0 - std::exp(-lambda))), os.str());
  }
  return report;
}

CheckReport check_bounded_poisson_bracketing() {
  CheckReport report;
  report.name = "bounded poisson closed-form bracketing";
  report.tolerance = 1e-12;
  for (double lambda : {1.5, 2.5, 10.0, 100.0, 10000.0}) {
    double bits = shtarkov_bounded_poisson(BoundedPoissonClass(lambda)).bits;
    RedundancyInterval iv =
        closed_form_bounds_bounded_poisson(BoundedPoissonClass(lambda));
    std::ostringstream os;
    os << "lambda=" << lambda;
    report.record(iv.lower_bits - bits, os.str());
    report.record(bits - iv.upper_bits, os.str());
  }
  return report;
}

CheckReport check_bounded_poisson_monotone() {
  CheckReport report;
  report.name = "bounded poisson monotonicity";
  report.tolerance = 1e-12;
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double lambda = 0.1 * static_cast<double>(i);
    double bits = shtarkov_bounded_poisson(BoundedPoissonClass(lambda)).bits;
    std::ostringstream os;
    os << "lambda=" << lambda;
    report.record(prev - bits, os.str());
    prev = bits;
  }
  return report;
}

CheckReport check_envelope_sandwich() {
  CheckReport report;
  report.name = "envelope sandwich and bgg09 cross-check";
  report.tolerance = 1e-9;
  const Envelope power = Envelope::power_law(1.0, 2.0);
  const Envelope expo = Envelope::exponential(1.0, 1.0);
  for (const Envelope* e : {&power, &expo}) {
    std::int64_t l = l_f(*e);
    for (std::int64_t n : {std::int64_t{1000}, std::int64_t{10000},
                           std::int64_t{100000}, std::int64_t{1000000}}) {
      RedundancyInterval iv = single_letter_interval(*e, n);
      double allowance =
          static_cast<double>(l - 1) *
              std::log2(2.0 + std::sqrt(2.0 * static_cast<double>(n) /
                                        std::numbers::pi)) +
          iv.truncation_bits;
      std::ostringstream os;
      os << e->kind_name() << " n=" << n;
      report.record(iv.lower_bits - iv.upper_bits, os.str() + " order");
      report.record((iv.upper_bits - iv.lower_bits) - allowance,
                    os.str() + " gap");
      report.record(iv.lower_bits - bgg09_upper(*e, n), os.str() + " bgg09");
    }
  }
  return report;
}

CheckReport check_single_coordinate_consistency() {
  CheckReport report;
  report.name = "single-coordinate envelope equals bounded poisson";
  report.tolerance = 1e-12;
  for (double f1 : {0.2, 0.5, 0.9}) {
    for (std::int64_t n : {std::int64_t{1}, std::int64_t{2}, std::int64_t{7}}) {
      Envelope e = Envelope::table({f1}, EnvelopeTail{});
      RedundancyInterval iv = single_letter_interval(e, n);
      double exact =
          shtarkov_bounded_poisson(
              BoundedPoissonClass(f1 * static_cast<double>(n)))
              .bits;
      std::ostringstream os;
      os << "f1=" << f1 << " n=" << n;
      report.record(std::abs(iv.lower_bits - exact), os.str());
      report.record(std::abs(iv.upper_bits - exact), os.str());
    }
  }
  return report;
}

CheckReport check_power_law_scaling() {
  CheckReport report;
  report.name = "power-law scaling law";
  report.tolerance = 0.0;
  for (double alpha : {1.5, 2.0, 3.0}) {
    const std::int64_t n = 10000;
    auto n2 = static_cast<std::int64_t>(
        std::llround(std::pow(2.0, alpha) * static_cast<double>(n)));
    Envelope e = Envelope::power_law(1.0, alpha);
    double u1 = single_letter_interval(e, n).upper_bits;
    double u2 = single_letter_interval(e, n2).upper_bits;
    double ratio = u2 / u1;
    std::ostringstream os;
    os << "alpha=" << alpha << " ratio=" << ratio;
    report.record(std::abs(ratio - 2.0) - 0.2, os.str());
  }
  return report;
}

CheckReport check_closed_form_dominates_single_letter() {
  CheckReport report;
  report.name = "power-law closed form over-bounds single letter";
  report.tolerance = 0.0;
  Envelope e = Envelope::power_law(1.0, 2.0);
  for (std::int64_t n : {std::int64_t{10000}, std::int64_t{100000},
                         std::int64_t{1000000}}) {
    double single = single_letter_interval(e, n).upper_bits;
    double closed = power_law_closed_bounds(1.0, 2.0, n).upper_bits;
    std::ostringstream os;
    os << "n=" << n;
    report.record(single - closed, os.str());
  }
  return report;
}

CheckReport check_exponential_band() {
  CheckReport report;
  report.name = "exponential growth band";
  report.tolerance = 0.0;
  Envelope e = Envelope::exponential(1.0, 1.0);
  for (int log_n : {10, 14, 20}) {
    auto n = static_cast<std::int64_t>(1) << log_n;
    double upper = single_letter_interval(e, n).upper_bits;
    double central = std::log2(static_cast<double>(n)) *
                     std::log2(static_cast<double>(n)) /
                     (4.0 * std::numbers::log2e);
    double ratio = upper / central;
    std::ostringstream os;
    os << "n=2^" << log_n << " ratio=" << ratio;
    report.record(0.5 - ratio, os.str());
    report.record(ratio - 2.0, os.str());
  }
  return report;
}

CheckReport check_power_law_factor4() {
  CheckReport report;
  report.name = "power-law closed-form factor 4";
  report.tolerance = 0.0;
  for (double alpha : {1.5, 2.0, 3.0}) {
    RedundancyInterval iv = power_law_closed_bounds(1.0, alpha, 1);
    double ratio = iv.lower_bits > 0.0
                       ? (iv.upper_bits - 1.0) / iv.lower_bits
                       : std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "alpha=" << alpha << " ratio=" << ratio;
    report.record(ratio - 4.0, os.str());
  }
  return report;
}

CheckReport check_argmax_structure() {
  CheckReport report;
  report.name = "bounded poisson per-symbol argmax";
  report.tolerance = 1e-12;
  // Per-symbol supremum over lambda <= L: Poi(i)(i) when i <= L, else
  // Poi(L)(i). A 1-D scan over lambda must never beat it.
  for (const auto& [i, cap] :
       {std::pair{std::int64_t{2}, 5.0}, std::pair{std::int64_t{4}, 2.5},
        std::pair{std::int64_t{0}, 1.0}, std::pair{std::int64_t{7}, 7.0}}) {
    double claimed = log_poisson_pmf(
                         PoissonParam(std::min(static_cast<double>(i), cap)), i)
                         .to_linear();
    double best_scanned = 0.0;
    for (int step = 0; step <= 4000; ++step) {
      double lambda = cap * static_cast<double>(step) / 4000.0;
      best_scanned = std::max(
          best_scanned, log_poisson_pmf(PoissonParam(lambda), i).to_linear());
    }
    std::ostringstream os;
    os << "i=" << i << " cap=" << cap;
    report.record(best_scanned - claimed, os.str());
  }
  return report;
}

}  // namespace

VerifySuite parse_suite(const std::string& name) {
  if (name == "all") return VerifySuite::All;
  if (name == "preliminary") return VerifySuite::Preliminary;
  if (name == "poisson") return VerifySuite::Poisson;
  if (name == "envelope") return VerifySuite::Envelope;
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<CheckReport> run_suite(VerifySuite suite, std::uint64_t seed) {
  std::vector<CheckReport> out;
  auto extend = [&out](std::vector<CheckReport> more) {
    for (auto& r : more) out.push_back(std::move(r));
  };
  if (suite == VerifySuite::All || suite == VerifySuite::Preliminary)
    extend(run_preliminary_battery(seed));
  if (suite == VerifySuite::All || suite == VerifySuite::Poisson) {
    out.push_back(check_tail_bound_domination());
    out.push_back(check_poisson_half_inequality());
    out.push_back(check_poisson_transfer());
    out.push_back(check_poisson_lower_guard());
    out.push_back(check_multiplicity_suite(seed));
    out.push_back(check_conditional_suite());
    out.push_back(check_poisson_type_mixing());
    out.push_back(check_bracket_tightening());
  }
  if (suite == VerifySuite::All || suite == VerifySuite::Envelope) {
    out.push_back(check_bounded_poisson_exact_small());
    out.push_back(check_bounded_poisson_bracketing());
    out.push_back(check_bounded_poisson_monotone());
    out.push_back(check_argmax_structure());
    out.push_back(check_envelope_sandwich());
    out.push_back(check_single_coordinate_consistency());
    out.push_back(check_power_law_scaling());
    out.push_back(check_closed_form_dominates_single_letter());
    out.push_back(check_exponential_band());
    out.push_back(check_power_law_factor4());
  }
  return out;
}

}  // namespace shtarkov
