#include "shtarkov/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shtarkov/errors.hpp"
#include "shtarkov/logspace.hpp"
#include "shtarkov/poisson_class.hpp"

namespace shtarkov {

namespace {

constexpr double kLog2e = std::numbers::log2e;
constexpr double kPi = std::numbers::pi;

bool family_summable(const Envelope& e) {
  if (const auto* p = e.as_power_law()) return p->alpha > 1.0;
  if (e.as_exponential()) return true;
  const auto* t = e.as_table();
  switch (t->tail.kind) {
    case EnvelopeTail::Kind::Zero:
      return true;
    case EnvelopeTail::Kind::Geometric:
      return true;
    case EnvelopeTail::Kind::Power:
      return t->tail.c == 0.0 || t->tail.alpha > 1.0;
  }
  return false;
}

// Exact geometric tail sum_{i=u+1}^inf c e^{-alpha i}.
double geometric_tail(double c, double alpha, std::int64_t u) {
  return c * std::exp(-alpha * static_cast<double>(u + 1)) /
         (-std::expm1(-alpha));
}

// Certified bracket on sum_{i=u+1}^inf c i^{-alpha} for alpha > 1.
// Explicit leading terms plus a convexity sandwich on the remainder:
//   int_{M+1}^inf g + g(M+1)/2  <=  sum_{i>M} g(i)  <=  int_{M+1/2}^inf g.
Interval power_tail(double c, double alpha, std::int64_t u, double tol) {
  auto remainder = [&](double m) -> Interval {
    double lo = c * std::pow(m + 1.0, 1.0 - alpha) / (alpha - 1.0) +
                0.5 * c * std::pow(m + 1.0, -alpha);
    double hi = c * std::pow(m + 0.5, 1.0 - alpha) / (alpha - 1.0);
    return {lo, hi};
  };
  KahanSum explicit_sum;
  std::int64_t m = u;
  std::int64_t chunk = 16;
  Interval rem = remainder(static_cast<double>(m));
  while (rem.width() > tol * std::max(1.0, rem.hi + explicit_sum.value()) &&
         chunk <= (std::int64_t{1} << 26)) {
    for (std::int64_t i = m + 1; i <= m + chunk; ++i)
      explicit_sum.add(c * std::pow(static_cast<double>(i), -alpha));
    m += chunk;
    chunk *= 2;
    rem = remainder(static_cast<double>(m));
  }
  double base = explicit_sum.value();
  return {base + rem.lo, base + rem.hi};
}

Interval family_tail(const EnvelopeTail& tail, std::int64_t u, double tol) {
  switch (tail.kind) {
    case EnvelopeTail::Kind::Zero:
      return {0.0, 0.0};
    case EnvelopeTail::Kind::Geometric: {
      if (tail.c == 0.0) return {0.0, 0.0};
      double v = geometric_tail(tail.c, tail.alpha, u);
      return {v, v};
    }
    case EnvelopeTail::Kind::Power:
      if (tail.c == 0.0) return {0.0, 0.0};
      if (tail.alpha <= 1.0)
        throw NotSummable("power tail with alpha <= 1 diverges");
      return power_tail(tail.c, tail.alpha, u, tol);
  }
  throw std::logic_error("family_tail: unreachable");
}

// The envelope i -> f_i^2, used to certify the Lambda <= 1 cap overshoot
// in single_letter_interval.
Envelope squared_envelope(const Envelope& e) {
  if (const auto* p = e.as_power_law())
    return Envelope::power_law(p->c * p->c, 2.0 * p->alpha);
  if (const auto* x = e.as_exponential())
    return Envelope::exponential(x->c * x->c, 2.0 * x->alpha);
  const auto* t = e.as_table();
  std::vector<double> sq(t->values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = t->values[i] * t->values[i];
  EnvelopeTail tail = t->tail;
  if (tail.kind != EnvelopeTail::Kind::Zero) {
    tail.c = tail.c * tail.c;
    tail.alpha = 2.0 * tail.alpha;
  }
  return Envelope::table(std::move(sq), tail);
}

}  // namespace

Envelope Envelope::power_law(double c, double alpha) {
  if (!(std::isfinite(c) && c > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("Envelope::power_law: need finite c > 0");
  return Envelope(PowerLaw{c, alpha});
}

Envelope Envelope::exponential(double c, double alpha) {
  if (!(std::isfinite(c) && c > 0.0) || !(std::isfinite(alpha) && alpha > 0.0))
    throw std::invalid_argument(
        "Envelope::exponential: need finite c > 0 and alpha > 0");
  return Envelope(Exponential{c, alpha});
}

Envelope Envelope::table(std::vector<double> values, EnvelopeTail tail) {
  for (double v : values)
    if (!(std::isfinite(v) && v >= 0.0))
      throw std::invalid_argument("Envelope::table: values must be >= 0");
  if (tail.kind != EnvelopeTail::Kind::Zero) {
    if (!(std::isfinite(tail.c) && tail.c >= 0.0) || !std::isfinite(tail.alpha))
      throw std::invalid_argument("Envelope::table: bad tail parameters");
    if (tail.kind == EnvelopeTail::Kind::Geometric && tail.c > 0.0 &&
        !(tail.alpha > 0.0))
      throw std::invalid_argument(
          "Envelope::table: geometric tail needs alpha > 0");
  }
  return Envelope(Table{std::move(values), tail});
}

std::string Envelope::kind_name() const {
  if (as_power_law()) return "power_law";
  if (as_exponential()) return "exponential";
  return "table";
}

double envelope_eval(const Envelope& e, std::int64_t i) {
  if (i < 1) throw std::invalid_argument("envelope_eval: i must be >= 1");
  double di = static_cast<double>(i);
  if (const auto* p = e.as_power_law()) return p->c * std::pow(di, -p->alpha);
  if (const auto* x = e.as_exponential()) return x->c * std::exp(-x->alpha * di);
  const auto* t = e.as_table();
  if (i <= static_cast<std::int64_t>(t->values.size()))
    return t->values[static_cast<std::size_t>(i - 1)];
  switch (t->tail.kind) {
    case EnvelopeTail::Kind::Zero:
      return 0.0;
    case EnvelopeTail::Kind::Geometric:
      return t->tail.c * std::exp(-t->tail.alpha * di);
    case EnvelopeTail::Kind::Power:
      return t->tail.c * std::pow(di, -t->tail.alpha);
  }
  throw std::logic_error("envelope_eval: unreachable");
}

Interval tail_sum(const Envelope& e, std::int64_t u, double tol) {
  if (u < 0) throw std::invalid_argument("tail_sum: u must be >= 0");
  if (const auto* p = e.as_power_law()) {
    if (p->alpha <= 1.0)
      throw NotSummable("power-law envelope with alpha <= 1 is not summable");
    return power_tail(p->c, p->alpha, u, tol);
  }
  if (const auto* x = e.as_exponential()) {
    double v = geometric_tail(x->c, x->alpha, u);
    return {v, v};
  }
  const auto* t = e.as_table();
  auto m = static_cast<std::int64_t>(t->values.size());
  KahanSum head;
  for (std::int64_t i = u + 1; i <= m; ++i)
    head.add(t->values[static_cast<std::size_t>(i - 1)]);
  Interval fam = family_tail(t->tail, std::max(u, m), tol);
  return {head.value() + fam.lo, head.value() + fam.hi};
}

SummabilityCertificate summability_check(const Envelope& e) {
  if (!family_summable(e)) {
    std::string witness;
    if (const auto* p = e.as_power_law())
      witness = p->alpha == 1.0
                    ? "harmonic tail: partial sums grow like log m"
                    : "power-law tail with alpha <= 1: partial sums diverge";
    else
      witness = "table tail family is a power law with alpha <= 1";
    return {false, std::nullopt, witness};
  }
  Interval total = tail_sum(e, 0);
  return {true, total, "certified tail bracket"};
}

std::int64_t l_f(const Envelope& e) {
  if (!family_summable(e))
    throw NotSummable("l_f: envelope is not summable");
  // Is sum_{i >= l} f_i < 1? Refine the bracket when it straddles 1.
  auto tail_below_one = [&](std::int64_t l) {
    for (double tol : {1e-9, 1e-12, 1e-15}) {
      Interval iv = tail_sum(e, l - 1, tol);
      if (iv.hi < 1.0) return true;
      if (iv.lo >= 1.0) return false;
    }
    throw std::runtime_error("l_f: tail bracket straddles 1 at max precision");
  };
  std::int64_t hi = 1;
  while (!tail_below_one(hi)) {
    hi *= 2;
    if (hi > (std::int64_t{1} << 40))
      throw std::runtime_error("l_f: no finite l found");
  }
  std::int64_t lo = std::max<std::int64_t>(1, hi / 2);
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (tail_below_one(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

RedundancyInterval single_letter_interval(const Envelope& e, std::int64_t n,
                                          SingleLetterOptions opt) {
  if (n < 1) throw std::invalid_argument("single_letter_interval: n must be >= 1");
  if (!family_summable(e))
    throw NotSummable("single_letter_interval: envelope is not summable");

  const std::int64_t l = l_f(e);
  const double dn = static_cast<double>(n);
  std::int64_t table_len = 0;
  if (const auto* t = e.as_table())
    table_len = static_cast<std::int64_t>(t->values.size());

  // Cutoff: beyond I the envelope is in its (nonincreasing) family region
  // with n f_{I+1} < 1, so the per-term Lambda <= 1 cap applies termwise.
  std::int64_t cutoff = std::max<std::int64_t>({l, table_len, 1});
  while (dn * envelope_eval(e, cutoff + 1) >= 1.0) {
    cutoff *= 2;
    if (cutoff > opt.max_cutoff)
      throw BudgetExceeded("single_letter_interval: no valid cutoff in budget");
  }
  // Grow until the cap's certified overshoot against the exact termwise
  // tail is below tolerance: sum_{i>I} [L_i log2 e - R(L_i)] <= n^2 log2 e
  // * sum_{i>I} f_i^2.
  const Envelope squared = squared_envelope(e);
  auto overshoot_bits = [&](std::int64_t i_cut) {
    return kLog2e * dn * dn * tail_sum(squared, i_cut).hi;
  };
  while (overshoot_bits(cutoff) > opt.tolerance_bits) {
    cutoff *= 2;
    if (cutoff > opt.max_cutoff)
      throw BudgetExceeded(
          "single_letter_interval: tolerance unreachable within budget");
  }

  KahanSum upper;
  KahanSum lower;
  KahanSum widths;
  for (std::int64_t i = 1; i <= cutoff; ++i) {
    BitsInterval bi = bounded_poisson_bits_interval(dn * envelope_eval(e, i));
    upper.add(bi.hi);
    widths.add(bi.hi - bi.lo);
    if (i >= l) lower.add(bi.lo);
  }
  double cap_term = kLog2e * dn * tail_sum(e, cutoff).hi;
  return {lower.value(), upper.value() + cap_term, cap_term + widths.value(),
          false};
}

double bgg09_upper(const Envelope& e, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("bgg09_upper: n must be >= 1");
  if (!family_summable(e))
    throw NotSummable("bgg09_upper: envelope is not summable");
  const double log2n = std::log2(static_cast<double>(n));
  const double dn = static_cast<double>(n);
  Interval tail = tail_sum(e, 1);
  double best = dn * tail.hi * kLog2e;  // u = 1: no log term
  for (std::int64_t u = 2; u <= n; ++u) {
    double log_term = 0.5 * static_cast<double>(u - 1) * log2n;
    if (log_term >= best) break;
    double f_u = envelope_eval(e, u);
    tail.lo = std::max(0.0, tail.lo - f_u);
    tail.hi = std::max(0.0, tail.hi - f_u);
    best = std::min(best, dn * tail.hi * kLog2e + log_term);
  }
  return best + 2.0;
}

RedundancyInterval power_law_closed_bounds(double c, double alpha,
                                           std::int64_t n) {
  if (!(c > 0.0)) throw std::invalid_argument("power_law_closed_bounds: c <= 0");
  if (!(alpha > 1.0))
    throw std::invalid_argument("power_law_closed_bounds: alpha must be > 1");
  if (n < 1) throw std::invalid_argument("power_law_closed_bounds: n < 1");
  double scale = std::pow(c * static_cast<double>(n), 1.0 / alpha);
  double lower_coeff = 0.5 * alpha * kLog2e + 0.5 * kLog2e / (alpha - 1.0) -
                       0.5 * std::log2(kPi / 2.0);
  double upper_coeff = 0.5 * alpha * kLog2e + kLog2e / (alpha - 1.0) +
                       std::log2(3.0);
  return {scale * lower_coeff, scale * upper_coeff + 1.0, 0.0, true};
}

RedundancyInterval exponential_closed_bounds(double c, double alpha,
                                             std::int64_t n) {
  if (!(c > 0.0))
    throw std::invalid_argument("exponential_closed_bounds: c <= 0");
  if (!(alpha > 0.0))
    throw std::invalid_argument("exponential_closed_bounds: alpha must be > 0");
  if (n < 2) throw std::invalid_argument("exponential_closed_bounds: n < 2");
  const double log2n = std::log2(static_cast<double>(n));
  const double log2c = std::log2(c);
  const double denom = 4.0 * alpha * kLog2e;
  double central = log2n * log2n / denom;
  double slack = (log2n + log2c) * std::log2(81.0 * c) / denom +
                 log2n * log2c / denom + kLog2e / (-std::expm1(-alpha)) + 1.0;
  return {central, central + slack, 0.0, true};
}

double exponential_statement_central(double alpha, std::int64_t n) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("exponential_statement_central: alpha <= 0");
  if (n < 2) throw std::invalid_argument("exponential_statement_central: n < 2");
  const double log2n = std::log2(static_cast<double>(n));
  return log2n * log2n / (4.0 * alpha);
}

}  // namespace shtarkov
