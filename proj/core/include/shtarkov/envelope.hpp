#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shtarkov/redundancy.hpp"

namespace shtarkov {

/// Certified real bracket: the true value lies in [lo, hi].
struct Interval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
};

/// Tail description of a tabulated envelope beyond its explicit values.
struct EnvelopeTail {
  enum class Kind { Zero, Geometric, Power };
  Kind kind = Kind::Zero;
  double c = 0.0;      // unused for Zero
  double alpha = 0.0;  // unused for Zero
};

/// An envelope f: Z+ -> R>=0 upper-bounding per-symbol probabilities.
/// Power-law and exponential families, plus finite tables with a
/// certified tail family so tail sums stay computable.
class Envelope {
 public:
  struct PowerLaw {
    double c;
    double alpha;
  };
  struct Exponential {
    double c;
    double alpha;
  };
  struct Table {
    std::vector<double> values;  // f_1 .. f_m
    EnvelopeTail tail;           // applies for i > m
  };

  static Envelope power_law(double c, double alpha);
  static Envelope exponential(double c, double alpha);
  static Envelope table(std::vector<double> values, EnvelopeTail tail);

  const PowerLaw* as_power_law() const { return std::get_if<PowerLaw>(&kind_); }
  const Exponential* as_exponential() const {
    return std::get_if<Exponential>(&kind_);
  }
  const Table* as_table() const { return std::get_if<Table>(&kind_); }
  std::string kind_name() const;

 private:
  std::variant<PowerLaw, Exponential, Table> kind_;
  explicit Envelope(std::variant<PowerLaw, Exponential, Table> kind)
      : kind_(std::move(kind)) {}
};

/// f_i for i >= 1.
double envelope_eval(const Envelope& e, std::int64_t i);

/// Certified bracket on the tail sum F_u = sum_{i > u} f_i.
/// Throws NotSummable when the tail diverges.
Interval tail_sum(const Envelope& e, std::int64_t u, double tol = 1e-9);

/// Summability verdict with a certificate: the bracket on the total sum,
/// or a human-readable divergence witness.
struct SummabilityCertificate {
  bool summable;
  std::optional<Interval> total;
  std::string witness;
};
SummabilityCertificate summability_check(const Envelope& e);

/// Smallest l with sum_{i >= l} f_i < 1. Requires a summable envelope.
std::int64_t l_f(const Envelope& e);

struct SingleLetterOptions {
  double tolerance_bits = 1e-6;  // certified cap-overshoot budget
  std::int64_t max_cutoff = 100'000'000;
};

/// The single-letter sandwich on the Poisson-sampled envelope class:
///   lower = sum_{i >= l_f} R(Poi class at n f_i), truncated at a cutoff I
///   (dropping positive terms keeps it valid);
///   upper = sum_{i <= I} exact terms + n F_I log2 e (the Lambda <= 1 cap).
/// truncation_bits carries everything added beyond the exactly computed
/// part; the cutoff is grown until the cap's certified overshoot against
/// the exact termwise tail is below tolerance_bits.
RedundancyInterval single_letter_interval(const Envelope& e, std::int64_t n,
                                          SingleLetterOptions opt = {});

/// Baseline upper bound: min over u in [1, n] of
/// n F_u log2 e + (u-1)/2 log2 n, plus 2.
double bgg09_upper(const Envelope& e, std::int64_t n);

/// Closed-form power-law bracket,
///   (cn)^{1/alpha} [alpha log2e/2 + log2e/(2(alpha-1)) - log2(pi/2)/2]
///     <= R <= (cn)^{1/alpha} [alpha log2e/2 + log2e/(alpha-1) + log2 3] + 1.
/// The lower side omits an uncertified (1 - o(1)) factor and is flagged
/// asymptotic.
RedundancyInterval power_law_closed_bounds(double c, double alpha,
                                           std::int64_t n);

/// Closed-form exponential bounds around the central value
/// log2^2 n / (4 alpha log2 e), with the explicit slack band
///   [log2(cn) log2(81c) + log2 n log2 c] / (4 alpha log2 e)
///     + log2 e/(1 - e^{-alpha}) + 1
/// added on the upper side. Lower side is the central value, flagged
/// asymptotic.
RedundancyInterval exponential_closed_bounds(double c, double alpha,
                                             std::int64_t n);

/// The theorem statement's variant of the exponential central value,
/// log2^2 n / (4 alpha); reported alongside the proof's expression used in
/// exponential_closed_bounds.
double exponential_statement_central(double alpha, std::int64_t n);

}  // namespace shtarkov
