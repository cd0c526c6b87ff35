#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "shtarkov/check_report.hpp"
#include "shtarkov/classes.hpp"
#include "shtarkov/redundancy.hpp"

namespace shtarkov {

/// The full simplex D_k as a class tag (suprema taken in closed form).
struct IidFamily {
  int k;
};

using ClassRef = std::variant<FiniteClass, IidFamily>;

/// A class sampled a Poi(n)-distributed number of times.
struct PoissonizedClassHandle {
  ClassRef base;
  double n;
};

/// Certified bracket on the Poissonized Shtarkov sum
///   S = sum_{n'>=0} Poi(n)(n') S(P^{n'}).
/// The partial sum up to n_max is exact; the residual is bounded termwise
/// through one-step subadditivity, S(P^{n'}) <= S(P^1)^{n'}, which folds
/// into e^{n(S1-1)} times a Poi(n S1) upper-tail mass bounded by the
/// Gaussian-style concentration bound. (The transfer theorem's proof uses
/// a ceil(n'/n) block bound instead; the one-step version is looser but
/// simpler and ample at desk scale.)
struct PoissonizedBracket {
  double s_lower = 1.0;
  double s_upper = 1.0;
  double lower_bits = 0.0;
  double upper_bits = 0.0;
  double residual_s = 0.0;   // certified bound on the dropped mass
  bool converged = true;     // residual_s <= tolerance
  std::int64_t n_max = 0;
};

PoissonizedBracket poissonized_shtarkov(const PoissonizedClassHandle& h,
                                        std::int64_t n_max,
                                        double tolerance = 1e-8,
                                        std::int64_t budget = 0);

/// Grows n_max until the residual certificate drops below tolerance.
PoissonizedBracket poissonized_shtarkov_auto(const PoissonizedClassHandle& h,
                                             double tolerance = 1e-8,
                                             std::int64_t budget = 0);

/// R(P^n) <= R(P^{Poi(n)}) + 1: returns the certified right-hand side.
double fixed_upper_from_poisson(const PoissonizedClassHandle& h,
                                double tolerance = 1e-8);

/// The transfer theorem's second part. Requires n >= 4 and the brute-force
/// R(P^n) < n/16 bits; otherwise the theorem does not apply and the result
/// is absent. n1 = floor(n - 3 sqrt(n R(P^n))); the fixed-length redundancy
/// is then a certified upper bound on R(P^{Poi(n1)}).
struct PoissonLowerResult {
  std::int64_t n1;
  double bound_bits;             // R(P^n), upper-bounds R(P^{Poi(n1)})
  double poissonized_lower_bits; // bracket lower at Poi(n1), for the check
  bool inequality_holds;
};
std::optional<PoissonLowerResult> poisson_lower_from_fixed(const ClassRef& c,
                                                           std::int64_t n);

/// Monte-Carlo check that Poisson sampling makes per-symbol multiplicities
/// independent Poi(n p_i): empirical means within 4 sigma of n p_i and
/// pairwise covariances within 4 sigma of 0. Deterministic given seed
/// (mt19937_64; uniforms from the top 53 bits; Poisson lengths by Knuth's
/// product method, chunked for large means).
CheckReport verify_multiplicity_independence(const FiniteDistribution& p,
                                             double n, std::int64_t trials,
                                             std::uint64_t seed);

/// Exhaustive check that conditioning Poisson sampling on N = n' recovers
/// the fixed-length product probabilities for every length-n' sequence.
CheckReport verify_conditional_length(const FiniteDistribution& p, double n,
                                      std::int64_t n_prime,
                                      std::int64_t budget = 0);

/// Checks that mixing per-length TYPE Shtarkov sums and per-length
/// SEQUENCE Shtarkov sums by Poi(n) weights agree up to n_max.
CheckReport poisson_type_redundancy_check(int k, double n, std::int64_t n_max,
                                          std::int64_t budget = 0);

}  // namespace shtarkov
