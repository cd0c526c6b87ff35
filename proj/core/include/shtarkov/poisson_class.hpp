#pragma once

#include "shtarkov/redundancy.hpp"

namespace shtarkov {

/// The class of all Poisson distributions with mean <= upper.
struct BoundedPoissonClass {
  double upper;
  explicit BoundedPoissonClass(double cap);
};

/// Exact Shtarkov sum of the bounded-Poisson class:
///   S = sum_{i=0}^{floor(L)} e^{-i} i^i / i!  +  (1 - CDF_{Poi(L)}(floor(L))).
/// Costs O(L); exact for any finite L.
RedundancyValue shtarkov_bounded_poisson(const BoundedPoissonClass& c);

/// Closed-form bracket: for L <= 1 the exact value log2(2 - e^{-L}) on both
/// sides; for L > 1 the bracket [log2 sqrt((2L+2)/pi), log2(sqrt(2L/pi)+2)].
RedundancyInterval closed_form_bounds_bounded_poisson(
    const BoundedPoissonClass& c);

/// The unconditional cap R <= L * log2 e, valid for L <= 1.
double lambda_cap_bits(double lambda);

/// Certified [lo, hi] on the redundancy in bits. Exact (degenerate) up to
/// stirling_threshold; beyond it the diagonal sum is bracketed through
/// Stirling's approximation and the Poisson tail term through [0, 1],
/// keeping huge-mean sweeps cheap while staying certified.
struct BitsInterval {
  double lo;
  double hi;
};
BitsInterval bounded_poisson_bits_interval(double lambda,
                                           double stirling_threshold = 1e7);

}  // namespace shtarkov
