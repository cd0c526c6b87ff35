#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "shtarkov/check_report.hpp"
#include "shtarkov/classes.hpp"

namespace shtarkov {

/// Subset redundancy: R(sub) <= R(c). sub's members must all be in c.
CheckReport check_subset(const FiniteClass& c, const FiniteClass& sub);

/// Union redundancy: max_i R(P_i) <= R(union) <= max_i R(P_i) + log2(parts).
CheckReport check_union(const std::vector<FiniteClass>& parts);

/// Function redundancy: R(f(P)) <= R(P), with equality for bijections.
/// mapping[x] is the image of symbol x; it must be total on the alphabet.
CheckReport check_function(const FiniteClass& c,
                           const std::vector<int>& mapping);

/// Product redundancy: R(cx x cy) = R(cx) + R(cy), plus the marginal
/// corollary R(sub) <= R(marginals) on a strict sub-class of the product.
CheckReport check_product(const FiniteClass& cx, const FiniteClass& cy);

/// Monotonicity and subadditivity of R(D_k^n) for all n and splits up to
/// n_max.
CheckReport check_monotone_subadditive(int k, std::int64_t n_max,
                                       std::int64_t budget = 0);

/// Type redundancy: sequence-based and type-based Shtarkov sums agree for
/// all n <= n_max.
CheckReport check_type_equality(int k, std::int64_t n_max,
                                std::int64_t budget = 0);

/// Seeded instance generator used by the batteries: distributions are
/// normalized iid uniform(0,1] coordinates.
FiniteDistribution random_distribution(std::mt19937_64& rng, int k);
FiniteClass random_class(std::mt19937_64& rng, int k, int members);

/// The preliminary-lemma battery: each check above on 100 seeded random
/// instances (plus the deterministic sweeps). Deterministic given seed.
std::vector<CheckReport> run_preliminary_battery(std::uint64_t seed);

}  // namespace shtarkov
