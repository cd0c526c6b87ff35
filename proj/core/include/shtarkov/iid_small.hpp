#pragma once

#include <cstdint>
#include <optional>

#include "shtarkov/redundancy.hpp"

namespace shtarkov {

struct SmallAlphabetQuery {
  int k;
  std::int64_t n;
};

/// Non-asymptotic upper chain: R(D_k^n) <= (k-1) R(Poi class at n) + 1.
double iid_upper_bound(const SmallAlphabetQuery& q);

/// Lower chain (k-1) R(Poi class at n'/(k-1)) with
/// n' = n - n^{3/4} k^{1/4} log2 n. The chain leans on transfer-theorem
/// guards that cannot be verified at large n, so the value is advisory.
struct AdvisoryLowerBound {
  double bits;
  double n_prime;
};
std::optional<AdvisoryLowerBound> iid_lower_chain(const SmallAlphabetQuery& q);

/// Exact value by type enumeration; validates both chains.
RedundancyValue iid_exact(const SmallAlphabetQuery& q, std::int64_t budget = 0);

}  // namespace shtarkov
