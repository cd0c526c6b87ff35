#include "shtarkov/iid_small.hpp"

#include <cmath>
#include <stdexcept>

#include "shtarkov/classes.hpp"
#include "shtarkov/poisson_class.hpp"

namespace shtarkov {

namespace {

void validate(const SmallAlphabetQuery& q) {
  if (q.k < 1 || q.n < 1)
    throw std::invalid_argument("SmallAlphabetQuery: need k >= 1 and n >= 1");
}

}  // namespace

double iid_upper_bound(const SmallAlphabetQuery& q) {
  validate(q);
  if (q.k == 1) return 1.0;
  double per_coordinate =
      shtarkov_bounded_poisson(BoundedPoissonClass(static_cast<double>(q.n)))
          .bits;
  return static_cast<double>(q.k - 1) * per_coordinate + 1.0;
}

std::optional<AdvisoryLowerBound> iid_lower_chain(const SmallAlphabetQuery& q) {
  validate(q);
  if (q.k < 2) return std::nullopt;
  double dn = static_cast<double>(q.n);
  double dk = static_cast<double>(q.k);
  double n_prime =
      dn - std::pow(dn, 0.75) * std::pow(dk, 0.25) * std::log2(dn);
  if (!(n_prime > 0.0)) return std::nullopt;
  double lambda = n_prime / (dk - 1.0);
  double bits =
      (dk - 1.0) * shtarkov_bounded_poisson(BoundedPoissonClass(lambda)).bits;
  return AdvisoryLowerBound{bits, n_prime};
}

RedundancyValue iid_exact(const SmallAlphabetQuery& q, std::int64_t budget) {
  validate(q);
  return shtarkov_iid_types(q.k, q.n, budget);
}

}  // namespace shtarkov
