#pragma once

#include <cstdint>
#include <vector>

#include "shtarkov/logspace.hpp"
#include "shtarkov/redundancy.hpp"

namespace shtarkov {

/// A probability vector over the alphabet [k]. Entries lie in [0, 1] and
/// sum to 1 within 1e-12.
class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::vector<double> probs);

  int alphabet_size() const { return static_cast<int>(probs_.size()); }
  double prob(int symbol) const { return probs_[symbol]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// An explicit, nonempty, finite set of distributions over a shared
/// alphabet.
class FiniteClass {
 public:
  explicit FiniteClass(std::vector<FiniteDistribution> members);

  int alphabet_size() const { return k_; }
  const std::vector<FiniteDistribution>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  int k_;
  std::vector<FiniteDistribution> members_;
};

/// Symbol multiplicities of a length-n sequence: a composition of n into
/// k nonnegative parts.
struct TypeVector {
  std::vector<std::int64_t> counts;
  std::int64_t n;

  static TypeVector from_counts(std::vector<std::int64_t> counts);
};

/// Streams every composition of n into k nonnegative parts exactly once,
/// in lexicographically decreasing order, in constant memory.
///
///   for (const auto& counts : TypeRange(n, k)) ...
class TypeRange {
 public:
  TypeRange(std::int64_t n, int k);

  class iterator {
   public:
    using value_type = std::vector<std::int64_t>;

    iterator() : done_(true), n_(0) {}
    iterator(std::int64_t n, int k);

    const std::vector<std::int64_t>& operator*() const { return counts_; }
    iterator& operator++();
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_;
    }

   private:
    std::vector<std::int64_t> counts_;
    bool done_;
    std::int64_t n_;
  };

  iterator begin() const { return iterator(n_, k_); }
  iterator end() const { return iterator(); }

 private:
  std::int64_t n_;
  int k_;
};

/// C(n+k-1, k-1) as a double; the number of types TypeRange(n, k) yields.
double composition_count(std::int64_t n, int k);

/// S(c) = sum_x max_{P in c} P(x); bits = log2 S.
RedundancyValue shtarkov_sum_explicit(const FiniteClass& c);

/// Maximum-likelihood probability of a type under the full simplex D_k:
/// log [ multinomial(n; m) * prod (m_i/n)^{m_i} ], with 0^0 = 1.
LogSpace ml_prob_type_full_iid(const TypeVector& t);

/// S(D_k^n) summed over types. Budget-guarded; budget <= 0 uses the
/// process default.
RedundancyValue shtarkov_iid_types(int k, std::int64_t n,
                                   std::int64_t budget = 0);

/// S(D_k^n) summed over all k^n sequences; independent route that must
/// agree with shtarkov_iid_types.
RedundancyValue shtarkov_iid_sequences(int k, std::int64_t n,
                                       std::int64_t budget = 0);

/// S(c^n) for an explicit class, over types:
/// sum_types multinomial(n; m) * max_{P in c} prod p_i^{m_i}.
RedundancyValue shtarkov_class_product_power(const FiniteClass& c,
                                             std::int64_t n,
                                             std::int64_t budget = 0);

/// The full cross product {P_X x P_Y} over an alphabet of size kx*ky;
/// pair (x, y) maps to index x*ky + y.
FiniteClass product_class(const FiniteClass& cx, const FiniteClass& cy,
                          std::int64_t budget = 0);

}  // namespace shtarkov
