#include "shtarkov/classes.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "shtarkov/budget.hpp"
#include "shtarkov/numerics.hpp"

namespace shtarkov {

FiniteDistribution::FiniteDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty())
    throw std::invalid_argument("FiniteDistribution: empty probability vector");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("FiniteDistribution: entry outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("FiniteDistribution: entries do not sum to 1");
}

FiniteClass::FiniteClass(std::vector<FiniteDistribution> members)
    : members_(std::move(members)) {
  if (members_.empty())
    throw std::invalid_argument("FiniteClass: class must be nonempty");
  k_ = members_.front().alphabet_size();
  for (const auto& m : members_)
    if (m.alphabet_size() != k_)
      throw std::invalid_argument("FiniteClass: mixed alphabet sizes");
}

TypeVector TypeVector::from_counts(std::vector<std::int64_t> counts) {
  std::int64_t n = 0;
  for (std::int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("TypeVector: negative count");
    n += c;
  }
  return TypeVector{std::move(counts), n};
}

TypeRange::TypeRange(std::int64_t n, int k) : n_(n), k_(k) {
  if (n < 0 || k < 1) throw std::invalid_argument("TypeRange: need n >= 0, k >= 1");
}

TypeRange::iterator::iterator(std::int64_t n, int k)
    : counts_(static_cast<std::size_t>(k), 0), done_(false), n_(n) {
  counts_[0] = n;
}

TypeRange::iterator& TypeRange::iterator::operator++() {
  const int k = static_cast<int>(counts_.size());
  if (k == 1 || counts_[k - 1] == n_) {
    done_ = true;
    return *this;
  }
  // Move one unit right from the rightmost nonzero position before the
  // last slot; everything to its right collapses onto the next slot.
  int i = k - 2;
  while (counts_[i] == 0) --i;
  std::int64_t tail = counts_[k - 1];
  counts_[k - 1] = 0;
  counts_[i] -= 1;
  counts_[i + 1] = tail + 1;
  return *this;
}

double composition_count(std::int64_t n, int k) {
  if (n < 0 || k < 1) throw std::invalid_argument("composition_count: bad args");
  if (k == 1) return 1.0;
  // C(n+k-1, k-1) via log-gamma; exact well past any usable budget.
  double v = std::lgamma(static_cast<double>(n + k)) -
             std::lgamma(static_cast<double>(n + 1)) -
             std::lgamma(static_cast<double>(k));
  return std::round(std::exp(v));
}

RedundancyValue shtarkov_sum_explicit(const FiniteClass& c) {
  KahanSum s;
  for (int x = 0; x < c.alphabet_size(); ++x) {
    double best = 0.0;
    for (const auto& p : c.members()) best = std::max(best, p.prob(x));
    s.add(best);
  }
  return RedundancyValue::from_linear(s.value());
}

LogSpace ml_prob_type_full_iid(const TypeVector& t) {
  if (t.n < 1) throw std::invalid_argument("ml_prob_type_full_iid: n must be >= 1");
  double log_n = std::log(static_cast<double>(t.n));
  double v = log_factorial(t.n);
  for (std::int64_t m : t.counts) {
    if (m == 0) continue;
    double dm = static_cast<double>(m);
    v -= log_factorial(m);
    v += dm * (std::log(dm) - log_n);
  }
  return LogSpace(v);
}

RedundancyValue shtarkov_iid_types(int k, std::int64_t n, std::int64_t budget) {
  if (k < 1 || n < 0) throw std::invalid_argument("shtarkov_iid_types: bad args");
  if (n == 0 || k == 1) return RedundancyValue::from_linear(1.0);
  require_budget(composition_count(n, k), budget, "shtarkov_iid_types");

  double log_n = std::log(static_cast<double>(n));
  double log_fact_n = log_factorial(n);
  KahanSum s;
  for (const auto& counts : TypeRange(n, k)) {
    double v = log_fact_n;
    for (std::int64_t m : counts) {
      if (m == 0) continue;
      double dm = static_cast<double>(m);
      v += dm * (std::log(dm) - log_n) - log_factorial(m);
    }
    s.add(std::exp(v));
  }
  return RedundancyValue::from_linear(s.value());
}

RedundancyValue shtarkov_iid_sequences(int k, std::int64_t n,
                                       std::int64_t budget) {
  if (k < 1 || n < 0)
    throw std::invalid_argument("shtarkov_iid_sequences: bad args");
  if (n == 0 || k == 1) return RedundancyValue::from_linear(1.0);
  require_budget(std::pow(static_cast<double>(k), static_cast<double>(n)),
                 budget, "shtarkov_iid_sequences");

  double log_n = std::log(static_cast<double>(n));
  std::vector<int> seq(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  KahanSum s;
  bool more = true;
  while (more) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int x : seq) ++counts[x];
    // sup_{P} P^n(x^n) at the empirical distribution of the sequence.
    double v = 0.0;
    for (std::int64_t m : counts) {
      if (m == 0) continue;
      double dm = static_cast<double>(m);
      v += dm * (std::log(dm) - log_n);
    }
    s.add(std::exp(v));
    // Odometer increment.
    more = false;
    for (std::size_t pos = seq.size(); pos-- > 0;) {
      if (++seq[pos] < k) {
        more = true;
        break;
      }
      seq[pos] = 0;
    }
  }
  return RedundancyValue::from_linear(s.value());
}

RedundancyValue shtarkov_class_product_power(const FiniteClass& c,
                                             std::int64_t n,
                                             std::int64_t budget) {
  if (n < 0) throw std::invalid_argument("shtarkov_class_product_power: n < 0");
  if (n == 0) return RedundancyValue::from_linear(1.0);
  const int k = c.alphabet_size();
  require_budget(composition_count(n, k) *
                     static_cast<double>(c.size()),
                 budget, "shtarkov_class_product_power");

  // Cache log p once; -inf marks zero entries.
  std::vector<std::vector<double>> log_probs;
  log_probs.reserve(c.size());
  for (const auto& p : c.members()) {
    std::vector<double> lp(static_cast<std::size_t>(k));
    for (int x = 0; x < k; ++x)
      lp[x] = p.prob(x) > 0.0 ? std::log(p.prob(x))
                              : -std::numeric_limits<double>::infinity();
    log_probs.push_back(std::move(lp));
  }

  double log_fact_n = log_factorial(n);
  KahanSum s;
  for (const auto& counts : TypeRange(n, k)) {
    double log_multinomial = log_fact_n;
    for (std::int64_t m : counts)
      if (m > 1) log_multinomial -= log_factorial(m);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& lp : log_probs) {
      double v = 0.0;
      for (int x = 0; x < k; ++x) {
        if (counts[x] == 0) continue;
        v += static_cast<double>(counts[x]) * lp[x];
      }
      best = std::max(best, v);
    }
    if (best != -std::numeric_limits<double>::infinity())
      s.add(std::exp(log_multinomial + best));
  }
  return RedundancyValue::from_linear(s.value());
}

FiniteClass product_class(const FiniteClass& cx, const FiniteClass& cy,
                          std::int64_t budget) {
  require_budget(static_cast<double>(cx.size()) * static_cast<double>(cy.size()) *
                     static_cast<double>(cx.alphabet_size()) *
                     static_cast<double>(cy.alphabet_size()),
                 budget, "product_class");
  const int ky = cy.alphabet_size();
  std::vector<FiniteDistribution> members;
  members.reserve(cx.size() * cy.size());
  for (const auto& px : cx.members()) {
    for (const auto& py : cy.members()) {
      std::vector<double> joint(
          static_cast<std::size_t>(cx.alphabet_size()) * ky);
      for (int x = 0; x < cx.alphabet_size(); ++x)
        for (int y = 0; y < ky; ++y)
          joint[static_cast<std::size_t>(x) * ky + y] = px.prob(x) * py.prob(y);
      // Renormalize away the rounding drift of the pairwise products.
      double sum = std::accumulate(joint.begin(), joint.end(), 0.0);
      for (double& v : joint) v /= sum;
      members.emplace_back(std::move(joint));
    }
  }
  return FiniteClass(std::move(members));
}

}  // namespace shtarkov
