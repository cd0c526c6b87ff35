#include "shtarkov/lemma_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shtarkov {

namespace {

constexpr double kEqTol = 1e-10;

std::string class_to_string(const FiniteClass& c) {
  std::ostringstream os;
  os << "{";
  for (std::size_t m = 0; m < c.size(); ++m) {
    os << (m ? ", (" : "(");
    for (int x = 0; x < c.alphabet_size(); ++x)
      os << (x ? "," : "") << c.members()[m].prob(x);
    os << ")";
  }
  os << "}";
  return os.str();
}

bool member_of(const FiniteDistribution& p, const FiniteClass& c) {
  for (const auto& q : c.members()) {
    bool same = true;
    for (int x = 0; x < p.alphabet_size(); ++x)
      if (p.prob(x) != q.prob(x)) {
        same = false;
        break;
      }
    if (same) return true;
  }
  return false;
}

}  // namespace

CheckReport check_subset(const FiniteClass& c, const FiniteClass& sub) {
  if (sub.alphabet_size() != c.alphabet_size())
    throw std::invalid_argument("check_subset: alphabet mismatch");
  for (const auto& p : sub.members())
    if (!member_of(p, c))
      throw std::invalid_argument("check_subset: sub is not a subset of c");
  CheckReport report;
  report.name = "subset redundancy";
  report.tolerance = kEqTol;
  double bits_sub = shtarkov_sum_explicit(sub).bits;
  double bits_c = shtarkov_sum_explicit(c).bits;
  report.record(bits_sub - bits_c, class_to_string(sub));
  return report;
}

CheckReport check_union(const std::vector<FiniteClass>& parts) {
  if (parts.empty()) throw std::invalid_argument("check_union: no parts");
  const int k = parts.front().alphabet_size();
  std::vector<FiniteDistribution> everything;
  double max_bits = 0.0;
  for (const auto& part : parts) {
    if (part.alphabet_size() != k)
      throw std::invalid_argument("check_union: alphabet mismatch");
    max_bits = std::max(max_bits, shtarkov_sum_explicit(part).bits);
    for (const auto& p : part.members()) everything.push_back(p);
  }
  double bits_union = shtarkov_sum_explicit(FiniteClass(everything)).bits;
  double log_parts = std::log2(static_cast<double>(parts.size()));

  CheckReport report;
  report.name = "union redundancy";
  report.tolerance = kEqTol;
  report.record(max_bits - bits_union, "lower side");
  report.record(bits_union - (max_bits + log_parts), "upper side");
  return report;
}

CheckReport check_function(const FiniteClass& c,
                           const std::vector<int>& mapping) {
  const int k = c.alphabet_size();
  if (static_cast<int>(mapping.size()) != k)
    throw std::invalid_argument("check_function: mapping not total");
  int image_size = 0;
  for (int y : mapping) {
    if (y < 0) throw std::invalid_argument("check_function: negative image");
    image_size = std::max(image_size, y + 1);
  }
  std::vector<FiniteDistribution> image_members;
  for (const auto& p : c.members()) {
    std::vector<double> q(static_cast<std::size_t>(image_size), 0.0);
    for (int x = 0; x < k; ++x) q[mapping[x]] += p.prob(x);
    double sum = 0.0;
    for (double v : q) sum += v;
    for (double& v : q) v /= sum;
    image_members.emplace_back(std::move(q));
  }
  double bits_image =
      shtarkov_sum_explicit(FiniteClass(std::move(image_members))).bits;
  double bits_c = shtarkov_sum_explicit(c).bits;

  bool bijection =
      std::set<int>(mapping.begin(), mapping.end()).size() ==
          static_cast<std::size_t>(k) &&
      image_size == k;

  CheckReport report;
  report.name = "function redundancy";
  report.tolerance = kEqTol;
  report.record(bits_image - bits_c, "data-processing side");
  if (bijection)
    report.record(std::abs(bits_image - bits_c), "bijection equality");
  return report;
}

CheckReport check_product(const FiniteClass& cx, const FiniteClass& cy) {
  CheckReport report;
  report.name = "product redundancy";
  report.tolerance = kEqTol;

  FiniteClass product = product_class(cx, cy);
  double bits_x = shtarkov_sum_explicit(cx).bits;
  double bits_y = shtarkov_sum_explicit(cy).bits;
  double bits_xy = shtarkov_sum_explicit(product).bits;
  report.record(std::abs(bits_xy - bits_x - bits_y),
                class_to_string(cx) + " x " + class_to_string(cy));

  // Marginal corollary on a strict sub-class of the product: drop the
  // last member (when there is more than one). Product member m is
  // cx[m / |cy|] x cy[m % |cy|].
  if (product.size() > 1) {
    std::vector<FiniteDistribution> sub_members(product.members().begin(),
                                                product.members().end() - 1);
    std::set<std::size_t> xs;
    std::set<std::size_t> ys;
    for (std::size_t m = 0; m < sub_members.size(); ++m) {
      xs.insert(m / cy.size());
      ys.insert(m % cy.size());
    }
    std::vector<FiniteDistribution> margin_x;
    std::vector<FiniteDistribution> margin_y;
    for (std::size_t i : xs) margin_x.push_back(cx.members()[i]);
    for (std::size_t j : ys) margin_y.push_back(cy.members()[j]);
    double bits_sub =
        shtarkov_sum_explicit(FiniteClass(std::move(sub_members))).bits;
    double bound =
        shtarkov_sum_explicit(FiniteClass(std::move(margin_x))).bits +
        shtarkov_sum_explicit(FiniteClass(std::move(margin_y))).bits;
    report.record(bits_sub - bound, "marginal corollary");
  }
  return report;
}

CheckReport check_monotone_subadditive(int k, std::int64_t n_max,
                                       std::int64_t budget) {
  CheckReport report;
  report.name = "monotonicity and subadditivity";
  report.tolerance = kEqTol;
  std::vector<double> bits(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t n = 0; n <= n_max; ++n)
    bits[static_cast<std::size_t>(n)] = shtarkov_iid_types(k, n, budget).bits;
  for (std::int64_t n = 0; n < n_max; ++n) {
    std::ostringstream os;
    os << "k=" << k << " monotone at n=" << n;
    report.record(bits[n] - bits[n + 1], os.str());
  }
  for (std::int64_t n1 = 1; n1 < n_max; ++n1) {
    for (std::int64_t n2 = 1; n1 + n2 <= n_max; ++n2) {
      std::ostringstream os;
      os << "k=" << k << " subadditive at " << n1 << "+" << n2;
      report.record(bits[n1 + n2] - bits[n1] - bits[n2], os.str());
    }
  }
  return report;
}

CheckReport check_type_equality(int k, std::int64_t n_max,
                                std::int64_t budget) {
  CheckReport report;
  report.name = "type redundancy equality";
  report.tolerance = kEqTol;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    double via_types = shtarkov_iid_types(k, n, budget).s();
    double via_seqs = shtarkov_iid_sequences(k, n, budget).s();
    std::ostringstream os;
    os << "k=" << k << " n=" << n;
    report.record(std::abs(via_types - via_seqs) / std::max(via_types, via_seqs),
                  os.str());
  }
  return report;
}

FiniteDistribution random_distribution(std::mt19937_64& rng, int k) {
  std::vector<double> p(static_cast<std::size_t>(k));
  double sum = 0.0;
  for (double& v : p) {
    // (0, 1]: zero-sum draws are impossible by construction.
    v = 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
    sum += v;
  }
  for (double& v : p) v /= sum;
  return FiniteDistribution(std::move(p));
}

FiniteClass random_class(std::mt19937_64& rng, int k, int members) {
  std::vector<FiniteDistribution> ms;
  ms.reserve(static_cast<std::size_t>(members));
  for (int i = 0; i < members; ++i) ms.push_back(random_distribution(rng, k));
  return FiniteClass(std::move(ms));
}

std::vector<CheckReport> run_preliminary_battery(std::uint64_t seed) {
  constexpr int kInstances = 100;
  std::vector<CheckReport> out;

  {
    std::mt19937_64 rng(seed ^ 0x5b5e1a6f0c1d2e3fULL);
    CheckReport merged;
    merged.name = "subset redundancy";
    merged.tolerance = kEqTol;
    for (int i = 0; i < kInstances; ++i) {
      FiniteClass c = random_class(rng, 4, 5);
      std::vector<FiniteDistribution> sub{c.members()[rng() % c.size()],
                                          c.members()[rng() % c.size()]};
      CheckReport r = check_subset(c, FiniteClass(std::move(sub)));
      merged.record(r.worst_violation, r.detail);
    }
    out.push_back(merged);
  }
  {
    std::mt19937_64 rng(seed ^ 0x2c3d4e5f60718293ULL);
    CheckReport merged;
    merged.name = "union redundancy";
    merged.tolerance = kEqTol;
    for (int i = 0; i < kInstances; ++i) {
      std::vector<FiniteClass> parts;
      int count = 2 + static_cast<int>(rng() % 2);
      for (int j = 0; j < count; ++j)
        parts.push_back(random_class(rng, 4, 1 + static_cast<int>(rng() % 3)));
      CheckReport r = check_union(parts);
      merged.record(r.worst_violation, r.detail);
    }
    out.push_back(merged);
  }
  {
    std::mt19937_64 rng(seed ^ 0x734958a1b2c3d4e5ULL);
    CheckReport merged;
    merged.name = "function redundancy";
    merged.tolerance = kEqTol;
    for (int i = 0; i < kInstances; ++i) {
      FiniteClass c = random_class(rng, 4, 4);
      std::vector<int> mapping(4);
      if (i % 3 == 0) {
        // Random bijection: equality branch.
        std::iota(mapping.begin(), mapping.end(), 0);
        for (int x = 3; x > 0; --x)
          std::swap(mapping[x], mapping[rng() % (x + 1)]);
      } else {
        for (int& y : mapping) y = static_cast<int>(rng() % 3);
      }
      CheckReport r = check_function(c, mapping);
      merged.record(r.worst_violation, r.detail);
    }
    out.push_back(merged);
  }
  {
    std::mt19937_64 rng(seed ^ 0x18f9a0b1c2d3e4f5ULL);
    CheckReport merged;
    merged.name = "product redundancy";
    merged.tolerance = kEqTol;
    for (int i = 0; i < kInstances; ++i) {
      FiniteClass cx = random_class(rng, 3, 3);
      FiniteClass cy = random_class(rng, 4, 3);
      CheckReport r = check_product(cx, cy);
      merged.record(r.worst_violation, r.detail);
    }
    out.push_back(merged);
  }
  for (int k = 1; k <= 3; ++k)
    out.push_back(check_monotone_subadditive(k, 8));
  for (int k = 1; k <= 3; ++k)
    out.push_back(check_type_equality(k, 6));
  return out;
}

}  // namespace shtarkov
