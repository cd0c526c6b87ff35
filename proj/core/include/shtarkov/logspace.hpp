#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace shtarkov {

/// A nonnegative magnitude held as its natural logarithm.
///
/// The bottom element (value -inf) represents exactly zero and is an
/// identity for log-space addition. operator+ adds the underlying
/// magnitudes (log-sum-exp); operator* multiplies them (adds logs).
class LogSpace {
 public:
  constexpr LogSpace() : v_(-std::numeric_limits<double>::infinity()) {}
  constexpr explicit LogSpace(double log_value) : v_(log_value) {}

  static constexpr LogSpace bottom() { return LogSpace(); }
  static constexpr LogSpace one() { return LogSpace(0.0); }
  static LogSpace from_linear(double x) {
    return x > 0.0 ? LogSpace(std::log(x)) : bottom();
  }

  constexpr double value() const { return v_; }
  constexpr bool is_bottom() const {
    return v_ == -std::numeric_limits<double>::infinity();
  }
  double to_linear() const { return is_bottom() ? 0.0 : std::exp(v_); }
  double to_bits() const { return v_ / std::numbers::ln2; }

  friend LogSpace operator+(LogSpace a, LogSpace b) {
    if (a.is_bottom()) return b;
    if (b.is_bottom()) return a;
    double hi = std::max(a.v_, b.v_);
    double lo = std::min(a.v_, b.v_);
    return LogSpace(hi + std::log1p(std::exp(lo - hi)));
  }
  LogSpace& operator+=(LogSpace b) { return *this = *this + b; }

  friend constexpr LogSpace operator*(LogSpace a, LogSpace b) {
    if (a.is_bottom() || b.is_bottom()) return bottom();
    return LogSpace(a.v_ + b.v_);
  }
  LogSpace& operator*=(LogSpace b) { return *this = *this * b; }

  friend constexpr bool operator==(LogSpace a, LogSpace b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(LogSpace a, LogSpace b) { return a.v_ <=> b.v_; }

 private:
  double v_;
};

/// log sum_i exp(t_i), overflow-safe by max-shift. Terms are consumed in
/// the given order; the empty sum is bottom.
inline LogSpace log_sum_exp(std::span<const LogSpace> terms) {
  if (terms.empty()) return LogSpace::bottom();
  double hi = -std::numeric_limits<double>::infinity();
  for (const LogSpace& t : terms) hi = std::max(hi, t.value());
  if (hi == -std::numeric_limits<double>::infinity()) return LogSpace::bottom();
  double acc = 0.0;
  for (const LogSpace& t : terms) acc += std::exp(t.value() - hi);
  return LogSpace(hi + std::log(acc));
}

/// Compensated (Neumaier) accumulator for long sums of linear-space terms.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace shtarkov
