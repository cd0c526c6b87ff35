#pragma once

#include <numbers>

#include "shtarkov/logspace.hpp"

namespace shtarkov {

/// Worst-case redundancy of a class: R = log2 S, with S the Shtarkov sum.
struct RedundancyValue {
  double bits;
  LogSpace shtarkov_log;

  static RedundancyValue from_log(LogSpace s) {
    return {s.to_bits(), s};
  }
  static RedundancyValue from_linear(double s) {
    return from_log(LogSpace::from_linear(s));
  }
  double s() const { return shtarkov_log.to_linear(); }
};

/// Certified two-sided redundancy bound, in bits. truncation_bits is the
/// slack already folded into upper_bits. asymptotic marks closed forms
/// whose lower side carries an uncertified o(1) factor.
struct RedundancyInterval {
  double lower_bits = 0.0;
  double upper_bits = 0.0;
  double truncation_bits = 0.0;
  bool asymptotic = false;
};

inline double bits_from_nats(double nats) { return nats / std::numbers::ln2; }
inline double nats_from_bits(double bits) { return bits * std::numbers::ln2; }

}  // namespace shtarkov
