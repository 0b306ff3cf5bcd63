#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace packbounds {

/// Mantissa in [1, 10) and a decimal exponent.
struct Scientific {
  double mantissa = 0.0;
  int exponent = 0;
};

/// A nonnegative real kept as its natural logarithm so that products of
/// factorials, powers and tiny densities never leave double range.
class LogScaled {
 public:
  constexpr LogScaled() = default;

  static constexpr LogScaled zero() { return LogScaled(); }
  static LogScaled from_log(double log_value);
  static LogScaled from_value(double value);

  bool is_zero() const { return is_zero_; }
  /// Natural log of the magnitude; -inf for zero.
  double log() const;
  double log10() const;
  double log2() const;
  /// Ordinary double; underflows to 0 or overflows to inf outside double range.
  double value() const;
  Scientific scientific() const;

  LogScaled& operator*=(const LogScaled& other);
  LogScaled& operator/=(const LogScaled& other);
  LogScaled pow(double exponent) const;

  friend LogScaled operator*(LogScaled a, const LogScaled& b) { return a *= b; }
  friend LogScaled operator/(LogScaled a, const LogScaled& b) { return a /= b; }
  friend bool operator<(const LogScaled& a, const LogScaled& b);
  friend bool operator==(const LogScaled& a, const LogScaled& b) = default;

 private:
  bool is_zero_ = true;
  double log_value_ = 0.0;
};

}  // namespace packbounds
