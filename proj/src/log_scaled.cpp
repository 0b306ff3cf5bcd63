#include "packbounds/log_scaled.hpp"

#include <stdexcept>

namespace packbounds {

namespace {
constexpr double kLn10 = 2.302585092994045684;
constexpr double kLn2 = 0.693147180559945309;
}  // namespace

LogScaled LogScaled::from_log(double log_value) {
  if (std::isnan(log_value)) throw std::domain_error("LogScaled: NaN logarithm");
  LogScaled out;
  if (log_value == -std::numeric_limits<double>::infinity()) return out;
  out.is_zero_ = false;
  out.log_value_ = log_value;
  return out;
}

LogScaled LogScaled::from_value(double value) {
  if (!(value >= 0.0)) throw std::domain_error("LogScaled: negative or NaN value");
  if (value == 0.0) return zero();
  return from_log(std::log(value));
}

double LogScaled::log() const {
  return is_zero_ ? -std::numeric_limits<double>::infinity() : log_value_;
}

double LogScaled::log10() const { return log() / kLn10; }
double LogScaled::log2() const { return log() / kLn2; }

double LogScaled::value() const { return is_zero_ ? 0.0 : std::exp(log_value_); }

Scientific LogScaled::scientific() const {
  if (is_zero_) return {};
  const double l10 = log10();
  double exponent = std::floor(l10);
  double mantissa = std::pow(10.0, l10 - exponent);
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  } else if (mantissa < 1.0) {
    mantissa *= 10.0;
    exponent -= 1.0;
  }
  return {mantissa, static_cast<int>(exponent)};
}

LogScaled& LogScaled::operator*=(const LogScaled& other) {
  if (is_zero_ || other.is_zero_) {
    *this = zero();
  } else {
    log_value_ += other.log_value_;
  }
  return *this;
}

LogScaled& LogScaled::operator/=(const LogScaled& other) {
  if (other.is_zero_) throw std::domain_error("LogScaled: division by zero");
  if (!is_zero_) log_value_ -= other.log_value_;
  return *this;
}

LogScaled LogScaled::pow(double exponent) const {
  if (is_zero_) {
    if (exponent <= 0.0) throw std::domain_error("LogScaled: 0 to a non-positive power");
    return zero();
  }
  return from_log(log_value_ * exponent);
}

bool operator<(const LogScaled& a, const LogScaled& b) {
  if (a.is_zero_) return !b.is_zero_;
  if (b.is_zero_) return false;
  return a.log_value_ < b.log_value_;
}

}  // namespace packbounds
