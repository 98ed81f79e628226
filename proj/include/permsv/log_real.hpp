#pragma once

// Log-domain arithmetic for quantities that span e^{+-O(N)}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>

namespace permsv {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b); -inf is the identity.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf || a == kInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// log(1 + e^x)
inline double softplus(double x) {
  if (x > 30.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// Streaming log-sum-exp with a running maximum.
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }

  double value() const { return sum_ == 0.0 ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

inline double log_sum_exp(std::span<const double> xs) {
  LogSumExp acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

// A nonnegative real held by its natural log. value() may overflow to inf or underflow to 0.
struct LogReal {
  double log = kNegInf;

  static LogReal from_value(double v) { return LogReal{v > 0.0 ? std::log(v) : kNegInf}; }
  static LogReal zero() { return LogReal{kNegInf}; }
  static LogReal one() { return LogReal{0.0}; }

  double value() const { return std::exp(log); }
  bool is_zero() const { return log == kNegInf; }

  friend LogReal operator*(LogReal a, LogReal b) { return LogReal{a.log + b.log}; }
  friend LogReal operator/(LogReal a, LogReal b) { return LogReal{a.log - b.log}; }
  friend LogReal operator+(LogReal a, LogReal b) { return LogReal{log_add(a.log, b.log)}; }
  friend bool operator<(LogReal a, LogReal b) { return a.log < b.log; }
  friend bool operator<=(LogReal a, LogReal b) { return a.log <= b.log; }
};

// Wrap an angle into (-pi, pi].
inline double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

// A complex number as log-magnitude plus phase. log_mag = -inf encodes zero.
struct LogComplex {
  double log_mag = kNegInf;
  double phase = 0.0;

  static LogComplex from(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) return {};
    return {std::log(std::abs(z)), wrap_phase(std::arg(z))};
  }

  std::complex<double> to_complex() const {
    if (log_mag == kNegInf) return {0.0, 0.0};
    return std::polar(std::exp(log_mag), phase);
  }

  bool is_zero() const { return log_mag == kNegInf; }

  friend LogComplex operator*(LogComplex a, LogComplex b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.log_mag + b.log_mag, wrap_phase(a.phase + b.phase)};
  }
  friend LogComplex operator/(LogComplex a, LogComplex b) {
    return {a.log_mag - b.log_mag, wrap_phase(a.phase - b.phase)};
  }
};

}  // namespace permsv
