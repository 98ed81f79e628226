#pragma once

// Shared fixtures and naive reference formulas for the test suite. Everything here is plain
// double-loop arithmetic in long double, deliberately unlike the log-domain library code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "permsv/permsv.hpp"

namespace permsv::testing {

using LD = long double;

inline std::vector<Complex> random_diag(Stream& rng, std::size_t n, double mu_log = -0.1, double sigma_log = 0.6) {
  std::vector<Complex> d(n);
  for (auto& z : d) {
    const double r = std::exp(mu_log + sigma_log * rng.normal());
    z = std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
  }
  return d;
}

inline std::vector<Complex> random_vector(Stream& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = Complex(rng.normal(), rng.normal());
  return v;
}

inline LD abs2(std::complex<LD> z) { return z.real() * z.real() + z.imag() * z.imag(); }

// |beta_{k,m}|^2 by direct multiplication; 1 when k = m + 1.
inline LD naive_beta_sq(std::span<const Complex> d, std::size_t k, std::size_t m) {
  LD p = 1.0L;
  for (std::size_t l = k; l <= m; ++l) p *= abs2(std::complex<LD>(d[l - 1]));
  return p;
}

inline LD naive_c0(std::span<const Complex> d) {
  std::complex<LD> p = 1.0L;
  for (const auto& z : d) p *= std::complex<LD>(z);
  const LD sign = d.size() % 2 == 0 ? 1.0L : -1.0L;
  return abs2(p - sign);
}

// Row sums of the upper-bound denominator, ties to the smallest k:
//   k = 1: sum_{m=0}^{n-1} |beta_{1,m}|^2,  k >= 2: sum_{m=k-1}^{n} |beta_{k,m}|^2.
inline std::pair<LD, std::size_t> naive_gamma(std::span<const Complex> d) {
  const std::size_t n = d.size();
  LD best = -1.0L;
  std::size_t arg = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    LD s = 0.0L;
    if (k == 1) {
      for (std::size_t m = 0; m + 1 <= n; ++m) s += naive_beta_sq(d, 1, m);
    } else {
      for (std::size_t m = k - 1; m <= n; ++m) s += naive_beta_sq(d, k, m);
    }
    if (s > best) {
      best = s;
      arg = k;
    }
  }
  return {best, arg};
}

inline LD naive_rho1(std::span<const Complex> d) {
  const std::size_t n = d.size();
  LD a = 0.0L, b = 0.0L;
  for (std::size_t k = 1; k <= n; ++k) a += naive_beta_sq(d, 1, k - 1);
  for (std::size_t m = 1; m <= n; ++m) b += naive_beta_sq(d, m + 1, n);
  return a * b / naive_c0(d);
}

inline LD naive_rho2(std::span<const Complex> d) {
  const std::size_t n = d.size();
  LD s = 0.0L;
  for (std::size_t m = 2; m <= n; ++m)
    for (std::size_t k = 1; k <= m - 1; ++k) s += naive_beta_sq(d, k + 1, m - 1);
  return s;
}

inline LD naive_t(std::span<const double> s) {
  LD t = 0.0L;
  for (std::size_t k = 1; k < s.size(); ++k)
    for (std::size_t m = k; m < s.size(); ++m) t += std::exp(static_cast<LD>(s[m]) - static_cast<LD>(s[k]));
  return t;
}

inline double naive_m(std::span<const double> s) {
  double best = kNegInf;
  for (std::size_t k = 1; k < s.size(); ++k)
    for (std::size_t m = k; m < s.size(); ++m) best = std::max(best, s[m] - s[k]);
  return best;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace permsv::testing
