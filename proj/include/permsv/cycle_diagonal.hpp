#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "permsv/error.hpp"
#include "permsv/log_real.hpp"
#include "permsv/perm.hpp"

namespace permsv {

using Complex = std::complex<double>;

// The diagonal of one cycle block D_i, in orbit order, with the random-walk prefix sums
// S_k = sum_{l <= k} 2 log|d_l| and the cumulative phases of (-d_l).
//
// Indices in the accessors are 1-based to match the block's rows. S_k is -inf once a zero
// entry has been seen; log_beta_sq() handles zeros without forming -inf - -inf.
class CycleDiagonal {
 public:
  CycleDiagonal() = default;

  explicit CycleDiagonal(std::vector<Complex> entries) : entries_(std::move(entries)) {
    const std::size_t n = entries_.size();
    if (n == 0) throw InvalidInput("CycleDiagonal: empty block");
    log_prefix_.assign(n + 1, 0.0);
    finite_prefix_.assign(n + 1, 0.0);
    zero_prefix_.assign(n + 1, 0);
    phase_prefix_.assign(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      const Complex d = entries_[k - 1];
      if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
        throw InvalidInput("CycleDiagonal: non-finite entry at position " + std::to_string(k));
      }
      const bool zero = (d == Complex(0.0, 0.0));
      zero_prefix_[k] = zero_prefix_[k - 1] + (zero ? 1 : 0);
      finite_prefix_[k] = finite_prefix_[k - 1] + (zero ? 0.0 : 2.0 * std::log(std::abs(d)));
      log_prefix_[k] = zero_prefix_[k] > 0 ? kNegInf : finite_prefix_[k];
      phase_prefix_[k] = phase_prefix_[k - 1] + (zero ? 0.0 : std::arg(-d));
    }
  }

  // The diagonal of block C in orbit order (d_{n_i}, d_{sigma(n_i)}, ...).
  static CycleDiagonal for_cycle(std::span<const std::size_t> cycle, std::span<const Complex> d_full) {
    std::vector<Complex> e;
    e.reserve(cycle.size());
    for (std::size_t idx : cycle) e.push_back(d_full[idx - 1]);
    return CycleDiagonal(std::move(e));
  }

  std::size_t size() const { return entries_.size(); }
  std::span<const Complex> entries() const { return entries_; }
  Complex entry(std::size_t k) const { return entries_[k - 1]; }

  std::span<const double> log_prefix() const { return log_prefix_; }
  std::span<const double> phase_prefix() const { return phase_prefix_; }

  bool has_zero() const { return zero_prefix_.back() > 0; }

  // xi_k = 2 log|d_k|
  double xi(std::size_t k) const {
    return entries_[k - 1] == Complex(0.0, 0.0) ? kNegInf : finite_prefix_[k] - finite_prefix_[k - 1];
  }

  // log |beta_{k,m}|^2 = S_m - S_{k-1}, for 1 <= k <= m + 1 <= n + 1 (0 when k = m + 1).
  double log_beta_sq(std::size_t k, std::size_t m) const {
    if (k < 1 || k > m + 1 || m > size()) {
      throw InvalidInput("beta index out of range: k=" + std::to_string(k) + ", m=" + std::to_string(m) +
                         ", n=" + std::to_string(size()));
    }
    if (zero_prefix_[m] != zero_prefix_[k - 1]) return kNegInf;
    return finite_prefix_[m] - finite_prefix_[k - 1];
  }

  // log|prod d| = S_n / 2 and the phase of prod(-d_l).
  double log_abs_product() const { return has_zero() ? kNegInf : finite_prefix_.back() / 2.0; }
  double neg_product_phase() const { return phase_prefix_.back(); }

 private:
  std::vector<Complex> entries_;
  std::vector<double> log_prefix_;
  std::vector<double> finite_prefix_;
  std::vector<std::size_t> zero_prefix_;
  std::vector<double> phase_prefix_;
};

}  // namespace permsv
