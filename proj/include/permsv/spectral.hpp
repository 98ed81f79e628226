#pragma once

// Deterministic spectral quantities of one cycle block D + U_n and of A = D + M_sigma.
//
// Every product of diagonal entries is carried as a log-magnitude (the prefix sums S_k of
// CycleDiagonal) plus a phase; sums of squared magnitudes are accumulated with log-sum-exp.
// Nothing here forms prod d_l in plain floating point, so blocks of any length are safe.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "permsv/cycle_diagonal.hpp"
#include "permsv/error.hpp"
#include "permsv/log_real.hpp"
#include "permsv/perm.hpp"
#include "permsv/rng.hpp"

namespace permsv {

// A block is singular when |prod d - (-1)^n| < kSingularRelTol * max(1, |prod d|).
inline constexpr double kSingularRelTol = 1e-12;

// log c0 = log |(-1)^n - prod d|^2 = log |1 - w|^2 with w = prod(-d_l).
// Uses |1 - w|^2 = (1 - r)^2 + 4 r sin^2(psi / 2) so that w near 1 does not cancel.
inline double log_c0(const CycleDiagonal& d) {
  const double l = d.log_abs_product();
  if (l == kNegInf) return 0.0;
  const double half = wrap_phase(d.neg_product_phase()) / 2.0;
  const double s2 = std::sin(half) * std::sin(half);
  if (l <= 0.0) {
    const double a = std::expm1(l);
    const double v = a * a + 4.0 * std::exp(l) * s2;
    return v > 0.0 ? std::log(v) : kNegInf;
  }
  const double a = std::expm1(-l);
  const double v = a * a + 4.0 * std::exp(-l) * s2;
  return v > 0.0 ? 2.0 * l + std::log(v) : kNegInf;
}

inline LogReal c0(const CycleDiagonal& d) { return LogReal{log_c0(d)}; }

inline bool is_singular(const CycleDiagonal& d) {
  const double l = d.log_abs_product();
  return log_c0(d) / 2.0 < std::log(kSingularRelTol) + std::max(0.0, l);
}

inline LogReal beta_sq(const CycleDiagonal& d, std::size_t k, std::size_t m) {
  return LogReal{d.log_beta_sq(k, m)};
}

struct GammaResult {
  LogReal value;
  std::size_t argmax = 1;
};

// Row sums G_k of squared products over which the upper bound c0 / gamma is maximized:
//   k = 1:  sum_{m=0}^{n-1} |beta_{1,m}|^2
//   k >= 2: sum_{m=k-1}^{n} |beta_{k,m}|^2
// i.e. every product of consecutive entries starting at k (including the empty one) except
// the full-cycle product. Returned in log form, index 0 unused.
inline std::vector<double> gamma_rows_log(const CycleDiagonal& d) {
  const std::size_t n = d.size();
  const auto s = d.log_prefix();
  std::vector<double> rows(n + 1, kNegInf);
  rows[1] = log_sum_exp(s.subspan(0, n));
  // G_k = 1 + |d_k|^2 G_{k+1}, G_{n+1} = 1.
  double g = 0.0;
  for (std::size_t k = n; k >= 2; --k) {
    g = softplus(d.xi(k) + g);
    rows[k] = g;
  }
  return rows;
}

// Ties (within 1e-12 relative) resolve to the smallest k.
inline GammaResult gamma(const CycleDiagonal& d) {
  const auto rows = gamma_rows_log(d);
  double best = kNegInf;
  for (std::size_t k = 1; k < rows.size(); ++k) best = std::max(best, rows[k]);
  std::size_t arg = 1;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k] >= best - 1e-12 * std::max(1.0, std::abs(best))) {
      arg = k;
      break;
    }
  }
  return {LogReal{best}, arg};
}

// rho^(1) = (1/c0) (sum_{k=1}^n |beta_{1,k-1}|^2) (sum_{m=1}^n |beta_{m+1,n}|^2) = ||C(D)||_HS^2.
inline LogReal rho1(const CycleDiagonal& d) {
  if (is_singular(d)) throw SingularError("rho1: cycle block is singular");
  const std::size_t n = d.size();
  const auto s = d.log_prefix();
  const double head = log_sum_exp(s.subspan(0, n));
  LogSumExp tail;
  double w = 0.0;  // log |beta_{m+1,n}|^2, starting at m = n
  tail.add(w);
  for (std::size_t m = n - 1; m >= 1; --m) {
    w += d.xi(m + 1);
    tail.add(w);
  }
  return LogReal{head + tail.value() - log_c0(d)};
}

// rho^(2) = sum_{1 <= k <= m-1, m <= n} |beta_{k+1,m-1}|^2 = ||B(D)||_HS^2, via
// P_1 = 1, P_{j+1} = |d_{j+1}|^2 P_j + 1, rho2 = sum_{j=1}^{n-1} P_j.
inline LogReal rho2(const CycleDiagonal& d) {
  const std::size_t n = d.size();
  LogSumExp acc;
  double p = 0.0;
  for (std::size_t j = 1; j + 1 <= n; ++j) {
    if (j > 1) p = softplus(d.xi(j) + p);
    acc.add(p);
  }
  return LogReal{acc.value()};
}

// phi_n(z) = dist(-z, n-th roots of unity).
inline double phi(std::size_t n, Complex z) {
  if (n == 0) throw InvalidInput("phi: n must be positive");
  if (z == Complex(0.0, 0.0)) return 1.0;
  const double two_pi = 2.0 * std::numbers::pi;
  const double alpha = std::arg(-z);
  const auto nn = static_cast<long long>(n);
  const long long j0 = static_cast<long long>(std::floor(alpha * static_cast<double>(n) / two_pi + 0.5));
  double best = kInf;
  for (long long j = j0 - 1; j <= j0 + 1; ++j) {
    const long long r = ((j % nn) + nn) % nn;
    const Complex omega = std::polar(1.0, two_pi * static_cast<double>(r) / static_cast<double>(n));
    best = std::min(best, std::abs(omega + z));
  }
  return best;
}

// s_min(dI + M_sigma) = min over cycle lengths of phi_{N_i}(d).
inline double smin_scalar(const Permutation& sigma, Complex d) {
  const auto dec = decompose(sigma);
  double best = kInf;
  for (std::size_t len : dec.lengths) best = std::min(best, phi(len, d));
  return best;
}

namespace detail {

// 1 - r e^{i psi} for r = e^l <= 1, without cancellation near w = 1.
inline Complex one_minus_polar(double l, double psi) {
  if (l == kNegInf) return {1.0, 0.0};
  const double r = std::exp(l);
  const double h = std::sin(psi / 2.0);
  return {-std::expm1(l) + 2.0 * r * h * h, -r * std::sin(psi)};
}

// mant * e^scale, kept away from overflow and underflow.
struct ScaledComplex {
  Complex mant{0.0, 0.0};
  double scale = 0.0;

  void normalize() {
    const double a = std::abs(mant);
    if (a == 0.0) return;
    if (a > 1e150 || (scale != 0.0 && a < 1e-150)) {
      scale += std::log(a);
      mant /= a;
      if (scale < 0.0) {
        mant *= std::exp(scale);
        scale = 0.0;
      }
    }
  }

  void add(Complex y) {
    if (scale <= 0.0) {
      mant = mant * std::exp(scale) + y;
      scale = 0.0;
    } else {
      mant += y * std::exp(-scale);
    }
    normalize();
  }

  void mul(Complex f) {
    mant *= f;
    normalize();
  }
};

}  // namespace detail

// Direct solver for (D + U_n) x = y in O(n).
//
// One component x_s is obtained from the closing equation of the cyclic recursion
// d_k x_k + x_{k+1} = y_k (Horner with rescaling, divided by 1 - prod(-d)); the rest follow
// by running the recursion around the cycle. s - 1 is the position of the walk maximum and
// the direction follows the sign of S_n, so every propagated error is multiplied by a
// product of modulus at most one.
class CycleSolver {
 public:
  explicit CycleSolver(const CycleDiagonal& d) : d_(d) {
    if (is_singular(d_)) throw SingularError("solve: cycle block is singular");
    const std::size_t n = d_.size();
    const auto s = d_.log_prefix();
    std::size_t jmax = 0;
    for (std::size_t j = 1; j < n; ++j) {
      if (s[j] > s[jmax]) jmax = j;
    }
    start_ = jmax + 1;
    forward_ = !(s[n] > 0.0);
    const double l = d_.log_abs_product();
    const double psi = d_.neg_product_phase();
    if (l <= 0.0) {
      inv_factor_ = 1.0 / detail::one_minus_polar(l, psi);
      inv_log_ = 0.0;
    } else {
      // 1/(1 - w) = -(1/w) / (1 - 1/w)
      inv_factor_ = -std::polar(1.0, -psi) / detail::one_minus_polar(-l, -psi);
      inv_log_ = -l;
    }
  }

  std::size_t size() const { return d_.size(); }

  std::vector<Complex> solve(std::span<const Complex> y) const {
    const std::size_t n = d_.size();
    if (y.size() != n) {
      throw InvalidInput("solve: right-hand side has length " + std::to_string(y.size()) +
                         ", block has size " + std::to_string(n));
    }
    auto cyc = [n](std::size_t k) { return (k - 1) % n + 1; };
    const auto e = d_.entries();
    detail::ScaledComplex acc;
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t k = cyc(start_ + t);
      if (t > 0) acc.mul(-e[k - 1]);
      acc.add(y[k - 1]);
    }
    std::vector<Complex> x(n);
    x[start_ - 1] = acc.mant * inv_factor_ * std::exp(acc.scale + inv_log_);
    if (forward_) {
      for (std::size_t t = 0; t + 1 < n; ++t) {
        const std::size_t k = cyc(start_ + t);
        const std::size_t next = cyc(k + 1);
        x[next - 1] = y[k - 1] - e[k - 1] * x[k - 1];
      }
    } else {
      for (std::size_t t = 0; t + 1 < n; ++t) {
        const std::size_t k = cyc(start_ + n - t);
        const std::size_t prev = cyc(k + n - 1);
        x[prev - 1] = (y[prev - 1] - x[k - 1]) / e[prev - 1];
      }
    }
    return x;
  }

 private:
  CycleDiagonal d_;
  std::size_t start_ = 1;
  bool forward_ = true;
  Complex inv_factor_{1.0, 0.0};
  double inv_log_ = 0.0;
};

// (D + U)^* = J (D' + U) J with J the reversal and D' = diag(conj d_n, ..., conj d_1).
inline CycleDiagonal adjoint_reversed(const CycleDiagonal& d) {
  std::vector<Complex> e(d.entries().rbegin(), d.entries().rend());
  for (auto& v : e) v = std::conj(v);
  return CycleDiagonal(std::move(e));
}

// Solves with both D + U_n and its adjoint; built once per block.
class BlockInverse {
 public:
  explicit BlockInverse(const CycleDiagonal& d) : fwd_(d), adj_(adjoint_reversed(d)) {}

  std::size_t size() const { return fwd_.size(); }

  std::vector<Complex> solve(std::span<const Complex> y) const { return fwd_.solve(y); }

  std::vector<Complex> solve_adjoint(std::span<const Complex> y) const {
    std::vector<Complex> r(y.rbegin(), y.rend());
    auto x = adj_.solve(r);
    std::reverse(x.begin(), x.end());
    return x;
  }

 private:
  CycleSolver fwd_;
  CycleSolver adj_;
};

inline std::vector<Complex> solve(const CycleDiagonal& d, std::span<const Complex> y) {
  return CycleSolver(d).solve(y);
}

inline std::vector<Complex> solve_adjoint(const CycleDiagonal& d, std::span<const Complex> y) {
  return BlockInverse(d).solve_adjoint(y);
}

struct SminIteration {
  double smin = 0.0;
  std::size_t iterations = 0;  // applications of A^{-*} A^{-1}
  bool converged = false;
};

namespace detail {

inline double norm(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  if (m == 0.0 || !std::isfinite(m)) return m;
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z / m);
  return m * std::sqrt(s);
}

inline Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Normalized all-ones plus a fixed pseudo-random unit perturbation.
inline std::vector<Complex> start_vector(std::size_t n, std::uint64_t key) {
  Stream rng(key);
  std::vector<Complex> r(n);
  for (auto& z : r) z = {rng.uniform() - 0.5, rng.uniform() - 0.5};
  const double rn = norm(r);
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = inv + 0.5 * r[i] / rn;
  const double vn = norm(v);
  for (auto& z : v) z /= vn;
  return v;
}

inline constexpr std::uint64_t kStartKeys[2] = {0x5EED0001ULL, 0x5EED0002ULL};
inline constexpr std::size_t kKrylovDim = 40;

}  // namespace detail

// Largest eigenvalue of H = A^{-*} A^{-1}, i.e. 1 / s_min^2, by restarted Lanczos with full
// reorthogonalization. Each restart continues from the current top Ritz vector. Converged
// when the Ritz residual |beta_k s_k| is below tol times the Ritz value (floored at a few
// hundred ulps, the accuracy of H v itself). After max_iter applications of H without
// convergence it starts over once from a second fixed vector.
inline SminIteration smin_iterate(const CycleDiagonal& d, double tol = 1e-12, std::size_t max_iter = 0) {
  const BlockInverse inv(d);
  const std::size_t n = d.size();
  if (max_iter == 0) max_iter = std::max<std::size_t>(10 * n, 1000);
  const double rtol = std::max(tol, 256.0 * std::numeric_limits<double>::epsilon());
  const std::size_t m = std::min(n, detail::kKrylovDim);
  SminIteration out;
  double best = 0.0;
  for (std::uint64_t key : detail::kStartKeys) {
    auto v = detail::start_vector(n, key);
    std::size_t used = 0;
    while (used < max_iter) {
      std::vector<std::vector<Complex>> basis{v};
      std::vector<double> alpha, beta;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
      double ritz = 0.0;
      bool done = false;
      for (std::size_t k = 0; k < m && used < max_iter; ++k) {
        auto w = inv.solve_adjoint(inv.solve(basis[k]));
        ++used;
        ++out.iterations;
        if (!std::isfinite(detail::norm(w))) return {0.0, out.iterations, true};
        alpha.push_back(detail::dot(basis[k], w).real());
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& q : basis) {
            const Complex c = detail::dot(q, w);
            for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
          }
        }
        const double b = detail::norm(w);
        const std::size_t dim = alpha.size();
        Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(dim));
        Eigen::VectorXd sub = beta.empty() ? Eigen::VectorXd()
                                           : Eigen::Map<Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(dim - 1));
        eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        ritz = eig.eigenvalues()(static_cast<Eigen::Index>(dim - 1));
        best = std::max(best, ritz);
        const double last = eig.eigenvectors()(static_cast<Eigen::Index>(dim - 1), static_cast<Eigen::Index>(dim - 1));
        if (b * std::abs(last) <= rtol * ritz || b <= rtol * ritz || dim == n) {
          done = true;
          break;
        }
        beta.push_back(b);
        for (auto& z : w) z /= b;
        basis.push_back(std::move(w));
      }
      if (done) {
        out.smin = 1.0 / std::sqrt(best);
        out.converged = true;
        return out;
      }
      // Restart from the top Ritz vector.
      const std::size_t dim = alpha.size();
      const auto top = eig.eigenvectors().col(static_cast<Eigen::Index>(dim - 1));
      std::vector<Complex> y(n, Complex(0.0, 0.0));
      for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < n; ++i) y[i] += top(static_cast<Eigen::Index>(j)) * basis[j][i];
      }
      const double yn = detail::norm(y);
      for (auto& z : y) z /= yn;
      v = std::move(y);
    }
  }
  out.smin = best > 0.0 ? 1.0 / std::sqrt(best) : 0.0;
  return out;
}

inline double smin_exact(const CycleDiagonal& d, double tol = 1e-12) {
  const auto r = smin_iterate(d, tol);
  if (!r.converged) {
    throw ConvergenceError("smin_exact: no convergence after " + std::to_string(r.iterations) + " iterations");
  }
  return r.smin;
}

namespace detail {
inline void require_nonzero(const CycleDiagonal& d, const char* op) {
  if (d.has_zero()) throw InvalidInput(std::string(op) + ": diagonal has a zero entry");
}
}  // namespace detail

// Principal n-th root of prod d: exp((sum log|d| + i sum arg d) / n).
inline Complex u_root(const CycleDiagonal& d) {
  detail::require_nonzero(d, "u_root");
  double arg_sum = 0.0;
  for (const auto& z : d.entries()) arg_sum += std::arg(z);
  const double n = static_cast<double>(d.size());
  return std::polar(std::exp(d.log_abs_product() / n), arg_sum / n);
}

// Variational quotient sum |delta_{(k+1)}|^2 |u z_k + z_{(k+1)}|^2 / sum |delta_k|^2 |z_k|^2,
// delta_k = prod_{l<k} d_l / u^{k-1}; index n + 1 wraps to 1.
inline double rayleigh(const CycleDiagonal& d, std::span<const Complex> z) {
  detail::require_nonzero(d, "rayleigh");
  const std::size_t n = d.size();
  if (z.size() != n) throw InvalidInput("rayleigh: vector length does not match block size");
  if (std::all_of(z.begin(), z.end(), [](Complex c) { return c == Complex(0.0, 0.0); })) {
    throw InvalidInput("rayleigh: zero test vector");
  }
  const Complex u = u_root(d);
  const auto s = d.log_prefix();
  const double log_u2 = s[n] / static_cast<double>(n);
  auto log_delta2 = [&](std::size_t k) { return s[k - 1] - static_cast<double>(k - 1) * log_u2; };
  LogSumExp num, den;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t next = k % n + 1;
    const double r = std::abs(u * z[k - 1] + z[next - 1]);
    if (r > 0.0) num.add(log_delta2(next) + 2.0 * std::log(r));
    const double a = std::abs(z[k - 1]);
    if (a > 0.0) den.add(log_delta2(k) + 2.0 * std::log(a));
  }
  return std::exp(num.value() - den.value());
}

// The test vector anchored at k0: z_{k0} = 1, z_{k0+j} = (-u)^j, z_k = (-u)^{n-k0+k} for k < k0.
// Plain complex arithmetic; entries overflow for very long blocks with |u| far from 1.
inline std::vector<Complex> test_vector(const CycleDiagonal& d, std::size_t k0) {
  detail::require_nonzero(d, "test_vector");
  const std::size_t n = d.size();
  if (k0 < 1 || k0 > n) throw InvalidInput("test_vector: k0 out of range");
  const Complex mu = -u_root(d);
  std::vector<Complex> z(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t power = k >= k0 ? k - k0 : n - k0 + k;
    z[k - 1] = std::pow(mu, static_cast<double>(power));
  }
  return z;
}

// The quotient of the anchored test vector for every k0, in log form (index 0 unused):
//   q(k0) = c0 P_{k0-1} / (sum_{L=k0-1}^{n-1} P_L + P_n sum_{L=0}^{k0-2} P_L),  P_L = e^{S_L}.
inline std::vector<double> test_vector_bounds_log(const CycleDiagonal& d) {
  detail::require_nonzero(d, "test_vector_bound");
  const std::size_t n = d.size();
  const auto s = d.log_prefix();
  std::vector<double> prefix(n + 1, kNegInf);  // prefix[j] = LSE(S_0..S_{j-1})
  for (std::size_t j = 1; j <= n; ++j) prefix[j] = log_add(prefix[j - 1], s[j - 1]);
  std::vector<double> suffix(n + 1, kNegInf);  // suffix[j] = LSE(S_j..S_{n-1})
  for (std::size_t j = n; j-- > 0;) suffix[j] = log_add(suffix[j + 1], s[j]);
  const double lc0 = log_c0(d);
  std::vector<double> out(n + 1, kNegInf);
  for (std::size_t k0 = 1; k0 <= n; ++k0) {
    const double den = log_add(suffix[k0 - 1], s[n] + prefix[k0 - 1]);
    out[k0] = lc0 + s[k0 - 1] - den;
  }
  return out;
}

inline double test_vector_bound(const CycleDiagonal& d, std::size_t k0) {
  if (k0 < 1 || k0 > d.size()) throw InvalidInput("test_vector_bound: k0 out of range");
  return std::exp(test_vector_bounds_log(d)[k0]);
}

// (1 - max|d|)/(2 sqrt 2) inside the unit disk, (1 - 1/min|d|)/(2 sqrt 2) outside it.
inline std::optional<double> eps_bound(const CycleDiagonal& d) {
  double lo = kInf, hi = 0.0;
  for (const auto& z : d.entries()) {
    lo = std::min(lo, std::abs(z));
    hi = std::max(hi, std::abs(z));
  }
  const double scale = 1.0 / (2.0 * std::numbers::sqrt2);
  if (hi < 1.0) return (1.0 - hi) * scale;
  if (lo > 1.0) return (1.0 - 1.0 / lo) * scale;
  return std::nullopt;
}

// diag(1/d_n, 1/d_1, ..., 1/d_{n-1})
inline CycleDiagonal dual_hat(const CycleDiagonal& d) {
  detail::require_nonzero(d, "dual_hat");
  const std::size_t n = d.size();
  std::vector<Complex> e(n);
  for (std::size_t k = 0; k < n; ++k) e[(k + 1) % n] = 1.0 / d.entries()[k];
  return CycleDiagonal(std::move(e));
}

// Bounds for one block; lower = 1/rho with rho = 2(rho1 + rho2), upper = c0/gamma.
struct BoundReport {
  LogReal c0;
  LogReal gamma;
  LogReal rho1;
  LogReal rho2;
  LogReal lower;
  LogReal upper;
  std::optional<double> exact;  // s_min itself (not squared)
  bool singular = false;
  std::size_t gamma_argmax = 1;
  bool exact_converged = true;
};

struct BoundOptions {
  bool exact = false;
  double tol = 1e-12;
};

inline BoundReport bounds_cycle(const CycleDiagonal& d, const BoundOptions& opt = {}) {
  BoundReport r;
  r.c0 = c0(d);
  const auto g = gamma(d);
  r.gamma = g.value;
  r.gamma_argmax = g.argmax;
  r.rho2 = rho2(d);
  if (is_singular(d)) {
    r.singular = true;
    r.rho1 = LogReal{kInf};
    r.lower = LogReal::zero();
    r.upper = LogReal::zero();
    if (opt.exact) r.exact = 0.0;
    return r;
  }
  r.rho1 = rho1(d);
  r.lower = LogReal{-std::numbers::ln2 - log_add(r.rho1.log, r.rho2.log)};
  r.upper = r.c0 / r.gamma;
  if (opt.exact) {
    const auto p = smin_iterate(d, opt.tol);
    r.exact = p.smin;
    r.exact_converged = p.converged;
  }
  return r;
}

struct CycleReport {
  std::size_t start = 0;
  std::size_t length = 0;
  BoundReport bounds;
};

struct GlobalReport {
  std::vector<CycleReport> cycles;
  BoundReport global;
  // Cycle attaining the global exact value (or the global upper bound when no exact value
  // was requested); the global c0/gamma/rho fields are copied from it.
  std::size_t critical = 0;
};

inline void require_length(const Permutation& sigma, std::span<const Complex> d_full) {
  if (d_full.size() != sigma.size()) {
    throw InvalidInput("diagonal has " + std::to_string(d_full.size()) + " entries but permutation has size " +
                       std::to_string(sigma.size()));
  }
}

inline GlobalReport bounds_global(const Permutation& sigma, std::span<const Complex> d_full,
                                  const BoundOptions& opt = {}) {
  require_length(sigma, d_full);
  const auto dec = decompose(sigma);
  GlobalReport out;
  for (std::size_t i = 0; i < dec.count(); ++i) {
    const auto block = CycleDiagonal::for_cycle(dec.cycles[i], d_full);
    out.cycles.push_back({dec.starts[i], dec.lengths[i], bounds_cycle(block, opt)});
  }
  std::size_t crit = 0;
  LogReal lower{kInf}, upper{kInf};
  std::optional<double> exact;
  bool singular = false, converged = true;
  for (std::size_t i = 0; i < out.cycles.size(); ++i) {
    const auto& b = out.cycles[i].bounds;
    lower = std::min(lower, b.lower);
    singular = singular || b.singular;
    converged = converged && b.exact_converged;
    const bool better_upper = b.upper < upper;
    upper = std::min(upper, b.upper);
    if (b.exact) {
      if (!exact || *b.exact < *exact) {
        exact = b.exact;
        crit = i;
      }
    } else if (better_upper) {
      crit = i;
    }
  }
  const auto& c = out.cycles[crit].bounds;
  out.critical = crit;
  out.global = c;
  out.global.lower = lower;
  out.global.upper = upper;
  out.global.exact = exact;
  out.global.singular = singular;
  out.global.exact_converged = converged;
  return out;
}

// Per-cycle invertibility in decomposition order.
inline std::vector<bool> is_invertible(const Permutation& sigma, std::span<const Complex> d_full) {
  require_length(sigma, d_full);
  const auto dec = decompose(sigma);
  std::vector<bool> out;
  for (const auto& c : dec.cycles) out.push_back(!is_singular(CycleDiagonal::for_cycle(c, d_full)));
  return out;
}

}  // namespace permsv
