#pragma once

// Random-walk functionals of S_k = sum_{l<=k} 2 log|d_l|: the maximal segment gain M_N,
// T_N, U_N / U-hat_N, X_N, and the ladder-epoch excursion decomposition.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "permsv/cycle_diagonal.hpp"
#include "permsv/error.hpp"
#include "permsv/log_real.hpp"
#include "permsv/spectral.hpp"

namespace permsv {

struct WalkPath {
  std::vector<double> s;  // S_0 = 0, ..., S_N

  std::size_t steps() const { return s.empty() ? 0 : s.size() - 1; }

  static WalkPath from_steps(std::span<const double> xi) {
    WalkPath w;
    w.s.assign(xi.size() + 1, 0.0);
    for (std::size_t k = 0; k < xi.size(); ++k) w.s[k + 1] = w.s[k] + xi[k];
    return w;
  }
};

inline WalkPath from_diagonal(const CycleDiagonal& d) {
  if (d.has_zero()) throw InvalidInput("from_diagonal: diagonal has a zero entry");
  const auto s = d.log_prefix();
  return WalkPath{std::vector<double>(s.begin(), s.end())};
}

namespace detail {
inline void require_steps(const WalkPath& w, const char* op) {
  if (w.steps() == 0) throw InvalidInput(std::string(op) + ": empty walk");
}
}  // namespace detail

// M_N = max_{1 <= k <= m <= N} (S_m - S_k)
inline double m_functional(const WalkPath& w) {
  detail::require_steps(w, "m_functional");
  double low = w.s[1];
  double best = 0.0;
  for (std::size_t m = 1; m < w.s.size(); ++m) {
    low = std::min(low, w.s[m]);
    best = std::max(best, w.s[m] - low);
  }
  return best;
}

// T_N = sum_{1 <= k <= m <= N} e^{S_m - S_k}, via Q_m = e^{xi_m} Q_{m-1} + 1.
inline LogReal t_functional(const WalkPath& w) {
  detail::require_steps(w, "t_functional");
  LogSumExp acc;
  double q = 0.0;
  acc.add(q);
  for (std::size_t m = 2; m < w.s.size(); ++m) {
    q = softplus(w.s[m] - w.s[m - 1] + q);
    acc.add(q);
  }
  return LogReal{acc.value()};
}

struct UFunctionals {
  LogReal u;      // sum_{l=1}^{N-1} e^{S_l}
  LogReal u_hat;  // sum_{l=1}^{N-1} e^{S_N - S_l}
};

inline UFunctionals u_functionals(const WalkPath& w) {
  detail::require_steps(w, "u_functionals");
  const std::size_t n = w.steps();
  LogSumExp u, uh;
  for (std::size_t l = 1; l + 1 <= n; ++l) {
    u.add(w.s[l]);
    uh.add(w.s[n] - w.s[l]);
  }
  return {LogReal{u.value()}, LogReal{uh.value()}};
}

// X_N = c0^{-1} (1 + U_N)(1 + U-hat_N); equal to rho1 term by term.
// Zero entries are allowed here: the products come from log_beta_sq.
inline LogReal x_functional(const CycleDiagonal& d) {
  if (is_singular(d)) throw SingularError("x_functional: cycle block is singular");
  const std::size_t n = d.size();
  LogSumExp u, uh;
  u.add(0.0);
  uh.add(0.0);
  for (std::size_t l = 1; l + 1 <= n; ++l) {
    u.add(d.log_beta_sq(1, l));
    uh.add(d.log_beta_sq(l + 1, n));
  }
  return LogReal{u.value() + uh.value() - log_c0(d)};
}

// Ladder epochs K_i = min{n > K_{i-1} : S_n - S_{K_{i-1}} <= -c}, K_0 = 0, within 1..N.
struct ExcursionDecomposition {
  double c = 0.0;
  std::vector<std::size_t> epochs;  // K_1 < K_2 < ...
  std::vector<double> log_u;        // log U_i, U_i = sum_{K_{i-1} <= l < K_i} e^{S_l - S_{K_{i-1}}}
  std::vector<std::size_t> r_max;   // R_m = max_{i <= m} (K_i - K_{i-1})
  std::vector<std::size_t> i_of;    // i(l) for l = 0..N: K_{i(l)-1} <= l < K_{i(l)}

  // The incomplete final excursion K_last <= l <= N (always non-empty).
  double tail_log_u = kNegInf;
  std::size_t tail_gap = 0;  // N + 1 - K_last, the number of indices it covers

  std::size_t complete() const { return epochs.size(); }
};

inline ExcursionDecomposition ladder(const WalkPath& w, double c) {
  if (!(c >= 0.0)) throw InvalidInput("ladder: c must be nonnegative");
  const std::size_t n = w.steps();
  ExcursionDecomposition out;
  out.c = c;
  out.i_of.assign(n + 1, 0);
  std::size_t base = 0;
  LogSumExp u;
  for (std::size_t l = 0; l <= n; ++l) {
    if (l > base && w.s[l] - w.s[base] <= -c) {
      out.epochs.push_back(l);
      out.log_u.push_back(u.value());
      const std::size_t gap = l - base;
      out.r_max.push_back(out.r_max.empty() ? gap : std::max(out.r_max.back(), gap));
      base = l;
      u = LogSumExp{};
    }
    u.add(w.s[l] - w.s[base]);
    out.i_of[l] = out.epochs.size() + 1;
  }
  out.tail_log_u = u.value();
  out.tail_gap = n + 1 - base;
  return out;
}

// K(c) = e^{-c} / (1 - e^{-c}) + e^c
inline double k_constant(double c) {
  if (!(c > 0.0)) throw InvalidInput("k_constant: c must be positive");
  return std::exp(-c) / -std::expm1(-c) + std::exp(c);
}

struct ExcursionBound {
  LogReal lhs;  // T_N
  LogReal rhs;  // K(c) R sum_i U_i, the incomplete final excursion included
  bool holds = true;
  bool vacuous = false;  // no complete excursion: the drift premise fails on this path
};

// The final excursion is incomplete unless S_N itself is an epoch; its partial sum is
// carried through l = N and its index count N + 1 - K_last enters the running maximum R.
inline ExcursionBound excursion_bound_check(const WalkPath& w, double c) {
  const double kc = k_constant(c);
  ExcursionBound r;
  r.lhs = t_functional(w);
  const auto ex = ladder(w, c);
  if (ex.complete() == 0) {
    r.vacuous = true;
    r.rhs = LogReal{kInf};
    return r;
  }
  LogSumExp sum;
  for (double lu : ex.log_u) sum.add(lu);
  sum.add(ex.tail_log_u);
  const std::size_t big_r = std::max(ex.r_max.back(), ex.tail_gap);
  r.rhs = LogReal{std::log(kc) + std::log(static_cast<double>(big_r)) + sum.value()};
  r.holds = r.lhs.log <= r.rhs.log + 1e-12 * std::max(1.0, std::abs(r.rhs.log));
  return r;
}

}  // namespace permsv
