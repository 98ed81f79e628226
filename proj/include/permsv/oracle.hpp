#pragma once

// Dense reference computations for verification only. Plain long double complex arithmetic,
// no log-domain tricks and nothing shared with the structured code; hence the size cap.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "permsv/cycle_diagonal.hpp"
#include "permsv/error.hpp"
#include "permsv/perm.hpp"

namespace permsv::oracle {

using LComplex = std::complex<long double>;

inline constexpr std::size_t kDefaultCap = 256;

class DenseMatrix {
 public:
  DenseMatrix() = default;

  explicit DenseMatrix(std::size_t n, std::size_t cap = kDefaultCap) : n_(n), a_(n * n) {
    if (n > cap) {
      throw InvalidInput("dense oracle refuses n = " + std::to_string(n) + " (cap " + std::to_string(cap) + ")");
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0L;
    return m;
  }

  std::size_t size() const { return n_; }

  // 0-based
  LComplex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const LComplex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix r(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        const LComplex v = x(i, k);
        if (v == LComplex{}) continue;
        for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += v * y(k, j);
      }
    return r;
  }

  friend DenseMatrix operator+(DenseMatrix x, const DenseMatrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }

  DenseMatrix adjoint() const {
    DenseMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  long double hs_norm_sq() const {
    long double s = 0.0L;
    for (const auto& v : a_) s += std::norm(v);
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<LComplex> a_;
};

// A[i][j] = d_i 1{i=j} + 1{sigma(i)=j}
inline DenseMatrix assemble(const Permutation& sigma, std::span<const std::complex<double>> d_full,
                            std::size_t cap = kDefaultCap) {
  const std::size_t n = sigma.size();
  if (d_full.size() != n) throw InvalidInput("assemble: diagonal length does not match permutation size");
  DenseMatrix a(n, cap);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) += LComplex(d_full[i].real(), d_full[i].imag());
    a(i, sigma(i + 1) - 1) += 1.0L;
  }
  return a;
}

// D + U_n for one block.
inline DenseMatrix assemble_block(std::span<const std::complex<double>> d) {
  return assemble(Permutation::full_cycle(d.size()), d);
}

// (M_tau A M_tau^T)(i, j) = A(tau(i), tau(j))
inline DenseMatrix conjugate(const DenseMatrix& a, const Permutation& tau) {
  const std::size_t n = a.size();
  DenseMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = a(tau(i + 1) - 1, tau(j + 1) - 1);
  return r;
}

struct SvdResult {
  std::vector<long double> values;  // descending
  // Right singular vectors as columns (row-major n x n), matching values.
  std::vector<LComplex> v;
};

// One-sided Jacobi: rotate column pairs until all pairs are numerically orthogonal; the
// column norms are then the singular values.
inline SvdResult dense_svd(const DenseMatrix& a, bool want_vectors = false, int max_sweeps = 80) {
  const std::size_t n = a.size();
  std::vector<std::vector<LComplex>> col(n, std::vector<LComplex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) col[j][i] = a(i, j);
  std::vector<std::vector<LComplex>> vcol;
  if (want_vectors) {
    vcol.assign(n, std::vector<LComplex>(n));
    for (std::size_t j = 0; j < n; ++j) vcol[j][j] = 1.0L;
  }
  const long double tol = 1e-17L;
  bool converged = n <= 1;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        long double alpha = 0.0L, beta = 0.0L;
        LComplex g{};
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(col[p][i]);
          beta += std::norm(col[q][i]);
          g += std::conj(col[p][i]) * col[q][i];
        }
        const long double ag = std::abs(g);
        if (ag == 0.0L || ag <= tol * std::sqrt(alpha * beta)) continue;
        converged = false;
        const LComplex ph = std::conj(g / ag);
        const long double zeta = (beta - alpha) / (2.0L * ag);
        const long double t = (zeta >= 0.0L ? 1.0L : -1.0L) / (std::abs(zeta) + std::sqrt(1.0L + zeta * zeta));
        const long double c = 1.0L / std::sqrt(1.0L + t * t);
        const long double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const LComplex xp = col[p][i];
          const LComplex xq = col[q][i] * ph;
          col[p][i] = c * xp - s * xq;
          col[q][i] = s * xp + c * xq;
        }
        if (want_vectors) {
          for (std::size_t i = 0; i < n; ++i) {
            const LComplex xp = vcol[p][i];
            const LComplex xq = vcol[q][i] * ph;
            vcol[p][i] = c * xp - s * xq;
            vcol[q][i] = s * xp + c * xq;
          }
        }
      }
    }
  }
  if (!converged) throw ConvergenceError("dense_svd: Jacobi sweeps did not converge");
  std::vector<std::pair<long double, std::size_t>> order(n);
  for (std::size_t j = 0; j < n; ++j) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(col[j][i]);
    order[j] = {std::sqrt(s), j};
  }
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  SvdResult out;
  for (const auto& [sv, j] : order) out.values.push_back(sv);
  if (want_vectors) {
    out.v.resize(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.v[i * n + k] = vcol[order[k].second][i];
  }
  return out;
}

inline double dense_smin(const DenseMatrix& a) {
  if (a.size() == 0) throw InvalidInput("dense_smin: empty matrix");
  return static_cast<double>(dense_svd(a).values.back());
}

// Right singular vector of the smallest singular value.
inline std::vector<std::complex<double>> dense_smin_vector(const DenseMatrix& a) {
  const auto r = dense_svd(a, true);
  const std::size_t n = a.size();
  std::vector<std::complex<double>> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const LComplex z = r.v[i * n + n - 1];
    v[i] = {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }
  return v;
}

// Gaussian elimination with partial pivoting.
inline LComplex dense_det(const DenseMatrix& a) {
  const std::size_t n = a.size();
  DenseMatrix m = a;
  LComplex det = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    }
    if (m(piv, k) == LComplex{}) return 0.0L;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const LComplex f = m(i, k) / m(k, k);
      if (f == LComplex{}) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

// Solves a x = y by elimination with partial pivoting.
inline std::vector<std::complex<double>> dense_solve(const DenseMatrix& a, std::span<const std::complex<double>> y) {
  const std::size_t n = a.size();
  DenseMatrix m = a;
  std::vector<LComplex> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = {y[i].real(), y[i].imag()};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    }
    if (m(piv, k) == LComplex{}) throw SingularError("dense_solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const LComplex f = m(i, k) / m(k, k);
      if (f == LComplex{}) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<std::complex<double>> x(n);
  for (std::size_t k = n; k-- > 0;) {
    LComplex s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m(k, j) * LComplex(x[j].real(), x[j].imag());
    s /= m(k, k);
    x[k] = {static_cast<double>(s.real()), static_cast<double>(s.imag())};
  }
  return x;
}

struct BC {
  DenseMatrix b;
  DenseMatrix c;
};

// B_{i,j} = beta_{j+1,i-1} 1{j <= i-1}, C = E F^T / (1 - (-1)^n prod d) with
// E_i = beta_{1,i-1}, F_j = beta_{j+1,n} and beta_{k,m} = (-1)^{m-k+1} prod_{l=k}^m d_l.
inline BC dense_bc(std::span<const std::complex<double>> d, std::size_t cap = kDefaultCap) {
  const std::size_t n = d.size();
  std::vector<LComplex> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = {d[i].real(), d[i].imag()};
  // beta(k, m), 1-based, k <= m + 1
  auto beta = [&](std::size_t k, std::size_t m) {
    LComplex p = 1.0L;
    for (std::size_t l = k; l <= m; ++l) p *= -e[l - 1];
    return p;
  };
  const LComplex full = beta(1, n);
  const LComplex denom = 1.0L - full;
  if (std::abs(denom) < 1e-12L * std::max(1.0L, std::abs(full))) throw SingularError("dense_bc: singular block");
  BC out{DenseMatrix(n, cap), DenseMatrix(n, cap)};
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j + 1 <= i; ++j) out.b(i - 1, j - 1) = beta(j + 1, i - 1);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) out.c(i - 1, j - 1) = beta(1, i - 1) * beta(j + 1, n) / denom;
  return out;
}

// |sum_{m <= m'} r^{m'-m} a_m conj(a_{m'})|
inline double toeplitz_form(double r, std::span<const std::complex<double>> a) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidInput("toeplitz_form: r must lie in (0, 1)");
  LComplex s{};
  const std::size_t n = a.size();
  for (std::size_t m = 0; m < n; ++m) {
    long double w = 1.0L;
    for (std::size_t mp = m; mp < n; ++mp) {
      s += w * LComplex(a[m].real(), a[m].imag()) * LComplex(a[mp].real(), -a[mp].imag());
      w *= r;
    }
  }
  return static_cast<double>(std::abs(s));
}

}  // namespace permsv::oracle
