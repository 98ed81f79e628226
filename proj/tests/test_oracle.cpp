#include <gtest/gtest.h>

#include <cmath>

#include "permsv/oracle.hpp"
#include "permsv/spectral.hpp"
#include "support.hpp"

using namespace permsv;
using namespace permsv::testing;
using oracle::DenseMatrix;
using oracle::LComplex;

namespace {

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  long double m = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return static_cast<double>(m);
}

}  // namespace

TEST(Assemble, Entries) {
  const auto a = oracle::assemble(Permutation::from_images({2, 1, 3}), std::vector<Complex>{{1.0, 0.0}, {2.0, 0.0}, {3.0, 1.0}});
  EXPECT_EQ(a(0, 0), LComplex(1.0L));
  EXPECT_EQ(a(0, 1), LComplex(1.0L));
  EXPECT_EQ(a(1, 0), LComplex(1.0L));
  EXPECT_EQ(a(1, 1), LComplex(2.0L));
  // Fixed point: the permutation entry lands on the diagonal.
  EXPECT_EQ(a(2, 2), LComplex(4.0L, 1.0L));
  EXPECT_EQ(a(0, 2), LComplex{});
  EXPECT_THROW(oracle::assemble(Permutation::identity(2), std::vector<Complex>(3)), InvalidInput);
}

TEST(Assemble, CapRefusal) {
  EXPECT_THROW(DenseMatrix(300), InvalidInput);
  EXPECT_NO_THROW(DenseMatrix(300, 400));
  EXPECT_THROW(oracle::assemble(Permutation::identity(10), std::vector<Complex>(10), 5), InvalidInput);
}

TEST(DenseSvd, Examples) {
  // Zero diagonal on a full cycle: A is a permutation matrix.
  EXPECT_NEAR(oracle::dense_smin(oracle::assemble_block(std::vector<Complex>(7))), 1.0, 1e-15);
  EXPECT_NEAR(oracle::dense_smin(oracle::assemble_block(std::vector<Complex>{{0.3, -0.4}})), std::abs(Complex(1.3, -0.4)), 1e-15);
  DenseMatrix d(2);
  d(0, 0) = 3.0L;
  d(1, 1) = 1.0L;
  EXPECT_NEAR(oracle::dense_smin(d), 1.0, 1e-15);
  const auto sv = oracle::dense_svd(d);
  ASSERT_EQ(sv.values.size(), 2u);
  EXPECT_NEAR(static_cast<double>(sv.values[0]), 3.0, 1e-15);
}

TEST(DenseSvd, SingularValuesSquaredSumToHsNorm) {
  Stream rng(60);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.below(30);
    const auto a = oracle::assemble(sample_uniform(n, rng), random_diag(rng, n));
    const auto sv = oracle::dense_svd(a);
    long double s = 0.0L;
    for (auto v : sv.values) s += v * v;
    EXPECT_LT(rel_err(static_cast<double>(s), static_cast<double>(a.hs_norm_sq())), 1e-14);
    for (std::size_t i = 1; i < sv.values.size(); ++i) EXPECT_GE(sv.values[i - 1], sv.values[i]);
  }
}

TEST(DenseSvd, MinimizerVectorAttainsSmin) {
  Stream rng(61);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.below(20);
    const auto a = oracle::assemble_block(random_diag(rng, n));
    const auto v = oracle::dense_smin_vector(a);
    long double nv = 0.0L, nav = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      LComplex s{};
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * LComplex(v[j].real(), v[j].imag());
      nav += std::norm(s);
      nv += std::norm(LComplex(v[i].real(), v[i].imag()));
    }
    EXPECT_NEAR(static_cast<double>(std::sqrt(nav / nv)), oracle::dense_smin(a), 1e-12);
  }
}

TEST(DenseDet, Examples) {
  EXPECT_NEAR(std::abs(oracle::dense_det(oracle::assemble_block(std::vector<Complex>{{2.0, 1.0}})) - LComplex(3.0L, 1.0L)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(oracle::dense_det(oracle::assemble_block(std::vector<Complex>(2, 1.0)))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(oracle::dense_det(oracle::assemble_block(std::vector<Complex>(3, 1.0))) - 2.0L), 0.0, 1e-15);
}

// det A = prod over cycles of (prod d - (-1)^{N_i}).
TEST(DenseDet, CycleProductFormula) {
  Stream rng(62);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng.below(24);
    const auto sigma = sample_uniform(n, rng);
    const auto d = random_diag(rng, n, 0.0, 0.3);
    LComplex expected = 1.0L;
    for (const auto& cyc : decompose(sigma).cycles) {
      LComplex p = 1.0L;
      for (std::size_t i : cyc) p *= LComplex(d[i - 1].real(), d[i - 1].imag());
      expected *= p - (cyc.size() % 2 ? -1.0L : 1.0L);
    }
    const auto got = oracle::dense_det(oracle::assemble(sigma, d));
    EXPECT_LT(static_cast<double>(std::abs(got - expected)), 1e-12 * std::max(1.0, static_cast<double>(std::abs(expected))));
  }
}

TEST(DenseSolve, ResidualAndSingular) {
  Stream rng(63);
  const std::size_t n = 25;
  const auto a = oracle::assemble(sample_uniform(n, rng), random_diag(rng, n));
  const auto y = random_vector(rng, n);
  const auto x = oracle::dense_solve(a, y);
  for (std::size_t i = 0; i < n; ++i) {
    LComplex s{};
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * LComplex(x[j].real(), x[j].imag());
    EXPECT_LT(std::abs(static_cast<double>(std::abs(s - LComplex(y[i].real(), y[i].imag())))), 1e-12);
  }
  EXPECT_THROW(oracle::dense_solve(DenseMatrix(3), random_vector(rng, 3)), SingularError);
}

TEST(DenseBc, TwoByTwoZeroDiagonal) {
  const auto bc = oracle::dense_bc(std::vector<Complex>(2));
  // A = U_2 is its own inverse; B carries beta_{2,1} = 1 below the diagonal, C = e_1 e_2^T.
  EXPECT_EQ(bc.b(1, 0), LComplex(1.0L));
  EXPECT_EQ(bc.b(0, 1), LComplex{});
  EXPECT_EQ(bc.c(0, 1), LComplex(1.0L));
  EXPECT_EQ(bc.c(0, 0), LComplex{});
  EXPECT_EQ(bc.c(1, 1), LComplex{});
  EXPECT_THROW(oracle::dense_bc(std::vector<Complex>(2, 1.0)), SingularError);
}

// B + C is the inverse of D + U_n, and C has rank one.
TEST(DenseBc, InverseAndRankOne) {
  Stream rng(64);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.below(30);
    const auto d = random_diag(rng, n);
    if (is_singular(CycleDiagonal(d))) continue;
    const auto bc = oracle::dense_bc(d);
    const auto a = oracle::assemble_block(d);
    const auto inv = bc.b + bc.c;
    EXPECT_LT(max_abs_diff(a * inv, DenseMatrix::identity(n)), 1e-10);
    EXPECT_LT(max_abs_diff(inv * a, DenseMatrix::identity(n)), 1e-10);
    const auto sv = oracle::dense_svd(bc.c);
    if (n > 1) {
      EXPECT_LT(static_cast<double>(sv.values[1]), 1e-12 * static_cast<double>(sv.values[0]) + 1e-300);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) EXPECT_EQ(bc.b(i, j), LComplex{});
  }
}

TEST(Conjugate, OrderingGivesBlockDiagonalAndSameSpectrum) {
  Stream rng(65);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.below(20);
    const auto sigma = sample_uniform(n, rng);
    const auto d = random_diag(rng, n);
    const auto a = oracle::assemble(sigma, d);
    const auto dec = decompose(sigma);
    const auto b = oracle::conjugate(a, ordering_permutation(dec));
    // Entries outside the diagonal blocks vanish.
    std::vector<std::size_t> block_of(n);
    std::size_t pos = 0;
    for (std::size_t c = 0; c < dec.count(); ++c)
      for (std::size_t k = 0; k < dec.lengths[c]; ++k) block_of[pos++] = c;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (block_of[i] != block_of[j]) {
          EXPECT_EQ(b(i, j), LComplex{});
        }
    EXPECT_NEAR(oracle::dense_smin(a), oracle::dense_smin(b), 1e-12);
    double best = kInf;
    for (const auto& cyc : dec.cycles) {
      std::vector<Complex> blk;
      for (std::size_t i : cyc) blk.push_back(d[i - 1]);
      best = std::min(best, oracle::dense_smin(oracle::assemble_block(blk)));
    }
    EXPECT_NEAR(oracle::dense_smin(a), best, 1e-12);
  }
}

TEST(ToeplitzForm, Examples) {
  EXPECT_NEAR(oracle::toeplitz_form(0.5, std::vector<Complex>{1.0}), 1.0, 1e-15);
  EXPECT_NEAR(oracle::toeplitz_form(0.5, std::vector<Complex>{1.0, 1.0}), 2.5, 1e-15);
  EXPECT_THROW(oracle::toeplitz_form(1.0, std::vector<Complex>{1.0}), InvalidInput);
  EXPECT_THROW(oracle::toeplitz_form(0.0, std::vector<Complex>{1.0}), InvalidInput);
}

// |form| <= ||a||^2 / (1 - r).
TEST(ToeplitzForm, BoundedByGeometricSeries) {
  Stream rng(66);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_vector(rng, 1 + rng.below(40));
    const double r = 0.01 + 0.98 * rng.uniform();
    double na = 0.0;
    for (const auto& z : a) na += std::norm(z);
    EXPECT_LE(oracle::toeplitz_form(r, a), na / (1.0 - r) * (1.0 + 1e-12));
  }
}
