// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "permsv/io.hpp"
#include "permsv/permsv.hpp"

using namespace permsv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

// Lognormal(-0.1, 0.6) entries on a uniform permutation, N uniform on [4, 64].
struct SandwichSuite {
  struct Case {
    Instance inst;
    std::vector<std::vector<Complex>> blocks;
    std::vector<double> dense_sq;  // per block, dense oracle
  };
  std::vector<Case> cases;
};

const SandwichSuite& sandwich_suite() {
  static const SandwichSuite suite = [] {
    SandwichSuite s;
    const DistributionModel model(LogNormalRadial{-0.1, 0.6});
    s.cases = parallel_map(1000, 0, [&](std::size_t t) {
      Stream pick = substream(101, 0, t);
      const std::size_t n = 4 + pick.below(61);
      SandwichSuite::Case c;
      c.inst = draw_instance(model, PermMode::uniform, 101, n, t);
      for (const auto& cyc : decompose(c.inst.sigma).cycles) {
        std::vector<Complex> b;
        for (std::size_t i : cyc) b.push_back(c.inst.d[i - 1]);
        const double sm = oracle::dense_smin(oracle::assemble_block(b));
        c.dense_sq.push_back(sm * sm);
        c.blocks.push_back(std::move(b));
      }
      return c;
    });
    return s;
  }();
  return suite;
}

Outcome c1_sandwich() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& suite = sandwich_suite();
  const double tol = 1e-9;
  std::size_t checked = 0, violations = 0, singular = 0;
  for (const auto& c : suite.cases) {
    const auto rep = bounds_global(c.inst.sigma, c.inst.d);
    if (rep.global.singular) {
      ++singular;
      continue;
    }
    double dense = kInf;
    for (double v : c.dense_sq) dense = std::min(dense, v);
    const double ls = std::log(dense);
    ++checked;
    if (ls < rep.global.lower.log - tol || ls > rep.global.upper.log + tol) ++violations;
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
      const auto& b = rep.cycles[i].bounds;
      const double lb = std::log(c.dense_sq[i]);
      if (lb < b.lower.log - tol || lb > b.upper.log + tol) ++violations;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {violations == 0 && secs < 60.0,
          fmt("%zu instances checked, %zu singular, %zu violations, %.1f s", checked, singular, violations, secs)};
}

Outcome c2_pathwise() {
  const double tol = 1e-9;
  std::size_t blocks = 0, violations = 0;
  for (const auto& c : sandwich_suite().cases) {
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
      const CycleDiagonal cd(c.blocks[i]);
      if (is_singular(cd)) continue;
      ++blocks;
      const auto w = from_diagonal(cd);
      const double m = m_functional(w);
      const double lower = -std::numbers::ln2 - log_add(x_functional(cd).log, t_functional(w).log);
      const double upper = c0(cd).log - m;
      const double ls = std::log(c.dense_sq[i]);
      if (ls < lower - tol || ls > upper + tol) ++violations;
    }
  }
  return {violations == 0, fmt("%zu nonsingular blocks, %zu violations", blocks, violations)};
}

Outcome c3_exactness() {
  const DistributionModel model(LogNormalRadial{-0.1, 0.6});
  struct R {
    double err;
    std::size_t n;
  };
  const auto errs = parallel_map(500, 0, [&](std::size_t t) {
    Stream pick = substream(103, 0, t);
    const std::size_t n = 2 + pick.below(199);
    const auto inst = draw_instance(model, PermMode::single_cycle, 103, n, t);
    const CycleDiagonal cd(inst.d);
    if (is_singular(cd)) return R{0.0, n};
    return R{rel_gap(smin_exact(cd), oracle::dense_smin(oracle::assemble_block(inst.d))), n};
  });
  double worst = 0.0;
  std::size_t nmax = 0;
  for (const auto& r : errs) {
    worst = std::max(worst, r.err);
    nmax = std::max(nmax, r.n);
  }
  double worst_phi = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    Stream rng = substream(104, 0, t);
    const std::size_t n = 1 + rng.below(64);
    const Complex z = std::polar(0.2 + 1.6 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    const CycleDiagonal cd(std::vector<Complex>(n, z));
    if (is_singular(cd)) continue;
    worst_phi = std::max(worst_phi, std::abs(smin_exact(cd) - phi(n, z)));
  }
  return {worst <= 1e-8 && worst_phi <= 1e-10,
          fmt("dense: max rel err %.2e over 500 blocks (N <= %zu); scalar: max |err| %.2e over 200", worst, nmax,
              worst_phi)};
}

Outcome c4_inverse() {
  double worst_id = 0.0, worst_c = 0.0, worst_b = 0.0;
  std::size_t used = 0;
  for (std::size_t t = 0; t < 200; ++t) {
    Stream rng = substream(105, 0, t);
    const std::size_t n = 1 + rng.below(32);
    std::vector<Complex> d(n);
    for (auto& z : d) z = std::polar(std::exp(-0.1 + 0.6 * rng.normal()), 2.0 * std::numbers::pi * rng.uniform());
    const CycleDiagonal cd(d);
    if (is_singular(cd)) continue;
    ++used;
    const auto bc = oracle::dense_bc(d);
    const auto prod = oracle::assemble_block(d) * (bc.b + bc.c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst_id = std::max(worst_id, static_cast<double>(std::abs(prod(i, j) - (i == j ? 1.0L : 0.0L))));
    worst_c = std::max(worst_c, rel_gap(static_cast<double>(bc.c.hs_norm_sq()), rho1(cd).value()));
    if (n > 1) worst_b = std::max(worst_b, rel_gap(static_cast<double>(bc.b.hs_norm_sq()), rho2(cd).value()));
  }
  return {worst_id <= 1e-10 && worst_c <= 1e-10 && worst_b <= 1e-10,
          fmt("%zu blocks; max |AX - I| %.2e, rho1 rel %.2e, rho2 rel %.2e", used, worst_id, worst_c, worst_b)};
}

Outcome c5_theta() {
  const double tp = theta(DistributionModel(TwoPointRadial{0.5, 2.0, 2.0 / 3.0}));
  double worst = std::abs(tp - 0.5);
  for (auto [mu, sigma] : std::vector<std::pair<double, double>>{{-0.2, 1.0}, {-0.125, 0.25}, {-1.0, 0.5}, {-0.05, 2.0}}) {
    worst = std::max(worst, std::abs(theta(DistributionModel(LogNormalRadial{mu, sigma})) + mu / (sigma * sigma)));
  }
  return {worst <= 1e-10, fmt("two-point theta %.15f, max error %.2e", tp, worst)};
}

Outcome c6_eps_bound() {
  std::size_t violations = 0;
  double slack = kInf;
  for (int side = 0; side < 2; ++side) {
    for (std::size_t t = 0; t < 500; ++t) {
      Stream rng = substream(106, side, t);
      const std::size_t n = 1 + rng.below(48);
      const auto sigma = sample_uniform(n, rng);
      std::vector<Complex> d(n);
      for (auto& z : d) {
        const double r = side == 0 ? 0.999 * rng.uniform() : 1.001 + 3.0 * rng.uniform();
        z = std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
      }
      const auto eps = eps_bound(CycleDiagonal(d));
      if (!eps) {
        ++violations;
        continue;
      }
      const double s = oracle::dense_smin(oracle::assemble(sigma, d));
      if (s < *eps) ++violations;
      slack = std::min(slack, s / *eps);
    }
  }
  return {violations == 0, fmt("1000 instances, %zu violations, min s_min / bound = %.3f", violations, slack)};
}

const DistributionModel& half_fixture() {
  static const DistributionModel m(TwoPointRadial{0.5, 2.0, 2.0 / 3.0});
  return m;
}

Outcome c7_lower_tail_small_theta() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::lower_tail;
  cfg.model = half_fixture();
  cfg.sizes = {100, 400, 1600};
  cfg.trials = 20000;
  cfg.thresholds = {1.0};
  const auto r = lower_tail_experiment(cfg);
  bool ok = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const double se = std::sqrt(r.rows[i].std_error * r.rows[i].std_error + r.rows[i - 1].std_error * r.rows[i - 1].std_error);
    if (r.rows[i].probability > r.rows[i - 1].probability + 3.0 * se) ok = false;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok && secs < 900.0, fmt("P = %.4f, %.4f, %.4f (se %.4f), %.0f s", r.rows[0].probability, r.rows[1].probability,
                                  r.rows[2].probability, r.rows[2].std_error, secs)};
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Outcome c8_lower_tail_large_theta() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::lower_tail;
  cfg.model = DistributionModel(LogNormalRadial{-0.125, 0.25});
  cfg.sizes = {100, 400, 1600};
  cfg.trials = 20000;
  cfg.thresholds = {1.0};
  const auto r = lower_tail_experiment(cfg);
  std::vector<double> x, y;
  for (const auto& row : r.rows) {
    if (row.probability <= 0.0) return {false, "zero hits at N = " + std::to_string(row.n)};
    x.push_back(std::log(static_cast<double>(row.n)));
    y.push_back(std::log(row.probability));
  }
  const double s = slope(x, y);
  return {s <= -0.7, fmt("theta = %.3f, P = %.5f, %.5f, %.5f, slope %.3f", theta(*cfg.model), r.rows[0].probability,
                         r.rows[1].probability, r.rows[2].probability, s)};
}

Outcome c9_upper_tail() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::upper_tail;
  cfg.model = half_fixture();
  cfg.sizes = {400};
  cfg.trials = 20000;
  cfg.thresholds = {1.0, 2.0, 4.0, 8.0};
  const auto r = upper_tail_experiment(cfg);
  bool ok = true;
  std::string ps;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    ps += fmt("%s%.4f", i ? ", " : "", r.rows[i].probability);
    if (i == 0) continue;
    const double se = std::sqrt(r.rows[i].std_error * r.rows[i].std_error + r.rows[i - 1].std_error * r.rows[i - 1].std_error);
    if (!(r.rows[i].probability < r.rows[i - 1].probability - 2.0 * se)) ok = false;
  }
  return {ok, "P[s^2 >= u/N^2] = " + ps};
}

// Two-band tabulated law; see the README for why this fixture.
const DistributionModel& gumbel_fixture() {
  static const DistributionModel m(TabulatedRadial{{0.1, 0.3, 1.8, 2.8}, {0.0, 0.95, 0.95, 1.0}});
  return m;
}

Outcome c10_gumbel() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::gumbel;
  cfg.model = gumbel_fixture();
  cfg.sizes = {1000, 4000, 10000, 16000, 64000};
  cfg.trials = 10000;
  const auto g = gumbel_experiment(cfg);
  std::vector<double> ratio = g.m[2];
  for (auto& v : ratio) v /= std::log(10000.0);
  const double med = quantile(ratio, 0.5);
  const double target = 1.0 / g.theta;
  const double ks1 = ks_distance(gumbel_centered(g, 0), gumbel_centered(g, 1));
  const double ks2 = ks_distance(gumbel_centered(g, 1), gumbel_centered(g, 3));
  const double ks3 = ks_distance(gumbel_centered(g, 3), gumbel_centered(g, 4));
  const bool ok = std::abs(med - target) <= 0.1 * target && ks1 > ks2 && ks2 > ks3;
  return {ok, fmt("theta = %.4f, median M_N/log N = %.4f vs 1/theta = %.4f (%.1f%%), KS = %.4f, %.4f, %.4f", g.theta, med,
                  target, 100.0 * (med - target) / target, ks1, ks2, ks3)};
}

Outcome c11_t_tail() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::t_tail;
  cfg.model = half_fixture();
  cfg.sizes = {1000};
  cfg.trials = 20000;
  cfg.thresholds = {1.0, 2.0, 4.0, 8.0};
  const auto r = t_tail_experiment(cfg);
  std::vector<double> x, y;
  std::string ps;
  for (const auto& row : r.rows) {
    ps += fmt("%s%.4f", ps.empty() ? "" : ", ", row.probability);
    if (row.probability <= 0.0) return {false, "zero survival at v = " + format_double(row.threshold)};
    x.push_back(std::log(row.threshold));
    y.push_back(std::log(row.probability));
  }
  const double s = slope(x, y);
  return {s <= -0.35, "survival " + ps + fmt(", slope %.3f", s)};
}

Outcome c12_excursion_bound() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::t_tail;
  cfg.model = half_fixture();
  cfg.sizes = {200};
  cfg.trials = 10000;
  cfg.thresholds = {1.0};
  cfg.ladder_c = 1.0;
  const auto r = t_tail_experiment(cfg);
  return {r.bound_violations == 0 && r.bound_checked > 0,
          fmt("%zu paths checked, %zu vacuous, %zu violations", r.bound_checked, r.bound_vacuous, r.bound_violations)};
}

Outcome c13_toeplitz_duality() {
  std::size_t tv = 0, dv = 0;
  const double rs[3] = {0.1, 0.5, 0.9};
  for (std::size_t t = 0; t < 1000; ++t) {
    Stream rng = substream(113, 0, t);
    const std::size_t n = 1 + rng.below(64);
    std::vector<Complex> a(n);
    double na = 0.0;
    for (auto& z : a) {
      z = {rng.normal(), rng.normal()};
      na += std::norm(z);
    }
    const double r = rs[t % 3];
    if (oracle::toeplitz_form(r, a) > na / (1.0 - r) * (1.0 + 1e-12)) ++tv;
  }
  for (std::size_t t = 0; t < 1000; ++t) {
    Stream rng = substream(113, 1, t);
    std::vector<Complex> d(16);
    for (auto& z : d) z = std::polar(std::exp(0.8 * rng.normal()), 2.0 * std::numbers::pi * rng.uniform());
    const CycleDiagonal cd(d);
    const auto h = dual_hat(cd);
    std::vector<Complex> hc(h.entries().begin(), h.entries().end());
    for (auto& z : hc) z = std::conj(z);
    double lo = kInf;
    for (const auto& z : d) lo = std::min(lo, std::abs(z));
    const double lhs = oracle::dense_smin(oracle::assemble_block(d));
    const double rhs = lo * oracle::dense_smin(oracle::assemble_block(hc));
    if (lhs < rhs - 1e-9) ++dv;
  }
  return {tv == 0 && dv == 0, fmt("Toeplitz: %zu violations / 1000, duality: %zu violations / 1000", tv, dv)};
}

Outcome c14_determinism() {
  std::vector<ExperimentConfig> cfgs;
  auto add = [&](ExperimentKind k, std::vector<std::size_t> sizes, std::size_t trials, PermMode mode) {
    ExperimentConfig c;
    c.kind = k;
    c.model = half_fixture();
    c.sizes = std::move(sizes);
    c.trials = trials;
    c.mode = mode;
    c.seed = 77;
    if (k == ExperimentKind::lower_tail || k == ExperimentKind::upper_tail) c.thresholds = {0.5, 1.0, 4.0};
    if (k == ExperimentKind::t_tail) c.thresholds = {1.0, 2.0, 4.0, 8.0};
    cfgs.push_back(c);
  };
  add(ExperimentKind::lower_tail, {20, 200}, 500, PermMode::uniform);
  add(ExperimentKind::upper_tail, {50}, 500, PermMode::single_cycle);
  add(ExperimentKind::gumbel, {100, 1000}, 500, PermMode::single_cycle);
  add(ExperimentKind::t_tail, {300}, 500, PermMode::single_cycle);
  add(ExperimentKind::sandwich, {16, 48}, 100, PermMode::uniform);
  cfgs.back().model = DistributionModel(LogNormalRadial{-0.1, 0.6});
  std::size_t mismatches = 0;
  for (const auto& c : cfgs) {
    std::string ref;
    for (std::size_t jobs : {1, 1, 2, 4, 7}) {
      RunOptions opt;
      opt.jobs = jobs;
      const auto out = io::run_experiment(c, opt);
      const std::string all = out.csv + out.log;
      if (ref.empty()) ref = all;
      else if (all != ref) ++mismatches;
    }
  }
  return {mismatches == 0, fmt("5 experiment kinds x worker counts {1,1,2,4,7}: %zu mismatches", mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"sandwich 1/rho <= s^2 <= c0/gamma", c1_sandwich},
      {"pathwise sandwich", c2_pathwise},
      {"structured solver exactness", c3_exactness},
      {"explicit inverse and HS norms", c4_inverse},
      {"theta closed forms", c5_theta},
      {"epsilon bound inside/outside the disk", c6_eps_bound},
      {"lower tail tightness, theta < 1", c7_lower_tail_small_theta},
      {"lower tail decay, theta > 1", c8_lower_tail_large_theta},
      {"upper tail monotone", c9_upper_tail},
      {"Gumbel median and KS", c10_gumbel},
      {"T_N tail slope", c11_t_tail},
      {"excursion bound on T_N", c12_excursion_bound},
      {"Toeplitz bound and duality", c13_toeplitz_duality},
      {"determinism across workers", c14_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %s: %s; %s [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
