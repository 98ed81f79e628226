#pragma once

// Monte Carlo experiments for the tail laws of s_min^2, the segment gain M_N and T_N.
//
// Trial t at size N draws from substream(seed, N, t) only, and results are reduced in trial
// order, so output does not depend on the number of worker threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "permsv/cycle_diagonal.hpp"
#include "permsv/dist.hpp"
#include "permsv/error.hpp"
#include "permsv/oracle.hpp"
#include "permsv/perm.hpp"
#include "permsv/rng.hpp"
#include "permsv/spectral.hpp"
#include "permsv/walk.hpp"

namespace permsv {

enum class ExperimentKind { lower_tail, upper_tail, gumbel, t_tail, sandwich };
enum class PermMode { single_cycle, uniform, identity };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::lower_tail;
  std::optional<DistributionModel> model;
  std::vector<std::size_t> sizes;
  std::size_t trials = 0;
  PermMode mode = PermMode::single_cycle;
  std::uint64_t seed = 20240601;
  std::vector<double> thresholds;
  std::string output;
  double ladder_c = 1.0;  // t_tail: depth c of the ladder epochs in the excursion bound check
};

struct RunOptions {
  std::size_t jobs = 0;  // 0: hardware concurrency
  bool verify = false;   // dense check on every trial with N <= oracle cap
  double tol = 1e-12;
};

inline void validate(const ExperimentConfig& cfg) {
  if (!cfg.model) throw InvalidInput("experiment: no model given");
  if (cfg.sizes.empty()) throw InvalidInput("experiment: sizes must be non-empty");
  if (cfg.trials == 0) throw InvalidInput("experiment: trials must be at least 1");
  for (std::size_t n : cfg.sizes) {
    if (n < 2) throw InvalidInput("experiment: every size must be at least 2");
  }
  if (!(cfg.ladder_c > 0.0)) throw InvalidInput("experiment: ladder_c must be positive");
}

// Runs f(0..count-1) on up to `jobs` threads; results in index order. If any call throws,
// the exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t count, std::size_t jobs, F f) -> std::vector<decltype(f(std::size_t{0}))> {
  using R = decltype(f(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct Instance {
  Permutation sigma;
  std::vector<Complex> d;
};

// The permutation is drawn first (uniform mode), then d_1..d_N.
inline Instance draw_instance(const DistributionModel& model, PermMode mode, std::uint64_t seed, std::size_t n,
                              std::size_t trial) {
  Stream rng = substream(seed, n, trial);
  Instance inst;
  switch (mode) {
    case PermMode::single_cycle: inst.sigma = Permutation::full_cycle(n); break;
    case PermMode::uniform: inst.sigma = sample_uniform(n, rng); break;
    case PermMode::identity: inst.sigma = Permutation::identity(n); break;
  }
  inst.d.resize(n);
  for (auto& z : inst.d) z = model.sample(rng);
  return inst;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string dump_instance(const Instance& inst, std::uint64_t seed, std::size_t n, std::size_t trial) {
  std::string s = "seed=" + std::to_string(seed) + " N=" + std::to_string(n) + " trial=" + std::to_string(trial) +
                  "\nsigma: " + format_permutation(inst.sigma) + "\nd:\n";
  for (const auto& z : inst.d) s += format_double(z.real()) + " " + format_double(z.imag()) + "\n";
  return s;
}

struct SminSample {
  double s2 = 0.0;
  bool singular = false;
  bool verified = false;
};

inline bool close_to_dense(double structured, double dense, double scale) {
  return std::abs(structured - dense) <= 1e-8 * std::max(structured, dense) + 1e-14 * scale;
}

// s_min^2(A) as the minimum over cycles of the structured power iteration; a singular
// block gives 0. Dense check on 1% of trials at N <= 64, or on every trial with verify.
inline SminSample smin_sq_trial(const Instance& inst, const RunOptions& opt, std::uint64_t seed, std::size_t trial) {
  const auto dec = decompose(inst.sigma);
  SminSample out;
  double s = kInf;
  for (const auto& cyc : dec.cycles) {
    const auto block = CycleDiagonal::for_cycle(cyc, inst.d);
    if (is_singular(block)) {
      out.singular = true;
      s = 0.0;
      break;
    }
    const auto p = smin_iterate(block, opt.tol);
    if (!p.converged) {
      throw ConvergenceError("s_min iteration did not converge\n" + dump_instance(inst, seed, inst.d.size(), trial));
    }
    s = std::min(s, p.smin);
  }
  const std::size_t n = inst.d.size();
  const bool check = (opt.verify && n <= oracle::kDefaultCap) || (n <= 64 && trial % 100 == 0);
  if (check) {
    const double dense = oracle::dense_smin(oracle::assemble(inst.sigma, inst.d));
    double scale = 1.0;
    for (const auto& z : inst.d) scale = std::max(scale, std::abs(z) + 1.0);
    if (!close_to_dense(s, dense, scale)) {
      throw VerificationError("structured s_min " + format_double(s) + " disagrees with dense " +
                              format_double(dense) + "\n" + dump_instance(inst, seed, n, trial));
    }
    out.verified = true;
  }
  out.s2 = s * s;
  return out;
}

struct TailEstimate {
  std::size_t n = 0;
  double threshold = 0.0;  // u (or v)
  double level = 0.0;      // the rescaled cutoff the statistic is compared with
  double probability = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::size_t singular = 0;
};

inline TailEstimate make_estimate(std::size_t n, double threshold, double level, std::size_t hits,
                                  std::size_t trials, std::size_t singular) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {n, threshold, level, p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, singular};
}

// Cutoff u / (N^{1/theta} log N) for theta < 1 and u / (N log N) otherwise.
inline double lower_tail_level(double u, std::size_t n, double th) {
  const double nn = static_cast<double>(n);
  const double scale = th < 1.0 ? std::pow(nn, 1.0 / th) : nn;
  return u / (scale * std::log(nn));
}

inline double upper_tail_level(double u, std::size_t n, double th) {
  return u * std::pow(static_cast<double>(n), -1.0 / th);
}

struct SminTable {
  std::vector<TailEstimate> rows;
  std::size_t verified = 0;
  std::size_t singular = 0;
};

inline std::vector<SminSample> smin_samples(const ExperimentConfig& cfg, const RunOptions& opt, std::size_t n) {
  return parallel_map(cfg.trials, opt.jobs, [&](std::size_t t) {
    const auto inst = draw_instance(*cfg.model, cfg.mode, cfg.seed, n, t);
    return smin_sq_trial(inst, opt, cfg.seed, t);
  });
}

namespace detail {
template <class Level, class Hit>
SminTable smin_tail(const ExperimentConfig& cfg, const RunOptions& opt, Level level, Hit hit) {
  validate(cfg);
  const double th = theta(*cfg.model);
  SminTable out;
  for (std::size_t n : cfg.sizes) {
    const auto samples = smin_samples(cfg, opt, n);
    std::size_t sing = 0;
    for (const auto& s : samples) {
      sing += s.singular ? 1 : 0;
      out.verified += s.verified ? 1 : 0;
    }
    out.singular += sing;
    for (double u : cfg.thresholds) {
      const double lv = level(u, n, th);
      std::size_t hits = 0;
      for (const auto& s : samples) hits += hit(s.s2, lv) ? 1 : 0;
      out.rows.push_back(make_estimate(n, u, lv, hits, cfg.trials, sing));
    }
  }
  return out;
}
}  // namespace detail

// Empirical P[s_min^2 <= lower_tail_level(u)] per N and u. Singular draws count as s^2 = 0.
inline SminTable lower_tail_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {}) {
  return detail::smin_tail(cfg, opt, lower_tail_level, [](double s2, double lv) { return s2 <= lv; });
}

// Empirical P[s_min^2 >= u N^{-1/theta}] per N and u.
inline SminTable upper_tail_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {}) {
  return detail::smin_tail(cfg, opt, upper_tail_level, [](double s2, double lv) { return s2 >= lv; });
}

// One walk per trial, long enough for the largest size; M_N for every N is read off its
// prefixes, so the samples for different N are coupled.
struct GumbelResult {
  double theta = 0.0;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<double>> m;  // m[j][t] = M_{sizes[j]} of path t
};

inline GumbelResult gumbel_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {}) {
  validate(cfg);
  GumbelResult out;
  out.theta = theta(*cfg.model);
  out.sizes = cfg.sizes;
  std::sort(out.sizes.begin(), out.sizes.end());
  const std::size_t nmax = out.sizes.back();
  const auto& model = *cfg.model;
  auto per_path = parallel_map(cfg.trials, opt.jobs, [&](std::size_t t) {
    Stream rng = substream(cfg.seed, nmax, t);
    std::vector<double> vals;
    double s = 0.0, low = kInf, best = 0.0;
    std::size_t j = 0;
    for (std::size_t m = 1; m <= nmax; ++m) {
      s += 2.0 * std::log(model.sample_radius(rng));
      low = std::min(low, s);
      best = std::max(best, s - low);
      while (j < out.sizes.size() && out.sizes[j] == m) {
        vals.push_back(best);
        ++j;
      }
    }
    return vals;
  });
  out.m.assign(out.sizes.size(), std::vector<double>(cfg.trials));
  for (std::size_t t = 0; t < cfg.trials; ++t)
    for (std::size_t j = 0; j < out.sizes.size(); ++j) out.m[j][t] = per_path[t][j];
  return out;
}

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

// Empirical quantile by the nearest-rank rule.
inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw InvalidInput("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = std::ceil(q * static_cast<double>(v.size()));
  const std::size_t k = static_cast<std::size_t>(std::clamp(pos, 1.0, static_cast<double>(v.size())));
  return v[k - 1];
}

// M_N - (log N) / theta for each path.
inline std::vector<double> gumbel_centered(const GumbelResult& g, std::size_t j) {
  std::vector<double> c = g.m[j];
  const double shift = std::log(static_cast<double>(g.sizes[j])) / g.theta;
  for (auto& x : c) x -= shift;
  return c;
}

struct TTailResult {
  std::vector<TailEstimate> rows;
  std::size_t bound_checked = 0;
  std::size_t bound_violations = 0;
  std::size_t bound_vacuous = 0;
};

// Survival of T_N / (N^{1/theta} ln N) (theta < 1) or T_N / (N ln N) at each threshold v,
// with the excursion bound checked on every path.
inline TTailResult t_tail_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {}) {
  validate(cfg);
  const auto& model = *cfg.model;
  const double th = theta(model);
  TTailResult out;
  struct PathStats {
    double log_t;
    bool holds;
    bool vacuous;
  };
  for (std::size_t n : cfg.sizes) {
    auto stats = parallel_map(cfg.trials, opt.jobs, [&](std::size_t t) {
      Stream rng = substream(cfg.seed, n, t);
      std::vector<double> xi(n);
      for (auto& x : xi) x = 2.0 * std::log(model.sample_radius(rng));
      const auto w = WalkPath::from_steps(xi);
      const auto chk = excursion_bound_check(w, cfg.ladder_c);
      return PathStats{chk.lhs.log, chk.holds, chk.vacuous};
    });
    const double nn = static_cast<double>(n);
    const double log_scale = (th < 1.0 ? std::log(nn) / th : std::log(nn)) + std::log(std::log(nn));
    for (const auto& s : stats) {
      if (s.vacuous) {
        ++out.bound_vacuous;
      } else {
        ++out.bound_checked;
        out.bound_violations += s.holds ? 0 : 1;
      }
    }
    for (double v : cfg.thresholds) {
      std::size_t hits = 0;
      for (const auto& s : stats) hits += (s.log_t - log_scale >= std::log(v)) ? 1 : 0;
      out.rows.push_back(make_estimate(n, v, std::exp(log_scale) * v, hits, cfg.trials, 0));
    }
  }
  return out;
}

struct SandwichRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  double lower = 0.0;
  double exact_sq = 0.0;
  double upper = 0.0;
  double c0 = 0.0;
  double m_n = 0.0;
  double t_n = 0.0;
  double x_n = 0.0;
  bool singular = false;
  std::size_t critical_length = 0;
};

// Per-trial bounds on the critical cycle (the one attaining s_min). Both sandwiches
//   lower <= s^2 <= upper   and   (2 X_N + 2 T_N)^{-1} <= s^2 <= c0 e^{-M_N}
// and gamma >= e^{M_N}, rho2 <= T_N are asserted with relative tolerance 1e-9.
inline SandwichRecord sandwich_trial(const Instance& inst, const RunOptions& opt, std::uint64_t seed,
                                     std::size_t trial) {
  const std::size_t n = inst.d.size();
  BoundOptions bo;
  bo.exact = true;
  bo.tol = opt.tol;
  const auto rep = bounds_global(inst.sigma, inst.d, bo);
  SandwichRecord r;
  r.n = n;
  r.trial = trial;
  r.singular = rep.global.singular;
  r.lower = rep.global.lower.value();
  r.upper = rep.global.upper.value();
  const auto& crit = rep.cycles[rep.critical];
  r.critical_length = crit.length;
  r.c0 = crit.bounds.c0.value();
  if (r.singular) return r;
  if (!rep.global.exact_converged) {
    throw ConvergenceError("s_min iteration did not converge\n" + dump_instance(inst, seed, n, trial));
  }
  const double s = *rep.global.exact;
  r.exact_sq = s * s;
  const auto dec = decompose(inst.sigma);
  const auto block = CycleDiagonal::for_cycle(dec.cycles[rep.critical], inst.d);
  const auto w = from_diagonal(block);
  const double m = m_functional(w);
  const LogReal t = t_functional(w);
  const LogReal x = x_functional(block);
  r.m_n = m;
  r.t_n = t.value();
  r.x_n = x.value();

  const double tol = 1e-9;
  const double ls = 2.0 * std::log(s);
  std::string failed;
  if (ls < rep.global.lower.log - tol) failed += " lower<=s^2";
  if (ls > rep.global.upper.log + tol) failed += " s^2<=upper";
  const double pw_lower = -std::numbers::ln2 - log_add(x.log, t.log);
  if (ls < pw_lower - tol) failed += " (2X+2T)^-1<=s^2";
  if (ls > crit.bounds.c0.log - m + tol) failed += " s^2<=c0*exp(-M)";
  if (crit.bounds.gamma.log < m - tol) failed += " gamma>=exp(M)";
  if (crit.bounds.rho2.log > t.log + tol) failed += " rho2<=T";
  if (!failed.empty()) {
    throw VerificationError("sandwich assertion failed:" + failed + "\n" + dump_instance(inst, seed, n, trial));
  }
  if ((opt.verify && n <= oracle::kDefaultCap) || (n <= 64 && trial % 100 == 0)) {
    const double dense = oracle::dense_smin(oracle::assemble(inst.sigma, inst.d));
    double scale = 1.0;
    for (const auto& z : inst.d) scale = std::max(scale, std::abs(z) + 1.0);
    if (!close_to_dense(s, dense, scale)) {
      throw VerificationError("structured s_min " + format_double(s) + " disagrees with dense " +
                              format_double(dense) + "\n" + dump_instance(inst, seed, n, trial));
    }
  }
  return r;
}

inline std::vector<SandwichRecord> sandwich_sweep(const ExperimentConfig& cfg, const RunOptions& opt = {}) {
  validate(cfg);
  std::vector<SandwichRecord> out;
  for (std::size_t n : cfg.sizes) {
    auto recs = parallel_map(cfg.trials, opt.jobs, [&](std::size_t t) {
      const auto inst = draw_instance(*cfg.model, cfg.mode, cfg.seed, n, t);
      return sandwich_trial(inst, opt, cfg.seed, t);
    });
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

}  // namespace permsv
