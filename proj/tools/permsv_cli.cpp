// permsv: bounds, exact values, theta, walk diagnostics and Monte Carlo experiments for
// s_min(D + M_sigma).
//
// Exit codes: 0 success, 1 input error, 2 singular instance, 3 non-convergence,
// 4 dense verification mismatch.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "permsv/permsv.hpp"

namespace {

using namespace permsv;

constexpr std::uint64_t kDefaultSeed = 20240601;

struct Common {
  std::optional<std::uint64_t> seed;
  double tol = 1e-12;
  bool verify = false;
  std::size_t jobs = 0;
  std::string format = "json";
  std::string out;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_file(c.out, text);
  }
}

struct Inputs {
  Permutation sigma;
  std::vector<Complex> d;
};

Inputs load(const std::string& perm_path, const std::string& diag_path) {
  Inputs in;
  try {
    in.sigma = parse_permutation(io::read_file(perm_path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(perm_path + ": " + e.what());
  }
  try {
    in.d = io::parse_diagonal(io::read_file(diag_path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(diag_path + ": " + e.what());
  }
  require_length(in.sigma, in.d);
  return in;
}

void verify_dense(const Inputs& in, double structured) {
  const double dense = oracle::dense_smin(oracle::assemble(in.sigma, in.d));
  double scale = 1.0;
  for (const auto& z : in.d) scale = std::max(scale, std::abs(z) + 1.0);
  if (!close_to_dense(structured, dense, scale)) {
    throw VerificationError("structured s_min " + format_double(structured) + " disagrees with dense oracle " +
                            format_double(dense));
  }
}

int cmd_bounds(const Common& c, const std::string& perm, const std::string& diag, bool exact) {
  const auto in = load(perm, diag);
  BoundOptions bo;
  bo.exact = exact || c.verify;
  bo.tol = c.tol;
  const auto rep = bounds_global(in.sigma, in.d, bo);
  if (bo.exact && !rep.global.singular && !rep.global.exact_converged) {
    throw ConvergenceError("s_min iteration did not converge");
  }
  if (c.verify && !rep.global.singular) verify_dense(in, *rep.global.exact);
  if (c.format == "csv") {
    emit(c, io::report_csv(rep));
  } else {
    emit(c, io::report_json(rep, in.d.size()).dump(2) + "\n");
  }
  return rep.global.singular ? 2 : 0;
}

int cmd_exact(const Common& c, const std::string& perm, const std::string& diag) {
  const auto in = load(perm, diag);
  BoundOptions bo;
  bo.exact = true;
  bo.tol = c.tol;
  const auto rep = bounds_global(in.sigma, in.d, bo);
  if (!rep.global.singular && !rep.global.exact_converged) throw ConvergenceError("s_min iteration did not converge");
  const double s = rep.global.singular ? 0.0 : *rep.global.exact;
  if (c.verify && !rep.global.singular) verify_dense(in, s);
  if (c.format == "json") {
    nlohmann::json j;
    j["n"] = in.d.size();
    j["smin"] = s;
    j["smin_sq"] = s * s;
    j["singular"] = rep.global.singular;
    j["critical_cycle"] = rep.critical + 1;
    nlohmann::json per = nlohmann::json::array();
    for (const auto& cyc : rep.cycles) {
      per.push_back({{"start", cyc.start}, {"length", cyc.length},
                     {"smin", cyc.bounds.exact ? io::number(*cyc.bounds.exact) : nlohmann::json(nullptr)},
                     {"singular", cyc.bounds.singular}});
    }
    j["cycles"] = per;
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, "smin\n" + format_double(s) + "\n");
  }
  return rep.global.singular ? 2 : 0;
}

DistributionModel load_model(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    const auto doc = io::parse_ini(io::read_file(spec));
    const auto it = doc.sections.find("model");
    if (it == doc.sections.end()) throw InvalidInput(spec + ": missing [model] section");
    return io::model_from_keys(it->second);
  }
  return io::parse_model_spec(spec);
}

int cmd_theta(const Common& c, const std::string& spec) {
  const auto model = load_model(spec);
  const auto hyp = hypothesis_report(model);
  const double th = theta(model, c.tol);
  if (c.format == "csv") {
    emit(c, "theta,mean_log,h1,h2,h3,h4\n" + format_double(th) + "," + format_double(hyp.mean_log) + "," +
                std::to_string(hyp.h1) + "," + std::to_string(hyp.h2) + "," + std::to_string(hyp.h3) + "," +
                std::to_string(hyp.h4) + "\n");
  } else {
    nlohmann::json j;
    j["model"] = model.name();
    j["theta"] = th;
    j["mean_log"] = hyp.mean_log;
    j["hypotheses"] = {{"H1", hyp.h1}, {"H2", hyp.h2}, {"B", io::number(hyp.b)}, {"H3", hyp.h3}, {"H4", hyp.h4},
                       {"notes", hyp.notes}};
    emit(c, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_experiment(const Common& c, const std::string& path) {
  auto cfg = io::parse_config(io::read_file(path));
  if (c.seed) cfg.seed = *c.seed;
  if (!c.out.empty()) cfg.output = c.out;
  if (cfg.output.empty()) throw InvalidInput("experiment: no output path (set output in the config or pass --out)");
  RunOptions opt;
  opt.jobs = c.jobs;
  opt.verify = c.verify;
  opt.tol = c.tol;
  const auto res = io::run_experiment(cfg, opt);
  io::write_file(cfg.output, res.csv);
  io::write_file(cfg.output + ".log", res.log);
  return 0;
}

int cmd_walk(const Common& c, const std::string& diag, double ladder_c, const std::string& path_csv,
             const std::string& ladder_out) {
  CycleDiagonal d;
  try {
    d = CycleDiagonal(io::parse_diagonal(io::read_file(diag)));
  } catch (const InvalidInput& e) {
    throw InvalidInput(diag + ": " + e.what());
  }
  if (c.format == "csv") {
    emit(c, io::walk_summary_csv(d, ladder_c));
  } else {
    emit(c, io::walk_json(d, ladder_c).dump(2) + "\n");
  }
  const auto w = from_diagonal(d);
  if (!path_csv.empty()) io::write_file(path_csv, io::walk_path_csv(w));
  if (!ladder_out.empty()) io::write_file(ladder_out, io::ladder_csv(ladder(w, ladder_c)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smallest singular value of diagonal-plus-permutation matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  std::uint64_t seed = kDefaultSeed;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed for experiments (default 20240601)");
  app.add_option("--tol", c.tol, "Relative tolerance of the power iteration / theta bisection")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verify", c.verify, "Cross-check against the dense oracle (N <= 256)");
  app.add_option("--jobs", c.jobs, "Worker threads for experiments (0 = all cores)");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "Output file (experiment: CSV path, log goes to <out>.log)");

  std::string perm, diag, spec, config, path_csv, ladder_out;
  bool with_exact = false;
  double ladder_c = 1.0;

  auto* bounds = app.add_subcommand("bounds", "Per-cycle and global sandwich bounds");
  bounds->add_option("perm", perm, "Permutation file")->required();
  bounds->add_option("diag", diag, "Diagonal file")->required();
  bounds->add_flag("--exact", with_exact, "Also compute exact s_min");

  auto* exact = app.add_subcommand("exact", "Exact s_min via the structured solver");
  exact->add_option("perm", perm, "Permutation file")->required();
  exact->add_option("diag", diag, "Diagonal file")->required();

  auto* th = app.add_subcommand("theta", "Tail exponent theta and hypothesis report");
  th->add_option("model", spec, "Model file with a [model] section, or inline spec type:key=value;...")->required();

  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  exp->add_option("config", config, "Experiment config file")->required();

  auto* walk = app.add_subcommand("walk", "Random-walk functionals of a diagonal");
  walk->add_option("diag", diag, "Diagonal file")->required();
  walk->add_option("--c", ladder_c, "Ladder depth c")->check(CLI::PositiveNumber);
  walk->add_option("--path-csv", path_csv, "Write the walk path (index,S)");
  walk->add_option("--ladder-csv", ladder_out, "Write the ladder decomposition (i,K_i,U_i)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (seed_opt->count() > 0) c.seed = seed;

  try {
    if (*bounds) return cmd_bounds(c, perm, diag, with_exact);
    if (*exact) return cmd_exact(c, perm, diag);
    if (*th) return cmd_theta(c, spec);
    if (*exp) return cmd_experiment(c, config);
    if (*walk) return cmd_walk(c, diag, ladder_c, path_csv, ladder_out);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SingularError& e) {
    std::cerr << "singular: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 4;
  }
  return 1;
}
