#pragma once

// File formats: diagonal files, model specs, the experiment config grammar, JSON bound
// reports and the experiment CSV/log outputs.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "permsv/dist.hpp"
#include "permsv/error.hpp"
#include "permsv/mc.hpp"
#include "permsv/spectral.hpp"
#include "permsv/walk.hpp"

namespace permsv::io {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// A decimal number, or a ratio "x/y" of two.
inline bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    double num = 0.0, den = 0.0;
    if (!parse_number(s.substr(0, slash), num) || !parse_number(s.substr(slash + 1), den) || den == 0.0) return false;
    out = num / den;
    return true;
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline double require_number(std::string_view s, const std::string& what) {
  double v = 0.0;
  if (!parse_number(s, v)) throw InvalidInput(what + ": expected a number, got '" + std::string(trim(s)) + "'");
  return v;
}

// One complex entry per line as "re im" (a lone "re" means im = 0). Blank lines and lines
// starting with '#' are skipped.
inline std::vector<Complex> parse_diagonal(std::string_view text) {
  std::vector<Complex> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::pair<std::size_t, std::string_view>> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      tokens.emplace_back(start + 1, line.substr(start, i - start));
    }
    if (tokens.size() > 2) {
      throw InvalidInput("diagonal parse error at line " + std::to_string(line_no) + ", column " +
                         std::to_string(tokens[2].first) + ": expected 're im', found a third field");
    }
    double parts[2] = {0.0, 0.0};
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const auto [col, tok] = tokens[k];
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), parts[k]);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(parts[k])) {
        throw InvalidInput("diagonal parse error at line " + std::to_string(line_no) + ", column " +
                           std::to_string(col) + ": invalid number '" + std::string(tok) + "'");
      }
    }
    out.emplace_back(parts[0], parts[1]);
  }
  if (out.empty()) throw InvalidInput("diagonal parse error: no entries");
  return out;
}

inline std::string format_diagonal(std::span<const Complex> d) {
  std::string s;
  for (const auto& z : d) s += format_double(z.real()) + " " + format_double(z.imag()) + "\n";
  return s;
}

inline std::vector<double> parse_number_list(std::string_view s, const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto item = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(require_number(item, what));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

using KeyValues = std::map<std::string, std::string>;

inline DistributionModel model_from_keys(const KeyValues& kv) {
  auto get = [&](const std::string& key) -> std::string {
    const auto it = kv.find(key);
    if (it == kv.end()) throw InvalidInput("model: missing key '" + key + "'");
    return it->second;
  };
  const std::string type = get("type");
  std::vector<std::string> allowed;
  RadialLaw law;
  if (type == "two_point") {
    allowed = {"a", "b", "p"};
    law = TwoPointRadial{require_number(get("a"), "model.a"), require_number(get("b"), "model.b"),
                         require_number(get("p"), "model.p")};
  } else if (type == "lognormal") {
    allowed = {"mu", "sigma"};
    law = LogNormalRadial{require_number(get("mu"), "model.mu"), require_number(get("sigma"), "model.sigma")};
  } else if (type == "annulus") {
    allowed = {"radii", "weights"};
    law = AnnulusMixture{parse_number_list(get("radii"), "model.radii"),
                         parse_number_list(get("weights"), "model.weights")};
  } else if (type == "tabulated") {
    allowed = {"radii", "cdf"};
    law = TabulatedRadial{parse_number_list(get("radii"), "model.radii"), parse_number_list(get("cdf"), "model.cdf")};
  } else {
    throw InvalidInput("model: unknown type '" + type + "' (expected two_point, lognormal, annulus, tabulated)");
  }
  for (const auto& [k, v] : kv) {
    if (k == "type") continue;
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw InvalidInput("model: unknown key '" + k + "' for type " + type);
    }
  }
  return DistributionModel(std::move(law));
}

// Inline form "type:key=value;key=value", e.g. "two_point:a=0.5;b=2;p=2/3".
inline DistributionModel parse_model_spec(std::string_view spec) {
  KeyValues kv;
  const auto colon = spec.find(':');
  kv["type"] = std::string(trim(spec.substr(0, colon)));
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      const auto semi = rest.find(';', pos);
      const auto item = trim(rest.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos));
      pos = semi == std::string_view::npos ? rest.size() : semi + 1;
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw InvalidInput("model spec: expected key=value, got '" + std::string(item) + "'");
      kv[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
    }
  }
  return model_from_keys(kv);
}

struct IniDocument {
  std::map<std::string, KeyValues> sections;
};

// "[section]" headers, "key = value" lines, '#' or ';' comments.
inline IniDocument parse_ini(std::string_view text) {
  IniDocument doc;
  std::string section;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const std::string where = "config line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw InvalidInput(where + ": unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "experiment" && section != "model") {
        throw InvalidInput(where + ": unknown section [" + section + "]");
      }
      if (doc.sections.count(section)) throw InvalidInput(where + ": duplicate section [" + section + "]");
      doc.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw InvalidInput(where + ": expected 'key = value'");
    if (section.empty()) throw InvalidInput(where + ": key outside of a section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw InvalidInput(where + ": empty key");
    auto& kv = doc.sections[section];
    if (kv.count(key)) throw InvalidInput(where + ": duplicate key '" + key + "'");
    kv[key] = std::string(trim(line.substr(eq + 1)));
  }
  return doc;
}

inline std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::lower_tail: return "lower_tail";
    case ExperimentKind::upper_tail: return "upper_tail";
    case ExperimentKind::gumbel: return "gumbel";
    case ExperimentKind::t_tail: return "t_tail";
    case ExperimentKind::sandwich: return "sandwich";
  }
  return "";
}

inline std::string mode_name(PermMode m) {
  switch (m) {
    case PermMode::single_cycle: return "single_cycle";
    case PermMode::uniform: return "uniform";
    case PermMode::identity: return "identity";
  }
  return "";
}

inline std::uint64_t parse_u64(std::string_view s, const std::string& what) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidInput(what + ": expected a nonnegative integer, got '" + std::string(s) + "'");
  }
  return v;
}

inline ExperimentConfig parse_config(std::string_view text) {
  const auto doc = parse_ini(text);
  if (!doc.sections.count("experiment")) throw InvalidInput("config: missing [experiment] section");
  if (!doc.sections.count("model")) throw InvalidInput("config: missing [model] section");
  const auto& ex = doc.sections.at("experiment");
  ExperimentConfig cfg;
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = ex.find(key);
    if (it == ex.end()) throw InvalidInput("config: missing experiment key '" + key + "'");
    return it->second;
  };
  const std::string& kind = get("kind");
  if (kind == "lower_tail") cfg.kind = ExperimentKind::lower_tail;
  else if (kind == "upper_tail") cfg.kind = ExperimentKind::upper_tail;
  else if (kind == "gumbel") cfg.kind = ExperimentKind::gumbel;
  else if (kind == "t_tail") cfg.kind = ExperimentKind::t_tail;
  else if (kind == "sandwich") cfg.kind = ExperimentKind::sandwich;
  else throw InvalidInput("config: unknown kind '" + kind + "'");

  for (const auto& [k, v] : ex) {
    if (k == "kind") continue;
    if (k == "sizes") {
      std::size_t pos = 0;
      std::string_view sv = v;
      while (pos <= sv.size()) {
        const auto comma = sv.find(',', pos);
        cfg.sizes.push_back(parse_u64(sv.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos),
                                      "config.sizes"));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    } else if (k == "trials") {
      cfg.trials = parse_u64(v, "config.trials");
    } else if (k == "mode") {
      if (v == "single_cycle") cfg.mode = PermMode::single_cycle;
      else if (v == "uniform") cfg.mode = PermMode::uniform;
      else if (v == "identity") cfg.mode = PermMode::identity;
      else throw InvalidInput("config: unknown mode '" + v + "'");
    } else if (k == "seed") {
      cfg.seed = parse_u64(v, "config.seed");
    } else if (k == "thresholds") {
      cfg.thresholds = parse_number_list(v, "config.thresholds");
    } else if (k == "output") {
      cfg.output = v;
    } else if (k == "ladder_c") {
      cfg.ladder_c = require_number(v, "config.ladder_c");
    } else {
      throw InvalidInput("config: unknown experiment key '" + k + "'");
    }
  }
  get("sizes");
  get("trials");
  if (cfg.thresholds.empty()) {
    if (cfg.kind == ExperimentKind::t_tail) cfg.thresholds = {1.0, 2.0, 4.0, 8.0};
    else if (cfg.kind == ExperimentKind::lower_tail || cfg.kind == ExperimentKind::upper_tail) cfg.thresholds = {1.0};
  }
  cfg.model = model_from_keys(doc.sections.at("model"));
  validate(cfg);
  return cfg;
}

inline std::string format_model(const DistributionModel& m) {
  std::string s = "type = " + m.name() + "\n";
  auto list = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out;
  };
  if (auto* t = std::get_if<TwoPointRadial>(&m.law())) {
    s += "a = " + format_double(t->a) + "\nb = " + format_double(t->b) + "\np = " + format_double(t->p) + "\n";
  } else if (auto* l = std::get_if<LogNormalRadial>(&m.law())) {
    s += "mu = " + format_double(l->mu_log) + "\nsigma = " + format_double(l->sigma_log) + "\n";
  } else if (auto* a = std::get_if<AnnulusMixture>(&m.law())) {
    s += "radii = " + list(a->radii) + "\nweights = " + list(a->weights) + "\n";
  } else if (auto* tab = std::get_if<TabulatedRadial>(&m.law())) {
    s += "radii = " + list(tab->radii) + "\ncdf = " + list(tab->cdf) + "\n";
  }
  return s;
}

// Canonical echo of a config in the input grammar.
inline std::string format_config(const ExperimentConfig& cfg) {
  std::string s = "[experiment]\nkind = " + kind_name(cfg.kind) + "\nsizes = ";
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) s += (i ? "," : "") + std::to_string(cfg.sizes[i]);
  s += "\ntrials = " + std::to_string(cfg.trials) + "\nmode = " + mode_name(cfg.mode) +
       "\nseed = " + std::to_string(cfg.seed) + "\nthresholds = ";
  for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) s += (i ? "," : "") + format_double(cfg.thresholds[i]);
  s += "\nladder_c = " + format_double(cfg.ladder_c) + "\noutput = " + cfg.output + "\n\n[model]\n";
  if (cfg.model) s += format_model(*cfg.model);
  return s;
}

inline std::string format_hypothesis(const HypothesisReport& h) {
  auto yn = [](bool b) { return b ? "holds" : "fails"; };
  std::string s = "H1 " + std::string(yn(h.h1)) + "\nH2 " + yn(h.h2) + " (B = " + format_double(h.b) + ")\nH3 " +
                  yn(h.h3) + " (m = " + format_double(h.mean_log) + ")\nH4 " + yn(h.h4) + "\n";
  for (const auto& n : h.notes) s += "note: " + n + "\n";
  return s;
}

// {"log": ln v, "value": v}; non-finite numbers become the strings "inf", "-inf", "nan".
inline nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline nlohmann::json log_pair(LogReal x) { return {{"log", number(x.log)}, {"value", number(x.value())}}; }

inline nlohmann::json bound_json(const BoundReport& b) {
  nlohmann::json j;
  j["c0"] = log_pair(b.c0);
  j["gamma"] = log_pair(b.gamma);
  j["gamma_argmax"] = b.gamma_argmax;
  j["rho1"] = log_pair(b.rho1);
  j["rho2"] = log_pair(b.rho2);
  j["lower"] = log_pair(b.lower);
  j["upper"] = log_pair(b.upper);
  if (b.exact) {
    j["exact"] = log_pair(LogReal::from_value(*b.exact));
    j["exact_sq"] = log_pair(LogReal::from_value(*b.exact * *b.exact));
  } else {
    j["exact"] = nullptr;
    j["exact_sq"] = nullptr;
  }
  j["singular"] = b.singular;
  return j;
}

inline nlohmann::json report_json(const GlobalReport& r, std::size_t n) {
  nlohmann::json j;
  j["n"] = n;
  j["cycles"] = nlohmann::json::array();
  for (std::size_t i = 0; i < r.cycles.size(); ++i) {
    auto c = bound_json(r.cycles[i].bounds);
    c["index"] = i + 1;
    c["start"] = r.cycles[i].start;
    c["length"] = r.cycles[i].length;
    j["cycles"].push_back(c);
  }
  auto g = bound_json(r.global);
  g["critical_cycle"] = r.critical + 1;
  j["global"] = g;
  return j;
}

inline std::string csv_value(LogReal x) { return format_double(x.value()); }

inline std::string report_csv(const GlobalReport& r) {
  std::string s = "cycle,start,length,c0,gamma,rho1,rho2,lower,upper,exact,singular\n";
  auto row = [&](const std::string& name, std::size_t start, std::size_t len, const BoundReport& b) {
    s += name + "," + std::to_string(start) + "," + std::to_string(len) + "," + csv_value(b.c0) + "," +
         csv_value(b.gamma) + "," + csv_value(b.rho1) + "," + csv_value(b.rho2) + "," + csv_value(b.lower) + "," +
         csv_value(b.upper) + "," + (b.exact ? format_double(*b.exact) : std::string()) + "," +
         (b.singular ? "1" : "0") + "\n";
  };
  for (std::size_t i = 0; i < r.cycles.size(); ++i) {
    row(std::to_string(i + 1), r.cycles[i].start, r.cycles[i].length, r.cycles[i].bounds);
  }
  const auto& crit = r.cycles[r.critical];
  row("global", crit.start, crit.length, r.global);
  return s;
}

inline std::string tail_csv(const std::vector<TailEstimate>& rows, bool with_singular) {
  std::string s = with_singular ? "N,threshold,level,probability,std_error,trials,singular\n"
                                : "N,threshold,level,probability,std_error,trials\n";
  for (const auto& r : rows) {
    s += std::to_string(r.n) + "," + format_double(r.threshold) + "," + format_double(r.level) + "," +
         format_double(r.probability) + "," + format_double(r.std_error) + "," + std::to_string(r.trials);
    if (with_singular) s += "," + std::to_string(r.singular);
    s += "\n";
  }
  return s;
}

inline std::string gumbel_csv(const GumbelResult& g) {
  std::string s = "N,q,centered\n";
  for (std::size_t j = 0; j < g.sizes.size(); ++j) {
    const auto c = gumbel_centered(g, j);
    for (int k = 1; k <= 99; ++k) {
      const double q = k / 100.0;
      s += std::to_string(g.sizes[j]) + "," + format_double(q) + "," + format_double(quantile(c, q)) + "\n";
    }
  }
  return s;
}

inline std::string sandwich_csv(const std::vector<SandwichRecord>& recs) {
  std::string s = "N,trial,lower,exact_sq,upper,c0,M_N,T_N,X_N,singular,critical_length\n";
  for (const auto& r : recs) {
    s += std::to_string(r.n) + "," + std::to_string(r.trial) + "," + format_double(r.lower) + "," +
         format_double(r.exact_sq) + "," + format_double(r.upper) + "," + format_double(r.c0) + "," +
         format_double(r.m_n) + "," + format_double(r.t_n) + "," + format_double(r.x_n) + "," +
         (r.singular ? "1" : "0") + "," + std::to_string(r.critical_length) + "\n";
  }
  return s;
}

struct ExperimentOutput {
  std::string csv;
  std::string log;
};

// Runs the configured experiment; returns the CSV text and the log (config echo, theta,
// hypothesis report, summary counts). Neither contains timestamps or thread counts.
inline ExperimentOutput run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  validate(cfg);
  const auto& model = *cfg.model;
  ExperimentOutput out;
  out.log = "# experiment configuration\n" + format_config(cfg) + "\n# model\n";
  double th = 0.0;
  try {
    th = theta(model);
    out.log += "theta = " + format_double(th) + "\n";
  } catch (const InvalidInput& e) {
    if (cfg.kind != ExperimentKind::sandwich) throw;
    out.log += "theta = none (" + std::string(e.what()) + ")\n";
  }
  out.log += "mean_log = " + format_double(model.mean_log()) + "\n\n# hypotheses\n" +
             format_hypothesis(hypothesis_report(model)) + "\n# summary\n";
  if (model.atomic()) out.log += "fixture: H4-violating fixture\n";
  switch (cfg.kind) {
    case ExperimentKind::lower_tail:
    case ExperimentKind::upper_tail: {
      const auto t = cfg.kind == ExperimentKind::lower_tail ? lower_tail_experiment(cfg, opt)
                                                            : upper_tail_experiment(cfg, opt);
      out.csv = tail_csv(t.rows, true);
      out.log += "singular_trials = " + std::to_string(t.singular) + "\ndense_verified_trials = " +
                 std::to_string(t.verified) + "\n";
      break;
    }
    case ExperimentKind::gumbel: {
      const auto g = gumbel_experiment(cfg, opt);
      out.csv = gumbel_csv(g);
      for (std::size_t j = 0; j < g.sizes.size(); ++j) {
        std::vector<double> ratio = g.m[j];
        for (auto& x : ratio) x /= std::log(static_cast<double>(g.sizes[j]));
        out.log += "N = " + std::to_string(g.sizes[j]) + ": median M_N/log N = " + format_double(quantile(ratio, 0.5)) +
                   " (1/theta = " + format_double(1.0 / th) + ")\n";
        if (j + 1 < g.sizes.size()) {
          out.log += "  KS(centered N=" + std::to_string(g.sizes[j]) + ", N=" + std::to_string(g.sizes[j + 1]) +
                     ") = " + format_double(ks_distance(gumbel_centered(g, j), gumbel_centered(g, j + 1))) + "\n";
        }
      }
      break;
    }
    case ExperimentKind::t_tail: {
      const auto t = t_tail_experiment(cfg, opt);
      out.csv = tail_csv(t.rows, false);
      out.log += "excursion_bound_checked = " + std::to_string(t.bound_checked) + "\nexcursion_bound_violations = " +
                 std::to_string(t.bound_violations) + "\nexcursion_bound_vacuous = " + std::to_string(t.bound_vacuous) + "\n";
      break;
    }
    case ExperimentKind::sandwich: {
      const auto recs = sandwich_sweep(cfg, opt);
      std::size_t sing = 0;
      for (const auto& r : recs) sing += r.singular ? 1 : 0;
      out.csv = sandwich_csv(recs);
      out.log += "records = " + std::to_string(recs.size()) + "\nsingular_trials = " + std::to_string(sing) +
                 "\nall sandwich assertions held\n";
      break;
    }
  }
  return out;
}

// Walk diagnostics for one diagonal.
inline nlohmann::json walk_json(const CycleDiagonal& d, double c) {
  const auto w = from_diagonal(d);
  const auto u = u_functionals(w);
  const auto t = t_functional(w);
  const auto ex = ladder(w, c);
  const auto lem = excursion_bound_check(w, c);
  nlohmann::json j;
  j["n"] = d.size();
  j["M_N"] = m_functional(w);
  j["T_N"] = log_pair(t);
  j["U_N"] = log_pair(u.u);
  j["U_hat_N"] = log_pair(u.u_hat);
  if (is_singular(d)) {
    j["X_N"] = nullptr;
  } else {
    j["X_N"] = log_pair(x_functional(d));
  }
  j["c"] = c;
  j["epochs"] = ex.epochs;
  nlohmann::json us = nlohmann::json::array();
  for (double lu : ex.log_u) us.push_back(log_pair(LogReal{lu}));
  j["U_i"] = us;
  j["R"] = ex.r_max;
  j["excursion_bound"] = {{"lhs", log_pair(lem.lhs)}, {"rhs", log_pair(lem.rhs)}, {"holds", lem.holds}, {"vacuous", lem.vacuous}};
  return j;
}

inline std::string walk_summary_csv(const CycleDiagonal& d, double c) {
  const auto w = from_diagonal(d);
  const auto u = u_functionals(w);
  const auto ex = ladder(w, c);
  const auto lem = excursion_bound_check(w, c);
  std::string s = "N,M_N,T_N,U_N,U_hat_N,X_N,c,epochs,bound_lhs,bound_rhs,bound_holds,bound_vacuous\n";
  s += std::to_string(d.size()) + "," + format_double(m_functional(w)) + "," + csv_value(t_functional(w)) + "," +
       csv_value(u.u) + "," + csv_value(u.u_hat) + "," + (is_singular(d) ? std::string() : csv_value(x_functional(d))) +
       "," + format_double(c) + "," + std::to_string(ex.complete()) + "," + csv_value(lem.lhs) + "," +
       csv_value(lem.rhs) + "," + (lem.holds ? "1" : "0") + "," + (lem.vacuous ? "1" : "0") + "\n";
  return s;
}

inline std::string walk_path_csv(const WalkPath& w) {
  std::string s = "index,S\n";
  for (std::size_t k = 0; k < w.s.size(); ++k) s += std::to_string(k) + "," + format_double(w.s[k]) + "\n";
  return s;
}

inline std::string ladder_csv(const ExcursionDecomposition& ex) {
  std::string s = "i,K_i,U_i\n";
  for (std::size_t i = 0; i < ex.epochs.size(); ++i) {
    s += std::to_string(i + 1) + "," + std::to_string(ex.epochs[i]) + "," + format_double(std::exp(ex.log_u[i])) + "\n";
  }
  return s;
}

}  // namespace permsv::io
