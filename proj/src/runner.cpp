#include "lrr/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "lrr/baselines.hpp"
#include "lrr/metrics.hpp"
#include "lrr/svg.hpp"

namespace lrr::runner {

namespace {

const std::set<std::string> kMethods = {"lrr", "ls", "tls"};

}  // namespace

void RunConfig::validate() const {
  system.validate();
  signal.validate();
  bound.validate();
  if (q < 1 || N < q) throw ConfigError("config: need 1 <= q <= N");
  if (discard < 0) throw ConfigError("config: discard must be >= 0");
  if (n_val < q) throw ConfigError("config: n_val must be >= q");
  if (trials < 1) throw ConfigError("config: trials must be >= 1");
  if (!(mu > 1.0)) throw ConfigError("config: mu must be > 1");
  if (!(gamma_margin > 0.0)) throw ConfigError("config: gamma_margin must be > 0");
  if (gamma && !(*gamma > 0.0)) throw ConfigError("config: gamma must be > 0");
  if (!(tol > 0.0)) throw ConfigError("config: tol must be > 0");
  if (max_iter < 1) throw ConfigError("config: max_iter must be >= 1");
  if (methods.empty()) throw ConfigError("config: methods must be nonempty");
  for (const auto& m : methods)
    if (!kMethods.count(m))
      throw ConfigError("config: unknown method '" + m + "'");
  if (std::set<std::string>(methods.begin(), methods.end()).size() !=
      methods.size())
    throw ConfigError("config: duplicate method");
  if (weights == "explicit") {
    if (int(weight_values.size()) != q)
      throw ConfigError("config: explicit weights must have length q");
  } else if (weights != "ones") {
    throw ConfigError("config: weights must be \"ones\" or an explicit array");
  }
  for (std::size_t j = 0; j < gamma_grid.size(); ++j) {
    if (!(gamma_grid[j] > 0.0))
      throw ConfigError("config: gamma_grid entries must be > 0");
    if (j > 0 && !(gamma_grid[j] < gamma_grid[j - 1]))
      throw ConfigError("config: gamma_grid must be strictly descending");
  }
  for (double s : sigma_u_grid)
    if (s < 0.0) throw ConfigError("config: sigma_u_grid entries must be >= 0");
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    if (n_list[j] < q)
      throw ConfigError("config: n_list entries must be >= q");
    if (j > 0 && n_list[j] <= n_list[j - 1])
      throw ConfigError("config: n_list must be strictly ascending");
  }
  if (out_dir.empty()) throw ConfigError("config: out_dir must be nonempty");
}

design::WeightVector RunConfig::make_weights() const {
  if (weights == "explicit") {
    Eigen::VectorXd w(q);
    for (int i = 0; i < q; ++i) w(i) = weight_values[i];
    return design::WeightVector(std::move(w));
  }
  return design::WeightVector::ones(q);
}

std::string RunConfig::noise_label() const {
  const double pct = 100.0 * signal.sigma_u / std::sqrt(signal.nu_sq);
  const double r = std::round(pct);
  if (std::abs(pct - r) < 1e-9)
    return std::to_string(static_cast<long long>(r)) + "%";
  return io::format_double(pct) + "%";
}

double RunConfig::effective_gamma(int n_l) const {
  if (gamma) return *gamma;
  const double nu = std::sqrt(signal.nu_sq);
  const double kap = theory::kappa(nu, signal.sigma_u);
  const design::WeightVector W = make_weights();
  const int idx = std::max(n_l, 1) - 1;
  const double lb =
      theory::gamma_leading_lb(bound, signal.sigma_y, kap, W[idx]);
  const double g = gamma_margin * lb;
  // Noise-free data make the lower bound vanish; keep a tiny positive level
  // so the criterion stays well defined.
  return g > 0.0 ? g : 1e-8;
}

RunConfig default_config() {
  RunConfig cfg;
  // Fourth-order benchmark plant with slowly decaying impulse response.
  cfg.system = sim::SystemModel::rational(
      {1.0, 0.5, 0.0, 0.0}, {1.0, -2.2, 2.42, -1.87, 0.7225});
  cfg.signal = sim::SignalSpec::gaussian(1.0, 0.03, 0.3, 0);
  cfg.bound = {6.0, 0.93};
  cfg.gamma_grid.resize(12);
  for (int j = 0; j < 12; ++j)
    cfg.gamma_grid[j] = 20.0 * std::pow(1e-3, j / 11.0);
  cfg.sigma_u_grid = {0.03};
  return cfg;
}

namespace {

using io::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, _] : j.items())
    if (!known.count(key))
      throw ConfigError("config: unknown key '" + key + "' in " + where);
}

template <typename T>
void maybe_get(const json& j, const std::string& key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + key + "'");
  }
}

}  // namespace

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown_keys(
      j,
      {"system", "signal", "bound", "N", "q", "discard", "n_val", "trials",
       "seed", "mu", "gamma_margin", "gamma", "weights", "tol", "max_iter",
       "methods", "validate_on_nominal", "gamma_grid", "sigma_u_grid",
       "n_list", "out_dir", "svg"},
      "config");
  RunConfig cfg = default_config();

  if (j.contains("system")) {
    const json& s = j.at("system");
    reject_unknown_keys(s, {"numerator", "denominator", "fir_taps"}, "system");
    sim::SystemModel m;
    maybe_get(s, "numerator", m.numerator);
    maybe_get(s, "denominator", m.denominator);
    maybe_get(s, "fir_taps", m.fir_taps);
    m.validate();
    cfg.system = std::move(m);
  }
  if (j.contains("signal")) {
    const json& s = j.at("signal");
    reject_unknown_keys(s, {"nu_sq", "m4", "sigma_u", "sigma_y"}, "signal");
    sim::SignalSpec spec;
    spec.nu_sq = 1.0;
    maybe_get(s, "nu_sq", spec.nu_sq);
    spec.m4 = 3.0 * spec.nu_sq * spec.nu_sq;
    maybe_get(s, "m4", spec.m4);
    maybe_get(s, "sigma_u", spec.sigma_u);
    maybe_get(s, "sigma_y", spec.sigma_y);
    spec.validate();
    cfg.signal = spec;
  }
  if (j.contains("bound")) {
    const json& b = j.at("bound");
    reject_unknown_keys(b, {"L", "rho"}, "bound");
    maybe_get(b, "L", cfg.bound.L);
    maybe_get(b, "rho", cfg.bound.rho);
  }
  maybe_get(j, "N", cfg.N);
  maybe_get(j, "q", cfg.q);
  maybe_get(j, "discard", cfg.discard);
  maybe_get(j, "n_val", cfg.n_val);
  maybe_get(j, "trials", cfg.trials);
  maybe_get(j, "seed", cfg.seed);
  maybe_get(j, "mu", cfg.mu);
  maybe_get(j, "gamma_margin", cfg.gamma_margin);
  if (j.contains("gamma") && !j.at("gamma").is_null()) {
    double g = 0.0;
    maybe_get(j, "gamma", g);
    cfg.gamma = g;
  }
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    if (w.is_string() && w.get<std::string>() == "ones") {
      cfg.weights = "ones";
      cfg.weight_values.clear();
    } else if (w.is_array()) {
      cfg.weights = "explicit";
      cfg.weight_values = w.get<std::vector<double>>();
    } else {
      throw ConfigError("config: weights must be \"ones\" or an array");
    }
  }
  maybe_get(j, "tol", cfg.tol);
  maybe_get(j, "max_iter", cfg.max_iter);
  maybe_get(j, "methods", cfg.methods);
  maybe_get(j, "validate_on_nominal", cfg.validate_on_nominal);
  maybe_get(j, "gamma_grid", cfg.gamma_grid);
  maybe_get(j, "sigma_u_grid", cfg.sigma_u_grid);
  maybe_get(j, "n_list", cfg.n_list);
  maybe_get(j, "out_dir", cfg.out_dir);
  maybe_get(j, "svg", cfg.svg);

  cfg.validate();
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  if (cfg.system.is_fir()) {
    j["system"] = {{"fir_taps", cfg.system.fir_taps}};
  } else {
    j["system"] = {{"numerator", cfg.system.numerator},
                   {"denominator", cfg.system.denominator}};
  }
  j["signal"] = {{"nu_sq", cfg.signal.nu_sq},
                 {"m4", cfg.signal.m4},
                 {"sigma_u", cfg.signal.sigma_u},
                 {"sigma_y", cfg.signal.sigma_y}};
  j["bound"] = {{"L", cfg.bound.L}, {"rho", cfg.bound.rho}};
  j["N"] = cfg.N;
  j["q"] = cfg.q;
  j["discard"] = cfg.discard;
  j["n_val"] = cfg.n_val;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["mu"] = cfg.mu;
  j["gamma_margin"] = cfg.gamma_margin;
  if (cfg.gamma)
    j["gamma"] = *cfg.gamma;
  else
    j["gamma"] = nullptr;
  if (cfg.weights == "explicit")
    j["weights"] = cfg.weight_values;
  else
    j["weights"] = "ones";
  j["tol"] = cfg.tol;
  j["max_iter"] = cfg.max_iter;
  j["methods"] = cfg.methods;
  j["validate_on_nominal"] = cfg.validate_on_nominal;
  j["gamma_grid"] = cfg.gamma_grid;
  j["sigma_u_grid"] = cfg.sigma_u_grid;
  j["n_list"] = cfg.n_list;
  j["out_dir"] = cfg.out_dir;
  j["svg"] = cfg.svg;
  return j;
}

RunConfig load_config(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_text_file(path));
  } catch (const json::exception& e) {
    throw IoError("config '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

namespace {

struct TrialOutput {
  std::vector<TrialRow> rows;
  theory::RecoveryReport recovery;
  bool has_recovery = false;
};

// One complete dataset -> estimates -> metrics pass, shared by the monte
// carlo and N-sweep drivers.
TrialOutput run_single(const RunConfig& cfg, int trial, int N,
                       std::uint64_t ident_seed, std::uint64_t val_seed) {
  TrialOutput out;
  const double nu = std::sqrt(cfg.signal.nu_sq);
  const int n_l =
      theory::leading_order(cfg.bound, nu, cfg.signal.sigma_y, double(N), cfg.q);
  const double gamma = cfg.effective_gamma(n_l);
  const solver::SolveOptions opts{cfg.tol, cfg.max_iter};

  auto failed_row = [&](const std::string& method, const std::string& err) {
    TrialRow r;
    r.trial = trial;
    r.N = N;
    r.method = method;
    r.ok = false;
    r.error = err;
    r.n_l = n_l;
    r.gamma = gamma;
    return r;
  };

  sim::DataRecord rec, val;
  std::optional<design::RegressionProblem> problem;
  try {
    sim::SignalSpec spec = cfg.signal;
    spec.seed = ident_seed;
    rec = sim::make_dataset(cfg.system, spec, N, cfg.q, cfg.discard);
    spec.seed = val_seed;
    val = sim::make_dataset(cfg.system, spec, cfg.n_val, cfg.q, cfg.discard);
    problem.emplace(
        design::assemble(rec, cfg.signal.sigma_u, gamma, cfg.make_weights()));
  } catch (const std::exception& e) {
    for (const auto& m : cfg.methods) out.rows.push_back(failed_row(m, e.what()));
    return out;
  }
  const design::RegressionProblem& p = *problem;

  if (n_l >= 1 && n_l < cfg.q) {
    theory::SignalContext ctx{cfg.bound, nu, cfg.signal.sigma_y, cfg.mu};
    try {
      out.recovery = theory::check_support_condition(p, n_l, ctx);
      out.has_recovery = true;
    } catch (const std::exception&) {
      // Rank-deficient leading block: report simply omitted.
    }
  }

  for (const auto& method : cfg.methods) {
    TrialRow r;
    r.trial = trial;
    r.N = N;
    r.method = method;
    r.n_l = n_l;
    r.gamma = gamma;
    try {
      Eigen::VectorXd x;
      if (method == "lrr") {
        design::Solution sol = solver::solve_lrr(p, opts);
        x = std::move(sol.x);
        r.iterations = sol.iterations;
        r.kkt_violation = sol.kkt_violation;
      } else if (method == "ls") {
        x = baselines::solve_ls(p.U, rec.y);
      } else {
        x = baselines::solve_tls(p.U, rec.y, cfg.signal.sigma_u, N);
      }
      const Eigen::VectorXd y_hat = metrics::simulate_model_output(
          x, cfg.validate_on_nominal ? val.u : val.u_tilde, cfg.n_val);
      r.fit = metrics::fit(val.y, y_hat);
      const metrics::TailNorms t = metrics::tail_norms(x, n_l);
      r.tn0 = t.tn0;
      r.tn1 = t.tn1;
    } catch (const std::exception& e) {
      r = failed_row(method, e.what());
    }
    out.rows.push_back(std::move(r));
  }
  return out;
}

void accumulate(std::map<std::string, MethodAggregate>& agg,
                const std::vector<TrialRow>& rows) {
  for (const auto& r : rows) {
    MethodAggregate& a = agg[r.method];
    if (r.ok) {
      ++a.count;
      a.fit += r.fit;
      a.tn0 += double(r.tn0);
      a.tn1 += r.tn1;
    } else {
      ++a.failures;
    }
  }
}

void finalize(std::map<std::string, MethodAggregate>& agg) {
  for (auto& [_, a] : agg) {
    if (a.count > 0) {
      a.fit /= a.count;
      a.tn0 /= a.count;
      a.tn1 /= a.count;
    }
  }
}

}  // namespace

MonteCarloResult run_monte_carlo(const RunConfig& cfg) {
  cfg.validate();
  MonteCarloResult res;
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t s_ident = sim::derive_seed(cfg.seed, 2 * t);
    const std::uint64_t s_val = sim::derive_seed(cfg.seed, 2 * t + 1);
    res.trial_seeds.push_back({s_ident, s_val});
    TrialOutput one = run_single(cfg, t, cfg.N, s_ident, s_val);
    accumulate(res.aggregates, one.rows);
    for (auto& r : one.rows) res.rows.push_back(std::move(r));
    if (one.has_recovery) res.recovery.push_back(one.recovery);
    if (t == 0 && !one.rows.empty()) {
      res.n_l = one.rows.front().n_l;
      res.gamma = one.rows.front().gamma;
    }
  }
  finalize(res.aggregates);
  return res;
}

NSweepResult run_n_sweep(const RunConfig& cfg, const std::vector<int>& n_list) {
  cfg.validate();
  if (n_list.empty()) throw ConfigError("n sweep: empty N list");
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    if (n_list[j] < cfg.q) throw ConfigError("n sweep: N entries must be >= q");
    if (j > 0 && n_list[j] <= n_list[j - 1])
      throw ConfigError("n sweep: N list must be strictly ascending");
  }
  NSweepResult res;
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    const std::uint64_t s_ident = sim::derive_seed(cfg.seed, 2 * j);
    const std::uint64_t s_val = sim::derive_seed(cfg.seed, 2 * j + 1);
    res.seeds.push_back({s_ident, s_val});
    TrialOutput one = run_single(cfg, int(j), n_list[j], s_ident, s_val);
    for (auto& r : one.rows) res.rows.push_back(std::move(r));
    if (one.has_recovery) res.recovery.push_back(one.recovery);
  }
  return res;
}

GridResult run_tradeoff_grid(const sim::DataRecord& data,
                             const RunConfig& cfg) {
  cfg.validate();
  if (cfg.gamma_grid.empty() || cfg.sigma_u_grid.empty())
    throw ConfigError("grid: gamma_grid and sigma_u_grid must be nonempty");
  data.validate();

  const int rows = int(cfg.sigma_u_grid.size());
  const int cols = int(cfg.gamma_grid.size());
  GridResult g;
  g.sigma_u_grid = cfg.sigma_u_grid;
  g.gamma_grid = cfg.gamma_grid;
  g.E = Eigen::MatrixXd::Constant(rows, cols,
                                  std::numeric_limits<double>::quiet_NaN());
  g.C = Eigen::MatrixXi::Constant(rows, cols, -1);
  g.ok.assign(rows, std::vector<bool>(cols, false));

  const solver::SolveOptions opts{cfg.tol, cfg.max_iter};
  const design::WeightVector W = cfg.make_weights();
  for (int i = 0; i < rows; ++i) {
    const design::RegressionProblem p =
        design::assemble(data, cfg.sigma_u_grid[i], cfg.gamma_grid[0], W);
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(p.q);
    for (int j = 0; j < cols; ++j) {
      try {
        const solver::LassoIterate it = solver::solve_weighted_lasso(
            p.A, p.b, p.W, cfg.gamma_grid[j], opts, &warm);
        warm = it.x_tilde;
        const Eigen::VectorXd x = p.T.cwiseProduct(it.x_tilde);
        g.E(i, j) = (data.y - p.U * x).squaredNorm();
        g.C(i, j) = int((x.array() != 0.0).count());
        g.ok[i][j] = true;
      } catch (const solver::NonConvergence&) {
        // Cell stays marked failed; restart cold at the next gamma.
        warm.setZero();
      }
    }
  }
  return g;
}

namespace {

std::string csv_cell(double v) { return io::format_double(v); }

json recovery_to_json(const theory::RecoveryReport& r) {
  json j;
  j["n"] = r.n;
  j["upsilon"] = r.upsilon;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["holds"] = r.holds;
  j["n_l"] = r.n_l;
  j["kappa"] = r.kappa;
  j["gamma_order_n"] = r.gamma_order_n;
  j["gamma_leading_lb"] = r.gamma_leading_lb;
  return j;
}

json row_to_json(const TrialRow& r, bool with_N) {
  json j;
  j["trial"] = r.trial;
  if (with_N) j["N"] = r.N;
  j["method"] = r.method;
  j["ok"] = r.ok;
  if (r.ok) {
    j["fit"] = r.fit;
    j["tn0"] = r.tn0;
    j["tn1"] = r.tn1;
  } else {
    j["error"] = r.error;
  }
  j["n_l"] = r.n_l;
  j["gamma"] = r.gamma;
  j["iterations"] = r.iterations;
  j["kkt_violation"] = r.kkt_violation;
  return j;
}

json aggregates_to_json(const std::map<std::string, MethodAggregate>& agg) {
  json j = json::object();
  for (const auto& [name, a] : agg) {
    json e;
    if (a.count > 0) {
      e["fit"] = a.fit;
      e["tn0"] = a.tn0;
      e["tn1"] = a.tn1;
    } else {
      e["fit"] = nullptr;
      e["tn0"] = nullptr;
      e["tn1"] = nullptr;
    }
    e["count"] = a.count;
    e["failures"] = a.failures;
    j[name] = e;
  }
  return j;
}

// Shared CSV body for monte carlo (key = trial) and N sweep (key = N).
std::string rows_to_csv(const std::vector<TrialRow>& rows,
                        const std::string& key_header,
                        const std::string& noise_label, bool key_is_N) {
  std::string out = key_header +
                    ",method,noise_level,FIT,TN0,TN1,n_l,gamma,iterations,"
                    "kkt_violation\n";
  for (const auto& r : rows) {
    out += std::to_string(key_is_N ? r.N : r.trial);
    out += ',' + r.method + ',' + noise_label + ',';
    if (r.ok) {
      out += csv_cell(r.fit);
      out += ',' + std::to_string(r.tn0) + ',' + csv_cell(r.tn1);
    } else {
      out += ",,";
    }
    out += ',' + std::to_string(r.n_l) + ',' + csv_cell(r.gamma) + ',';
    if (r.method == "lrr") {
      out += std::to_string(r.iterations);
      out += ',' + csv_cell(r.kkt_violation);
    } else {
      out += ",";  // iterative diagnostics do not apply to the baselines
    }
    out += '\n';
  }
  return out;
}

void write_report(const std::string& path, const json& report) {
  io::validate_report(report);
  const std::string text = report.dump(2) + "\n";
  // Round-trip guarantee: the serialized report still passes the schema.
  io::validate_report(json::parse(text));
  io::write_text_file(path, text);
}

std::vector<svg::Series> method_series(
    const std::vector<TrialRow>& rows, const std::vector<std::string>& methods,
    double (*xf)(const TrialRow&), double (*yf)(const TrialRow&),
    bool draw_line) {
  std::vector<svg::Series> out;
  for (const auto& m : methods) {
    svg::Series s;
    s.label = m;
    s.draw_line = draw_line;
    for (const auto& r : rows)
      if (r.ok && r.method == m) s.points.emplace_back(xf(r), yf(r));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<std::string> emit_reports(const MonteCarloResult& r,
                                      const RunConfig& cfg) {
  io::ensure_output_dir(cfg.out_dir);
  namespace fs = std::filesystem;
  std::vector<std::string> paths;

  const std::string csv_path = (fs::path(cfg.out_dir) / "montecarlo.csv").string();
  io::write_text_file(
      csv_path, rows_to_csv(r.rows, "trial", cfg.noise_label(), false));
  paths.push_back(csv_path);

  json rep;
  rep["kind"] = "montecarlo";
  rep["config"] = config_to_json(cfg);
  rep["master_seed"] = cfg.seed;
  rep["noise_level"] = cfg.noise_label();
  rep["n_l"] = r.n_l;
  rep["gamma"] = r.gamma;
  rep["trial_seeds"] = json::array();
  for (const auto& s : r.trial_seeds)
    rep["trial_seeds"].push_back({s[0], s[1]});
  rep["aggregates"] = aggregates_to_json(r.aggregates);
  rep["rows"] = json::array();
  for (const auto& row : r.rows) rep["rows"].push_back(row_to_json(row, false));
  rep["recovery"] = json::array();
  for (const auto& rr : r.recovery) rep["recovery"].push_back(recovery_to_json(rr));
  const std::string json_path = (fs::path(cfg.out_dir) / "montecarlo.json").string();
  write_report(json_path, rep);
  paths.push_back(json_path);

  if (cfg.svg) {
    const std::string svg_path = (fs::path(cfg.out_dir) / "montecarlo.svg").string();
    svg::write_chart(svg_path, "Validation fit vs tail support (" +
                                   cfg.noise_label() + " noise)",
                     "TN0 (nonzero tail taps)", "FIT [%]",
                     method_series(
                         r.rows, cfg.methods,
                         [](const TrialRow& t) { return double(t.tn0); },
                         [](const TrialRow& t) { return t.fit; }, false));
    paths.push_back(svg_path);
  }
  return paths;
}

std::vector<std::string> emit_reports(const NSweepResult& r,
                                      const RunConfig& cfg) {
  io::ensure_output_dir(cfg.out_dir);
  namespace fs = std::filesystem;
  std::vector<std::string> paths;

  const std::string csv_path = (fs::path(cfg.out_dir) / "nsweep.csv").string();
  io::write_text_file(csv_path,
                      rows_to_csv(r.rows, "N", cfg.noise_label(), true));
  paths.push_back(csv_path);

  json rep;
  rep["kind"] = "nsweep";
  rep["config"] = config_to_json(cfg);
  rep["master_seed"] = cfg.seed;
  rep["seeds"] = json::array();
  for (const auto& s : r.seeds) rep["seeds"].push_back({s[0], s[1]});
  rep["rows"] = json::array();
  for (const auto& row : r.rows) rep["rows"].push_back(row_to_json(row, true));
  rep["recovery"] = json::array();
  for (const auto& rr : r.recovery) rep["recovery"].push_back(recovery_to_json(rr));
  const std::string json_path = (fs::path(cfg.out_dir) / "nsweep.json").string();
  write_report(json_path, rep);
  paths.push_back(json_path);

  if (cfg.svg) {
    const std::string tn0_path = (fs::path(cfg.out_dir) / "nsweep_tn0.svg").string();
    svg::write_chart(tn0_path, "Tail support vs data length",
                     "N (log scale)", "TN0 (nonzero tail taps)",
                     method_series(
                         r.rows, cfg.methods,
                         [](const TrialRow& t) { return double(t.N); },
                         [](const TrialRow& t) { return double(t.tn0); }, true),
                     /*log_x=*/true);
    paths.push_back(tn0_path);
    const std::string fit_path = (fs::path(cfg.out_dir) / "nsweep_fit.svg").string();
    svg::write_chart(fit_path, "Validation fit vs data length",
                     "N (log scale)", "FIT [%]",
                     method_series(
                         r.rows, cfg.methods,
                         [](const TrialRow& t) { return double(t.N); },
                         [](const TrialRow& t) { return t.fit; }, true),
                     /*log_x=*/true);
    paths.push_back(fit_path);
  }
  return paths;
}

std::vector<std::string> emit_reports(const GridResult& r,
                                      const RunConfig& cfg) {
  io::ensure_output_dir(cfg.out_dir);
  namespace fs = std::filesystem;
  std::vector<std::string> paths;

  std::string csv = "sigma_u,gamma,E,C,ok\n";
  for (std::size_t i = 0; i < r.sigma_u_grid.size(); ++i)
    for (std::size_t j = 0; j < r.gamma_grid.size(); ++j) {
      csv += csv_cell(r.sigma_u_grid[i]) + ',' + csv_cell(r.gamma_grid[j]) + ',';
      if (r.ok[i][j]) {
        csv += csv_cell(r.E(int(i), int(j))) + ',' +
               std::to_string(r.C(int(i), int(j))) + ",1\n";
      } else {
        csv += ",,0\n";
      }
    }
  const std::string csv_path = (fs::path(cfg.out_dir) / "grid.csv").string();
  io::write_text_file(csv_path, csv);
  paths.push_back(csv_path);

  json rep;
  rep["kind"] = "grid";
  rep["config"] = config_to_json(cfg);
  rep["master_seed"] = cfg.seed;
  rep["sigma_u_grid"] = r.sigma_u_grid;
  rep["gamma_grid"] = r.gamma_grid;
  rep["E"] = json::array();
  rep["C"] = json::array();
  for (std::size_t i = 0; i < r.sigma_u_grid.size(); ++i) {
    json erow = json::array(), crow = json::array();
    for (std::size_t j = 0; j < r.gamma_grid.size(); ++j) {
      if (r.ok[i][j]) {
        erow.push_back(r.E(int(i), int(j)));
        crow.push_back(r.C(int(i), int(j)));
      } else {
        erow.push_back(nullptr);
        crow.push_back(nullptr);
      }
    }
    rep["E"].push_back(std::move(erow));
    rep["C"].push_back(std::move(crow));
  }
  const std::string json_path = (fs::path(cfg.out_dir) / "grid.json").string();
  write_report(json_path, rep);
  paths.push_back(json_path);

  if (cfg.svg) {
    std::vector<svg::Series> series;
    for (std::size_t i = 0; i < r.sigma_u_grid.size(); ++i) {
      svg::Series s;
      s.label = "sigma_u=" + io::format_double(r.sigma_u_grid[i]);
      for (std::size_t j = 0; j < r.gamma_grid.size(); ++j)
        if (r.ok[i][j])
          s.points.emplace_back(double(r.C(int(i), int(j))),
                                r.E(int(i), int(j)));
      series.push_back(std::move(s));
    }
    const std::string svg_path = (fs::path(cfg.out_dir) / "grid.svg").string();
    svg::write_chart(svg_path, "Accuracy / complexity tradeoff",
                     "C (nonzero taps)", "E (residual sum of squares)", series);
    paths.push_back(svg_path);
  }
  return paths;
}

}  // namespace lrr::runner
