// Command-line driver for low-complexity FIR identification studies:
// dataset simulation, single-shot identification, accuracy/complexity grids,
// Monte Carlo benchmarks, N sweeps and theory reports.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "lrr/baselines.hpp"
#include "lrr/io.hpp"
#include "lrr/metrics.hpp"
#include "lrr/runner.hpp"
#include "lrr/svg.hpp"

namespace fs = std::filesystem;
using lrr::io::format_double;
using lrr::io::json;

namespace {

struct CliOverrides {
  std::string config_path;
  std::string data_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> out_dir;
  std::optional<double> gamma;
  std::optional<double> sigma_u;
  bool svg = false;
  std::optional<int> n;  // theory: order to certify
};

void add_common_flags(CLI::App* sub, CliOverrides& ov, bool with_data,
                      bool with_n) {
  sub->add_option("--config", ov.config_path, "JSON config file");
  sub->add_option("--seed", ov.seed, "master seed (overrides config)");
  sub->add_option("--trials", ov.trials, "trial count (overrides config)");
  sub->add_option("--out-dir", ov.out_dir, "output directory (overrides config)");
  sub->add_option("--gamma", ov.gamma, "fixed regularization level (overrides the automatic choice)");
  sub->add_option("--sigma-u", ov.sigma_u, "input noise deviation (overrides config)");
  sub->add_flag("--svg", ov.svg, "also emit SVG plots");
  if (with_data)
    sub->add_option("--data", ov.data_path, "read the dataset from a CSV record instead of simulating");
  if (with_n)
    sub->add_option("--n", ov.n, "support order to certify (default: the leading order)");
}

lrr::runner::RunConfig make_config(const CliOverrides& ov) {
  lrr::runner::RunConfig cfg = ov.config_path.empty()
                                   ? lrr::runner::default_config()
                                   : lrr::runner::load_config(ov.config_path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.trials) cfg.trials = *ov.trials;
  if (ov.out_dir) cfg.out_dir = *ov.out_dir;
  if (ov.gamma) cfg.gamma = *ov.gamma;
  if (ov.sigma_u) cfg.signal.sigma_u = *ov.sigma_u;
  if (ov.svg) cfg.svg = true;
  cfg.validate();
  return cfg;
}

// Dataset for the single-record subcommands: either the file named by
// --data or a fresh simulation with the trial-0 record seed.
lrr::sim::DataRecord get_dataset(const lrr::runner::RunConfig& cfg,
                                 const CliOverrides& ov) {
  if (!ov.data_path.empty()) {
    lrr::sim::DataRecord rec = lrr::io::read_data_csv(ov.data_path);
    if (rec.N != cfg.N || rec.q != cfg.q)
      std::fprintf(stderr,
                   "note: dataset has N=%d q=%d, config values %d/%d are "
                   "ignored for this run\n",
                   rec.N, rec.q, cfg.N, cfg.q);
    return rec;
  }
  lrr::sim::SignalSpec spec = cfg.signal;
  spec.seed = lrr::sim::derive_seed(cfg.seed, 0);
  return lrr::sim::make_dataset(cfg.system, spec, cfg.N, cfg.q, cfg.discard);
}

void print_paths(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
}

int cmd_simulate(const CliOverrides& ov) {
  const auto cfg = make_config(ov);
  lrr::io::ensure_output_dir(cfg.out_dir);
  const lrr::sim::DataRecord rec = get_dataset(cfg, ov);
  const std::string data_path = (fs::path(cfg.out_dir) / "data.csv").string();
  lrr::io::write_data_csv(data_path, rec);

  json rep;
  rep["kind"] = "simulate";
  rep["config"] = lrr::runner::config_to_json(cfg);
  rep["master_seed"] = cfg.seed;
  rep["data_file"] = data_path;
  rep["N"] = rec.N;
  rep["q"] = rec.q;
  lrr::io::validate_report(rep);
  const std::string rep_path = (fs::path(cfg.out_dir) / "simulate.json").string();
  lrr::io::write_text_file(rep_path, rep.dump(2) + "\n");

  std::printf("simulated %d samples (q = %d, noise %s)\n", rec.N, rec.q,
              cfg.noise_label().c_str());
  print_paths({data_path, rep_path});
  return 0;
}

int cmd_identify(const CliOverrides& ov) {
  const auto cfg = make_config(ov);
  lrr::io::ensure_output_dir(cfg.out_dir);
  const lrr::sim::DataRecord rec = get_dataset(cfg, ov);

  const double nu = std::sqrt(cfg.signal.nu_sq);
  const int n_l = lrr::theory::leading_order(cfg.bound, nu, cfg.signal.sigma_y,
                                             double(rec.N), rec.q);
  const double gamma = cfg.effective_gamma(n_l);
  lrr::design::WeightVector W = lrr::design::WeightVector::ones(rec.q);
  if (cfg.weights == "explicit" && int(cfg.weight_values.size()) == rec.q)
    W = cfg.make_weights();
  const lrr::design::RegressionProblem p =
      lrr::design::assemble(rec, cfg.signal.sigma_u, gamma, W);
  const lrr::design::Solution sol =
      lrr::solver::solve_lrr(p, {cfg.tol, cfg.max_iter});

  json rep;
  rep["kind"] = "identify";
  rep["config"] = lrr::runner::config_to_json(cfg);
  rep["master_seed"] = cfg.seed;
  rep["n_l"] = n_l;
  rep["gamma"] = gamma;
  json s;
  s["x"] = std::vector<double>(sol.x.data(), sol.x.data() + sol.x.size());
  s["support"] = sol.support;
  s["objective"] = sol.objective;
  s["iterations"] = sol.iterations;
  s["kkt_violation"] = sol.kkt_violation;
  rep["solution"] = s;
  if (n_l >= 1 && n_l < rec.q) {
    const lrr::theory::RecoveryReport rr = lrr::theory::check_support_condition(
        p, n_l, {cfg.bound, nu, cfg.signal.sigma_y, cfg.mu});
    json r;
    r["n"] = rr.n;
    r["upsilon"] = rr.upsilon;
    r["lhs"] = rr.lhs;
    r["rhs"] = rr.rhs;
    r["holds"] = rr.holds;
    r["n_l"] = rr.n_l;
    r["kappa"] = rr.kappa;
    r["gamma_order_n"] = rr.gamma_order_n;
    r["gamma_leading_lb"] = rr.gamma_leading_lb;
    rep["recovery"] = r;
  } else {
    rep["recovery"] = nullptr;
  }
  lrr::io::validate_report(rep);
  const std::string rep_path = (fs::path(cfg.out_dir) / "identify.json").string();
  lrr::io::write_text_file(rep_path, rep.dump(2) + "\n");

  const double E = (rec.y - p.U * sol.x).squaredNorm();
  std::printf("identified FIR model: %zu nonzero taps of %d, residual E = %s\n",
              sol.support.size(), rec.q, format_double(E).c_str());
  std::printf("n_l = %d, gamma = %s, sweeps = %ld, kkt = %s\n", n_l,
              format_double(gamma).c_str(), sol.iterations,
              format_double(sol.kkt_violation).c_str());
  print_paths({rep_path});
  return 0;
}

int cmd_theory(const CliOverrides& ov) {
  const auto cfg = make_config(ov);
  lrr::io::ensure_output_dir(cfg.out_dir);
  const lrr::sim::DataRecord rec = get_dataset(cfg, ov);

  const double nu = std::sqrt(cfg.signal.nu_sq);
  const int n_l = lrr::theory::leading_order(cfg.bound, nu, cfg.signal.sigma_y,
                                             double(rec.N), rec.q);
  const double kap = lrr::theory::kappa(nu, cfg.signal.sigma_u);
  const double gamma = cfg.effective_gamma(n_l);
  const int n = ov.n ? *ov.n : n_l;
  if (n < 1 || n >= rec.q)
    throw lrr::ConfigError("theory: order to certify must satisfy 1 <= n < q "
                           "(got n = " + std::to_string(n) + ")");

  const lrr::design::RegressionProblem p = lrr::design::assemble(
      rec, cfg.signal.sigma_u, gamma, lrr::design::WeightVector::ones(rec.q));
  const lrr::theory::RecoveryReport rr = lrr::theory::check_support_condition(
      p, n, {cfg.bound, nu, cfg.signal.sigma_y, cfg.mu});

  json rep;
  rep["kind"] = "theory";
  rep["config"] = lrr::runner::config_to_json(cfg);
  rep["master_seed"] = cfg.seed;
  rep["n_l"] = n_l;
  rep["kappa"] = kap;
  rep["gamma_order_n"] = rr.gamma_order_n;
  rep["gamma_leading_lb"] = rr.gamma_leading_lb;
  rep["gamma"] = gamma;
  json r;
  r["n"] = rr.n;
  r["upsilon"] = rr.upsilon;
  r["lhs"] = rr.lhs;
  r["rhs"] = rr.rhs;
  r["holds"] = rr.holds;
  r["n_l"] = rr.n_l;
  r["kappa"] = rr.kappa;
  r["gamma_order_n"] = rr.gamma_order_n;
  r["gamma_leading_lb"] = rr.gamma_leading_lb;
  rep["recovery"] = r;
  lrr::io::validate_report(rep);
  const std::string rep_path = (fs::path(cfg.out_dir) / "theory.json").string();
  lrr::io::write_text_file(rep_path, rep.dump(2) + "\n");

  std::printf("leading order n_l = %d (N = %d, q = %d)\n", n_l, rec.N, rec.q);
  std::printf("kappa = %s\n", format_double(kap).c_str());
  std::printf("gamma for order n = %d: %s\n", n,
              format_double(rr.gamma_order_n).c_str());
  std::printf("gamma lower bound for leading-order recovery: %s\n",
              format_double(rr.gamma_leading_lb).c_str());
  std::printf("support condition at n = %d, gamma = %s: upsilon = %s, lhs = "
              "%s, rhs = %s -> %s\n",
              n, format_double(gamma).c_str(),
              format_double(rr.upsilon).c_str(), format_double(rr.lhs).c_str(),
              format_double(rr.rhs).c_str(), rr.holds ? "holds" : "not certified");
  print_paths({rep_path});
  return 0;
}

int cmd_grid(const CliOverrides& ov) {
  const auto cfg = make_config(ov);
  lrr::io::ensure_output_dir(cfg.out_dir);
  const lrr::sim::DataRecord rec = get_dataset(cfg, ov);
  const lrr::runner::GridResult g = lrr::runner::run_tradeoff_grid(rec, cfg);

  std::printf("%10s %10s %12s %6s\n", "sigma_u", "gamma", "E", "C");
  for (std::size_t i = 0; i < g.sigma_u_grid.size(); ++i)
    for (std::size_t j = 0; j < g.gamma_grid.size(); ++j) {
      if (g.ok[i][j])
        std::printf("%10s %10.4g %12.5g %6d\n",
                    format_double(g.sigma_u_grid[i]).c_str(), g.gamma_grid[j],
                    g.E(int(i), int(j)), g.C(int(i), int(j)));
      else
        std::printf("%10s %10.4g %12s %6s\n",
                    format_double(g.sigma_u_grid[i]).c_str(), g.gamma_grid[j],
                    "failed", "-");
    }
  print_paths(lrr::runner::emit_reports(g, cfg));
  return 0;
}

int cmd_montecarlo(const CliOverrides& ov) {
  const auto cfg = make_config(ov);
  lrr::io::ensure_output_dir(cfg.out_dir);
  const lrr::runner::MonteCarloResult r = lrr::runner::run_monte_carlo(cfg);

  std::printf("noise %s, %d trials, n_l = %d, gamma = %s\n",
              cfg.noise_label().c_str(), cfg.trials, r.n_l,
              format_double(r.gamma).c_str());
  std::printf("%6s %10s %10s %12s %9s\n", "method", "FIT", "TN0", "TN1",
              "failures");
  for (const auto& [name, a] : r.aggregates) {
    if (a.count > 0)
      std::printf("%6s %10.2f %10.2f %12.4g %9d\n", name.c_str(), a.fit, a.tn0,
                  a.tn1, a.failures);
    else
      std::printf("%6s %10s %10s %12s %9d\n", name.c_str(), "-", "-", "-",
                  a.failures);
  }
  print_paths(lrr::runner::emit_reports(r, cfg));
  return 0;
}

int cmd_nsweep(const CliOverrides& ov) {
  const auto cfg = make_config(ov);
  lrr::io::ensure_output_dir(cfg.out_dir);
  const lrr::runner::NSweepResult r = lrr::runner::run_n_sweep(cfg, cfg.n_list);

  std::printf("%8s %6s %10s %6s %12s\n", "N", "method", "FIT", "TN0", "TN1");
  for (const auto& row : r.rows) {
    if (row.ok)
      std::printf("%8d %6s %10.2f %6d %12.4g\n", row.N, row.method.c_str(),
                  row.fit, row.tn0, row.tn1);
    else
      std::printf("%8d %6s failed: %s\n", row.N, row.method.c_str(),
                  row.error.c_str());
  }
  print_paths(lrr::runner::emit_reports(r, cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-complexity FIR identification from noisy input/output data"};
  app.require_subcommand(1);

  CliOverrides ov;
  CLI::App* simulate = app.add_subcommand("simulate", "generate a dataset and write it as CSV");
  add_common_flags(simulate, ov, false, false);
  CLI::App* identify = app.add_subcommand("identify", "estimate one FIR model from a dataset");
  add_common_flags(identify, ov, true, false);
  CLI::App* grid = app.add_subcommand("grid", "accuracy/complexity tradeoff over (sigma_u, gamma) grids");
  add_common_flags(grid, ov, true, false);
  CLI::App* montecarlo = app.add_subcommand("montecarlo", "multi-trial benchmark against LS and ridge baselines");
  add_common_flags(montecarlo, ov, false, false);
  CLI::App* nsweep = app.add_subcommand("nsweep", "tail support and fit as the data length grows");
  add_common_flags(nsweep, ov, false, false);
  CLI::App* theory = app.add_subcommand("theory", "leading order, gamma references and the support certificate");
  add_common_flags(theory, ov, true, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(ov);
    if (identify->parsed()) return cmd_identify(ov);
    if (grid->parsed()) return cmd_grid(ov);
    if (montecarlo->parsed()) return cmd_montecarlo(ov);
    if (nsweep->parsed()) return cmd_nsweep(ov);
    if (theory->parsed()) return cmd_theory(ov);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
