#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lrr/design.hpp"
#include "lrr/io.hpp"
#include "lrr/sim.hpp"
#include "lrr/solver.hpp"
#include "lrr/theory.hpp"

namespace lrr::runner {

// One experiment description: plant, noise scenario, window sizes, solver
// settings, gamma policy and grids. Loadable from a JSON config file; CLI
// flags override individual keys.
struct RunConfig {
  sim::SystemModel system;
  sim::SignalSpec signal;            // per-run seeds are derived, signal.seed unused
  theory::StabilityBound bound{6.0, 0.93};

  int N = 1000;
  int q = 500;
  int discard = 1000;
  int n_val = 2000;      // validation window length
  int trials = 20;
  std::uint64_t seed = 1;

  double mu = 2.0;            // safety factor for the order-n gamma reference
  double gamma_margin = 5.0;  // auto gamma = margin * leading-order lower bound
  std::optional<double> gamma;  // explicit override of the auto choice

  std::string weights = "ones";        // or "explicit" with weight_values
  std::vector<double> weight_values;   // length q when weights == "explicit"

  double tol = 1e-6;
  long max_iter = 100000;

  std::vector<std::string> methods{"lrr", "ls", "tls"};

  // Validation normally simulates the estimated model on the measured
  // (perturbed) validation input; this ablation switch uses the nominal one.
  bool validate_on_nominal = false;

  std::vector<double> gamma_grid;    // tradeoff grid, strictly descending
  std::vector<double> sigma_u_grid;  // tradeoff grid rows
  std::vector<int> n_list{1000, 4000, 16000, 32000};  // N sweep, ascending

  std::string out_dir = "out";
  bool svg = false;

  void validate() const;
  design::WeightVector make_weights() const;
  // "3%"-style label from the input noise-to-signal ratio sigma_u / nu.
  std::string noise_label() const;
  // The gamma actually used for single-solve runs: the override if present,
  // otherwise gamma_margin times the leading-order recovery lower bound
  // (falling back to a tiny positive value in the noise-free case).
  double effective_gamma(int n_l) const;
};

RunConfig config_from_json(const io::json& j);
io::json config_to_json(const RunConfig& cfg);
RunConfig load_config(const std::string& path);

// One estimation outcome inside a study.
struct TrialRow {
  int trial = 0;             // trial index (monte carlo) or repeat (nsweep)
  int N = 0;
  std::string method;
  bool ok = true;
  std::string error;         // set when ok == false
  double fit = 0.0;
  int tn0 = 0;
  double tn1 = 0.0;
  int n_l = 0;
  double gamma = 0.0;
  long iterations = 0;       // 0 for the non-iterative baselines
  double kkt_violation = 0.0;  // 0 for the baselines
};

struct MethodAggregate {
  int count = 0;     // successful trials
  int failures = 0;
  double fit = 0.0;  // means over successful trials
  double tn0 = 0.0;
  double tn1 = 0.0;
};

struct MonteCarloResult {
  std::vector<TrialRow> rows;
  std::map<std::string, MethodAggregate> aggregates;
  std::vector<std::array<std::uint64_t, 2>> trial_seeds;  // {ident, validation}
  std::vector<theory::RecoveryReport> recovery;           // one per trial
  int n_l = 0;
  double gamma = 0.0;
};

struct NSweepResult {
  std::vector<TrialRow> rows;  // one per (N, method)
  std::vector<std::array<std::uint64_t, 2>> seeds;  // per N
  std::vector<theory::RecoveryReport> recovery;     // one per N
};

// Accuracy/complexity tradeoff over the (sigma_u, gamma) grids.
struct GridResult {
  std::vector<double> sigma_u_grid;
  std::vector<double> gamma_grid;
  Eigen::MatrixXd E;                  // ||y - U x*||^2, NaN on failed cells
  Eigen::MatrixXi C;                  // ||x*||_0, -1 on failed cells
  std::vector<std::vector<bool>> ok;  // per-cell success
};

// Solves the descending-gamma path for every sigma_u row with warm starts.
// A non-converged cell is marked failed and the row continues from the next
// gamma (cold start).
GridResult run_tradeoff_grid(const sim::DataRecord& data, const RunConfig& cfg);

// Fresh dataset per trial (seeds derived from cfg.seed), LRR plus baselines,
// FIT on a fresh validation record, tail norms at the leading order.
// Failures are kept as rows with ok=false and excluded from the aggregates.
MonteCarloResult run_monte_carlo(const RunConfig& cfg);

// One dataset per N in n_list (ascending); otherwise the same pipeline as a
// single monte carlo trial, so a one-element sweep equals trial 0.
NSweepResult run_n_sweep(const RunConfig& cfg, const std::vector<int>& n_list);

// CSV/JSON (and optional SVG) emission into cfg.out_dir. The returned paths
// are the files written. Throws IoError if the directory is unusable; the
// in-memory results stay valid either way.
std::vector<std::string> emit_reports(const MonteCarloResult& r,
                                      const RunConfig& cfg);
std::vector<std::string> emit_reports(const NSweepResult& r,
                                      const RunConfig& cfg);
std::vector<std::string> emit_reports(const GridResult& r,
                                      const RunConfig& cfg);

// Default experiment: the fourth-order benchmark plant at the 3% noise
// scenario with desk-scale Table-style settings.
RunConfig default_config();

}  // namespace lrr::runner
