#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "lrr/errors.hpp"

namespace lrr::sim {

// Discrete-time LTI plant, either a rational transfer function
//   H(z) = num(z)/den(z)   (coefficients in descending powers of z, den monic)
// or a finite impulse response given directly by its taps.
struct SystemModel {
  std::vector<double> numerator;    // empty for FIR models
  std::vector<double> denominator;  // empty for FIR models
  std::vector<double> fir_taps;     // empty for rational models

  bool is_fir() const { return !fir_taps.empty(); }

  static SystemModel rational(std::vector<double> num, std::vector<double> den);
  static SystemModel fir(std::vector<double> taps);

  // Throws ConfigError on an ill-formed model (empty, non-monic denominator,
  // numerator order exceeding denominator order, both kinds set at once).
  void validate() const;
};

// Stochastic description of the excitation and the measurement noises.
// u(k) is iid zero mean with variance nu_sq and fourth moment m4; the input
// perturbation delta_u and output noise delta_y are iid zero-mean Gaussian
// with standard deviations sigma_u and sigma_y.
struct SignalSpec {
  double nu_sq = 1.0;  // input variance, > 0
  double m4 = 3.0;     // fourth moment of u, >= nu_sq^2
  double sigma_u = 0.0;
  double sigma_y = 0.0;
  std::string distribution = "gaussian";
  std::uint64_t seed = 0;

  static SignalSpec gaussian(double nu_sq, double sigma_u, double sigma_y,
                             std::uint64_t seed);

  void validate() const;
};

// One identification (or validation) record over the local window k = 1..N:
//   u, u_tilde cover k = 2-q .. N   (N + q - 1 samples, u_tilde = u + delta_u)
//   y covers k = 1..N               (measured on the perturbed input)
// The q-1 pre-window samples are exactly the warm-up a length-q FIR model
// needs to predict y(1) without transients.
struct DataRecord {
  Eigen::VectorXd u;
  Eigen::VectorXd u_tilde;
  Eigen::VectorXd y;
  int N = 0;
  int q = 0;

  // Sample accessors by local time index, k in [2-q, N] for inputs.
  double u_at(int k) const { return u(k + q - 2); }
  double u_tilde_at(int k) const { return u_tilde(k + q - 2); }

  void validate() const;
};

// Deterministic seed fan-out: stream s of a master seed. Distinct streams are
// decorrelated by a splitmix64 scramble, so one master seed can drive many
// independent generators reproducibly.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// n iid zero-mean Gaussian draws with the given variance. variance = 0 yields
// an all-zero vector; n < 1 or variance < 0 throws ConfigError.
Eigen::VectorXd gen_iid(int n, double variance, std::uint64_t seed);

// Runs the plant over the input samples from zero initial conditions and
// returns the outputs, one per input sample.
Eigen::VectorXd simulate_lti(const SystemModel& model,
                             const Eigen::VectorXd& input);

// First q impulse-response samples h(1..q). For a FIR model these are the
// taps, zero padded, exactly.
Eigen::VectorXd impulse_response(const SystemModel& model, int q);

// Generates a complete record: draws u, perturbs it, simulates the plant on
// the perturbed input for `discard` warm-up steps plus the retained window,
// adds output noise, and keeps the last N outputs together with the q-1
// pre-window input samples. Requires N >= q so the window determines q.
DataRecord make_dataset(const SystemModel& model, const SignalSpec& spec,
                        int N, int q, int discard);

}  // namespace lrr::sim
