#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lrr/errors.hpp"
#include "lrr/sim.hpp"

namespace lrr::design {

// Penalty weights w_1 <= w_2 <= ... <= w_q with max w_i = 1 and all w_i > 0.
// Nondecreasing weights penalize late taps at least as hard as early ones,
// which is what makes short (leading) supports preferred.
class WeightVector {
 public:
  explicit WeightVector(Eigen::VectorXd w);
  static WeightVector ones(int q);

  const Eigen::VectorXd& values() const { return w_; }
  double operator[](int i) const { return w_(i); }  // 0-based
  int size() const { return static_cast<int>(w_.size()); }

 private:
  Eigen::VectorXd w_;
};

// Everything the estimator needs, assembled once per record:
//   U      N x q Toeplitz regressor built from the nominal input
//   b      [y; 0_q]
//   A_bar  [U; sigma_u sqrt(N) I_q], the ridge-augmented regressor
//   A      A_bar with columns scaled to unit Euclidean norm
//   T      the scaling, t_i = 1 / ||A_bar column i||
// The solver works in the scaled variable x_tilde; the FIR estimate is
// x = T .* x_tilde.
struct RegressionProblem {
  Eigen::MatrixXd U;
  Eigen::VectorXd b;
  Eigen::MatrixXd A_bar;
  Eigen::MatrixXd A;
  Eigen::VectorXd T;
  WeightVector W;
  double gamma = 0.0;
  double sigma_u = 0.0;
  int N = 0;
  int q = 0;

  // Measured outputs, the first N entries of b.
  Eigen::VectorBlock<const Eigen::VectorXd> y() const { return b.head(N); }

  // Same problem at a different regularization level.
  RegressionProblem with_gamma(double new_gamma) const;
};

// Estimate with bookkeeping from one solve.
struct Solution {
  Eigen::VectorXd x_tilde;    // scaled-variable minimizer
  Eigen::VectorXd x;          // FIR taps, x = T .* x_tilde
  std::vector<int> support;   // 0-based indices of nonzero taps, ascending
  double objective = 0.0;     // criterion value at the minimizer
  long iterations = 0;        // coordinate sweeps used
  double kkt_violation = 0.0; // max stationarity residual at exit
};

// Toeplitz regressor from input samples covering k = 2-q .. N:
// row k, column i (1-based math indices) holds u(k+1-i). Throws ConfigError
// naming the expected sample range when the input has the wrong length.
Eigen::MatrixXd build_toeplitz(const Eigen::VectorXd& u, int N, int q);

// Builds the full problem from a record: Toeplitz regressor from the nominal
// input, ridge augmentation with sigma_u sqrt(N) I, unit-column scaling.
// Throws RankError if any augmented column is zero, or (when sigma_u = 0)
// if U itself is column-rank deficient.
RegressionProblem assemble(const sim::DataRecord& rec, double sigma_u,
                           double gamma, WeightVector W);

// Identification criterion in the FIR variable x:
//   (1/gamma) ||y - U x||^2 + (N sigma_u^2 / gamma) ||x||^2 + sum_i w_i |x_i| / t_i
double cost_j1(const Eigen::VectorXd& x, const RegressionProblem& p);

// Same criterion in the scaled variable:
//   (1/gamma) ||b - A x_tilde||^2 + sum_i w_i |x_tilde_i|
// Equal to cost_j1 at x = T .* x_tilde by construction.
double cost_j1_tilde(const Eigen::VectorXd& x_tilde, const RegressionProblem& p);

}  // namespace lrr::design
