#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lrr/design.hpp"
#include "lrr/errors.hpp"

namespace lrr::solver {

struct SolveOptions {
  double tol = 1e-6;      // coordinate-change tolerance, relative to ||x||_inf
  long max_iter = 100000; // full coordinate sweeps
};

// Raised when the sweep budget runs out. Carries the best iterate so callers
// can inspect how close the solver got.
struct NonConvergence : std::runtime_error {
  NonConvergence(const std::string& msg, Eigen::VectorXd x_tilde_,
                 double kkt_violation_, long iterations_)
      : std::runtime_error(msg),
        x_tilde(std::move(x_tilde_)),
        kkt_violation(kkt_violation_),
        iterations(iterations_) {}
  Eigen::VectorXd x_tilde;
  double kkt_violation;
  long iterations;
};

// Raised by solve_path: solutions for gammas before `failed_index` are kept.
struct PathFailure : std::runtime_error {
  PathFailure(const std::string& msg, std::vector<design::Solution> completed_,
              std::size_t failed_index_)
      : std::runtime_error(msg),
        completed(std::move(completed_)),
        failed_index(failed_index_) {}
  std::vector<design::Solution> completed;
  std::size_t failed_index;
};

// Scalar soft threshold: shrinks v toward zero by t, exactly zero when
// |v| <= t.
double soft_threshold(double v, double t);

struct LassoIterate {
  Eigen::VectorXd x_tilde;
  long iterations = 0;
  double kkt_violation = 0.0;
};

// Minimizes (1/gamma) ||b - A x||^2 + sum_i w_i |x_i| over x by cyclic
// coordinate descent. A must have unit-norm columns (that makes each
// coordinate update a single soft threshold). Terminates when a full sweep
// moves no coordinate by more than tol * max(1, ||x||_inf) AND the exact
// stationarity (KKT) residual is at most 10 * tol; the latter guards against
// stalled sweeps that are not yet optimal. Throws NonConvergence when
// max_iter sweeps are exhausted.
LassoIterate solve_weighted_lasso(const Eigen::MatrixXd& A,
                                  const Eigen::VectorXd& b,
                                  const design::WeightVector& W, double gamma,
                                  const SolveOptions& opts = {},
                                  const Eigen::VectorXd* x0 = nullptr);

// Max stationarity residual of the scaled-variable criterion at x_tilde:
// for nonzero coordinates |(2/gamma) a_i'(A x - b) + w_i sign(x_i)|, for zero
// coordinates the excess of |(2/gamma) a_i'(A x - b)| over w_i. Zero at an
// exact minimizer.
double kkt_violation(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const design::WeightVector& W, double gamma,
                     const Eigen::VectorXd& x_tilde);

// Full estimate for an assembled problem: solves in the scaled variable and
// maps back to FIR taps.
design::Solution solve_lrr(const design::RegressionProblem& p,
                           const SolveOptions& opts = {});

// Solves along a strictly decreasing gamma sequence with warm starts.
// A failure at gamma_j aborts the path; PathFailure carries the j solutions
// already completed.
std::vector<design::Solution> solve_path(const design::RegressionProblem& p,
                                         const std::vector<double>& gammas,
                                         const SolveOptions& opts = {});

}  // namespace lrr::solver
