#pragma once

#include <Eigen/Dense>
#include <limits>

#include "lrr/design.hpp"
#include "lrr/errors.hpp"

namespace lrr::theory {

// Exponential envelope on the true impulse response: |h(i)| <= L rho^(i-1)
// with L > 0 and 0 < rho < 1.
struct StabilityBound {
  double L = 1.0;
  double rho = 0.9;
  void validate() const;
};

// Extra context needed to fill the gamma fields of a RecoveryReport.
struct SignalContext {
  StabilityBound bound;
  double nu = 1.0;      // input rms, > 0
  double sigma_y = 0.0;
  double mu = 2.0;      // safety factor for the order-n gamma, > 1
};

// Outcome of the support-containment certificate at order n.
struct RecoveryReport {
  int n = 0;
  double upsilon = 0.0;  // recovery coefficient of A at order n
  double lhs = 0.0;      // max_i |a_i' (b - P_n b)| / w_i
  double rhs = 0.0;      // gamma * upsilon / 2
  bool holds = false;    // lhs <= rhs, certifying supp(x*) in {1..n}
  // Context fields, NaN / -1 when no SignalContext was supplied.
  int n_l = -1;
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double gamma_order_n = std::numeric_limits<double>::quiet_NaN();
  double gamma_leading_lb = std::numeric_limits<double>::quiet_NaN();
};

// Number of leading impulse-response samples that stand above the output
// noise floor: the largest i <= q with L rho^(i-1) >= (sigma_y / nu) /
// sqrt(N), clamped to [0, q]. sigma_y = 0 (or astronomically large N) gives
// q. N is a sample count, passed as double so asymptotic checks like
// N = 1e30 do not overflow.
int leading_order(const StabilityBound& bound, double nu, double sigma_y,
                  double N, int q);

// Input signal-to-total-rms ratio nu / sqrt(nu^2 + sigma_u^2), in (0, 1].
double kappa(double nu, double sigma_u);

// Recovery coefficient Upsilon_n(A) = 1 - max_{i > n} ||W_n A_n^+ a_i||_1 /
// w_i, where A_n is the first n columns of A and W_n the matching weights.
// Positive values make the support certificate non-vacuous. Requires
// 1 <= n < q and A_n full column rank.
double recovery_coefficient(const Eigen::MatrixXd& A,
                            const design::WeightVector& W, int n);

// Checks the sufficient condition for supp(x*) subset of {1..n}:
//   max_i |a_i' (b - P_n b)| / w_i <= gamma Upsilon_n(A) / 2,
// with P_n the orthogonal projector onto the range of the first n columns.
RecoveryReport check_support_condition(const design::RegressionProblem& p,
                                       int n);

// Same check, additionally filling n_l, kappa and the two gamma references
// from the signal context.
RecoveryReport check_support_condition(const design::RegressionProblem& p,
                                       int n, const SignalContext& ctx);

// Regularization level that certifies supp(x*) in {1..n} with high
// probability for large N: 2 mu L rho^n nu kappa sqrt(N) / w_n. Requires
// mu > 1.
double gamma_for_order(int n, double mu, const StabilityBound& bound,
                       double nu, double kappa, double N, double w_n);

// Strict lower bound on gamma for leading-order recovery:
// 2 rho sigma_y kappa / w_nl.
double gamma_leading_lb(const StabilityBound& bound, double sigma_y,
                        double kappa, double w_nl);

// Smallest N with P(|gamma-condition fails|) <= beta by Chebyshev:
// ceil(var_bound / (beta eps^2)), at least 1.
long long chebyshev_sample_size(double var_bound, double eps, double beta);

}  // namespace lrr::theory
