#include "lrr/theory.hpp"

#include <cmath>

namespace lrr::theory {

void StabilityBound::validate() const {
  if (!(L > 0.0)) throw ConfigError("stability bound: L must be > 0");
  if (!(rho > 0.0 && rho < 1.0))
    throw ConfigError("stability bound: rho must be in (0, 1)");
}

int leading_order(const StabilityBound& bound, double nu, double sigma_y,
                  double N, int q) {
  bound.validate();
  if (!(nu > 0.0)) throw ConfigError("leading order: nu must be > 0");
  if (sigma_y < 0.0) throw ConfigError("leading order: sigma_y must be >= 0");
  if (!(N >= 1.0)) throw ConfigError("leading order: N must be >= 1");
  if (q < 1) throw ConfigError("leading order: q must be >= 1");
  if (sigma_y == 0.0) return q;  // no noise floor, keep everything
  // Largest integer i with L rho^(i-1) >= (sigma_y/nu)/sqrt(N), in closed
  // form: floor of (log(nu L) + log(N)/2 - log(sigma_y rho)) / log(1/rho).
  const double v = std::floor((std::log(nu * bound.L) + 0.5 * std::log(N) -
                               std::log(sigma_y * bound.rho)) /
                              std::log(1.0 / bound.rho));
  if (v <= 0.0) return 0;
  if (v >= double(q)) return q;  // saturated: whole window is leading
  return int(v);
}

double kappa(double nu, double sigma_u) {
  if (!(nu > 0.0)) throw ConfigError("kappa: nu must be > 0");
  if (sigma_u < 0.0) throw ConfigError("kappa: sigma_u must be >= 0");
  return nu / std::sqrt(nu * nu + sigma_u * sigma_u);
}

double recovery_coefficient(const Eigen::MatrixXd& A,
                            const design::WeightVector& W, int n) {
  const int q = int(A.cols());
  if (W.size() != q) throw ConfigError("recovery coefficient: weight length != cols of A");
  if (n < 1 || n >= q)
    throw ConfigError("recovery coefficient: need 1 <= n < q, got n = " +
                      std::to_string(n));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A.leftCols(n));
  qr.setThreshold(1e-10);
  if (qr.rank() < n)
    throw RankError("recovery coefficient: first " + std::to_string(n) +
                    " columns are rank deficient (rank " +
                    std::to_string(qr.rank()) + ")");
  // Column c of M solves the least-squares problem A_n m = a_{n+1+c}, i.e.
  // M = A_n^+ A_{n+1..q}.
  const Eigen::MatrixXd M = qr.solve(A.rightCols(q - n));
  double worst = 0.0;
  for (int c = 0; c < q - n; ++c) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += W[j] * std::abs(M(j, c));
    worst = std::max(worst, s / W[n + c]);
  }
  return 1.0 - worst;
}

RecoveryReport check_support_condition(const design::RegressionProblem& p,
                                       int n) {
  if (n < 1 || n >= p.q)
    throw ConfigError("support condition: need 1 <= n < q, got n = " +
                      std::to_string(n));
  RecoveryReport rep;
  rep.n = n;
  rep.upsilon = recovery_coefficient(p.A, p.W, n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(p.A.leftCols(n));
  qr.setThreshold(1e-10);
  if (qr.rank() < n)
    throw RankError("support condition: first " + std::to_string(n) +
                    " columns are rank deficient");
  const Eigen::VectorXd b_proj = p.A.leftCols(n) * qr.solve(p.b);
  const Eigen::VectorXd resid = p.b - b_proj;

  double lhs = 0.0;
  for (int i = 0; i < p.q; ++i)
    lhs = std::max(lhs, std::abs(p.A.col(i).dot(resid)) / p.W[i]);
  rep.lhs = lhs;
  rep.rhs = p.gamma * rep.upsilon / 2.0;
  rep.holds = rep.upsilon > 0.0 && rep.lhs <= rep.rhs;
  return rep;
}

RecoveryReport check_support_condition(const design::RegressionProblem& p,
                                       int n, const SignalContext& ctx) {
  RecoveryReport rep = check_support_condition(p, n);
  ctx.bound.validate();
  rep.n_l = leading_order(ctx.bound, ctx.nu, ctx.sigma_y, double(p.N), p.q);
  rep.kappa = kappa(ctx.nu, p.sigma_u);
  rep.gamma_order_n = gamma_for_order(n, ctx.mu, ctx.bound, ctx.nu, rep.kappa,
                                      double(p.N), p.W[n - 1]);
  if (rep.n_l >= 1)
    rep.gamma_leading_lb = theory::gamma_leading_lb(ctx.bound, ctx.sigma_y,
                                                    rep.kappa,
                                                    p.W[rep.n_l - 1]);
  return rep;
}

double gamma_for_order(int n, double mu, const StabilityBound& bound,
                       double nu, double kappa, double N, double w_n) {
  bound.validate();
  if (n < 1) throw ConfigError("gamma for order: n must be >= 1");
  if (!(mu > 1.0)) throw ConfigError("gamma for order: mu must be > 1");
  if (!(nu > 0.0)) throw ConfigError("gamma for order: nu must be > 0");
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw ConfigError("gamma for order: kappa must be in (0, 1]");
  if (!(N >= 1.0)) throw ConfigError("gamma for order: N must be >= 1");
  if (!(w_n > 0.0)) throw ConfigError("gamma for order: w_n must be > 0");
  return 2.0 * mu * bound.L * std::pow(bound.rho, n) * nu * kappa *
         std::sqrt(N) / w_n;
}

double gamma_leading_lb(const StabilityBound& bound, double sigma_y,
                        double kappa, double w_nl) {
  bound.validate();
  if (sigma_y < 0.0) throw ConfigError("gamma lower bound: sigma_y must be >= 0");
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw ConfigError("gamma lower bound: kappa must be in (0, 1]");
  if (!(w_nl > 0.0)) throw ConfigError("gamma lower bound: w_nl must be > 0");
  return 2.0 * bound.rho * sigma_y * kappa / w_nl;
}

long long chebyshev_sample_size(double var_bound, double eps, double beta) {
  if (var_bound < 0.0)
    throw ConfigError("sample size: variance bound must be >= 0");
  if (!(eps > 0.0)) throw ConfigError("sample size: eps must be > 0");
  if (!(beta > 0.0 && beta < 1.0))
    throw ConfigError("sample size: beta must be in (0, 1)");
  const double raw = std::ceil(var_bound / (beta * eps * eps));
  return raw < 1.0 ? 1 : static_cast<long long>(raw);
}

}  // namespace lrr::theory
