#include "lrr/solver.hpp"

#include <algorithm>
#include <cmath>

namespace lrr::solver {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

double kkt_violation(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const design::WeightVector& W, double gamma,
                     const Eigen::VectorXd& x_tilde) {
  const Eigen::VectorXd g = (2.0 / gamma) * (A.transpose() * (A * x_tilde - b));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x_tilde.size(); ++i) {
    double v;
    if (x_tilde(i) != 0.0)
      v = std::abs(g(i) + W[int(i)] * (x_tilde(i) > 0.0 ? 1.0 : -1.0));
    else
      v = std::max(0.0, std::abs(g(i)) - W[int(i)]);
    worst = std::max(worst, v);
  }
  return worst;
}

LassoIterate solve_weighted_lasso(const Eigen::MatrixXd& A,
                                  const Eigen::VectorXd& b,
                                  const design::WeightVector& W, double gamma,
                                  const SolveOptions& opts,
                                  const Eigen::VectorXd* x0) {
  const Eigen::Index q = A.cols();
  if (q < 1 || A.rows() < 1) throw ConfigError("lasso: empty problem");
  if (b.size() != A.rows()) throw ConfigError("lasso: b length != rows of A");
  if (W.size() != q) throw ConfigError("lasso: weight length != cols of A");
  if (!(gamma > 0.0)) throw ConfigError("lasso: gamma must be > 0");
  if (!(opts.tol > 0.0)) throw ConfigError("lasso: tol must be > 0");
  if (opts.max_iter < 1) throw ConfigError("lasso: max_iter must be >= 1");
  for (Eigen::Index i = 0; i < q; ++i)
    if (std::abs(A.col(i).norm() - 1.0) > 1e-6)
      throw ConfigError("lasso: column " + std::to_string(i + 1) +
                        " is not unit norm");

  Eigen::VectorXd x;
  if (x0) {
    if (x0->size() != q) throw ConfigError("lasso: warm start length != cols of A");
    x = *x0;
  } else {
    x = Eigen::VectorXd::Zero(q);
  }

  Eigen::VectorXd r = b - A * x;  // maintained incrementally below
  const double kkt_gate = 10.0 * opts.tol;
  double kkt = 0.0;

  for (long sweep = 1; sweep <= opts.max_iter; ++sweep) {
    double dmax = 0.0;
    for (Eigen::Index i = 0; i < q; ++i) {
      const double xi = x(i);
      const double v = A.col(i).dot(r) + xi;  // unit column: exact 1-d minimizer
      const double xn = soft_threshold(v, gamma * W[int(i)] / 2.0);
      if (xn != xi) {
        r.noalias() += A.col(i) * (xi - xn);
        x(i) = xn;
        dmax = std::max(dmax, std::abs(xn - xi));
      }
    }
    // Incremental residual updates drift; refresh periodically.
    if (sweep % 1000 == 0) r = b - A * x;

    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    if (dmax <= opts.tol * scale) {
      // Sweep stalled; accept only if the exact optimality residual agrees.
      kkt = kkt_violation(A, b, W, gamma, x);
      if (kkt <= kkt_gate) return {std::move(x), sweep, kkt};
      r = b - A * x;
    }
  }

  kkt = kkt_violation(A, b, W, gamma, x);
  throw NonConvergence("lasso: no convergence in " +
                           std::to_string(opts.max_iter) +
                           " sweeps (kkt residual " + std::to_string(kkt) + ")",
                       std::move(x), kkt, opts.max_iter);
}

namespace {

design::Solution make_solution(const design::RegressionProblem& p,
                               double gamma, LassoIterate it) {
  design::Solution s;
  s.x_tilde = std::move(it.x_tilde);
  s.x = p.T.cwiseProduct(s.x_tilde);
  for (int i = 0; i < p.q; ++i)
    if (s.x_tilde(i) != 0.0) s.support.push_back(i);
  double l1 = 0.0;
  for (int i = 0; i < p.q; ++i) l1 += p.W[i] * std::abs(s.x_tilde(i));
  s.objective = (p.b - p.A * s.x_tilde).squaredNorm() / gamma + l1;
  s.iterations = it.iterations;
  s.kkt_violation = it.kkt_violation;
  return s;
}

}  // namespace

design::Solution solve_lrr(const design::RegressionProblem& p,
                           const SolveOptions& opts) {
  LassoIterate it = solve_weighted_lasso(p.A, p.b, p.W, p.gamma, opts);
  return make_solution(p, p.gamma, std::move(it));
}

std::vector<design::Solution> solve_path(const design::RegressionProblem& p,
                                         const std::vector<double>& gammas,
                                         const SolveOptions& opts) {
  if (gammas.empty()) throw ConfigError("path: empty gamma sequence");
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    if (!(gammas[j] > 0.0)) throw ConfigError("path: gammas must be > 0");
    if (j > 0 && !(gammas[j] < gammas[j - 1]))
      throw ConfigError("path: gammas must be strictly decreasing");
  }
  std::vector<design::Solution> out;
  out.reserve(gammas.size());
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(p.q);
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    try {
      LassoIterate it =
          solve_weighted_lasso(p.A, p.b, p.W, gammas[j], opts, &warm);
      warm = it.x_tilde;
      out.push_back(make_solution(p, gammas[j], std::move(it)));
    } catch (const NonConvergence& e) {
      throw PathFailure("path: failure at gamma index " + std::to_string(j) +
                            " (gamma = " + std::to_string(gammas[j]) +
                            "): " + e.what(),
                        std::move(out), j);
    }
  }
  return out;
}

}  // namespace lrr::solver
