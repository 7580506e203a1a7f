#include "lrr/design.hpp"

#include <cmath>

namespace lrr::design {

WeightVector::WeightVector(Eigen::VectorXd w) : w_(std::move(w)) {
  if (w_.size() < 1) throw ConfigError("weights: empty vector");
  if (!(w_.minCoeff() > 0.0)) throw ConfigError("weights: all w_i must be > 0");
  for (Eigen::Index i = 1; i < w_.size(); ++i)
    if (w_(i) < w_(i - 1))
      throw ConfigError("weights: must be nondecreasing (w_" +
                        std::to_string(i) + " < w_" + std::to_string(i - 1) +
                        " at 1-based positions " + std::to_string(i + 1) +
                        ", " + std::to_string(i) + ")");
  if (std::abs(w_.maxCoeff() - 1.0) > 1e-12)
    throw ConfigError("weights: must be normalized so max w_i = 1");
}

WeightVector WeightVector::ones(int q) {
  if (q < 1) throw ConfigError("weights: size must be >= 1");
  return WeightVector(Eigen::VectorXd::Ones(q));
}

RegressionProblem RegressionProblem::with_gamma(double new_gamma) const {
  if (!(new_gamma > 0.0)) throw ConfigError("gamma must be > 0");
  RegressionProblem p(*this);
  p.gamma = new_gamma;
  return p;
}

Eigen::MatrixXd build_toeplitz(const Eigen::VectorXd& u, int N, int q) {
  if (q < 1 || N < q) throw ConfigError("toeplitz: need 1 <= q <= N");
  const Eigen::Index need = N + q - 1;
  if (u.size() != need)
    throw ConfigError(
        "toeplitz: input must cover k = " + std::to_string(2 - q) + " .. " +
        std::to_string(N) + " (" + std::to_string(need) + " samples), got " +
        std::to_string(u.size()));
  // Column i (0-based) is u(2-i), ..., u(N+1-i) read off the sample array;
  // entry (k, i) in 1-based math indices is u(k+1-i).
  Eigen::MatrixXd U(N, q);
  for (int i = 0; i < q; ++i)
    U.col(i) = u.segment(q - 1 - i, N);
  return U;
}

RegressionProblem assemble(const sim::DataRecord& rec, double sigma_u,
                           double gamma, WeightVector W) {
  rec.validate();
  if (sigma_u < 0.0) throw ConfigError("assemble: sigma_u must be >= 0");
  if (!(gamma > 0.0)) throw ConfigError("assemble: gamma must be > 0");
  if (W.size() != rec.q)
    throw ConfigError("assemble: weight vector length " +
                      std::to_string(W.size()) + " != q = " +
                      std::to_string(rec.q));

  const int N = rec.N, q = rec.q;
  RegressionProblem p{Eigen::MatrixXd(), Eigen::VectorXd(), Eigen::MatrixXd(),
                      Eigen::MatrixXd(), Eigen::VectorXd(), std::move(W),
                      gamma, sigma_u, N, q};
  p.U = build_toeplitz(rec.u, N, q);

  p.b = Eigen::VectorXd::Zero(N + q);
  p.b.head(N) = rec.y;

  p.A_bar = Eigen::MatrixXd::Zero(N + q, q);
  p.A_bar.topRows(N) = p.U;
  p.A_bar.bottomRows(q) = sigma_u * std::sqrt(double(N)) *
                          Eigen::MatrixXd::Identity(q, q);

  if (sigma_u == 0.0) {
    // Without the ridge block full column rank must come from U itself.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(p.U);
    qr.setThreshold(1e-10);
    if (qr.rank() < q)
      throw RankError("assemble: regressor is column-rank deficient (rank " +
                      std::to_string(qr.rank()) + " < q = " +
                      std::to_string(q) + ") and sigma_u = 0");
  }

  p.T.resize(q);
  p.A.resize(N + q, q);
  for (int i = 0; i < q; ++i) {
    const double nrm = p.A_bar.col(i).norm();
    if (nrm == 0.0)
      throw RankError("assemble: augmented column " + std::to_string(i + 1) +
                      " has zero norm");
    p.T(i) = 1.0 / nrm;
    p.A.col(i) = p.A_bar.col(i) * p.T(i);
  }
  return p;
}

double cost_j1(const Eigen::VectorXd& x, const RegressionProblem& p) {
  if (x.size() != p.q) throw ConfigError("cost: x length != q");
  const double resid = (p.y() - p.U * x).squaredNorm();
  const double ridge = double(p.N) * p.sigma_u * p.sigma_u * x.squaredNorm();
  double l1 = 0.0;
  for (int i = 0; i < p.q; ++i) l1 += p.W[i] * std::abs(x(i)) / p.T(i);
  return (resid + ridge) / p.gamma + l1;
}

double cost_j1_tilde(const Eigen::VectorXd& x_tilde,
                     const RegressionProblem& p) {
  if (x_tilde.size() != p.q) throw ConfigError("cost: x_tilde length != q");
  const double resid = (p.b - p.A * x_tilde).squaredNorm();
  double l1 = 0.0;
  for (int i = 0; i < p.q; ++i) l1 += p.W[i] * std::abs(x_tilde(i));
  return resid / p.gamma + l1;
}

}  // namespace lrr::design
