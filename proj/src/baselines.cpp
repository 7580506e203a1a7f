#include "lrr/baselines.hpp"

#include <cmath>

namespace lrr::baselines {

Eigen::VectorXd solve_ls(const Eigen::MatrixXd& U, const Eigen::VectorXd& y) {
  if (U.rows() < 1 || U.cols() < 1) throw ConfigError("ls: empty regressor");
  if (y.size() != U.rows()) throw ConfigError("ls: y length != rows of U");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(U);
  qr.setThreshold(1e-10);
  if (qr.rank() < U.cols())
    throw RankError("ls: regressor is column-rank deficient (rank " +
                    std::to_string(qr.rank()) + " of " +
                    std::to_string(U.cols()) + ")");
  return qr.solve(y);
}

Eigen::VectorXd solve_tls(const Eigen::MatrixXd& U, const Eigen::VectorXd& y,
                          double sigma_u, int N) {
  if (sigma_u < 0.0) throw ConfigError("tls: sigma_u must be >= 0");
  if (N < 1) throw ConfigError("tls: N must be >= 1");
  if (y.size() != U.rows()) throw ConfigError("tls: y length != rows of U");
  if (sigma_u == 0.0) return solve_ls(U, y);  // no ridge, plain LS

  const Eigen::Index q = U.cols();
  Eigen::MatrixXd Ua(U.rows() + q, q);
  Ua.topRows(U.rows()) = U;
  Ua.bottomRows(q) =
      sigma_u * std::sqrt(double(N)) * Eigen::MatrixXd::Identity(q, q);
  Eigen::VectorXd ya = Eigen::VectorXd::Zero(U.rows() + q);
  ya.head(U.rows()) = y;
  // The identity block guarantees full column rank.
  return Ua.householderQr().solve(ya);
}

}  // namespace lrr::baselines
