#pragma once

#include <Eigen/Dense>

#include "lrr/errors.hpp"

namespace lrr::baselines {

// Ordinary least squares x = argmin ||y - U x||^2 via orthogonal
// factorization. Throws RankError when U is column-rank deficient.
Eigen::VectorXd solve_ls(const Eigen::MatrixXd& U, const Eigen::VectorXd& y);

// Ridge-corrected least squares accounting for input noise of deviation
// sigma_u over N samples: x = argmin ||y - U x||^2 + N sigma_u^2 ||x||^2,
// solved through the stacked system [U; sqrt(N) sigma_u I]. With sigma_u = 0
// this is exactly solve_ls.
Eigen::VectorXd solve_tls(const Eigen::MatrixXd& U, const Eigen::VectorXd& y,
                          double sigma_u, int N);

}  // namespace lrr::baselines
