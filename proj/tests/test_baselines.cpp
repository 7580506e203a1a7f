#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "lrr/baselines.hpp"
#include "lrr/design.hpp"
#include "lrr/metrics.hpp"
#include "lrr/sim.hpp"
#include "support/oracles.hpp"

using namespace lrr;

TEST_CASE("least squares on an identity design returns the data") {
  const Eigen::MatrixXd U = Eigen::MatrixXd::Identity(5, 5);
  Eigen::VectorXd y(5);
  y << 1, -2, 3, 0, 0.5;
  const auto x = baselines::solve_ls(U, y);
  CHECK((x - y).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("least squares recovers the generator of consistent data") {
  const auto u = sim::gen_iid(100 + 8 - 1, 1.0, 21);
  const auto U = design::build_toeplitz(u, 100, 8);
  Eigen::VectorXd h(8);
  h << 0.0, 1.0, 2.7, -0.5, 0.25, 0.0, 0.1, -0.05;
  const Eigen::VectorXd y = U * h;
  const auto x = baselines::solve_ls(U, y);
  CHECK((x - h).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("least squares matches the normal-equations oracle") {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int n = 30, q = 7;
    Eigen::MatrixXd U(n, q);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      y(i) = gauss(rng);
      for (int j = 0; j < q; ++j) U(i, j) = gauss(rng);
    }
    const auto x = baselines::solve_ls(U, y);
    const auto ref = oracles::normal_equations_ls(U, y);
    CHECK((x - ref).lpNorm<Eigen::Infinity>() < 1e-9);
  }
}

TEST_CASE("least squares rejects rank-deficient regressors") {
  Eigen::MatrixXd U(6, 3);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    U(i, 0) = gauss(rng);
    U(i, 1) = 2.0 * U(i, 0);  // dependent column
    U(i, 2) = gauss(rng);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Ones(6);
  CHECK_THROWS_AS(baselines::solve_ls(U, y), RankError);
}

TEST_CASE("ridge baseline with sigma_u = 0 is exactly least squares") {
  const auto u = sim::gen_iid(50 + 5 - 1, 1.0, 9);
  const auto U = design::build_toeplitz(u, 50, 5);
  const auto y = sim::gen_iid(50, 1.0, 10);
  const auto ls = baselines::solve_ls(U, y);
  const auto tls = baselines::solve_tls(U, y, 0.0, 50);
  CHECK(ls == tls);  // bitwise: same code path
}

TEST_CASE("ridge baseline closed form on an identity design") {
  const int q = 4, N = 25;
  const Eigen::MatrixXd U = Eigen::MatrixXd::Identity(q, q);
  Eigen::VectorXd y(q);
  y << 2, -1, 0.5, 3;
  const double sigma_u = 0.2;
  // (U'U + N sigma^2 I) x = U'y  =>  x = y / (1 + N sigma^2)
  const auto x = baselines::solve_tls(U, y, sigma_u, N);
  const Eigen::VectorXd want = y / (1.0 + N * sigma_u * sigma_u);
  CHECK((x - want).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("ridge baseline matches the regularized normal equations") {
  std::mt19937_64 rng(81);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int n = 40, q = 6, N = 40;
    Eigen::MatrixXd U(n, q);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      y(i) = gauss(rng);
      for (int j = 0; j < q; ++j) U(i, j) = gauss(rng);
    }
    const double sigma_u = 0.05 + 0.2 * (t % 5);
    const auto x = baselines::solve_tls(U, y, sigma_u, N);
    const auto ref = oracles::normal_equations_ridge(U, y, N * sigma_u * sigma_u);
    CHECK((x - ref).lpNorm<Eigen::Infinity>() < 1e-9);
  }
}

TEST_CASE("stronger assumed input noise shrinks the ridge estimate") {
  const auto u = sim::gen_iid(200 + 10 - 1, 1.0, 31);
  const auto U = design::build_toeplitz(u, 200, 10);
  const auto y = sim::gen_iid(200, 4.0, 32);
  double prev = std::numeric_limits<double>::infinity();
  for (const double s : {0.0, 0.05, 0.1, 0.3, 0.6, 1.0}) {
    const double nrm = baselines::solve_tls(U, y, s, 200).norm();
    CHECK(nrm <= prev + 1e-12);
    prev = nrm;
  }
}

TEST_CASE("both baselines are generically dense") {
  const auto m = sim::SystemModel::rational(oracles::plant_numerator(),
                                            oracles::plant_denominator());
  const auto spec = sim::SignalSpec::gaussian(1.0, 0.03, 0.3, 77);
  const auto rec = sim::make_dataset(m, spec, 300, 60, 200);
  const auto U = design::build_toeplitz(rec.u, 300, 60);
  const auto ls = baselines::solve_ls(U, rec.y);
  const auto tls = baselines::solve_tls(U, rec.y, 0.03, 300);
  const int n_l = 30;
  CHECK(metrics::tail_norms(ls, n_l).tn0 == 60 - n_l);
  CHECK(metrics::tail_norms(tls, n_l).tn0 == 60 - n_l);
}
