#include "lrr/metrics.hpp"

#include <cmath>

namespace lrr::metrics {

double fit(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat) {
  if (y.size() != y_hat.size()) throw ConfigError("fit: length mismatch");
  if (y.size() < 2) throw ConfigError("fit: need at least 2 samples");
  const double denom = (y.array() - y.mean()).matrix().norm();
  if (denom == 0.0)
    throw ConfigError("fit: y is constant, fit is undefined (division by zero)");
  return 100.0 * (1.0 - (y - y_hat).norm() / denom);
}

TailNorms tail_norms(const Eigen::VectorXd& x, int n_l) {
  const int q = int(x.size());
  if (n_l < 0 || n_l > q)
    throw ConfigError("tail norms: need 0 <= n_l <= q, got n_l = " +
                      std::to_string(n_l));
  TailNorms t;
  for (int i = n_l; i < q; ++i) {  // 0-based i covers taps n_l+1 .. q
    if (x(i) != 0.0) ++t.tn0;
    t.tn1 += std::abs(x(i));
  }
  return t;
}

Eigen::VectorXd simulate_model_output(const Eigen::VectorXd& taps,
                                      const Eigen::VectorXd& input,
                                      int window_len) {
  const int q = int(taps.size());
  if (q < 1) throw ConfigError("model output: empty taps");
  if (window_len < 1) throw ConfigError("model output: window must be >= 1");
  const Eigen::Index need = q - 1 + window_len;
  if (input.size() != need)
    throw ConfigError("model output: input must cover k = " +
                      std::to_string(2 - q) + " .. " +
                      std::to_string(window_len) + " (" + std::to_string(need) +
                      " samples), got " + std::to_string(input.size()));
  Eigen::VectorXd y(window_len);
  // y(k) = sum_i taps_i input(k+1-i); input(k) sits at array index k+q-2.
  for (int k = 1; k <= window_len; ++k) {
    double acc = 0.0;
    const int base = k + q - 2;
    for (int i = 0; i < q; ++i) acc += taps(i) * input(base - i);
    y(k - 1) = acc;
  }
  return y;
}

}  // namespace lrr::metrics
