#pragma once

#include <Eigen/Dense>

#include "lrr/errors.hpp"

namespace lrr::metrics {

// Percentage fit 100 (1 - ||y - y_hat|| / ||y - mean(y)||). 100 is a perfect
// match, 0 no better than the mean. Throws ConfigError on length mismatch or
// when y is exactly constant (zero denominator).
double fit(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat);

// Tail mass of an estimate beyond the leading order n_l (1-based): TN0 counts
// exact nonzeros among taps n_l+1..q, TN1 is their absolute sum.
struct TailNorms {
  int tn0 = 0;
  double tn1 = 0.0;
};
TailNorms tail_norms(const Eigen::VectorXd& x, int n_l);

// Output of the FIR model `taps` over a window of length `window_len`, fed
// with input samples covering k = 2-q .. window_len (exactly q - 1 +
// window_len samples, the warm-up making y(1) transient free).
Eigen::VectorXd simulate_model_output(const Eigen::VectorXd& taps,
                                      const Eigen::VectorXd& input,
                                      int window_len);

}  // namespace lrr::metrics
