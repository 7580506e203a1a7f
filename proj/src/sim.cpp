#include "lrr/sim.hpp"

#include <cmath>
#include <random>

namespace lrr::sim {

SystemModel SystemModel::rational(std::vector<double> num,
                                  std::vector<double> den) {
  SystemModel m;
  m.numerator = std::move(num);
  m.denominator = std::move(den);
  m.validate();
  return m;
}

SystemModel SystemModel::fir(std::vector<double> taps) {
  SystemModel m;
  m.fir_taps = std::move(taps);
  m.validate();
  return m;
}

void SystemModel::validate() const {
  const bool rational = !numerator.empty() || !denominator.empty();
  if (rational && !fir_taps.empty())
    throw ConfigError("system model: set either numerator/denominator or fir_taps, not both");
  if (!rational && fir_taps.empty())
    throw ConfigError("system model: empty model");
  if (rational) {
    if (numerator.empty() || denominator.empty())
      throw ConfigError("system model: rational model needs both numerator and denominator");
    if (std::abs(denominator.front() - 1.0) > 1e-12)
      throw ConfigError("system model: denominator must be monic (leading coefficient 1)");
    if (numerator.size() > denominator.size())
      throw ConfigError("system model: improper transfer function (numerator order exceeds denominator order)");
  }
}

SignalSpec SignalSpec::gaussian(double nu_sq, double sigma_u, double sigma_y,
                                std::uint64_t seed) {
  SignalSpec s;
  s.nu_sq = nu_sq;
  s.m4 = 3.0 * nu_sq * nu_sq;
  s.sigma_u = sigma_u;
  s.sigma_y = sigma_y;
  s.seed = seed;
  s.validate();
  return s;
}

void SignalSpec::validate() const {
  if (!(nu_sq > 0.0)) throw ConfigError("signal spec: input variance nu_sq must be > 0");
  if (sigma_u < 0.0 || sigma_y < 0.0)
    throw ConfigError("signal spec: noise deviations must be >= 0");
  if (distribution != "gaussian")
    throw ConfigError("signal spec: unsupported distribution '" + distribution +
                      "' (only \"gaussian\" is implemented)");
  // For a Gaussian input the fourth moment is pinned to 3 nu^4.
  if (std::abs(m4 - 3.0 * nu_sq * nu_sq) > 1e-9 * (1.0 + std::abs(m4)))
    throw ConfigError("signal spec: gaussian input requires m4 = 3 nu_sq^2");
}

void DataRecord::validate() const {
  if (q < 1 || N < q)
    throw ConfigError("data record: need 1 <= q <= N");
  if (u.size() != N + q - 1 || u_tilde.size() != N + q - 1)
    throw ConfigError("data record: inputs must cover k = 2-q .. N (" +
                      std::to_string(N + q - 1) + " samples)");
  if (y.size() != N)
    throw ConfigError("data record: y must cover k = 1 .. N");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 scramble of master advanced by (stream + 1) increments.
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Eigen::VectorXd gen_iid(int n, double variance, std::uint64_t seed) {
  if (n < 1) throw ConfigError("gen_iid: sample count must be >= 1");
  if (variance < 0.0) throw ConfigError("gen_iid: variance must be >= 0");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  if (variance == 0.0) return v;  // degenerate noise: exactly zero
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, std::sqrt(variance));
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

Eigen::VectorXd simulate_lti(const SystemModel& model,
                             const Eigen::VectorXd& input) {
  model.validate();
  const Eigen::Index n = input.size();
  if (n < 1) throw ConfigError("simulate_lti: empty input");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);

  if (model.is_fir()) {
    const auto& h = model.fir_taps;
    const int q = static_cast<int>(h.size());
    for (Eigen::Index k = 0; k < n; ++k) {
      double acc = 0.0;
      const int jmax = static_cast<int>(std::min<Eigen::Index>(k + 1, q));
      for (int j = 0; j < jmax; ++j) acc += h[j] * input(k - j);
      y(k) = acc;
    }
    return y;
  }

  // Rational H(z) = num(z)/den(z), coefficients in descending powers of z,
  // den monic of degree d. Dividing through by z^d gives the recursion
  //   y(k) = sum_j c_j u(k-j) - sum_{j>=1} a_j y(k-j),
  // with c the numerator padded with leading zeros to length d+1.
  const auto& den = model.denominator;
  const std::size_t d1 = den.size();  // d + 1 coefficients
  std::vector<double> c(d1, 0.0);
  std::copy(model.numerator.begin(), model.numerator.end(),
            c.begin() + (d1 - model.numerator.size()));
  for (Eigen::Index k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d1 && static_cast<Eigen::Index>(j) <= k; ++j)
      acc += c[j] * input(k - j);
    for (std::size_t j = 1; j < d1 && static_cast<Eigen::Index>(j) <= k; ++j)
      acc -= den[j] * y(k - j);
    y(k) = acc;
  }
  return y;
}

Eigen::VectorXd impulse_response(const SystemModel& model, int q) {
  model.validate();
  if (q < 1) throw ConfigError("impulse_response: length must be >= 1");
  if (model.is_fir()) {
    // Exact taps, zero padded (or truncated) to length q.
    Eigen::VectorXd h = Eigen::VectorXd::Zero(q);
    const int m = static_cast<int>(std::min<std::size_t>(model.fir_taps.size(), q));
    for (int i = 0; i < m; ++i) h(i) = model.fir_taps[i];
    return h;
  }
  Eigen::VectorXd impulse = Eigen::VectorXd::Zero(q);
  impulse(0) = 1.0;
  return simulate_lti(model, impulse);
}

DataRecord make_dataset(const SystemModel& model, const SignalSpec& spec,
                        int N, int q, int discard) {
  model.validate();
  spec.validate();
  if (q < 1 || N < q)
    throw ConfigError("make_dataset: need 1 <= q <= N");
  if (discard < 0) throw ConfigError("make_dataset: discard must be >= 0");

  // One long run: `discard` warm-up samples, then the q-1 pre-window samples,
  // then the retained window k = 1..N. The plant starts from zero initial
  // conditions at the beginning of the warm-up.
  const int total = discard + q - 1 + N;
  const int off = discard + q - 1;  // global index of local k = 1

  const Eigen::VectorXd u =
      gen_iid(total, spec.nu_sq, derive_seed(spec.seed, 0));
  const Eigen::VectorXd du =
      gen_iid(total, spec.sigma_u * spec.sigma_u, derive_seed(spec.seed, 1));
  const Eigen::VectorXd u_tilde = u + du;

  const Eigen::VectorXd y_clean = simulate_lti(model, u_tilde);
  const Eigen::VectorXd dy =
      gen_iid(N, spec.sigma_y * spec.sigma_y, derive_seed(spec.seed, 2));

  DataRecord rec;
  rec.N = N;
  rec.q = q;
  rec.u = u.segment(discard, N + q - 1);
  rec.u_tilde = u_tilde.segment(discard, N + q - 1);
  rec.y = y_clean.segment(off, N) + dy;
  rec.validate();
  return rec;
}

}  // namespace lrr::sim
