#include "spate/spike.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "spate/errors.hpp"

namespace spate {

void LifConfig::validate() const {
  if (!(tau > 0)) throw_invalid("LifConfig: tau must be > 0");
  if (!(gain > 0)) throw_invalid("LifConfig: gain must be > 0");
  if (sigma < 0) throw_invalid("LifConfig: sigma must be >= 0");
  if (!(v_th > 0)) throw_invalid("LifConfig: v_th must be > 0");
  if (!(horizon > 0)) throw_invalid("LifConfig: horizon must be > 0");
  if (!(dt > 0) || dt > horizon) throw_invalid("LifConfig: need 0 < dt <= T");
  if (n_bins < 1) throw_invalid("LifConfig: n_bins must be >= 1");
  if (num_steps() < 1) throw_invalid("LifConfig: need at least one step");
}

SpikeTrain simulate_lif(double x, const LifConfig& cfg, RngStream rng) {
  if (x < 0.0 || x > 1.0) throw_invalid("simulate_lif: input outside [0,1]");
  cfg.validate();
  const int steps = cfg.num_steps();
  SpikeTrain train;
  double v = 0.0;
  for (int step = 0; step < steps; ++step) {
    const double noise = cfg.sigma > 0 ? cfg.sigma * rng.next_gaussian() : 0.0;
    v += (cfg.dt / cfg.tau) * (-v + cfg.gain * x + noise);
    if (v >= cfg.v_th) {
      train.times.push_back((step + 1) * cfg.dt);
      v = 0.0;
    }
  }
  return train;
}

double rate_angle(int spike_count, int num_steps) {
  if (spike_count < 0 || spike_count > num_steps)
    throw_invalid("rate_angle: spike count outside 0..N");
  return std::numbers::pi *
         std::sqrt(static_cast<double>(spike_count) / (num_steps + kEps));
}

double timing_phase(const SpikeTrain& train, double horizon) {
  if (train.times.empty()) return 0.0;
  std::complex<double> resultant{0, 0};
  for (double s : train.times)
    resultant += std::polar(1.0, 2.0 * std::numbers::pi * s / horizon);
  resultant /= static_cast<double>(train.times.size());
  if (std::abs(resultant) < 1e-9) return 0.0;  // arg undefined at the origin
  double phi = std::arg(resultant);
  if (phi < 0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  return phi;
}

Eigen::VectorXd temporal_bins(const SpikeTrain& train, double horizon,
                              int n_bins) {
  if (n_bins < 1) throw_invalid("temporal_bins: n_bins must be >= 1");
  Eigen::VectorXd h = Eigen::VectorXd::Zero(n_bins);
  for (double s : train.times) {
    int k = static_cast<int>(s * n_bins / horizon);
    if (k >= n_bins) k = n_bins - 1;
    h(k) += 1.0;
  }
  return h.array() - h.mean();
}

SpateParams extract_params(const Eigen::VectorXd& x, const LifConfig& cfg,
                           const RngStream& rng) {
  cfg.validate();
  const Eigen::Index d = x.size();
  for (Eigen::Index i = 0; i < d; ++i)
    if (x(i) < 0.0 || x(i) > 1.0)
      throw_invalid("extract_params: feature outside [0,1]");

  SpateParams params;
  params.alpha.resize(d);
  params.phi.resize(d);
  params.bins.resize(d, cfg.n_bins);
  const int steps = cfg.num_steps();
  for (Eigen::Index i = 0; i < d; ++i) {
    const SpikeTrain train =
        simulate_lif(x(i), cfg, rng.child(static_cast<std::uint64_t>(i)));
    params.alpha(i) = rate_angle(train.count(), steps);
    params.phi(i) = timing_phase(train, cfg.horizon);
    params.bins.row(i) = temporal_bins(train, cfg.horizon, cfg.n_bins);
  }
  return params;
}

}  // namespace spate
