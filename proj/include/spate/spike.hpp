#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spate/rng.hpp"

namespace spate {

struct LifConfig {
  // Default operating point: with tau on the order of the horizon the neuron
  // integrates slowly and emits only a few spikes, so spike count and first-
  // spike timing vary smoothly with the input instead of saturating.
  double tau = 1.0;     // membrane time constant
  double gain = 2.0;    // input gain g
  double sigma = 0.1;   // additive noise scale
  double v_th = 0.375;  // firing threshold
  double horizon = 1.0; // simulation horizon T
  double dt = 0.02;     // step size
  int n_bins = 3;       // temporal bin count (= time qubit count)

  int num_steps() const { return static_cast<int>(horizon / dt); }
  void validate() const;
};

struct SpikeTrain {
  std::vector<double> times;  // strictly increasing, in (0, T]
  int count() const { return static_cast<int>(times.size()); }
};

struct SpateParams {
  Eigen::VectorXd alpha;  // rate angles, each in [0, pi]
  Eigen::VectorXd phi;    // timing phases, each in [0, 2*pi)
  Eigen::MatrixXd bins;   // d x n_bins centered bin counts, rows sum to 0
};

// Discrete-time Euler LIF: v += (dt/tau) * (-v + g*x + sigma*eps), spike and
// reset to 0 when v crosses v_th. Spike times are recorded at t + dt.
SpikeTrain simulate_lif(double x, const LifConfig& cfg, RngStream rng);

// alpha = pi * sqrt(c / (N + eps)), the rate angle for c spikes in N steps.
double rate_angle(int spike_count, int num_steps);

// Circular mean phase of spike times on [0, T], in [0, 2*pi); empty trains
// and degenerate (near-zero resultant) means map to 0.
double timing_phase(const SpikeTrain& train, double horizon);

// Centered histogram over n_bins equal bins of [0, T]; a spike exactly at T
// falls in the last bin.
Eigen::VectorXd temporal_bins(const SpikeTrain& train, double horizon,
                              int n_bins);

// Per-feature LIF + (rate, phase, bins) extraction; feature i draws its
// noise from rng.child(i).
SpateParams extract_params(const Eigen::VectorXd& x, const LifConfig& cfg,
                           const RngStream& rng);

}  // namespace spate
