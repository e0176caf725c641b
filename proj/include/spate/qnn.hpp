#pragma once

#include <cstdint>
#include <vector>

#include "spate/rng.hpp"
#include "spate/statevector.hpp"

namespace spate {

// Strongly-entangling ansatz parameters: layers x qubits x 3 Euler angles.
struct AnsatzParams {
  int layers = 0;
  int n_qubits = 0;
  std::vector<double> values;  // flat, index (l, q, axis) row-major

  static AnsatzParams zeros(int layers, int n_qubits);
  static AnsatzParams random_init(int layers, int n_qubits, RngStream rng);

  double& at(int l, int q, int axis) {
    return values[(static_cast<std::size_t>(l) * n_qubits + q) * 3 + axis];
  }
  double at(int l, int q, int axis) const {
    return values[(static_cast<std::size_t>(l) * n_qubits + q) * 3 + axis];
  }
  std::size_t size() const { return values.size(); }
};

// Per layer l: ROT on every qubit, then a CNOT ring with stride
// r_l = (l mod (n-1)) + 1 (no entanglers for n = 1).
std::vector<GateOp> ansatz_gates(const AnsatzParams& params);
void ansatz_apply(StateVector& state, const AnsatzParams& params);

struct TrainConfig {
  int steps = 120;
  int batch = 32;
  double lr = 0.15;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;
};

struct TrainedModel {
  AnsatzParams params;
  std::vector<int> readout;  // first m = ceil(log2 C) qubits
  int num_classes = 0;
  std::vector<double> loss_trace;
};

std::vector<int> readout_qubits(int num_classes, int n_qubits);

// Readout marginal -> truncate to the first C entries -> renormalize.
std::vector<double> class_probabilities(const StateVector& encoded,
                                        const AnsatzParams& params,
                                        const std::vector<int>& readout,
                                        int num_classes);

// Mean cross-entropy (natural log, eps inside the log) over the batch.
double batch_loss(const std::vector<StateVector>& encoded,
                  const std::vector<int>& labels,
                  const std::vector<int>& batch_idx,
                  const AnsatzParams& params, const std::vector<int>& readout,
                  int num_classes);

// Exact gradient of batch_loss w.r.t. the ansatz angles via the
// parameter-shift rule (readout marginals at theta +- pi/2) chained with the
// analytic derivative of the truncation/renormalization and cross-entropy.
AnsatzParams parameter_shift_grad(const std::vector<StateVector>& encoded,
                                  const std::vector<int>& labels,
                                  const std::vector<int>& batch_idx,
                                  const AnsatzParams& params,
                                  const std::vector<int>& readout,
                                  int num_classes);
AnsatzParams parameter_shift_grad_serial(
    const std::vector<StateVector>& encoded, const std::vector<int>& labels,
    const std::vector<int>& batch_idx, const AnsatzParams& params,
    const std::vector<int>& readout, int num_classes);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
};

void adam_step(AnsatzParams& params, const AnsatzParams& grad, AdamState& state,
               int t, const TrainConfig& cfg);

// Minibatch training on frozen encoder states: seeded uniform [0, 2*pi)
// initialization, seeded shuffling with a reshuffle each epoch, Adam updates.
TrainedModel train(const std::vector<StateVector>& encoded,
                   const std::vector<int>& labels, int num_classes,
                   const TrainConfig& cfg);

struct PerfValues {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double auc = 0;
};

PerfValues evaluate(const std::vector<StateVector>& encoded,
                    const std::vector<int>& labels, const TrainedModel& model);

}  // namespace spate
