#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spate/rng.hpp"
#include "spate/spike.hpp"
#include "spate/statevector.hpp"

namespace spate {

enum class EncoderKind { Spate, Angle, Amplitude };

std::string encoder_name(EncoderKind kind);
EncoderKind parse_encoder(const std::string& name);

struct EncoderConfig {
  EncoderKind kind = EncoderKind::Spate;
  int n_qubits = 0;          // angle/amplitude register size; SPATE: d + n_bins
  double beta_scale = 0.5;   // lambda, SPATE only
  int seeds = 3;             // seed-averaging count S, SPATE only
  LifConfig lif;             // SPATE only
};

struct ProbEmbedding {
  int n = 0;              // qubit count
  std::vector<double> p;  // length 2^n, on the simplex
};

// SPATE state preparation. Feature qubits occupy indices 0..d-1 and time
// qubits d..d+n_t-1. Gate order: H on all time qubits, then RX(alpha_i) and
// RZ(phi_i) per feature qubit, then CRZ(lambda*beta_{i,k}) with control q_i
// and target t_k in row-major (i,k) order.
StateVector spate_prepare(const SpateParams& params, double beta_scale);

// Single-seed SPATE prefix circuit state (used as the QNN encoder prefix).
StateVector spate_state(const Eigen::VectorXd& x_unit, const EncoderConfig& cfg,
                        const RngStream& rng);

// Seed-averaged SPATE probability embedding: mean over S per-seed
// measurement distributions (computed once when sigma = 0).
ProbEmbedding spate_embed(const Eigen::VectorXd& x_unit,
                          const EncoderConfig& cfg, const RngStream& base_rng);

// RX(x_i) on qubit i per feature.
StateVector angle_state(const Eigen::VectorXd& x);
ProbEmbedding angle_embed(const Eigen::VectorXd& x);

// Pad with zeros / truncate to length 2^n, l2-normalize, load as amplitudes.
StateVector amplitude_state(const Eigen::VectorXd& x, int n_qubits);
ProbEmbedding amplitude_embed(const Eigen::VectorXd& x, int n_qubits);

}  // namespace spate
