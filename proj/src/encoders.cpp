#include "spate/encoders.hpp"

#include "spate/errors.hpp"

namespace spate {

std::string encoder_name(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::Spate: return "spate";
    case EncoderKind::Angle: return "angle";
    case EncoderKind::Amplitude: return "amplitude";
  }
  return "?";
}

EncoderKind parse_encoder(const std::string& name) {
  if (name == "spate") return EncoderKind::Spate;
  if (name == "angle") return EncoderKind::Angle;
  if (name == "amplitude") return EncoderKind::Amplitude;
  throw_invalid("unknown encoder: " + name);
}

StateVector spate_prepare(const SpateParams& params, double beta_scale) {
  const int d = static_cast<int>(params.alpha.size());
  const int n_t = static_cast<int>(params.bins.cols());
  if (d < 1 || params.bins.rows() != d || params.phi.size() != d)
    throw_invalid("spate_prepare: inconsistent SpateParams shapes");
  if (d + n_t > kMaxQubits)
    throw_capacity("spate_prepare: d + n_t exceeds the qubit capacity");

  StateVector s = zero_state(d + n_t);
  for (int k = 0; k < n_t; ++k) apply(s, GateOp::h(d + k));
  for (int i = 0; i < d; ++i) {
    apply(s, GateOp::rx(i, params.alpha(i)));
    apply(s, GateOp::rz(i, params.phi(i)));
  }
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < n_t; ++k)
      apply(s, GateOp::crz(i, d + k, beta_scale * params.bins(i, k)));
  return s;
}

StateVector spate_state(const Eigen::VectorXd& x_unit, const EncoderConfig& cfg,
                        const RngStream& rng) {
  const SpateParams params = extract_params(x_unit, cfg.lif, rng);
  return spate_prepare(params, cfg.beta_scale);
}

ProbEmbedding spate_embed(const Eigen::VectorXd& x_unit,
                          const EncoderConfig& cfg, const RngStream& base_rng) {
  if (cfg.kind != EncoderKind::Spate)
    throw_invalid("spate_embed: encoder kind is not SPATE");
  if (cfg.seeds < 1) throw_invalid("spate_embed: seed count must be >= 1");

  // Noiseless seeds are identical; one evaluation suffices.
  const int effective_seeds = cfg.lif.sigma == 0.0 ? 1 : cfg.seeds;

  ProbEmbedding emb;
  for (int s = 0; s < effective_seeds; ++s) {
    const StateVector state =
        spate_state(x_unit, cfg, base_rng.child(static_cast<std::uint64_t>(s)));
    const std::vector<double> p = probabilities(state);
    if (s == 0) {
      emb.n = state.n;
      emb.p = p;
    } else {
      for (std::size_t z = 0; z < p.size(); ++z) emb.p[z] += p[z];
    }
  }
  if (effective_seeds > 1)
    for (double& v : emb.p) v /= effective_seeds;
  return emb;
}

StateVector angle_state(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  StateVector s = zero_state(n);  // throws on capacity violation
  for (int i = 0; i < n; ++i) apply(s, GateOp::rx(i, x(i)));
  return s;
}

ProbEmbedding angle_embed(const Eigen::VectorXd& x) {
  const StateVector s = angle_state(x);
  return ProbEmbedding{s.n, probabilities(s)};
}

StateVector amplitude_state(const Eigen::VectorXd& x, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<double> values(dim, 0.0);
  const std::size_t copy = std::min<std::size_t>(dim, x.size());
  for (std::size_t z = 0; z < copy; ++z) values[z] = x(static_cast<Eigen::Index>(z));
  return load_amplitudes(n_qubits, values);
}

ProbEmbedding amplitude_embed(const Eigen::VectorXd& x, int n_qubits) {
  const StateVector s = amplitude_state(x, n_qubits);
  return ProbEmbedding{s.n, probabilities(s)};
}

}  // namespace spate
