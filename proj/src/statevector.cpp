#include "spate/statevector.hpp"

#include <cmath>

#include "spate/errors.hpp"

namespace spate {

namespace {

using cd = std::complex<double>;

void check_qubit(const StateVector& s, int q, const char* what) {
  if (q < 0 || q >= s.n)
    throw_invalid(std::string(what) + ": qubit index out of range");
}

// Applies a 2x2 unitary [[m00,m01],[m10,m11]] to `target`. With qubit 0 as
// MSB, the target's bit position in the index is n-1-target.
void apply_1q(StateVector& s, int target, cd m00, cd m01, cd m10, cd m11) {
  const std::size_t stride = std::size_t{1} << (s.n - 1 - target);
  const std::size_t size = s.amps.size();
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cd a0 = s.amps[i];
      const cd a1 = s.amps[i + stride];
      s.amps[i] = m00 * a0 + m01 * a1;
      s.amps[i + stride] = m10 * a0 + m11 * a1;
    }
  }
}

// Applies a 2x2 unitary to `target` only on indices where `control` is 1.
void apply_controlled_1q(StateVector& s, int control, int target, cd m00,
                         cd m01, cd m10, cd m11) {
  const std::size_t t_stride = std::size_t{1} << (s.n - 1 - target);
  const std::size_t c_mask = std::size_t{1} << (s.n - 1 - control);
  const std::size_t size = s.amps.size();
  for (std::size_t base = 0; base < size; base += 2 * t_stride) {
    for (std::size_t i = base; i < base + t_stride; ++i) {
      if (!(i & c_mask)) continue;
      const cd a0 = s.amps[i];
      const cd a1 = s.amps[i + t_stride];
      s.amps[i] = m00 * a0 + m01 * a1;
      s.amps[i + t_stride] = m10 * a0 + m11 * a1;
    }
  }
}

}  // namespace

StateVector zero_state(int n) {
  if (n < 1 || n > kMaxQubits)
    throw_capacity("zero_state: qubit count must lie in 1.." +
                   std::to_string(kMaxQubits));
  StateVector s;
  s.n = n;
  s.amps.assign(std::size_t{1} << n, cd{0, 0});
  s.amps[0] = cd{1, 0};
  return s;
}

void apply(StateVector& s, const GateOp& g) {
  check_qubit(s, g.target, "apply");
  const double half = g.angles[0] / 2.0;
  switch (g.kind) {
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      apply_1q(s, g.target, {r, 0}, {r, 0}, {r, 0}, {-r, 0});
      break;
    }
    case GateKind::RX:
      apply_1q(s, g.target, {std::cos(half), 0}, {0, -std::sin(half)},
               {0, -std::sin(half)}, {std::cos(half), 0});
      break;
    case GateKind::RY:
      apply_1q(s, g.target, {std::cos(half), 0}, {-std::sin(half), 0},
               {std::sin(half), 0}, {std::cos(half), 0});
      break;
    case GateKind::RZ:
      apply_1q(s, g.target, std::polar(1.0, -half), {0, 0}, {0, 0},
               std::polar(1.0, half));
      break;
    case GateKind::ROT:
      // Euler decomposition RZ(c) * RY(b) * RZ(a), RZ(a) applied first.
      apply(s, GateOp::rz(g.target, g.angles[0]));
      apply(s, GateOp::ry(g.target, g.angles[1]));
      apply(s, GateOp::rz(g.target, g.angles[2]));
      break;
    case GateKind::CNOT:
      check_qubit(s, g.control, "apply");
      if (g.control == g.target) throw_invalid("apply: control equals target");
      apply_controlled_1q(s, g.control, g.target, {0, 0}, {1, 0}, {1, 0},
                          {0, 0});
      break;
    case GateKind::CRZ:
      check_qubit(s, g.control, "apply");
      if (g.control == g.target) throw_invalid("apply: control equals target");
      apply_controlled_1q(s, g.control, g.target, std::polar(1.0, -half),
                          {0, 0}, {0, 0}, std::polar(1.0, half));
      break;
  }
}

void apply_all(StateVector& s, const std::vector<GateOp>& gates) {
  for (const auto& g : gates) apply(s, g);
}

std::vector<double> probabilities(const StateVector& s) {
  std::vector<double> p(s.amps.size());
  for (std::size_t z = 0; z < s.amps.size(); ++z) p[z] = std::norm(s.amps[z]);
  return p;
}

std::vector<double> marginal_probabilities(const StateVector& s,
                                           const std::vector<int>& qubits) {
  const int m = static_cast<int>(qubits.size());
  for (int i = 0; i < m; ++i) {
    check_qubit(s, qubits[i], "marginal_probabilities");
    for (int j = i + 1; j < m; ++j)
      if (qubits[i] == qubits[j])
        throw_invalid("marginal_probabilities: duplicate qubit index");
  }
  std::vector<double> p(std::size_t{1} << m, 0.0);
  for (std::size_t z = 0; z < s.amps.size(); ++z) {
    std::size_t out = 0;
    for (int i = 0; i < m; ++i) {
      const std::size_t bit = (z >> (s.n - 1 - qubits[i])) & 1u;
      out = (out << 1) | bit;
    }
    p[out] += std::norm(s.amps[z]);
  }
  return p;
}

StateVector load_amplitudes(int n, const std::vector<double>& values) {
  if (n < 1 || n > kMaxQubits) throw_capacity("load_amplitudes: bad qubit count");
  if (values.size() != (std::size_t{1} << n))
    throw_invalid("load_amplitudes: vector length must be 2^n");
  double norm_sq = 0;
  for (double v : values) norm_sq += v * v;
  if (norm_sq < kEps * kEps)
    throw_degenerate("load_amplitudes: zero-norm input vector");
  const double inv = 1.0 / std::sqrt(norm_sq);
  StateVector s;
  s.n = n;
  s.amps.resize(values.size());
  for (std::size_t z = 0; z < values.size(); ++z)
    s.amps[z] = cd{values[z] * inv, 0};
  return s;
}

}  // namespace spate
