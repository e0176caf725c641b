#pragma once

#include <complex>
#include <vector>

namespace spate {

inline constexpr int kMaxQubits = 12;

// Dense statevector on up to kMaxQubits qubits. Basis index convention:
// qubit 0 is the MOST significant bit of the index, i.e. for n=2 the basis
// order is |q0 q1> = |00>, |01>, |10>, |11>. Every module addresses qubits
// through this convention.
struct StateVector {
  int n = 0;
  std::vector<std::complex<double>> amps;
};

enum class GateKind { H, RX, RY, RZ, ROT, CNOT, CRZ };

struct GateOp {
  GateKind kind;
  int target = 0;
  int control = -1;            // CNOT / CRZ only
  double angles[3] = {0, 0, 0};  // ROT uses all three: RZ(a2)*RY(a1)*RZ(a0)

  static GateOp h(int q) { return {GateKind::H, q}; }
  static GateOp rx(int q, double theta) { return {GateKind::RX, q, -1, {theta}}; }
  static GateOp ry(int q, double theta) { return {GateKind::RY, q, -1, {theta}}; }
  static GateOp rz(int q, double theta) { return {GateKind::RZ, q, -1, {theta}}; }
  static GateOp rot(int q, double a, double b, double c) {
    return {GateKind::ROT, q, -1, {a, b, c}};
  }
  static GateOp cnot(int control, int target) {
    return {GateKind::CNOT, target, control};
  }
  static GateOp crz(int control, int target, double theta) {
    return {GateKind::CRZ, target, control, {theta}};
  }
};

StateVector zero_state(int n);

// In-place application of a single gate.
void apply(StateVector& state, const GateOp& gate);
void apply_all(StateVector& state, const std::vector<GateOp>& gates);

// Exact computational-basis probabilities |amp_z|^2, length 2^n.
std::vector<double> probabilities(const StateVector& state);

// Marginal over the listed qubits (summing out the rest). The order of the
// subset defines the bit order of the result, first listed qubit most
// significant.
std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& qubits);

// l2-normalizes `values` (length must be 2^n) into a state's amplitudes.
StateVector load_amplitudes(int n, const std::vector<double>& values);

}  // namespace spate
