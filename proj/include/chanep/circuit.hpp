#pragma once

#include <string>
#include <vector>

#include "chanep/channel.hpp"
#include "chanep/linalg.hpp"

namespace chanep {

// Two-qubit circuits over qubit 0 (signal) and qubit 1 (ancilla), in tensor
// order signal (x) ancilla: basis index 2*s + a.

enum class GateKind { U3, Ry, CNOT };

struct Gate {
  GateKind kind = GateKind::U3;
  int target = 0;    // acted-on qubit; CNOT: target of the flip
  int control = -1;  // CNOT only
  double theta = 0.0;
  double phi = 0.0;    // U3 only
  double lambda = 0.0;  // U3 only
};

// Validating constructors; qubit indices must be 0 or 1, CNOT control must
// differ from target, and angles must be finite.
Gate u3_gate(int qubit, double theta, double phi, double lambda);
Gate ry_gate(int qubit, double theta);
Gate cnot_gate(int control, int target);

struct Circuit {
  std::vector<Gate> gates;
};

// U3(theta, phi, lambda) =
//   [[cos(t/2), -e^{i lambda} sin(t/2)],
//    [e^{i phi} sin(t/2), e^{i(phi+lambda)} cos(t/2)]];  Ry(t) = U3(t, 0, 0).
Mat2 u3_matrix(double theta, double phi, double lambda);

// The gate's 4x4 action on signal (x) ancilla.
Mat4 gate_matrix(const Gate& gate);

// Product of the gate matrices, later gates applied last.
Mat4 circuit_unitary(const Circuit& circuit);

// Output of the circuit on rho (x) |0><0|, traced over the ancilla. The
// input must be a valid density matrix.
Mat2 simulate(const Circuit& circuit, const Mat2& rho_signal);

// The superoperator matching simulate on all inputs, built from the
// circuit's linear action on the four matrix units.
SuperOp induced_channel(const Circuit& circuit);

// A channel split into two one-ancilla circuits averaging to the target.
struct Decomposition {
  Circuit q1;
  Circuit q2;
  double residual = 0.0;  // Frobenius distance of the average to the target
};

// Compiles a CPTP channel into two circuits of the fixed template
//   U3(signal) | Ry(ancilla) CNOT(0->1) Ry(ancilla) CNOT(1->0) | U3(signal)
// whose induced channels average to the target. Throws PreconditionError for
// non-CPTP input and ConvergenceError (with the best residual) if neither
// the structured solve nor the numerical fallback reaches tol.
Decomposition decompose(const SuperOp& s, double tol = 1e-8);

struct VerificationReport {
  double distance = 0.0;  // Frobenius distance between target and average
  CPTPReport q1_cptp;
  CPTPReport q2_cptp;
};

// Recomputes the decomposition residual and per-circuit CPTP checks.
VerificationReport verify_decomposition(const SuperOp& s,
                                        const Decomposition& d);

// Line-oriented circuit text: `u3 q<i> <theta> <phi> <lambda>`,
// `ry q<i> <theta>`, `cx q<c> q<t>`; angles in radians at full double
// precision. Blank lines and lines starting with '#' are ignored on read.
std::string circuit_to_text(const Circuit& circuit);
Circuit circuit_from_text(const std::string& text);

}  // namespace chanep
