#include "chanep/circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "chanep/channel.hpp"
#include "chanep/errors.hpp"
#include "chanep/linalg.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace chanep;
using test::max_abs_diff;

namespace {

Circuit random_circuit(Rng& rng, int gate_count) {
  const auto angle = [&]() {
    return 2.0 * std::numbers::pi * (rng.uniform() - 0.5);
  };
  Circuit c;
  for (int i = 0; i < gate_count; ++i) {
    const double pick = rng.uniform();
    const int qubit = rng.uniform() < 0.5 ? 0 : 1;
    if (pick < 0.4)
      c.gates.push_back(u3_gate(qubit, angle(), angle(), angle()));
    else if (pick < 0.7)
      c.gates.push_back(ry_gate(qubit, angle()));
    else
      c.gates.push_back(cnot_gate(qubit, 1 - qubit));
  }
  return c;
}

Circuit random_template(Rng& rng) {
  const auto angle = [&]() {
    return 2.0 * std::numbers::pi * (rng.uniform() - 0.5);
  };
  Circuit c;
  c.gates = {u3_gate(0, angle(), angle(), angle()),
             ry_gate(1, angle()),
             cnot_gate(0, 1),
             ry_gate(1, angle()),
             cnot_gate(1, 0),
             u3_gate(0, angle(), angle(), angle())};
  return c;
}

SuperOp interpolated_channel(double p) {
  AffineRep a;
  a.shift = Vec3::Zero();
  a.distortion = test::interpolated_distortion(p);
  return affine_to_superop(a);
}

void check_template_shape(const Circuit& c) {
  REQUIRE(c.gates.size() == 6);
  CHECK(c.gates[0].kind == GateKind::U3);
  CHECK(c.gates[0].target == 0);
  CHECK(c.gates[1].kind == GateKind::Ry);
  CHECK(c.gates[1].target == 1);
  CHECK(c.gates[2].kind == GateKind::CNOT);
  CHECK(c.gates[2].control == 0);
  CHECK(c.gates[2].target == 1);
  CHECK(c.gates[3].kind == GateKind::Ry);
  CHECK(c.gates[3].target == 1);
  CHECK(c.gates[4].kind == GateKind::CNOT);
  CHECK(c.gates[4].control == 1);
  CHECK(c.gates[4].target == 0);
  CHECK(c.gates[5].kind == GateKind::U3);
  CHECK(c.gates[5].target == 0);
}

}  // namespace

TEST_CASE("gate constructors validate their arguments") {
  CHECK_THROWS_AS(u3_gate(2, 0.1, 0.2, 0.3), ValidationError);
  CHECK_THROWS_AS(u3_gate(-1, 0.1, 0.2, 0.3), ValidationError);
  CHECK_THROWS_AS(ry_gate(3, 0.1), ValidationError);
  CHECK_THROWS_AS(cnot_gate(0, 0), ValidationError);
  CHECK_THROWS_AS(cnot_gate(1, 1), ValidationError);
  CHECK_THROWS_AS(cnot_gate(0, 2), ValidationError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(u3_gate(0, nan, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(ry_gate(0, std::numeric_limits<double>::infinity()),
                  ValidationError);
  CHECK_NOTHROW(u3_gate(0, 0.1, 0.2, 0.3));
  CHECK_NOTHROW(cnot_gate(1, 0));
}

TEST_CASE("small gate matrices match their closed forms") {
  // U3(pi, 0, pi) is the bit flip.
  CHECK(max_abs_diff(u3_matrix(std::numbers::pi, 0.0, std::numbers::pi),
                     pauli(1)) < 1e-15);
  // Ry equals U3 with zero phases.
  const Mat2 ry = u3_matrix(0.7, 0.0, 0.0);
  Mat2 expected;
  expected << std::cos(0.35), -std::sin(0.35), std::sin(0.35),
      std::cos(0.35);
  CHECK(max_abs_diff(ry, expected) < 1e-15);

  // CNOT with control on the signal: |s a> -> |s, a xor s>.
  Mat4 cx01 = Mat4::Zero();
  cx01(0, 0) = cx01(1, 1) = cx01(3, 2) = cx01(2, 3) = 1.0;
  CHECK(max_abs_diff(gate_matrix(cnot_gate(0, 1)), cx01) == 0.0);
  // Control on the ancilla: |s a> -> |s xor a, a>.
  Mat4 cx10 = Mat4::Zero();
  cx10(0, 0) = cx10(3, 1) = cx10(2, 2) = cx10(1, 3) = 1.0;
  CHECK(max_abs_diff(gate_matrix(cnot_gate(1, 0)), cx10) == 0.0);

  // Single-qubit gates act on their own tensor factor.
  const Mat2 u = u3_matrix(0.3, 1.1, -0.4);
  CHECK(max_abs_diff(gate_matrix(u3_gate(0, 0.3, 1.1, -0.4)),
                     kron22(u, pauli(0))) == 0.0);
  CHECK(max_abs_diff(gate_matrix(u3_gate(1, 0.3, 1.1, -0.4)),
                     kron22(pauli(0), u)) == 0.0);
}

TEST_CASE("circuit unitaries compose in program order and stay unitary") {
  // X then Z on the signal equals the product Z * X.
  Circuit c;
  c.gates = {u3_gate(0, std::numbers::pi, 0.0, std::numbers::pi)};
  Circuit zc = c;
  zc.gates.push_back(u3_gate(0, 0.0, 0.0, std::numbers::pi));
  const Mat4 x2 = kron22(pauli(1), pauli(0));
  // U3(0, 0, pi) = diag(1, -1) up to nothing: exactly Z.
  const Mat4 z2 = kron22(pauli(3), pauli(0));
  CHECK(max_abs_diff(circuit_unitary(zc), Mat4(z2 * x2)) < 1e-15);

  Rng rng(7011);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit random = random_circuit(rng, 1 + int(rng.uniform() * 12));
    const Mat4 u = circuit_unitary(random);
    CHECK((u.adjoint() * u - Mat4::Identity()).norm() <= 1e-12);
  }
}

TEST_CASE("the empty circuit is the identity channel") {
  const Circuit empty;
  CHECK(max_abs_diff(induced_channel(empty).m, Mat4::Identity()) == 0.0);
  Rng rng(33);
  const Mat2 rho = random_density(rng);
  CHECK(max_abs_diff(simulate(empty, rho), rho) < 1e-15);
}

TEST_CASE("a lone entangling gate dephases the signal") {
  Circuit c;
  c.gates = {cnot_gate(0, 1)};
  const AffineRep a = superop_to_affine(induced_channel(c));
  CHECK(a.shift.norm() == 0.0);
  Mat3 expected = Mat3::Zero();
  expected(2, 2) = 1.0;
  CHECK(max_abs_diff(a.distortion, expected) == 0.0);
  // Coherences die, populations survive.
  Mat2 rho;
  rho << 0.7, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.3;
  const Mat2 out = simulate(c, rho);
  CHECK(std::abs(out(0, 0).real() - 0.7) < 1e-15);
  CHECK(std::abs(out(0, 1)) < 1e-15);
}

TEST_CASE("a bit flip on the signal swaps the populations") {
  Circuit c;
  c.gates = {u3_gate(0, std::numbers::pi, 0.0, std::numbers::pi)};
  Mat2 ground = Mat2::Zero();
  ground(0, 0) = 1.0;
  const Mat2 out = simulate(c, ground);
  CHECK(std::abs(out(1, 1).real() - 1.0) < 1e-15);
  CHECK(std::abs(out(0, 0)) < 1e-15);
}

TEST_CASE("simulate validates its input state") {
  const Circuit empty;
  Mat2 not_density;
  not_density << 0.9, 0.4, 0.4, 0.3;  // trace 1.2
  CHECK_THROWS_AS(simulate(empty, not_density), ValidationError);
}

TEST_CASE("the induced channel reproduces simulation on random inputs") {
  Rng rng(90210);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_circuit(rng, 1 + int(rng.uniform() * 10));
    const SuperOp s = induced_channel(c);
    for (int k = 0; k < 20; ++k) {
      const Mat2 rho = random_density(rng);
      CHECK(max_abs_diff(apply_channel(s, rho), simulate(c, rho)) <= 1e-12);
    }
  }
}

TEST_CASE("induced channels are physical") {
  Rng rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    const Circuit c = random_circuit(rng, 1 + int(rng.uniform() * 12));
    const CPTPReport report = check_cptp(induced_channel(c));
    CHECK(report.is_cp);
    CHECK(report.is_tp);
    CHECK(report.min_choi_eigenvalue >= -1e-10);
  }
}

TEST_CASE("the identity channel decomposes exactly") {
  const Decomposition d = decompose(SuperOp{}, 1e-12);
  CHECK(d.residual <= 1e-12);
  check_template_shape(d.q1);
  check_template_shape(d.q2);
  const VerificationReport v = verify_decomposition(SuperOp{}, d);
  CHECK(v.distance <= 1e-12);
  CHECK(v.q1_cptp.is_cp);
  CHECK(v.q1_cptp.is_tp);
  CHECK(v.q2_cptp.is_cp);
  CHECK(v.q2_cptp.is_tp);
}

TEST_CASE("the planar fixture decomposes within tolerance") {
  const SuperOp target = builtin_channel("E2");
  const Decomposition d = decompose(target, 1e-8);
  CHECK(d.residual <= 1e-8);
  const VerificationReport v = verify_decomposition(target, d);
  CHECK(v.distance <= 1e-8);
  CHECK(std::abs(v.distance - d.residual) <= 1e-12);
  CHECK(v.q1_cptp.is_cp);
  CHECK(v.q1_cptp.is_tp);
  CHECK(v.q2_cptp.is_cp);
  CHECK(v.q2_cptp.is_tp);
}

TEST_CASE("the two-channel interpolation decomposes along the segment") {
  for (const double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CAPTURE(p);
    const SuperOp target = interpolated_channel(p);
    const Decomposition d = decompose(target, 1e-8);
    CHECK(d.residual <= 1e-8);
    check_template_shape(d.q1);
    check_template_shape(d.q2);
    const VerificationReport v = verify_decomposition(target, d);
    CHECK(v.distance <= 1e-8);
    CHECK(v.q1_cptp.is_cp);
    CHECK(v.q2_cptp.is_cp);
  }
}

TEST_CASE("a unitary rotation decomposes exactly") {
  const SuperOp target = builtin_channel("E3");
  const Decomposition d = decompose(target, 1e-8);
  CHECK(d.residual <= 1e-8);
  const VerificationReport v = verify_decomposition(target, d);
  CHECK(v.distance <= 1e-8);
}

TEST_CASE("averages of template circuits decompose back into the class") {
  Rng rng(261260);
  for (int trial = 0; trial < 20; ++trial) {
    CAPTURE(trial);
    const Circuit c1 = random_template(rng);
    const Circuit c2 = random_template(rng);
    SuperOp target;
    target.m = 0.5 * (induced_channel(c1).m + induced_channel(c2).m);
    const Decomposition d = decompose(target, 1e-6);
    CHECK(d.residual <= 1e-6);
    const VerificationReport v = verify_decomposition(target, d);
    CHECK(v.q1_cptp.is_cp);
    CHECK(v.q1_cptp.is_tp);
    CHECK(v.q2_cptp.is_cp);
    CHECK(v.q2_cptp.is_tp);
  }
}

TEST_CASE("decompose rejects unphysical input and bad tolerances") {
  SuperOp scaled;
  scaled.m = 1.7 * Mat4::Identity();  // not trace preserving
  CHECK_THROWS_AS(decompose(scaled), PreconditionError);
  CHECK_THROWS_AS(decompose(SuperOp{}, 0.0), ValidationError);
  CHECK_THROWS_AS(decompose(SuperOp{}, -1e-8), ValidationError);
}

TEST_CASE("decomposition is deterministic") {
  const SuperOp target = interpolated_channel(0.35);
  const Decomposition first = decompose(target, 1e-8);
  const Decomposition second = decompose(target, 1e-8);
  CHECK(circuit_to_text(first.q1) == circuit_to_text(second.q1));
  CHECK(circuit_to_text(first.q2) == circuit_to_text(second.q2));
  CHECK(first.residual == second.residual);
}

TEST_CASE("verification notices a broken decomposition") {
  const SuperOp target = interpolated_channel(0.25);
  Decomposition d = decompose(target, 1e-8);
  d.q2.gates[1].theta += 0.3;  // knock one block angle off
  const VerificationReport v = verify_decomposition(target, d);
  CHECK(v.distance > 1e-3);
  // The perturbed circuit is still a physical channel, just the wrong one.
  CHECK(v.q2_cptp.is_cp);
  CHECK(v.q2_cptp.is_tp);
}

TEST_CASE("circuit text round-trips exactly") {
  Rng rng(424242);
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = random_circuit(rng, 1 + int(rng.uniform() * 8));
    const Circuit back = circuit_from_text(circuit_to_text(c));
    REQUIRE(back.gates.size() == c.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
      CHECK(back.gates[i].kind == c.gates[i].kind);
      CHECK(back.gates[i].target == c.gates[i].target);
      CHECK(back.gates[i].control == c.gates[i].control);
      CHECK(back.gates[i].theta == c.gates[i].theta);
      CHECK(back.gates[i].phi == c.gates[i].phi);
      CHECK(back.gates[i].lambda == c.gates[i].lambda);
    }
  }
}

TEST_CASE("circuit text tolerates comments and rejects malformed lines") {
  const Circuit parsed = circuit_from_text(
      "# mixer block\n"
      "\n"
      "ry q1 0.5\n"
      "  cx q0 q1\n"
      "# trailing note\n");
  REQUIRE(parsed.gates.size() == 2);
  CHECK(parsed.gates[0].kind == GateKind::Ry);
  CHECK(parsed.gates[1].kind == GateKind::CNOT);

  CHECK_THROWS_AS(circuit_from_text("h q0\n"), ValidationError);
  CHECK_THROWS_AS(circuit_from_text("ry q2 0.5\n"), ValidationError);
  CHECK_THROWS_AS(circuit_from_text("ry q0\n"), ValidationError);
  CHECK_THROWS_AS(circuit_from_text("ry q0 0.5 0.6\n"), ValidationError);
  CHECK_THROWS_AS(circuit_from_text("u3 q0 0.1 0.2\n"), ValidationError);
  CHECK_THROWS_AS(circuit_from_text("cx q0 q0\n"), ValidationError);
  CHECK_THROWS_AS(circuit_from_text("ry q0 abc\n"), ValidationError);
  CHECK_THROWS_AS(circuit_from_text("ry q0 0.5x\n"), ValidationError);
}
