#include "chanep/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "chanep/errors.hpp"

namespace chanep {

namespace {

void check_qubit(int qubit) {
  if (qubit != 0 && qubit != 1)
    throw ValidationError("qubit index must be 0 (signal) or 1 (ancilla)");
}

void check_angle(double value, const char* name) {
  if (!std::isfinite(value))
    throw ValidationError(std::string("gate angle ") + name +
                          " must be finite");
}

}  // namespace

Gate u3_gate(int qubit, double theta, double phi, double lambda) {
  check_qubit(qubit);
  check_angle(theta, "theta");
  check_angle(phi, "phi");
  check_angle(lambda, "lambda");
  Gate g;
  g.kind = GateKind::U3;
  g.target = qubit;
  g.theta = theta;
  g.phi = phi;
  g.lambda = lambda;
  return g;
}

Gate ry_gate(int qubit, double theta) {
  check_qubit(qubit);
  check_angle(theta, "theta");
  Gate g;
  g.kind = GateKind::Ry;
  g.target = qubit;
  g.theta = theta;
  return g;
}

Gate cnot_gate(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target)
    throw ValidationError("CNOT control and target must differ");
  Gate g;
  g.kind = GateKind::CNOT;
  g.control = control;
  g.target = target;
  return g;
}

Mat2 u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex i(0.0, 1.0);
  Mat2 u;
  u << c, -std::exp(i * lambda) * s,
      std::exp(i * phi) * s, std::exp(i * (phi + lambda)) * c;
  return u;
}

Mat4 gate_matrix(const Gate& gate) {
  switch (gate.kind) {
    case GateKind::U3:
    case GateKind::Ry: {
      check_qubit(gate.target);
      const Mat2 u = gate.kind == GateKind::U3
                         ? u3_matrix(gate.theta, gate.phi, gate.lambda)
                         : u3_matrix(gate.theta, 0.0, 0.0);
      return gate.target == 0 ? kron22(u, pauli(0)) : kron22(pauli(0), u);
    }
    case GateKind::CNOT: {
      check_qubit(gate.control);
      check_qubit(gate.target);
      if (gate.control == gate.target)
        throw ValidationError("CNOT control and target must differ");
      Mat4 m = Mat4::Zero();
      for (int s = 0; s < 2; ++s) {
        for (int a = 0; a < 2; ++a) {
          int out_s = s, out_a = a;
          const int control_bit = gate.control == 0 ? s : a;
          if (control_bit == 1) {
            if (gate.target == 0)
              out_s ^= 1;
            else
              out_a ^= 1;
          }
          m(2 * out_s + out_a, 2 * s + a) = 1.0;
        }
      }
      return m;
    }
  }
  throw ValidationError("unknown gate kind");
}

Mat4 circuit_unitary(const Circuit& circuit) {
  Mat4 u = Mat4::Identity();
  for (const Gate& gate : circuit.gates) u = gate_matrix(gate) * u;
  return u;
}

namespace {

// Linear action of the circuit on an arbitrary 2x2 input: ancilla in |0>,
// the unitary applied, the ancilla traced out.
Mat2 circuit_action(const Mat4& u, const Mat2& input) {
  Mat4 joint = Mat4::Zero();
  // input (x) |0><0|: ancilla indices must both be 0.
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) joint(2 * s, 2 * t) = input(s, t);
  const Mat4 evolved = u * joint * u.adjoint();
  Mat2 out = Mat2::Zero();
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      out(s, t) = evolved(2 * s, 2 * t) + evolved(2 * s + 1, 2 * t + 1);
  return out;
}

}  // namespace

Mat2 simulate(const Circuit& circuit, const Mat2& rho_signal) {
  validate_density(rho_signal);
  return circuit_action(circuit_unitary(circuit), rho_signal);
}

SuperOp induced_channel(const Circuit& circuit) {
  const Mat4 u = circuit_unitary(circuit);
  SuperOp s;
  for (int col = 0; col < 4; ++col) {
    Mat2 unit = Mat2::Zero();
    unit(col % 2, col / 2) = 1.0;  // vec index = row + 2 * column
    const Mat2 image = circuit_action(u, unit);
    s.m.col(col) = vec_density(image);
  }
  return s;
}

// --- decomposition --------------------------------------------------------

namespace {

// One template circuit: U3 on the signal, the ancilla block, U3 on the
// signal. The block with angles (t1, t2) realizes the diagonal distortion
// diag(sin t1, -sin t2, -sin t1 sin t2) with shift (0, 0, cos t1 cos t2).
Circuit template_circuit(double pre_theta, double pre_phi, double pre_lambda,
                         double t1, double t2, double post_theta,
                         double post_phi, double post_lambda) {
  Circuit c;
  c.gates = {u3_gate(0, pre_theta, pre_phi, pre_lambda),
             ry_gate(1, t1),
             cnot_gate(0, 1),
             ry_gate(1, t2),
             cnot_gate(1, 0),
             u3_gate(0, post_theta, post_phi, post_lambda)};
  return c;
}

struct U3Angles {
  double theta = 0.0, phi = 0.0, lambda = 0.0;
};

// Euler angles of a single-qubit unitary, up to global phase.
U3Angles u3_angles_of(const Mat2& v) {
  U3Angles out;
  const double m00 = std::abs(v(0, 0));
  const double m10 = std::abs(v(1, 0));
  out.theta = 2.0 * std::atan2(m10, m00);
  const Complex phase =
      m00 > 1e-12 ? v(0, 0) / m00 : v(1, 0) / std::max(m10, 1e-300);
  const Mat2 stripped = v / phase;
  if (m10 > 1e-12) {
    out.phi = std::arg(stripped(1, 0));
    out.lambda = std::arg(-stripped(0, 1));
  } else {
    // theta ~ 0: only phi + lambda matters; fold it into lambda.
    out.lambda = std::arg(stripped(1, 1));
  }
  return out;
}

// SU(2) element whose conjugation rotates the Bloch ball by r.
U3Angles u3_angles_of_rotation(const Mat3& r) {
  const Eigen::Quaterniond q(r);
  const Complex i(0.0, 1.0);
  Mat2 u;
  u << q.w() - i * q.z(), -i * q.x() - q.y(),
      -i * q.x() + q.y(), q.w() + i * q.z();
  return u3_angles_of(u);
}

struct TemplateParams {
  std::array<double, 8> p{};  // pre (3), block (2), post (3)
};

Circuit circuit_of(const TemplateParams& t) {
  return template_circuit(t.p[0], t.p[1], t.p[2], t.p[3], t.p[4], t.p[5],
                          t.p[6], t.p[7]);
}

double pair_residual(const SuperOp& target, const Circuit& q1,
                     const Circuit& q2) {
  const Mat4 average =
      0.5 * (induced_channel(q1).m + induced_channel(q2).m);
  return (average - target.m).norm();
}

struct SolveState {
  double best = std::numeric_limits<double>::infinity();
  Circuit q1, q2;
  void offer(const SuperOp& target, const Circuit& c1, const Circuit& c2) {
    const double r = pair_residual(target, c1, c2);
    if (r < best) {
      best = r;
      q1 = c1;
      q2 = c2;
    }
  }
};

// Builds the circuit pair for block angles (u1, v1), (u2, v2) in the rotated
// frame: distortion = post_rotation * block * pre_rotation.
void offer_frame_solution(SolveState& state, const SuperOp& target,
                          const Mat3& pre_rotation, const Mat3& post_rotation,
                          double u1, double v1, double u2, double v2) {
  const U3Angles pre = u3_angles_of_rotation(pre_rotation);
  const U3Angles post = u3_angles_of_rotation(post_rotation);
  const Circuit c1 = template_circuit(pre.theta, pre.phi, pre.lambda, u1, v1,
                                      post.theta, post.phi, post.lambda);
  const Circuit c2 = template_circuit(pre.theta, pre.phi, pre.lambda, u2, v2,
                                      post.theta, post.phi, post.lambda);
  state.offer(target, c1, c2);
}

// Solves, within one diagonal frame, the average conditions
//   sin u1 + sin u2 = 2 d1
//   sin v1 + sin v2 = -2 d2
//   sin u1 sin v1 + sin u2 sin v2 = -2 d3
//   cos u1 cos v1 + cos u2 cos v2 = 2 sz
// by the substitution x = sin u = a +- t, y = sin v = b -+ w with
// t w = c - a b fixed by the third condition, leaving one equation in t.
void solve_frame(SolveState& state, const SuperOp& target,
                 const Mat3& pre_rotation, const Mat3& post_rotation,
                 const Vec3& d, double sz) {
  const double a = d(0);
  const double b = -d(1);
  const double c = -d(2);
  const double rhs = 2.0 * sz;
  if (std::abs(a) > 1.0 + 1e-12 || std::abs(b) > 1.0 + 1e-12) return;

  const auto cos_of = [](double x) {
    return std::sqrt(std::max(0.0, 1.0 - x * x));
  };
  const auto angles_of = [&](double x, double y, double sign_pair, double& u,
                             double& v) {
    // cos u is taken non-negative; the pair sign lands on cos v.
    u = std::atan2(x, cos_of(x));
    v = std::atan2(y, sign_pair * cos_of(y));
  };

  const auto clamp_unit = [](double z) {
    return std::clamp(z, -1.0, 1.0);
  };
  const auto try_candidate = [&](double t, double w, double s1, double s2) {
    const double x1 = a + t, x2 = a - t;
    const double y1 = b + w, y2 = b - w;
    if (std::abs(x1) > 1.0 + 1e-9 || std::abs(x2) > 1.0 + 1e-9 ||
        std::abs(y1) > 1.0 + 1e-9 || std::abs(y2) > 1.0 + 1e-9)
      return;
    double u1, v1, u2, v2;
    angles_of(clamp_unit(x1), clamp_unit(y1), s1, u1, v1);
    angles_of(clamp_unit(x2), clamp_unit(y2), s2, u2, v2);
    offer_frame_solution(state, target, pre_rotation, post_rotation, u1, v1,
                         u2, v2);
  };

  for (const double s1 : {1.0, -1.0}) {
    for (const double s2 : {1.0, -1.0}) {
      const auto mismatch = [&](double t, double w) {
        return s1 * cos_of(a + t) * cos_of(b + w) +
               s2 * cos_of(a - t) * cos_of(b - w) - rhs;
      };

      // Branch t != 0, w = (c - a b) / t.
      const double t_cap = 1.0 - std::abs(a);
      const double w_cap = 1.0 - std::abs(b);
      const double excess = c - a * b;

      // Degenerate cap |b| = 1: w is pinned to zero and t drops out of the
      // last condition, so a couple of representative t values suffice.
      if (w_cap < 1e-12 && std::abs(excess) < 1e-9) {
        try_candidate(0.0, 0.0, s1, s2);
        try_candidate(t_cap, 0.0, s1, s2);
        try_candidate(-t_cap, 0.0, s1, s2);
      }

      for (const double side : {1.0, -1.0}) {
        double t_lo = std::abs(excess) < 1e-15
                          ? 1e-9
                          : std::abs(excess) / std::max(w_cap, 1e-15);
        if (t_lo > t_cap) continue;
        t_lo = std::min(t_lo, t_cap);
        constexpr int kSamples = 400;
        double prev_t = side * t_lo;
        double prev_h = mismatch(prev_t, excess / prev_t);
        if (std::abs(prev_h) < 1e-11)
          try_candidate(prev_t, excess / prev_t, s1, s2);
        for (int k = 1; k <= kSamples; ++k) {
          const double t =
              side * (t_lo + (t_cap - t_lo) * k / kSamples);
          const double h = mismatch(t, excess / t);
          if (std::abs(h) < 1e-11) try_candidate(t, excess / t, s1, s2);
          if (prev_h * h < 0.0) {
            double lo = prev_t, hi = t, f_lo = prev_h;
            for (int it = 0; it < 90; ++it) {
              const double mid = 0.5 * (lo + hi);
              const double f_mid = mismatch(mid, excess / mid);
              if (f_lo * f_mid <= 0.0)
                hi = mid;
              else {
                lo = mid;
                f_lo = f_mid;
              }
            }
            const double root = 0.5 * (lo + hi);
            try_candidate(root, excess / root, s1, s2);
          }
          prev_t = t;
          prev_h = h;
        }
      }

      // Branch t = 0, available when the third condition is free.
      if (std::abs(excess) < 1e-12 && w_cap > 0.0) {
        constexpr int kSamples = 400;
        double prev_w = -w_cap;
        double prev_h = mismatch(0.0, prev_w);
        if (std::abs(prev_h) < 1e-11) try_candidate(0.0, prev_w, s1, s2);
        for (int k = 1; k <= kSamples; ++k) {
          const double w = -w_cap + 2.0 * w_cap * k / kSamples;
          const double h = mismatch(0.0, w);
          if (std::abs(h) < 1e-11) try_candidate(0.0, w, s1, s2);
          if (prev_h * h < 0.0) {
            double lo = prev_w, hi = w, f_lo = prev_h;
            for (int it = 0; it < 90; ++it) {
              const double mid = 0.5 * (lo + hi);
              const double f_mid = mismatch(0.0, mid);
              if (f_lo * f_mid <= 0.0)
                hi = mid;
              else {
                lo = mid;
                f_lo = f_mid;
              }
            }
            try_candidate(0.0, 0.5 * (lo + hi), s1, s2);
          }
          prev_w = w;
          prev_h = h;
        }
      }
    }
  }
}

// Structured solve: bring the distortion to a diagonal frame by a signed
// SVD, then solve the four averaged conditions per frame. All axis
// permutations and det-consistent sign choices are tried; candidates are
// ranked by the induced-channel residual.
void structured_solve(SolveState& state, const SuperOp& target,
                      const AffineRep& affine) {
  const Eigen::JacobiSVD<Mat3> svd(
      affine.distortion, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  Mat3 v = svd.matrixV();
  Vec3 d = svd.singularValues();
  if (u.determinant() < 0.0) {
    u.col(2) *= -1.0;
    d(2) *= -1.0;
  }
  if (v.determinant() < 0.0) {
    v.col(2) *= -1.0;
    d(2) *= -1.0;
  }

  const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  const std::array<std::array<double, 3>, 4> even_signs{
      {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  const std::array<std::array<double, 3>, 4> odd_signs{
      {{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}};

  for (const auto& perm : perms) {
    // Parity of the permutation decides which sign sets keep det = +1.
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (perm[i] > perm[j]) ++inversions;
    const auto& signs = (inversions % 2 == 0) ? even_signs : odd_signs;

    for (const auto& sa : signs) {
      Mat3 a_frame;
      for (int col = 0; col < 3; ++col)
        a_frame.col(col) = sa[col] * u.col(perm[col]);
      const Vec3 shift_frame = a_frame.transpose() * affine.shift;
      // The template's shift is along the block z-axis only.
      if (std::hypot(shift_frame(0), shift_frame(1)) > 1e-9) continue;
      for (const auto& sb : signs) {
        Mat3 b_frame;
        Vec3 diag;
        for (int col = 0; col < 3; ++col) {
          b_frame.col(col) = sb[col] * v.col(perm[col]);
          diag(col) = sa[col] * sb[col] * d(perm[col]);
        }
        solve_frame(state, target, b_frame.transpose(), a_frame, diag,
                    shift_frame(2));
        if (state.best < 1e-12) return;
      }
    }
  }
}

// Levenberg-Marquardt over the 16 raw template angles (two independent
// circuits), with numeric Jacobian. Used to polish the structured result
// and to cover averages whose two circuits need different rotations.
struct LMProblem {
  const SuperOp& target;

  Eigen::VectorXd residual(const Eigen::VectorXd& p) const {
    TemplateParams t1, t2;
    for (int i = 0; i < 8; ++i) {
      t1.p[static_cast<std::size_t>(i)] = p(i);
      t2.p[static_cast<std::size_t>(i)] = p(8 + i);
    }
    const Mat4 average = 0.5 * (induced_channel(circuit_of(t1)).m +
                                induced_channel(circuit_of(t2)).m);
    const Mat4 diff = average - target.m;
    Eigen::VectorXd r(32);
    for (int k = 0; k < 16; ++k) {
      r(2 * k) = diff(k % 4, k / 4).real();
      r(2 * k + 1) = diff(k % 4, k / 4).imag();
    }
    return r;
  }
};

Eigen::VectorXd lm_minimize(const LMProblem& problem, Eigen::VectorXd p,
                            int max_iterations, double* final_norm) {
  Eigen::VectorXd r = problem.residual(p);
  double norm2 = r.squaredNorm();
  double mu = 1e-3;
  const int n = static_cast<int>(p.size());
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::MatrixXd jac(r.size(), n);
    for (int j = 0; j < n; ++j) {
      const double h = 1e-7;
      Eigen::VectorXd shifted = p;
      shifted(j) += h;
      jac.col(j) = (problem.residual(shifted) - r) / h;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool stepped = false;
    for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
      const Eigen::VectorXd candidate = p + delta;
      const Eigen::VectorXd r_new = problem.residual(candidate);
      if (r_new.squaredNorm() < norm2) {
        p = candidate;
        r = r_new;
        norm2 = r_new.squaredNorm();
        mu = std::max(mu / 3.0, 1e-12);
        stepped = true;
        if (delta.norm() < 1e-13) it = max_iterations;  // converged
      } else {
        mu *= 4.0;
      }
    }
    if (!stepped) break;
    if (norm2 < 1e-28) break;
  }
  *final_norm = std::sqrt(norm2);
  return p;
}

void lm_solve(SolveState& state, const SuperOp& target, double tol) {
  const LMProblem problem{target};
  constexpr int kRestarts = 8;
  Rng rng(424243);
  for (int restart = 0; restart < kRestarts; ++restart) {
    Eigen::VectorXd start(16);
    if (restart == 0 && std::isfinite(state.best)) {
      // Polish the best structured solution.
      int k = 0;
      for (const Circuit* c : {&state.q1, &state.q2}) {
        start(k++) = c->gates[0].theta;
        start(k++) = c->gates[0].phi;
        start(k++) = c->gates[0].lambda;
        start(k++) = c->gates[1].theta;
        start(k++) = c->gates[3].theta;
        start(k++) = c->gates[5].theta;
        start(k++) = c->gates[5].phi;
        start(k++) = c->gates[5].lambda;
      }
    } else {
      for (int i = 0; i < 16; ++i)
        start(i) = 2.0 * std::numbers::pi * (rng.uniform() - 0.5);
    }
    double norm = 0.0;
    const Eigen::VectorXd solution =
        lm_minimize(problem, start, 2000, &norm);
    TemplateParams t1, t2;
    for (int i = 0; i < 8; ++i) {
      t1.p[static_cast<std::size_t>(i)] = solution(i);
      t2.p[static_cast<std::size_t>(i)] = solution(8 + i);
    }
    state.offer(target, circuit_of(t1), circuit_of(t2));
    if (state.best <= 0.01 * tol) break;
  }
}

}  // namespace

Decomposition decompose(const SuperOp& s, double tol) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  const CPTPReport cptp = check_cptp(s);
  if (!cptp.is_cp || !cptp.is_tp)
    throw PreconditionError("decompose requires a CPTP channel");
  const AffineRep affine = superop_to_affine(s);

  SolveState state;
  structured_solve(state, s, affine);
  if (state.best > 0.01 * tol) lm_solve(state, s, tol);

  if (!(state.best <= tol)) {
    char message[128];
    std::snprintf(message, sizeof message,
                  "decomposition residual %.6g exceeds tolerance %.6g",
                  state.best, tol);
    throw ConvergenceError(message);
  }
  Decomposition d;
  d.q1 = state.q1;
  d.q2 = state.q2;
  d.residual = state.best;
  return d;
}

VerificationReport verify_decomposition(const SuperOp& s,
                                        const Decomposition& d) {
  const SuperOp c1 = induced_channel(d.q1);
  const SuperOp c2 = induced_channel(d.q2);
  VerificationReport report;
  report.distance = (0.5 * (c1.m + c2.m) - s.m).norm();
  report.q1_cptp = check_cptp(c1);
  report.q2_cptp = check_cptp(c2);
  return report;
}

// --- circuit text ----------------------------------------------------------

std::string circuit_to_text(const Circuit& circuit) {
  std::string out;
  char line[160];
  for (const Gate& gate : circuit.gates) {
    switch (gate.kind) {
      case GateKind::U3:
        std::snprintf(line, sizeof(line), "u3 q%d %.17g %.17g %.17g\n",
                      gate.target, gate.theta, gate.phi, gate.lambda);
        break;
      case GateKind::Ry:
        std::snprintf(line, sizeof(line), "ry q%d %.17g\n", gate.target,
                      gate.theta);
        break;
      case GateKind::CNOT:
        std::snprintf(line, sizeof(line), "cx q%d q%d\n", gate.control,
                      gate.target);
        break;
    }
    out += line;
  }
  return out;
}

namespace {

int parse_qubit(const std::string& token, int line_number) {
  if (token.size() != 2 || token[0] != 'q' || (token[1] != '0' && token[1] != '1'))
    throw ValidationError("line " + std::to_string(line_number) +
                          ": expected qubit token q0 or q1, got '" + token +
                          "'");
  return token[1] - '0';
}

double parse_angle(const std::string& token, int line_number) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || !std::isfinite(value))
    throw ValidationError("line " + std::to_string(line_number) +
                          ": bad angle '" + token + "'");
  return value;
}

}  // namespace

Circuit circuit_from_text(const std::string& text) {
  Circuit circuit;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string word; words >> word;) tokens.push_back(word);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    const std::string& op = tokens[0];
    if (op == "u3") {
      if (tokens.size() != 5)
        throw ValidationError("line " + std::to_string(line_number) +
                              ": u3 takes a qubit and three angles");
      circuit.gates.push_back(u3_gate(parse_qubit(tokens[1], line_number),
                                      parse_angle(tokens[2], line_number),
                                      parse_angle(tokens[3], line_number),
                                      parse_angle(tokens[4], line_number)));
    } else if (op == "ry") {
      if (tokens.size() != 3)
        throw ValidationError("line " + std::to_string(line_number) +
                              ": ry takes a qubit and one angle");
      circuit.gates.push_back(ry_gate(parse_qubit(tokens[1], line_number),
                                      parse_angle(tokens[2], line_number)));
    } else if (op == "cx") {
      if (tokens.size() != 3)
        throw ValidationError("line " + std::to_string(line_number) +
                              ": cx takes control and target qubits");
      circuit.gates.push_back(cnot_gate(parse_qubit(tokens[1], line_number),
                                        parse_qubit(tokens[2], line_number)));
    } else {
      throw ValidationError("line " + std::to_string(line_number) +
                            ": unrecognized gate '" + op + "'");
    }
  }
  return circuit;
}

}  // namespace chanep
