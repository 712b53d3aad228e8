#include "chanep/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chanep/errors.hpp"

namespace chanep {

namespace {

// Basis change between vec(rho) = {rho11, rho21, rho12, rho22} and the
// affine coordinates (1, rx, ry, rz):  (1, r) = kBloch * vec(rho).
Mat4 make_bloch_basis() {
  const Complex i(0.0, 1.0);
  Mat4 m;
  m << 1, 0, 0, 1,   // trace
      0, 1, 1, 0,    // rx = rho12 + rho21
      0, -i, i, 0,   // ry = i (rho12 - rho21)
      1, 0, 0, -1;   // rz = rho11 - rho22
  return m;
}

Mat4 make_bloch_basis_inverse() {
  const Complex i(0.0, 1.0);
  Mat4 m;
  m << 0.5, 0, 0, 0.5,     // rho11 = (1 + rz) / 2
      0, 0.5, 0.5 * i, 0,   // rho21 = (rx + i ry) / 2
      0, 0.5, -0.5 * i, 0,  // rho12 = (rx - i ry) / 2
      0.5, 0, 0, -0.5;      // rho22 = (1 - rz) / 2
  return m;
}

const Mat4& bloch_basis() {
  static const Mat4 m = make_bloch_basis();
  return m;
}

const Mat4& bloch_basis_inverse() {
  static const Mat4 m = make_bloch_basis_inverse();
  return m;
}

}  // namespace

void validate_density(const Mat2& rho, double tol) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol)
    throw ValidationError("density matrix is not Hermitian (residual " +
                          std::to_string(herm) + ")");
  const double trace_err = std::abs(rho.trace() - Complex(1.0));
  if (trace_err > tol)
    throw ValidationError("density matrix trace deviates from 1 by " +
                          std::to_string(trace_err));
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (rho + rho.adjoint()));
  if (es.eigenvalues().minCoeff() < -tol)
    throw ValidationError("density matrix has a negative eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
}

SuperOp kraus_to_superop(const KrausSet& kraus) {
  if (kraus.empty()) throw ValidationError("Kraus set is empty");
  Mat4 s = Mat4::Zero();
  for (const Mat2& k : kraus) s += kron22(k.conjugate(), k);
  return SuperOp{s};
}

AffineRep superop_to_affine(const SuperOp& s) {
  const Mat4 t = bloch_basis() * s.m * bloch_basis_inverse();
  // Trace preservation shows up as the invariant first row (1, 0, 0, 0).
  const double tp_err = std::max(
      std::abs(t(0, 0) - Complex(1.0)),
      std::max(std::abs(t(0, 1)), std::max(std::abs(t(0, 2)), std::abs(t(0, 3)))));
  if (tp_err > 1e-10)
    throw PreconditionError("superoperator is not trace preserving (residual " +
                            std::to_string(tp_err) + ")");
  const double imag_err = t.imag().cwiseAbs().maxCoeff();
  if (imag_err > 1e-9)
    throw ValidationError(
        "superoperator is not Hermiticity-preserving (imaginary residual " +
        std::to_string(imag_err) + ")");
  AffineRep a;
  a.shift = t.real().block<3, 1>(1, 0);
  a.distortion = t.real().block<3, 3>(1, 1);
  return a;
}

SuperOp affine_to_superop(const AffineRep& a) {
  Mat4 t = Mat4::Zero();
  t(0, 0) = 1.0;
  t.block<3, 1>(1, 0) = a.shift.cast<Complex>();
  t.block<3, 3>(1, 1) = a.distortion.cast<Complex>();
  return SuperOp{bloch_basis_inverse() * t * bloch_basis()};
}

ChoiMatrix choi_of(const SuperOp& s) {
  // Reshuffle: J[(a,i),(b,j)] = S[a + 2b, i + 2j] with row index 2a + i.
  Mat4 j;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int b = 0; b < 2; ++b)
        for (int jj = 0; jj < 2; ++jj)
          j(2 * a + i, 2 * b + jj) = s.m(a + 2 * b, i + 2 * jj);
  return ChoiMatrix{j};
}

SuperOp superop_of_choi(const ChoiMatrix& j) {
  Mat4 s;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int b = 0; b < 2; ++b)
        for (int jj = 0; jj < 2; ++jj)
          s(a + 2 * b, i + 2 * jj) = j.m(2 * a + i, 2 * b + jj);
  return SuperOp{s};
}

CPTPReport check_cptp(const SuperOp& s, double tol) {
  const Mat4 j = choi_of(s).m;
  CPTPReport report;

  const double herm_residual = (j - j.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (j + j.adjoint()));
  report.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  report.is_cp = herm_residual <= tol && report.min_choi_eigenvalue >= -tol;

  // Partial trace over the output (first) tensor factor.
  Mat2 tr_out = Mat2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj)
      for (int a = 0; a < 2; ++a) tr_out(i, jj) += j(2 * a + i, 2 * a + jj);
  report.tp_residual = (tr_out - Mat2::Identity()).cwiseAbs().maxCoeff();
  report.is_tp = report.tp_residual <= tol;
  return report;
}

SuperOp mix(const std::vector<SuperOp>& channels, const std::vector<double>& weights) {
  if (channels.empty()) throw ValidationError("mix of an empty channel list");
  if (channels.size() != weights.size())
    throw ValidationError("mix weight count does not match channel count");
  double sum = 0.0;
  for (double w : weights) {
    if (w < -1e-12)
      throw ValidationError("mix weight is negative: " + std::to_string(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("mix weights sum to " + std::to_string(sum) +
                          ", expected 1");
  Mat4 m = Mat4::Zero();
  for (std::size_t i = 0; i < channels.size(); ++i)
    m += std::max(0.0, weights[i]) * channels[i].m;
  return SuperOp{m};
}

Mat2 apply_channel(const SuperOp& s, const Mat2& rho) {
  validate_density(rho);
  return apply_linear(s, rho);
}

Mat2 apply_linear(const SuperOp& s, const Mat2& input) {
  return unvec_density(s.m * vec_density(input));
}

Mat2 sqrt_pauli_x() {
  // Principal branch: eigenvalue -1 of sigma_x maps to +i.
  const Complex a(0.5, 0.5), b(0.5, -0.5);
  Mat2 m;
  m << a, b, b, a;
  return m;
}

KrausSet kraus_e1() {
  return {std::sqrt(0.5) * sqrt_pauli_x(), 0.5 * pauli(2), 0.5 * pauli(3)};
}

KrausSet kraus_e2() {
  return {0.5 * pauli(0), 0.5 * pauli(1), std::sqrt(0.5) * pauli(2)};
}

SuperOp identity_channel() { return SuperOp{Mat4::Identity()}; }

SuperOp channel_e1() { return kraus_to_superop(kraus_e1()); }

SuperOp channel_e2() { return kraus_to_superop(kraus_e2()); }

SuperOp channel_e3() {
  AffineRep a;
  a.distortion =
      rodrigues_rotation(Vec3(1, 1, 1).normalized(), -std::numbers::pi / 2);
  return affine_to_superop(a);
}

SuperOp depolarizing_channel(double lambda) {
  if (lambda < 0.0 || lambda > 4.0 / 3.0)
    throw ValidationError("depolarizing strength " + std::to_string(lambda) +
                          " outside [0, 4/3]");
  AffineRep a;
  a.distortion = (1.0 - lambda) * Mat3::Identity();
  return affine_to_superop(a);
}

SuperOp rotation_channel(const Vec3& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-9)
    throw ValidationError("rotation axis must be unit length");
  AffineRep a;
  a.distortion = rodrigues_rotation(axis, angle);
  return affine_to_superop(a);
}

SuperOp reset_channel() {
  AffineRep a;
  a.shift = Vec3(0, 0, 1);
  a.distortion = Mat3::Zero();
  return affine_to_superop(a);
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size())
    throw ValidationError("cannot parse " + what + " from '" + text + "'");
  return value;
}

}  // namespace

SuperOp builtin_channel(const std::string& name) {
  if (name == "identity") return identity_channel();
  if (name == "E1") return channel_e1();
  if (name == "E2") return channel_e2();
  if (name == "E3") return channel_e3();
  if (name == "reset") return reset_channel();
  if (name.rfind("depolarizing:", 0) == 0)
    return depolarizing_channel(
        parse_double(name.substr(13), "depolarizing strength"));
  if (name.rfind("rotation:", 0) == 0) {
    const auto parts = split(name.substr(9), ':');
    if (parts.size() != 2)
      throw ValidationError("rotation argument must be rotation:<nx>,<ny>,<nz>:<angle>");
    const auto coords = split(parts[0], ',');
    if (coords.size() != 3)
      throw ValidationError("rotation axis must have three components");
    Vec3 axis(parse_double(coords[0], "axis x"), parse_double(coords[1], "axis y"),
              parse_double(coords[2], "axis z"));
    return rotation_channel(axis, parse_double(parts[1], "rotation angle"));
  }
  throw ValidationError("unknown channel fixture: " + name);
}

double Rng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cache_) {
    has_cache_ = false;
    return cache_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cache_ = radius * std::sin(angle);
  has_cache_ = true;
  return radius * std::cos(angle);
}

int Rng::binomial(int n, double p) {
  int successes = 0;
  for (int i = 0; i < n; ++i)
    if (uniform() < p) ++successes;
  return successes;
}

KrausSet random_kraus(Rng& rng, int n_ops) {
  if (n_ops < 1) throw ValidationError("Kraus set needs at least one operator");
  Eigen::MatrixXcd g(2 * n_ops, 2);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      g(i, j) = Complex(rng.normal(), rng.normal());
  // Isometry from C^2 into C^2 (x) C^n via thin QR; slicing the environment
  // index out of its columns yields a trace-preserving Kraus set.
  const Eigen::MatrixXcd q =
      Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ() *
      Eigen::MatrixXcd::Identity(2 * n_ops, 2);
  KrausSet kraus(static_cast<std::size_t>(n_ops));
  for (int a = 0; a < n_ops; ++a) {
    Mat2 k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k(i, j) = q(i * n_ops + a, j);
    kraus[static_cast<std::size_t>(a)] = k;
  }
  return kraus;
}

SuperOp random_cptp(std::uint64_t seed) {
  Rng rng(seed);
  return kraus_to_superop(random_kraus(rng, 2));
}

Mat2 random_density(Rng& rng) {
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  const Mat2 positive = g * g.adjoint();
  return positive / positive.trace().real();
}

}  // namespace chanep
