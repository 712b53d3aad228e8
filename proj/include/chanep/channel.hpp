#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chanep/linalg.hpp"

namespace chanep {

// A qubit channel as a set of 2x2 Kraus operators.
using KrausSet = std::vector<Mat2>;

// 4x4 superoperator acting on vec(rho) = {rho11, rho21, rho12, rho22}.
struct SuperOp {
  Mat4 m = Mat4::Identity();
};

// Choi matrix with the unnormalized pairing (trace 2 for trace-preserving
// channels), output factor first: J[(a,i),(b,j)] = <a| E(|i><j|) |b>.
struct ChoiMatrix {
  Mat4 m = Mat4::Zero();
};

// Bloch-ball picture: r' = distortion * r + shift. The full 4x4 real matrix
// acting on (1, r) has first row (1, 0, 0, 0) for trace-preserving maps.
struct AffineRep {
  Vec3 shift = Vec3::Zero();
  Mat3 distortion = Mat3::Identity();
};

struct CPTPReport {
  bool is_cp = false;
  bool is_tp = false;
  double min_choi_eigenvalue = 0.0;  // most negative eigenvalue of the Choi matrix
  double tp_residual = 0.0;          // max-abs deviation of the output partial trace from I
};

inline constexpr double kDefaultTol = 1e-10;

// Throws ValidationError unless rho is Hermitian, unit trace, PSD (within tol).
void validate_density(const Mat2& rho, double tol = 1e-12);

// --- representation conversions ------------------------------------------

// S = sum_k conj(K_k) (x) K_k. Errors on an empty set.
SuperOp kraus_to_superop(const KrausSet& kraus);

// Errors if S is not trace preserving (first-row test at 1e-10) or leaves an
// imaginary residual above 1e-9 (not Hermiticity-preserving).
AffineRep superop_to_affine(const SuperOp& s);
SuperOp affine_to_superop(const AffineRep& a);

ChoiMatrix choi_of(const SuperOp& s);
SuperOp superop_of_choi(const ChoiMatrix& j);

// CP iff the Choi matrix is PSD (within tol) and Hermitian; TP iff its partial
// trace over the output factor is the identity (within tol).
CPTPReport check_cptp(const SuperOp& s, double tol = kDefaultTol);

// Convex mixture. Weights must be non-negative, sum to 1 within 1e-12, and
// match the channel count; the list must be non-empty.
SuperOp mix(const std::vector<SuperOp>& channels, const std::vector<double>& weights);

// Applies the channel to a validated density matrix.
Mat2 apply_channel(const SuperOp& s, const Mat2& rho);

// Linear extension of the channel action to arbitrary 2x2 inputs.
Mat2 apply_linear(const SuperOp& s, const Mat2& input);

// --- built-in channels ----------------------------------------------------

// Principal square root of sigma_x (eigenvalues 1 and i).
Mat2 sqrt_pauli_x();

// Kraus sets of the two interpolation endpoints:
//   endpoint 1:  rho -> 1/2 sx^(1/2) rho sx^(1/2)+  +  1/4 sy rho sy  +  1/4 sz rho sz
//   endpoint 2:  rho -> 1/4 rho  +  1/4 sx rho sx  +  1/2 sy rho sy
KrausSet kraus_e1();
KrausSet kraus_e2();

SuperOp identity_channel();
SuperOp channel_e1();
SuperOp channel_e2();
// Bloch rotation by -pi/2 about (1,1,1)/sqrt(3).
SuperOp channel_e3();
// rho -> (1 - lambda) rho + lambda I/2, lambda in [0, 4/3].
SuperOp depolarizing_channel(double lambda);
// Unitary rotation of the Bloch ball. The axis must be unit length (1e-9).
SuperOp rotation_channel(const Vec3& axis, double angle);
// rho -> |0><0|.
SuperOp reset_channel();

// Resolves a fixture by name: "identity", "E1", "E2", "E3", "reset",
// "depolarizing:<lambda>", "rotation:<nx>,<ny>,<nz>:<angle>".
SuperOp builtin_channel(const std::string& name);

// --- randomized inputs ----------------------------------------------------

// Deterministic random stream; identical sequences for identical seeds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform in [0, 1), 53-bit resolution.
  double uniform();
  // Standard normal (Box-Muller).
  double normal();
  // Number of successes in n Bernoulli(p) trials.
  int binomial(int n, double p);

 private:
  std::mt19937_64 eng_;
  bool has_cache_ = false;
  double cache_ = 0.0;
};

// Random CPTP channel from an isometric dilation with one traced-out qubit.
SuperOp random_cptp(std::uint64_t seed);

// Random Kraus set with n_ops operators (isometry columns), trace preserving
// by construction.
KrausSet random_kraus(Rng& rng, int n_ops);

// Random full-rank density matrix.
Mat2 random_density(Rng& rng);

}  // namespace chanep
