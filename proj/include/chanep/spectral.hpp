#pragma once

#include <functional>
#include <vector>

#include "chanep/linalg.hpp"

namespace chanep {

// Default tolerance for eigenvalue comparisons and phase classification.
inline constexpr double kSpectralTol = 1e-9;
// A coalescing pair whose rigidity falls below this marks a phase boundary.
inline constexpr double kRigidityBoundaryTol = 1e-3;
// Sine of the principal angle separating a true eigenvector coalescence
// (exceptional point) from an accidental eigenvalue crossing (diabolic point).
inline constexpr double kEigenvectorGapTol = 1e-4;

// Spectral phase of a real 3x3 distortion matrix: KExact when the spectrum is
// entirely real, KBroken when a complex-conjugate pair is present, Boundary at
// the transition where eigenvalues (and, at an exceptional point,
// eigenvectors) coalesce.
enum class Phase { KExact, KBroken, Boundary };

// Degeneracy flavour: EP = eigenvalues and eigenvectors coalesce,
// DP = eigenvalues cross while the eigenvectors stay distinct.
enum class EPKind { EP, DP };

const char* phase_name(Phase phase);
const char* ep_kind_name(EPKind kind);

// Full eigen-decomposition of a distortion matrix. Columns of
// right_eigenvectors/left_eigenvectors are unit eigenvectors matched to
// eigenvalues[i]; left eigenvectors are eigenvectors of the transpose.
struct SpectrumReport {
  Vec3c eigenvalues;        // sorted by (Re, Im)
  Mat3c right_eigenvectors; // column i pairs with eigenvalues[i]
  Mat3c left_eigenvectors;  // column i pairs with eigenvalues[i]
  Phase phase = Phase::KExact;
  Vec3 rigidities;          // phase rigidity per eigenpair, in [0, 1]
  double scale = 1.0;       // max(1, Frobenius norm), used for tolerances
};

// A located spectral degeneracy.
struct EPRecord {
  std::vector<double> params;       // curve parameter or barycentric weights
  Complex coalesced_eigenvalue{0.0, 0.0};
  int order = 0;                    // largest Jordan block of the cluster
  double min_rigidity = 0.0;        // smallest rigidity among the cluster
  double eigenvector_gap = 0.0;     // sine of the minimal principal angle
  EPKind kind = EPKind::DP;
  Vec3c coalesced_eigenvector = Vec3c::Zero();
  bool converged = false;
  double objective = 0.0;           // residual eigenvalue gap at the point
};

// A one-parameter path of distortion matrices.
using DistortionPath = std::function<Mat3(double)>;

// Eigen-decomposition with deterministic ordering, left eigenvectors,
// rigidities, and phase label. Throws ValidationError on non-finite input and
// ConvergenceError if the eigensolver fails.
SpectrumReport spectrum(const Mat3& e, double tol = kSpectralTol);

// Strict two-valued phase label: true when the spectrum contains a genuine
// complex-conjugate pair. Behaves like a sign predicate, which makes it the
// right target for bisection and grid-edge refinement.
bool has_complex_pair(const Mat3& e, double tol = kSpectralTol);

// Normalized overlap |vL . vR| / (|vL| |vR|) with a bilinear (unconjugated)
// dot product; 1 for eigenpairs of symmetric matrices, 0 at an exceptional
// point. Throws ValidationError on a zero vector.
double phase_rigidity(const Vec3c& left, const Vec3c& right);

// Phase label for a decomposition: KBroken when a genuine conjugate pair is
// present, Boundary when some pair of eigenvalues has coalesced with
// vanishing rigidity (or the imaginary-part count is inconsistent), KExact
// otherwise.
Phase classify_phase(const SpectrumReport& report, double tol = kSpectralTol);

// Order of the degeneracy at eigenvalue lambda: the largest Jordan block
// size, i.e. the smallest k with nullity((E - lambda I)^k) reaching the
// algebraic multiplicity of the eigenvalue cluster around lambda. Returns 1
// for semisimple eigenvalues. Throws PreconditionError when lambda is not an
// eigenvalue of e within the clustering tolerance.
int ep_order(const Mat3& e, Complex lambda, double tol = kSpectralTol);

// Sine of the principal angle between two nonzero complex vectors.
double principal_angle_sine(const Vec3c& a, const Vec3c& b);

// Indices of the two closest eigenvalues and their distance.
struct EigenvaluePair {
  int first = 0;
  int second = 1;
  double gap = 0.0;
};
EigenvaluePair closest_eigenvalue_pair(const Vec3c& eigenvalues);

// Diagnostics of the near-degenerate eigenvalue pair of a single matrix:
// coalesced eigenvalue (cluster mean), Jordan order, minimal rigidity,
// eigenvector gap, EP/DP kind, and the averaged coalescing eigenvector.
// `converged` is left false and `objective` is set to the residual gap;
// callers that ran a search overwrite both.
EPRecord degeneracy_diagnostics(const Mat3& e, std::vector<double> params,
                                double tol = kSpectralTol);

// Locates the spectral transition of a one-parameter family on [p_lo, p_hi]
// by bisecting the phase label down to an interval of width tol. When both
// endpoints share a phase, falls back to minimizing the smallest eigenvalue
// gap and accepts only an isolated interior degeneracy (a diabolic crossing);
// otherwise throws PreconditionError("no phase change on interval").
EPRecord ep_locate_1d(const DistortionPath& family, double p_lo, double p_hi,
                      double tol = 1e-10);

}  // namespace chanep
