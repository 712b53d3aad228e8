#include "chanep/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "chanep/errors.hpp"

namespace chanep {

namespace {

std::array<int, 3> sorted_indices(const Vec3c& values) {
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&values](int a, int b) {
    if (values(a).real() != values(b).real())
      return values(a).real() < values(b).real();
    return values(a).imag() < values(b).imag();
  });
  return idx;
}

// A backward-stable eigensolver splits a defective eigenvalue of Jordan
// size k by ~(eps * scale)^(1/k), but the perturbation moves the cluster
// symmetrically to first order, so the cluster mean stays accurate to
// O(eps). Collapsing clusters tighter than the square-root noise floor onto
// their mean therefore recovers defective eigenvalues to machine precision
// while leaving every genuinely resolved spectrum untouched: the radius is
// orders of magnitude below any separation the rest of the library works
// with.
Vec3c collapse_defective_clusters(const Vec3c& raw, double norm) {
  const double scale = std::max(1.0, norm);
  const double radius =
      8.0 * std::sqrt(std::numeric_limits<double>::epsilon()) * scale;
  const double d01 = std::abs(raw(0) - raw(1));
  const double d02 = std::abs(raw(0) - raw(2));
  const double d12 = std::abs(raw(1) - raw(2));
  Vec3c values = raw;
  if (d01 <= radius && d02 <= radius && d12 <= radius) {
    // Conjugate symmetry makes the mean of a full real-matrix spectrum
    // exactly real.
    values.setConstant((raw(0) + raw(1) + raw(2)) / 3.0);
    return values;
  }
  int a = 0;
  int b = 1;
  double closest = d01;
  if (d02 < closest) {
    a = 0;
    b = 2;
    closest = d02;
  }
  if (d12 < closest) {
    a = 1;
    b = 2;
    closest = d12;
  }
  if (closest > radius) return values;
  // Collapse the pair only when the mean cannot break conjugate symmetry:
  // either a conjugate pair (exactly real mean) or two real values.
  const double tiny = 1e-12 * scale;
  const bool conjugates = std::abs(raw(a) - std::conj(raw(b))) <= tiny;
  const bool both_real =
      std::abs(raw(a).imag()) <= tiny && std::abs(raw(b).imag()) <= tiny;
  if (conjugates || both_real)
    values(a) = values(b) = 0.5 * (raw(a) + raw(b));
  return values;
}

Vec3c eigenvalues_of(const Mat3& e, const char* context) {
  Eigen::EigenSolver<Mat3> solver(e, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError(std::string("eigensolver failed ") + context);
  return collapse_defective_clusters(solver.eigenvalues(), e.norm());
}

double smallest_gap(const Mat3& e) {
  return closest_eigenvalue_pair(eigenvalues_of(e, "during gap search")).gap;
}

// Minimizes the smallest eigenvalue gap along the family: a coarse scan to
// bracket the minimum, then golden-section refinement of the bracket.
double minimize_gap(const DistortionPath& family, double lo, double hi) {
  constexpr int kScanPoints = 101;
  int best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScanPoints; ++i) {
    const double p = lo + (hi - lo) * i / (kScanPoints - 1);
    const double g = smallest_gap(family(p));
    if (g < best_gap) {
      best_gap = g;
      best = i;
    }
  }
  const double step = (hi - lo) / (kScanPoints - 1);
  double a = std::max(lo, lo + (best - 1) * step);
  double b = std::min(hi, lo + (best + 1) * step);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = smallest_gap(family(x1));
  double f2 = smallest_gap(family(x2));
  for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = smallest_gap(family(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = smallest_gap(family(x2));
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::KExact:
      return "KExact";
    case Phase::KBroken:
      return "KBroken";
    case Phase::Boundary:
      return "Boundary";
  }
  return "unknown";
}

const char* ep_kind_name(EPKind kind) {
  return kind == EPKind::EP ? "EP" : "DP";
}

bool has_complex_pair(const Mat3& e, double tol) {
  const Vec3c values = eigenvalues_of(e, "during phase labeling");
  const double threshold = tol * std::max(1.0, e.norm());
  int complex_count = 0;
  for (int i = 0; i < 3; ++i)
    if (std::abs(values(i).imag()) > threshold) ++complex_count;
  return complex_count >= 2;
}

double phase_rigidity(const Vec3c& left, const Vec3c& right) {
  const double norm_l = left.norm();
  const double norm_r = right.norm();
  if (norm_l == 0.0 || norm_r == 0.0)
    throw ValidationError("phase rigidity requires nonzero eigenvectors");
  // Bilinear overlap: no conjugation, so self-orthogonality at an
  // exceptional point drives the value to zero.
  const Complex overlap = left.cwiseProduct(right).sum();
  return std::min(1.0, std::abs(overlap) / (norm_l * norm_r));
}

SpectrumReport spectrum(const Mat3& e, double tol) {
  if (!e.allFinite())
    throw ValidationError("distortion matrix has non-finite entries");
  Eigen::EigenSolver<Mat3> right(e);
  if (right.info() != Eigen::Success)
    throw ConvergenceError("eigensolver failed on the distortion matrix");
  Eigen::EigenSolver<Mat3> left(e.transpose());
  if (left.info() != Eigen::Success)
    throw ConvergenceError("eigensolver failed on the transposed matrix");

  SpectrumReport report;
  report.scale = std::max(1.0, e.norm());
  const Vec3c polished =
      collapse_defective_clusters(right.eigenvalues(), e.norm());
  const auto order = sorted_indices(polished);
  for (int i = 0; i < 3; ++i) {
    report.eigenvalues(i) = polished(order[i]);
    report.right_eigenvectors.col(i) = right.eigenvectors().col(order[i]);
  }
  // Pair each sorted eigenvalue with the nearest unused eigenvalue of the
  // transpose; the two spectra agree, so this is a stable greedy match. The
  // raw (uncollapsed) values keep the match unambiguous inside a collapsed
  // cluster, where the polished values are exactly equal.
  std::array<bool, 3> used{false, false, false};
  for (int i = 0; i < 3; ++i) {
    int pick = -1;
    double pick_distance = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 3; ++j) {
      if (used[j]) continue;
      const double d =
          std::abs(left.eigenvalues()(j) - right.eigenvalues()(order[i]));
      if (d < pick_distance) {
        pick_distance = d;
        pick = j;
      }
    }
    used[pick] = true;
    report.left_eigenvectors.col(i) = left.eigenvectors().col(pick);
  }
  for (int i = 0; i < 3; ++i)
    report.rigidities(i) = phase_rigidity(report.left_eigenvectors.col(i),
                                          report.right_eigenvectors.col(i));
  report.phase = classify_phase(report, tol);
  return report;
}

Phase classify_phase(const SpectrumReport& report, double tol) {
  // Coalescence test first: a pair of eigenvalues inside the degeneracy
  // scale whose rigidity has collapsed marks the transition itself, even
  // when rounding noise leaves the pair with tiny imaginary parts.
  const double gap_threshold = std::sqrt(tol) * report.scale;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double gap = std::abs(report.eigenvalues(i) - report.eigenvalues(j));
      const double rigidity =
          std::min(report.rigidities(i), report.rigidities(j));
      if (gap <= gap_threshold && rigidity <= kRigidityBoundaryTol)
        return Phase::Boundary;
    }
  }
  const double imag_threshold = tol * report.scale;
  int complex_count = 0;
  for (int i = 0; i < 3; ++i)
    if (std::abs(report.eigenvalues(i).imag()) > imag_threshold)
      ++complex_count;
  if (complex_count == 2) return Phase::KBroken;
  if (complex_count == 0) return Phase::KExact;
  return Phase::Boundary;  // unpaired imaginary part: borderline point
}

int ep_order(const Mat3& e, Complex lambda, double tol) {
  if (!e.allFinite() || !std::isfinite(lambda.real()) ||
      !std::isfinite(lambda.imag()))
    throw ValidationError("ep_order requires finite inputs");
  const Vec3c values = eigenvalues_of(e, "while computing the Jordan order");
  const double scale = std::max(1.0, e.norm());
  // Eigenvalues of a perturbed triple degeneracy scatter like the cube root
  // of the perturbation, so the cluster radius uses cbrt(tol).
  const double cluster_tol = std::cbrt(tol) * scale;
  int multiplicity = 0;
  double nearest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double d = std::abs(values(i) - lambda);
    nearest = std::min(nearest, d);
    if (d <= cluster_tol) ++multiplicity;
  }
  if (multiplicity == 0)
    throw PreconditionError("ep_order: value is not an eigenvalue (nearest "
                            "eigenvalue is " +
                            std::to_string(nearest) + " away)");
  if (multiplicity == 1) return 1;
  const Mat3c shifted = e.cast<Complex>() - lambda * Mat3c::Identity();
  Mat3c power = Mat3c::Identity();
  for (int k = 1; k <= 3; ++k) {
    power = power * shifted;
    // Squared singular values via the Gram matrix; plenty of accuracy for
    // rank decisions at these thresholds.
    Eigen::SelfAdjointEigenSolver<Mat3c> gram(power.adjoint() * power);
    if (gram.info() != Eigen::Success)
      throw ConvergenceError("eigensolver failed while computing ranks");
    // Singular values of the k-th power pick up one factor of the matrix
    // norm per multiplication, so the rank threshold grows with it.
    const double threshold = cluster_tol * std::pow(2.0 * scale, k - 1);
    int nullity = 0;
    for (int i = 0; i < 3; ++i)
      if (gram.eigenvalues()(i) <= threshold * threshold) ++nullity;
    if (nullity >= multiplicity) return k;
  }
  return 3;
}

double principal_angle_sine(const Vec3c& a, const Vec3c& b) {
  const double norm_a = a.norm();
  const double norm_b = b.norm();
  if (norm_a == 0.0 || norm_b == 0.0)
    throw ValidationError("principal angle requires nonzero vectors");
  // Norm of the component of b orthogonal to a; unlike sqrt(1 - cos^2) this
  // keeps full precision for small angles.
  const Vec3c unit_a = a / norm_a;
  const Vec3c residual = b - unit_a * unit_a.dot(b);
  return std::min(1.0, residual.norm() / norm_b);
}

EigenvaluePair closest_eigenvalue_pair(const Vec3c& eigenvalues) {
  EigenvaluePair best;
  best.gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double gap = std::abs(eigenvalues(i) - eigenvalues(j));
      if (gap < best.gap) {
        best.first = i;
        best.second = j;
        best.gap = gap;
      }
    }
  }
  return best;
}

EPRecord degeneracy_diagnostics(const Mat3& e, std::vector<double> params,
                                double tol) {
  const SpectrumReport report = spectrum(e, tol);
  // Candidate pairs are those inside the eigenvalue cluster radius; among
  // them the coalescing pair is the one whose eigenvectors are closest.
  // Near a triple degeneracy every eigenvalue gap is noise, so eigenvalue
  // distance alone cannot tell the defective pair from a spectator branch.
  const double cluster_tol = std::cbrt(tol) * report.scale;
  EigenvaluePair pair = closest_eigenvalue_pair(report.eigenvalues);
  double best_vector_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double gap = std::abs(report.eigenvalues(i) - report.eigenvalues(j));
      if (gap > cluster_tol) continue;
      const double vector_gap = principal_angle_sine(
          report.right_eigenvectors.col(i), report.right_eigenvectors.col(j));
      if (vector_gap < best_vector_gap) {
        best_vector_gap = vector_gap;
        pair = {i, j, gap};
      }
    }
  }
  EPRecord record;
  record.params = std::move(params);
  record.coalesced_eigenvalue = 0.5 * (report.eigenvalues(pair.first) +
                                       report.eigenvalues(pair.second));
  record.min_rigidity =
      std::min(report.rigidities(pair.first), report.rigidities(pair.second));
  const Vec3c vi = report.right_eigenvectors.col(pair.first);
  const Vec3c vj = report.right_eigenvectors.col(pair.second);
  record.eigenvector_gap = principal_angle_sine(vi, vj);
  record.order = ep_order(e, record.coalesced_eigenvalue, tol);
  record.kind =
      (record.eigenvector_gap <= kEigenvectorGapTol && record.order >= 2)
          ? EPKind::EP
          : EPKind::DP;
  // Phase-align the pair before averaging: the leading-order splitting of
  // the two vectors is antisymmetric, so the mean cancels it and lands on
  // the coalescence direction.
  Vec3c aligned = vj;
  const Complex overlap = vi.dot(vj);
  if (std::abs(overlap) > 0.0) aligned *= std::conj(overlap) / std::abs(overlap);
  Vec3c mean = 0.5 * (vi + aligned);
  if (mean.norm() < 1e-12) mean = vi;
  // Canonical phase: largest component real and positive.
  int imax = 0;
  mean.cwiseAbs().maxCoeff(&imax);
  mean *= std::conj(mean(imax) / std::abs(mean(imax)));
  record.coalesced_eigenvector = mean / mean.norm();
  record.objective = pair.gap;
  return record;
}

EPRecord ep_locate_1d(const DistortionPath& family, double p_lo, double p_hi,
                      double tol) {
  if (!family) throw ValidationError("ep_locate_1d requires a family");
  if (!(p_lo < p_hi))
    throw ValidationError("ep_locate_1d requires p_lo < p_hi");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");

  const bool broken_lo = has_complex_pair(family(p_lo), kSpectralTol);
  const bool broken_hi = has_complex_pair(family(p_hi), kSpectralTol);

  double located = 0.0;
  if (broken_lo != broken_hi) {
    // The label is a clean two-valued predicate, so bisect it. The final
    // bracket has width <= tol and its endpoints carry different labels,
    // which pins the transition inside it.
    double a = p_lo;
    double b = p_hi;
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;  // floating-point resolution reached
      if (has_complex_pair(family(mid), kSpectralTol) == broken_lo)
        a = mid;
      else
        b = mid;
    }
    located = 0.5 * (a + b);
  } else {
    // Same label at both endpoints: the only admissible target is an
    // isolated interior eigenvalue crossing with no sign change, so hunt
    // for the minimum of the smallest gap instead.
    located = minimize_gap(family, p_lo, p_hi);
    const double scale = std::max(1.0, family(located).norm());
    const double found_threshold = 1e-8 * scale;
    const double gap_opt = smallest_gap(family(located));
    const double gap_lo = smallest_gap(family(p_lo));
    const double gap_hi = smallest_gap(family(p_hi));
    if (gap_opt > found_threshold || gap_lo <= 100.0 * found_threshold ||
        gap_hi <= 100.0 * found_threshold)
      throw PreconditionError("no phase change on interval");
    // The degeneracy must be a point, not a plateau: probe a short distance
    // to either side and require the gap to have reopened.
    const double probe_step = (p_hi - p_lo) / 50.0;
    const double left = std::max(p_lo, located - probe_step);
    const double right = std::min(p_hi, located + probe_step);
    if (smallest_gap(family(left)) <= 10.0 * found_threshold &&
        smallest_gap(family(right)) <= 10.0 * found_threshold)
      throw ConvergenceError(
          "degenerate plateau wider than tolerance on interval");
  }

  EPRecord record = degeneracy_diagnostics(family(located), {located});
  record.converged = true;
  return record;
}

}  // namespace chanep
