#include "chanep/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "chanep/errors.hpp"

namespace chanep {

namespace {

using Eigen::Vector2d;

constexpr double kEdgeRefineTol = 1e-8;   // barycentric width of refined edges
constexpr double kEp3Objective = 1e-9;    // acceptance threshold for the search
constexpr double kSimplexSlack = 1e-12;   // tolerated rounding outside [0,1]

Vec3c mixture_eigenvalues(const Mat3& d) {
  Eigen::EigenSolver<Mat3> solver(d, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("eigensolver failed on a mixture distortion");
  return solver.eigenvalues();
}

// Sum of squared pairwise eigenvalue gaps; zero exactly at a triple
// degeneracy. Points outside the simplex get a growing penalty so the
// minimizer is pushed back inside.
double triple_objective(const SimplexFamily& family, double a1, double a2) {
  const double a3 = 1.0 - a1 - a2;
  const double violation = std::max({-a1, -a2, -a3, 0.0});
  if (violation > 0.0) return 100.0 + 1e4 * violation;
  const Mat3 d = a1 * family.distortions[0] + a2 * family.distortions[1] +
                 a3 * family.distortions[2];
  const Vec3c values = mixture_eigenvalues(d);
  double objective = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      objective += std::norm(values(i) - values(j));
  return objective;
}

struct NelderMeadResult {
  Vector2d x = Vector2d::Zero();
  double f = std::numeric_limits<double>::infinity();
};

// Standard two-dimensional Nelder-Mead descent with reflection, expansion,
// contraction, and shrink steps; deterministic for a fixed start.
NelderMeadResult nelder_mead_2d(
    const std::function<double(const Vector2d&)>& f, const Vector2d& start,
    double step, int max_iterations) {
  std::array<Vector2d, 3> v{start, start + Vector2d(step, 0.0),
                            start + Vector2d(0.0, step)};
  std::array<double, 3> fv{f(v[0]), f(v[1]), f(v[2])};
  for (int it = 0; it < max_iterations; ++it) {
    // Order the vertices best-to-worst.
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(),
              [&fv](int a, int b) { return fv[a] < fv[b]; });
    const std::array<Vector2d, 3> sv{v[idx[0]], v[idx[1]], v[idx[2]]};
    const std::array<double, 3> sf{fv[idx[0]], fv[idx[1]], fv[idx[2]]};
    v = sv;
    fv = sf;
    const double diameter =
        std::max((v[1] - v[0]).norm(), (v[2] - v[0]).norm());
    if (diameter < 1e-13 && fv[2] - fv[0] < 1e-22) break;

    const Vector2d centroid = 0.5 * (v[0] + v[1]);
    const Vector2d reflected = centroid + (centroid - v[2]);
    const double fr = f(reflected);
    if (fr < fv[0]) {
      const Vector2d expanded = centroid + 2.0 * (centroid - v[2]);
      const double fe = f(expanded);
      if (fe < fr) {
        v[2] = expanded;
        fv[2] = fe;
      } else {
        v[2] = reflected;
        fv[2] = fr;
      }
    } else if (fr < fv[1]) {
      v[2] = reflected;
      fv[2] = fr;
    } else {
      const bool outside = fr < fv[2];
      const Vector2d contracted =
          outside ? centroid + 0.5 * (reflected - centroid)
                  : centroid + 0.5 * (v[2] - centroid);
      const double fc = f(contracted);
      if (fc < std::min(fr, fv[2])) {
        v[2] = contracted;
        fv[2] = fc;
      } else {
        // Shrink toward the best vertex.
        for (int k = 1; k < 3; ++k) {
          v[k] = v[0] + 0.5 * (v[k] - v[0]);
          fv[k] = f(v[k]);
        }
      }
    }
  }
  NelderMeadResult result;
  for (int k = 0; k < 3; ++k) {
    if (fv[k] < result.f) {
      result.f = fv[k];
      result.x = v[k];
    }
  }
  return result;
}

SimplexPoint clamped_point(double a1, double a2, double a3) {
  SimplexPoint p;
  p.a << std::max(0.0, a1), std::max(0.0, a2), std::max(0.0, a3);
  return p;
}

EPRecord diagnose_mixture(const SimplexFamily& family, double a1, double a2,
                          double objective_value) {
  const double a3 = 1.0 - a1 - a2;
  const Mat3 d = a1 * family.distortions[0] + a2 * family.distortions[1] +
                 a3 * family.distortions[2];
  EPRecord record = degeneracy_diagnostics(d, {a1, a2, a3});
  record.objective = objective_value;
  record.converged = true;
  return record;
}

// Internal search over a prebuilt family (phase_diagram reuses it without
// re-validating the channels). The objective vanishes wherever all three
// eigenvalues agree, which includes Jordan-type {2,1} points (e.g. the
// nilpotent midpoint of an edge interpolation), so every converged zero is
// diagnosed and a genuine order-3 point is preferred over impostors.
EPRecord ep3_search_family(const SimplexFamily& family,
                           const SimplexPoint& seed) {
  if (seed.a.minCoeff() <= 0.0)
    throw PreconditionError("seed must lie strictly inside the simplex");
  const auto objective = [&family](const Vector2d& x) {
    return triple_objective(family, x(0), x(1));
  };

  NelderMeadResult best;
  std::vector<NelderMeadResult> converged;
  Rng rng(1234543);
  constexpr int kRestarts = 12;
  for (int restart = 0; restart < kRestarts; ++restart) {
    Vector2d start(seed.a(0), seed.a(1));
    if (restart > 0) {
      // Jittered restart, rejected until strictly inside the simplex; after
      // enough rejections fall back to a fresh uniform interior draw.
      bool placed = false;
      for (int attempt = 0; attempt < 50 && !placed; ++attempt) {
        start(0) = seed.a(0) + 0.35 * (rng.uniform() - 0.5);
        start(1) = seed.a(1) + 0.35 * (rng.uniform() - 0.5);
        placed = start.minCoeff() > 0.005 && start.sum() < 0.995;
      }
      if (!placed) {
        double u = rng.uniform(), v = rng.uniform();
        if (u + v > 1.0) {
          u = 1.0 - u;
          v = 1.0 - v;
        }
        start(0) = 1.0 / 3 + 0.9 * (u - 1.0 / 3);
        start(1) = 1.0 / 3 + 0.9 * (v - 1.0 / 3);
      }
    }
    const NelderMeadResult run = nelder_mead_2d(objective, start, 0.05, 600);
    if (run.f < best.f) best = run;
    if (run.f <= kEp3Objective) converged.push_back(run);
  }

  if (converged.empty())
    throw ConvergenceError(
        "triple coalescence search did not converge: best objective " +
        std::to_string(best.f) + " at (" + std::to_string(best.x(0)) + ", " +
        std::to_string(best.x(1)) + ", " +
        std::to_string(1.0 - best.x(0) - best.x(1)) + ")");

  // Among converged zeros, return the best order-3 point if one exists;
  // otherwise report the deepest zero with its honestly diagnosed order.
  std::sort(converged.begin(), converged.end(),
            [](const NelderMeadResult& a, const NelderMeadResult& b) {
              return a.f < b.f;
            });
  EPRecord fallback =
      diagnose_mixture(family, converged.front().x(0), converged.front().x(1),
                       converged.front().f);
  if (fallback.order >= 3) return fallback;
  for (std::size_t i = 1; i < converged.size(); ++i) {
    if ((converged[i].x - converged.front().x).norm() < 1e-6) continue;
    const EPRecord candidate = diagnose_mixture(
        family, converged[i].x(0), converged[i].x(1), converged[i].f);
    if (candidate.order >= 3) return candidate;
  }
  return fallback;
}

// Greedy chaining: grow each chain from both ends, linking points closer
// than the cap.
std::vector<std::vector<SimplexPoint>> chain_plain(
    std::vector<SimplexPoint> points, double radius) {
  std::vector<std::vector<SimplexPoint>> chains;
  auto plane = [](const SimplexPoint& p) {
    return Vector2d(p.a(0), p.a(1));
  };
  std::sort(points.begin(), points.end(),
            [](const SimplexPoint& x, const SimplexPoint& y) {
              if (x.a(0) != y.a(0)) return x.a(0) < y.a(0);
              return x.a(1) < y.a(1);
            });
  std::vector<bool> taken(points.size(), false);
  const double radius2 = radius * radius;
  for (std::size_t s = 0; s < points.size(); ++s) {
    if (taken[s]) continue;
    std::deque<std::size_t> chain;
    chain.push_back(s);
    taken[s] = true;
    // Walk one direction to exhaustion before turning to the other, so a
    // mid-curve start grows two clean runs instead of interleaving.
    for (const bool at_tail : {true, false}) {
      for (;;) {
        const Vector2d end =
            plane(points[at_tail ? chain.back() : chain.front()]);
        std::size_t pick = points.size();
        double best = radius2;
        for (std::size_t i = 0; i < points.size(); ++i) {
          if (taken[i]) continue;
          const double d = (plane(points[i]) - end).squaredNorm();
          if (d <= best) {
            best = d;
            pick = i;
          }
        }
        if (pick == points.size()) break;
        taken[pick] = true;
        if (at_tail)
          chain.push_back(pick);
        else
          chain.push_front(pick);
      }
    }
    std::vector<SimplexPoint> out;
    out.reserve(chain.size());
    for (const std::size_t i : chain) out.push_back(points[i]);
    chains.push_back(std::move(out));
  }
  return chains;
}

// Near a fold the two sides of the boundary come closer than the lattice
// spacing and the greedy walk can hop across early, stranding a few of the
// deepest points in fragment chains. This pass splices each fragment back
// into the polyline segment it interrupts (or onto an end), keeping every
// traced point on one continuous line where geometry allows.
std::vector<std::vector<SimplexPoint>> absorb_fragments(
    std::vector<std::vector<SimplexPoint>> chains, double cap) {
  std::sort(chains.begin(), chains.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::vector<SimplexPoint>> lines;
  auto plane = [](const SimplexPoint& p) {
    return Vector2d(p.a(0), p.a(1));
  };
  for (auto& chain : chains) {
    if (lines.empty()) {
      lines.push_back(std::move(chain));
      continue;
    }
    struct Attachment {
      double cost = std::numeric_limits<double>::infinity();
      std::size_t line = 0;
      std::size_t after = 0;  // splice between after and after+1
      bool reversed = false;
      bool splice = false;
      bool at_back = false;
    } best;
    for (const bool reversed : {false, true}) {
      const Vector2d head = plane(reversed ? chain.back() : chain.front());
      const Vector2d tail = plane(reversed ? chain.front() : chain.back());
      for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto& line = lines[li];
        const double append = (plane(line.back()) - head).norm();
        if (append <= cap && append < best.cost)
          best = {append, li, 0, reversed, false, true};
        const double prepend = (plane(line.front()) - tail).norm();
        if (prepend <= cap && prepend < best.cost)
          best = {prepend, li, 0, reversed, false, false};
        for (std::size_t k = 0; k + 1 < line.size(); ++k) {
          const double in = (plane(line[k]) - head).norm();
          const double out = (tail - plane(line[k + 1])).norm();
          if (in > cap || out > cap) continue;
          const double detour =
              in + out - (plane(line[k]) - plane(line[k + 1])).norm();
          if (detour < best.cost) best = {detour, li, k, reversed, true, false};
        }
      }
    }
    if (!std::isfinite(best.cost)) {
      lines.push_back(std::move(chain));
      continue;
    }
    if (best.reversed) std::reverse(chain.begin(), chain.end());
    auto& target = lines[best.line];
    if (best.splice)
      target.insert(target.begin() + static_cast<std::ptrdiff_t>(best.after) + 1,
                    chain.begin(), chain.end());
    else if (best.at_back)
      target.insert(target.end(), chain.begin(), chain.end());
    else
      target.insert(target.begin(), chain.begin(), chain.end());
  }
  return lines;
}

// Assembles transition polylines by greedy chaining. A located triple point
// is a junction where boundary lines meet — typically a tangential cusp, so
// the lattice sees no label flips in a small neighborhood of it and the
// traced curve simply folds through the gap. Each chain passing close to the
// junction is split at its vertex of closest approach and the junction
// coordinates are appended to both halves, so the triple point lies on every
// line that meets it.
std::vector<std::vector<SimplexPoint>> chain_boundary(
    const std::vector<SimplexPoint>& points, const std::optional<EPRecord>& ep3,
    int resolution) {
  const double cap = std::max(3.5 / resolution, 0.03);
  std::vector<std::vector<SimplexPoint>> chains =
      absorb_fragments(chain_plain(points, cap), cap);
  if (!ep3 || ep3->params.size() != 3) return chains;

  const Vector2d junction(ep3->params[0], ep3->params[1]);
  SimplexPoint junction_point;
  junction_point.a << ep3->params[0], ep3->params[1], ep3->params[2];
  // Label flips become invisible once the two sides of a cusp are closer
  // than the lattice spacing; this radius bounds how far from the junction
  // the nearest traced vertex can then sit.
  const double attach_radius = std::max(0.1, 5.0 / resolution);

  std::vector<std::vector<SimplexPoint>> lines;
  for (auto& chain : chains) {
    std::size_t nearest = 0;
    double nearest_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const double d =
          (Vector2d(chain[i].a(0), chain[i].a(1)) - junction).norm();
      if (d < nearest_distance) {
        nearest_distance = d;
        nearest = i;
      }
    }
    if (nearest_distance > attach_radius) {
      lines.push_back(std::move(chain));
      continue;
    }
    if (nearest == 0 || nearest + 1 == chain.size()) {
      // The junction extends an endpoint.
      if (nearest == 0)
        chain.insert(chain.begin(), junction_point);
      else
        chain.push_back(junction_point);
      lines.push_back(std::move(chain));
      continue;
    }
    // The chain folds through the junction: split it there.
    std::vector<SimplexPoint> first(chain.begin(),
                                    chain.begin() + static_cast<std::ptrdiff_t>(nearest) + 1);
    first.push_back(junction_point);
    std::vector<SimplexPoint> second;
    second.push_back(junction_point);
    second.insert(second.end(),
                  chain.begin() + static_cast<std::ptrdiff_t>(nearest) + 1,
                  chain.end());
    lines.push_back(std::move(first));
    lines.push_back(std::move(second));
  }
  return lines;
}

bool report_has_pair(const SpectrumReport& report) {
  const double threshold = kSpectralTol * report.scale;
  int complex_count = 0;
  for (int i = 0; i < 3; ++i)
    if (std::abs(report.eigenvalues(i).imag()) > threshold) ++complex_count;
  return complex_count >= 2;
}

}  // namespace

SimplexPoint simplex_point(double a1, double a2, double a3) {
  if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3))
    throw ValidationError("barycentric coordinates must be finite");
  if (a1 < -kSimplexSlack || a2 < -kSimplexSlack || a3 < -kSimplexSlack)
    throw ValidationError("barycentric coordinates must be nonnegative");
  if (std::abs(a1 + a2 + a3 - 1.0) > 1e-12)
    throw ValidationError("barycentric coordinates must sum to one");
  return clamped_point(a1, a2, a3);
}

SimplexFamily make_simplex_family(const ChannelTriple& channels) {
  SimplexFamily family;
  for (int i = 0; i < 3; ++i) {
    const CPTPReport report = check_cptp(channels[i]);
    if (!report.is_cp || !report.is_tp)
      throw PreconditionError("channel " + std::to_string(i + 1) +
                              " is not a physical (CPTP) channel");
    const AffineRep affine = superop_to_affine(channels[i]);
    family.distortions[i] = affine.distortion;
    family.shifts[i] = affine.shift;
  }
  return family;
}

Mat3 mixture_distortion(const SimplexFamily& family, const SimplexPoint& p) {
  return p.a(0) * family.distortions[0] + p.a(1) * family.distortions[1] +
         p.a(2) * family.distortions[2];
}

PhaseDiagram phase_diagram(const ChannelTriple& channels, int resolution) {
  if (resolution < 2)
    throw ValidationError("phase diagram resolution must be at least 2");
  const SimplexFamily family = make_simplex_family(channels);

  PhaseDiagram diagram;
  diagram.resolution = resolution;
  const int r = resolution;
  diagram.cells.reserve(static_cast<std::size_t>(r + 1) * (r + 2) / 2);

  // Lattice pass: label every barycentric grid point.
  std::vector<char> broken(static_cast<std::size_t>(r + 1) * (r + 1), 0);
  const auto key = [r](int k1, int k2) {
    return static_cast<std::size_t>(k1) * (r + 1) + k2;
  };
  for (int k1 = 0; k1 <= r; ++k1) {
    for (int k2 = 0; k2 <= r - k1; ++k2) {
      const int k3 = r - k1 - k2;
      PhaseCell cell;
      cell.point = clamped_point(static_cast<double>(k1) / r,
                                 static_cast<double>(k2) / r,
                                 static_cast<double>(k3) / r);
      const SpectrumReport report =
          spectrum(mixture_distortion(family, cell.point));
      cell.phase = report.phase;
      cell.min_rigidity = report.rigidities.minCoeff();
      broken[key(k1, k2)] = report_has_pair(report) ? 1 : 0;
      diagram.cells.push_back(cell);
    }
  }

  // Refinement pass: bisect every lattice edge whose endpoints disagree.
  std::vector<SimplexPoint> boundary_points;
  const auto lattice_point = [r](int k1, int k2) {
    return clamped_point(static_cast<double>(k1) / r,
                         static_cast<double>(k2) / r,
                         static_cast<double>(r - k1 - k2) / r);
  };
  const auto refine_edge = [&](int k1, int k2, int m1, int m2) {
    const SimplexPoint a = lattice_point(k1, k2);
    const SimplexPoint b = lattice_point(m1, m2);
    const bool label_a = broken[key(k1, k2)] != 0;
    double t_lo = 0.0, t_hi = 1.0;
    // Coordinates change by 1/resolution along the edge, so a parameter
    // width of tol * resolution bounds the coordinate error by tol.
    const double width_target = kEdgeRefineTol * r;
    for (int it = 0; it < 64 && t_hi - t_lo > width_target; ++it) {
      const double mid = 0.5 * (t_lo + t_hi);
      Vec3 coords = (1.0 - mid) * a.a + mid * b.a;
      const SimplexPoint p = clamped_point(coords(0), coords(1), coords(2));
      if (has_complex_pair(mixture_distortion(family, p)) == label_a)
        t_lo = mid;
      else
        t_hi = mid;
    }
    const double mid = 0.5 * (t_lo + t_hi);
    Vec3 coords = (1.0 - mid) * a.a + mid * b.a;
    boundary_points.push_back(clamped_point(coords(0), coords(1), coords(2)));
  };
  for (int k1 = 0; k1 <= r; ++k1) {
    for (int k2 = 0; k2 <= r - k1; ++k2) {
      const bool label = broken[key(k1, k2)] != 0;
      // Forward neighbors cover each lattice edge exactly once.
      if (k1 + 1 <= r && k2 - 1 >= 0 && label != (broken[key(k1 + 1, k2 - 1)] != 0))
        refine_edge(k1, k2, k1 + 1, k2 - 1);
      if (k1 + 1 + k2 <= r && label != (broken[key(k1 + 1, k2)] != 0))
        refine_edge(k1, k2, k1 + 1, k2);
      if (k1 + k2 + 1 <= r && label != (broken[key(k1, k2 + 1)] != 0))
        refine_edge(k1, k2, k1, k2 + 1);
    }
  }

  // Triple-point search, seeded from the most degenerate boundary point
  // pulled slightly toward the centroid to stay strictly interior.
  if (!boundary_points.empty()) {
    const SimplexPoint* seed_base = &boundary_points.front();
    double best = std::numeric_limits<double>::infinity();
    for (const SimplexPoint& p : boundary_points) {
      const double f = triple_objective(family, p.a(0), p.a(1));
      if (f < best) {
        best = f;
        seed_base = &p;
      }
    }
    SimplexPoint seed;
    seed.a = 0.95 * seed_base->a + 0.05 * Vec3::Constant(1.0 / 3.0);
    try {
      diagram.ep3 = ep3_search_family(family, seed);
    } catch (const ConvergenceError&) {
      diagram.ep3.reset();  // boundary lines without a triple point
    }
  }

  diagram.ep_lines = chain_boundary(boundary_points, diagram.ep3, resolution);
  return diagram;
}

EPRecord ep3_search(const ChannelTriple& channels, const SimplexPoint& seed) {
  if (std::abs(seed.a.sum() - 1.0) > 1e-12)
    throw ValidationError("barycentric seed must sum to one");
  return ep3_search_family(make_simplex_family(channels), seed);
}

namespace {

struct SlicePlan {
  int fixed_index;
  double fixed_value;
  int sweep_index;
  int rest_index;
};

SlicePlan plan_slice(int fixed_index, double fixed_value, int sweep_index,
                     double lo, double hi) {
  if (fixed_index < 0 || fixed_index > 2 || sweep_index < 0 || sweep_index > 2)
    throw ValidationError("slice indices must be 0, 1, or 2");
  if (fixed_index == sweep_index)
    throw ValidationError("fixed and sweep indices must differ");
  if (!(lo < hi)) throw ValidationError("sweep range must satisfy lo < hi");
  SlicePlan plan{fixed_index, fixed_value, sweep_index,
                 3 - fixed_index - sweep_index};
  // The remaining coordinate is linear in the sweep parameter, so checking
  // the two endpoints bounds the whole segment.
  for (const double t : {lo, hi}) {
    const double rest = 1.0 - t - fixed_value;
    if (t < -kSimplexSlack || fixed_value < -kSimplexSlack ||
        rest < -kSimplexSlack)
      throw PreconditionError("slice exits the simplex");
  }
  return plan;
}

SimplexPoint slice_point(const SlicePlan& plan, double t) {
  Vec3 a;
  a(plan.sweep_index) = t;
  a(plan.fixed_index) = plan.fixed_value;
  a(plan.rest_index) = 1.0 - t - plan.fixed_value;
  return clamped_point(a(0), a(1), a(2));
}

}  // namespace

std::vector<SliceRow> slice_sweep(const ChannelTriple& channels,
                                  int fixed_index, double fixed_value,
                                  int sweep_index, double lo, double hi,
                                  int n) {
  if (n < 2) throw ValidationError("slice sweep needs at least two points");
  const SlicePlan plan =
      plan_slice(fixed_index, fixed_value, sweep_index, lo, hi);
  const SimplexFamily family = make_simplex_family(channels);

  std::vector<SliceRow> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    SliceRow row;
    row.parameter = t;
    row.point = slice_point(plan, t);
    const SpectrumReport report =
        spectrum(mixture_distortion(family, row.point));
    row.phase = report.phase;
    row.min_rigidity = report.rigidities.minCoeff();
    if (rows.empty()) {
      row.eigenvalues = report.eigenvalues;
    } else {
      // Branch tracking: permute this row's eigenvalues to minimize total
      // movement relative to the previous row.
      const Vec3c& previous = rows.back().eigenvalues;
      std::array<int, 3> perm{0, 1, 2};
      std::array<int, 3> best_perm = perm;
      double best_cost = std::numeric_limits<double>::infinity();
      std::sort(perm.begin(), perm.end());
      do {
        double cost = 0.0;
        for (int k = 0; k < 3; ++k)
          cost += std::abs(report.eigenvalues(perm[k]) - previous(k));
        if (cost < best_cost) {
          best_cost = cost;
          best_perm = perm;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (int k = 0; k < 3; ++k)
        row.eigenvalues(k) = report.eigenvalues(best_perm[k]);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<EPRecord> slice_transitions(const ChannelTriple& channels,
                                        int fixed_index, double fixed_value,
                                        int sweep_index, double lo,
                                        double hi) {
  const SlicePlan plan =
      plan_slice(fixed_index, fixed_value, sweep_index, lo, hi);
  const SimplexFamily family = make_simplex_family(channels);
  const DistortionPath path = [&family, &plan](double t) {
    return mixture_distortion(family, slice_point(plan, t));
  };

  // Scan densely enough to resolve transitions separated by ~1e-6; a pair
  // of phase boundaries tightens without bound near a merge point.
  const int segments = static_cast<int>(
      std::clamp((hi - lo) / 1e-6, 2000.0, 1000000.0));
  std::vector<EPRecord> records;
  bool previous_label = has_complex_pair(path(lo));
  double previous_t = lo;
  for (int i = 1; i <= segments; ++i) {
    const double t = lo + (hi - lo) * i / segments;
    const bool label = has_complex_pair(path(t));
    if (label != previous_label) {
      EPRecord record = ep_locate_1d(path, previous_t, t, 1e-10);
      const SimplexPoint located = slice_point(plan, record.params.at(0));
      record.params = {located.a(0), located.a(1), located.a(2)};
      records.push_back(std::move(record));
    }
    previous_label = label;
    previous_t = t;
  }
  return records;
}

}  // namespace chanep
