#pragma once

#include <array>
#include <optional>
#include <vector>

#include "chanep/channel.hpp"
#include "chanep/linalg.hpp"
#include "chanep/spectral.hpp"

namespace chanep {

// Barycentric coordinates over a triple of channels: nonnegative weights
// summing to one.
struct SimplexPoint {
  Vec3 a = Vec3::Zero();
};

// Validating constructor; throws ValidationError on negative weights or a
// sum away from one.
SimplexPoint simplex_point(double a1, double a2, double a3);

using ChannelTriple = std::array<SuperOp, 3>;

// Precomputed Bloch data of a channel triple: the mixture's distortion and
// shift are the barycentric combinations of the endpoints'.
struct SimplexFamily {
  std::array<Mat3, 3> distortions;
  std::array<Vec3, 3> shifts;
};

// Builds the family, requiring each channel to pass the physicality check
// (throws PreconditionError otherwise).
SimplexFamily make_simplex_family(const ChannelTriple& channels);

// Distortion matrix of the barycentric mixture.
Mat3 mixture_distortion(const SimplexFamily& family, const SimplexPoint& p);

// One evaluated grid point of a phase diagram.
struct PhaseCell {
  SimplexPoint point;
  Phase phase = Phase::KExact;
  double min_rigidity = 1.0;
};

// Triangular-lattice phase diagram with refined transition polylines and,
// when one is found, the interior triple-degeneracy record.
struct PhaseDiagram {
  int resolution = 0;
  std::vector<PhaseCell> cells;
  std::vector<std::vector<SimplexPoint>> ep_lines;
  std::optional<EPRecord> ep3;
};

// Labels the barycentric lattice a_i = k_i / resolution, refines every
// label-changing lattice edge by bisection to 1e-8, chains the refined
// points into transition polylines (split at the triple point when one is
// found), and attempts the triple-degeneracy search seeded from the most
// degenerate boundary point. Throws ValidationError for resolution < 2 and
// PreconditionError for non-physical channels.
PhaseDiagram phase_diagram(const ChannelTriple& channels, int resolution);

// Derivative-free minimization of the triple-coalescence objective
// sum_{i<j} |lambda_i - lambda_j|^2 over the simplex interior, started from
// seed. Returns the located record (order verified independently via the
// Jordan rank test); throws PreconditionError for a seed on the boundary and
// ConvergenceError (message includes the best iterate) when the objective
// cannot be driven to zero.
EPRecord ep3_search(const ChannelTriple& channels, const SimplexPoint& seed);

// One row of a one-dimensional slice sweep through the simplex.
struct SliceRow {
  double parameter = 0.0;
  SimplexPoint point;
  Vec3c eigenvalues;  // branch-tracked against the previous row
  Phase phase = Phase::KExact;
  double min_rigidity = 1.0;
};

// Sweeps coordinate sweep_index over [lo, hi] with fixed_index pinned to
// fixed_value (the remaining coordinate absorbs the rest), returning n
// branch-tracked rows. Throws PreconditionError when any requested point
// leaves the simplex.
std::vector<SliceRow> slice_sweep(const ChannelTriple& channels,
                                  int fixed_index, double fixed_value,
                                  int sweep_index, double lo, double hi,
                                  int n);

// Locates every phase transition along the same slice: scans a fine grid
// for label changes and refines each bracket by bisection. Returns the
// records ordered by sweep parameter; empty when the slice never changes
// phase.
std::vector<EPRecord> slice_transitions(const ChannelTriple& channels,
                                        int fixed_index, double fixed_value,
                                        int sweep_index, double lo, double hi);

}  // namespace chanep
