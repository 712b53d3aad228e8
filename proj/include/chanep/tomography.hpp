#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "chanep/channel.hpp"
#include "chanep/linalg.hpp"

namespace chanep {

// Process tomography over the standard single-qubit setting grid: six Pauli
// eigenstate preparations, each measured in the three Pauli bases.

enum class PrepLabel { XPlus, XMinus, YPlus, YMinus, ZPlus, ZMinus };

// "x+", "x-", "y+", "y-", "z+", "z-".
const char* prep_label_name(PrepLabel label);

struct PrepSetting {
  PrepLabel label = PrepLabel::XPlus;
  Mat2 state;
};

// The six preparations in fixed order x+, x-, y+, y-, z+, z-:
// |x+-> = (|0> +- |1>)/sqrt(2), |y+-> = (|0> +- i|1>)/sqrt(2),
// |z+> = |0>, |z-> = |1>.
const std::array<PrepSetting, 6>& pauli_preps();

// "X", "Y", "Z" for basis index 0, 1, 2.
const char* basis_name(int basis);

// Shot counts per (preparation, basis, outcome). Sampled tables hold
// integers summing to shots_per_setting for each of the 18 settings;
// shots_per_setting == 0 marks an exact-probability table whose "counts"
// are the Born probabilities themselves (each setting summing to 1).
struct CountsTable {
  int shots_per_setting = 0;
  std::uint64_t seed = 0;
  // counts[prep][basis][outcome] with outcome 0 -> +1, 1 -> -1.
  std::array<std::array<std::array<double, 2>, 3>, 6> counts{};
};

// Draws every (prep, basis) setting from the exact Born probabilities
// p(+1) = (1 + <sigma_basis>) / 2 with a generator seeded once; the table is
// deterministic for a fixed seed. Requires a CPTP channel and shots >= 1.
CountsTable simulate_experiment(const SuperOp& s, int shots,
                                std::uint64_t seed);

// The infinite-shot limit: stores the exact probabilities, no sampling.
CountsTable exact_experiment(const SuperOp& s);

// Empirical expectation (n_plus - n_minus) / (n_plus + n_minus) of the
// basis observable for one setting.
double setting_expectation(const CountsTable& t, int prep, int basis);

// Direct inversion of the 18 expectations into the affine Bloch picture:
// column j of the distortion from the prep pair along axis j, the shift from
// the pair averages. Exact tables reproduce the channel; finite-shot tables
// may fail check_cptp (by design -- use mle_cptp_fit for a feasible
// estimate).
SuperOp linear_inversion(const CountsTable& t);

struct ReconstructionResult {
  SuperOp superop_estimate;
  ChoiMatrix choi_estimate;
  double neg_log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  // Objective value after every accepted step, starting at the initial
  // point; non-increasing by construction.
  std::vector<double> objective_trace;
};

// Maximum-likelihood channel reconstruction: projected gradient descent on
// the Choi matrix for the multinomial negative log-likelihood, feasibility
// restored after every step by alternating PSD clipping with the affine
// trace-preservation projection. Stops at relative objective change 1e-10
// or 5000 iterations. The returned estimate is always CPTP-feasible.
ReconstructionResult mle_cptp_fit(const CountsTable& t, const SuperOp& init);
// Default initialization: the maximally depolarizing channel (an interior
// point with no bias toward any target).
ReconstructionResult mle_cptp_fit(const CountsTable& t);

// Squared Uhlmann fidelity of the trace-normalized Choi states,
// F = [tr sqrt(sqrt(A) B sqrt(A))]^2 in [0, 1], 1 iff the channels match.
// Requires trace preservation; negative Choi eigenvalues (possible for
// linear-inversion estimates) are clipped.
double process_fidelity(const SuperOp& a, const SuperOp& b);

struct PipelineResult {
  ReconstructionResult reconstruction;
  double fidelity = 0.0;  // process fidelity of the estimate vs the truth
  Vec3c eigenvalues;      // distortion spectrum of the estimate
};

// Simulate (shots == 0 for the exact limit), reconstruct with the MLE, and
// read off the estimate's fidelity and distortion eigenvalues. The optional
// depolarizing knob composes extra noise of the given strength onto the
// channel before sampling (the fidelity is still taken against the clean
// channel).
PipelineResult full_pipeline(const SuperOp& s, int shots, std::uint64_t seed,
                             double depolarizing_noise = 0.0);

// JSON form: { "shots": n, "seed": s, "counts": { "x+/X": [n_plus,
// n_minus], ... } } with all 18 keys present.
std::string counts_to_json(const CountsTable& t);
CountsTable counts_from_json(const std::string& text);

}  // namespace chanep
