#include "chanep/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "chanep/errors.hpp"
#include "chanep/spectral.hpp"

namespace chanep {

namespace {

constexpr int kPrepCount = 6;
constexpr int kBasisCount = 3;

Mat2 ket_state(const Vec3& bloch) { return density_from_bloch(bloch); }

std::array<PrepSetting, kPrepCount> build_preps() {
  std::array<PrepSetting, kPrepCount> preps;
  const std::array<PrepLabel, kPrepCount> labels = {
      PrepLabel::XPlus, PrepLabel::XMinus, PrepLabel::YPlus,
      PrepLabel::YMinus, PrepLabel::ZPlus, PrepLabel::ZMinus};
  for (int i = 0; i < kPrepCount; ++i) {
    Vec3 r = Vec3::Zero();
    r(i / 2) = (i % 2 == 0) ? 1.0 : -1.0;
    preps[static_cast<std::size_t>(i)] = {labels[static_cast<std::size_t>(i)],
                                          ket_state(r)};
  }
  return preps;
}

// Exact Born probability of the +1 outcome for one setting.
double plus_probability(const SuperOp& s, int prep, int basis) {
  const Mat2& rho = pauli_preps()[static_cast<std::size_t>(prep)].state;
  const Mat2 out = apply_channel(s, rho);
  const double expectation = (pauli(basis + 1) * out).trace().real();
  const double p = 0.5 * (1.0 + expectation);
  if (p < -1e-12 || p > 1.0 + 1e-12)
    throw PreconditionError(
        "outcome probability " + std::to_string(p) +
        " lies outside [0, 1]; the channel is not physical");
  return std::clamp(p, 0.0, 1.0);
}

std::string setting_key(int prep, int basis) {
  return std::string(prep_label_name(
             static_cast<PrepLabel>(prep))) +
         "/" + basis_name(basis);
}

}  // namespace

const char* prep_label_name(PrepLabel label) {
  switch (label) {
    case PrepLabel::XPlus:
      return "x+";
    case PrepLabel::XMinus:
      return "x-";
    case PrepLabel::YPlus:
      return "y+";
    case PrepLabel::YMinus:
      return "y-";
    case PrepLabel::ZPlus:
      return "z+";
    case PrepLabel::ZMinus:
      return "z-";
  }
  return "?";
}

const std::array<PrepSetting, 6>& pauli_preps() {
  static const std::array<PrepSetting, 6> preps = build_preps();
  return preps;
}

const char* basis_name(int basis) {
  switch (basis) {
    case 0:
      return "X";
    case 1:
      return "Y";
    case 2:
      return "Z";
    default:
      throw ValidationError("basis index must be 0, 1, or 2");
  }
}

CountsTable simulate_experiment(const SuperOp& s, int shots,
                                std::uint64_t seed) {
  if (shots < 1) throw ValidationError("shots must be at least 1");
  const CPTPReport report = check_cptp(s);
  if (!report.is_cp || !report.is_tp)
    throw PreconditionError("simulate_experiment requires a CPTP channel");
  CountsTable table;
  table.shots_per_setting = shots;
  table.seed = seed;
  Rng rng(seed);
  for (int prep = 0; prep < kPrepCount; ++prep) {
    for (int basis = 0; basis < kBasisCount; ++basis) {
      const double p = plus_probability(s, prep, basis);
      const int plus = rng.binomial(shots, p);
      table.counts[static_cast<std::size_t>(prep)]
                  [static_cast<std::size_t>(basis)][0] = plus;
      table.counts[static_cast<std::size_t>(prep)]
                  [static_cast<std::size_t>(basis)][1] = shots - plus;
    }
  }
  return table;
}

CountsTable exact_experiment(const SuperOp& s) {
  const CPTPReport report = check_cptp(s);
  if (!report.is_cp || !report.is_tp)
    throw PreconditionError("exact_experiment requires a CPTP channel");
  CountsTable table;
  table.shots_per_setting = 0;
  table.seed = 0;
  for (int prep = 0; prep < kPrepCount; ++prep) {
    for (int basis = 0; basis < kBasisCount; ++basis) {
      const double p = plus_probability(s, prep, basis);
      table.counts[static_cast<std::size_t>(prep)]
                  [static_cast<std::size_t>(basis)][0] = p;
      table.counts[static_cast<std::size_t>(prep)]
                  [static_cast<std::size_t>(basis)][1] = 1.0 - p;
    }
  }
  return table;
}

double setting_expectation(const CountsTable& t, int prep, int basis) {
  if (prep < 0 || prep >= kPrepCount)
    throw ValidationError("prep index must be in [0, 5]");
  if (basis < 0 || basis >= kBasisCount)
    throw ValidationError("basis index must be 0, 1, or 2");
  const auto& pair =
      t.counts[static_cast<std::size_t>(prep)][static_cast<std::size_t>(basis)];
  const double total = pair[0] + pair[1];
  if (!(total > 0.0))
    throw ValidationError("no counts recorded for setting " +
                          setting_key(prep, basis));
  return (pair[0] - pair[1]) / total;
}

SuperOp linear_inversion(const CountsTable& t) {
  // Bloch image of each preparation, read straight off the expectations.
  std::array<Vec3, kPrepCount> images;
  for (int prep = 0; prep < kPrepCount; ++prep)
    for (int basis = 0; basis < kBasisCount; ++basis)
      images[static_cast<std::size_t>(prep)](basis) =
          setting_expectation(t, prep, basis);

  AffineRep a;
  a.shift = Vec3::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    const Vec3& plus = images[static_cast<std::size_t>(2 * axis)];
    const Vec3& minus = images[static_cast<std::size_t>(2 * axis + 1)];
    a.distortion.col(axis) = 0.5 * (plus - minus);
    a.shift += 0.5 * (plus + minus) / 3.0;
  }
  return affine_to_superop(a);
}

namespace {

// Measurement effects (Pi (x) rho^T) paired with their observed counts; the
// Born probability of each outcome is Re tr(J M).
struct LikelihoodData {
  std::vector<Mat4> effects;
  std::vector<double> counts;
  double total = 0.0;
};

LikelihoodData likelihood_data(const CountsTable& t) {
  LikelihoodData data;
  data.effects.reserve(36);
  data.counts.reserve(36);
  for (int prep = 0; prep < kPrepCount; ++prep) {
    const Mat2 rho_t =
        pauli_preps()[static_cast<std::size_t>(prep)].state.transpose();
    for (int basis = 0; basis < kBasisCount; ++basis) {
      const double total = t.counts[static_cast<std::size_t>(prep)]
                                   [static_cast<std::size_t>(basis)][0] +
                           t.counts[static_cast<std::size_t>(prep)]
                                   [static_cast<std::size_t>(basis)][1];
      if (!(total > 0.0))
        throw ValidationError("no counts recorded for setting " +
                              setting_key(prep, basis));
      for (int outcome = 0; outcome < 2; ++outcome) {
        const double sign = outcome == 0 ? 1.0 : -1.0;
        const Mat2 projector = 0.5 * (pauli(0) + sign * pauli(basis + 1));
        data.effects.push_back(kron22(projector, rho_t));
        const double n = t.counts[static_cast<std::size_t>(prep)]
                                 [static_cast<std::size_t>(basis)]
                                 [static_cast<std::size_t>(outcome)];
        data.counts.push_back(n);
        data.total += n;
      }
    }
  }
  return data;
}

double negative_log_likelihood(const LikelihoodData& data, const Mat4& j) {
  double nll = 0.0;
  for (std::size_t k = 0; k < data.effects.size(); ++k) {
    if (data.counts[k] <= 0.0) continue;
    const double p =
        std::max((data.effects[k] * j).trace().real(), 1e-15);
    nll -= data.counts[k] * std::log(p);
  }
  return nll;
}

Mat4 likelihood_gradient(const LikelihoodData& data, const Mat4& j) {
  Mat4 gradient = Mat4::Zero();
  for (std::size_t k = 0; k < data.effects.size(); ++k) {
    if (data.counts[k] <= 0.0) continue;
    const double p =
        std::max((data.effects[k] * j).trace().real(), 1e-12);
    gradient -= (data.counts[k] / (data.total * p)) * data.effects[k];
  }
  return 0.5 * (gradient + gradient.adjoint());
}

Mat2 output_partial_trace(const Mat4& j) {
  Mat2 t = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) t(i, k) += j(2 * a + i, 2 * a + k);
  return t;
}

// Nearest Choi matrix that is PSD and trace preserving, by alternating the
// eigenvalue clip with the affine TP correction.
Mat4 project_cptp(Mat4 j) {
  for (int round = 0; round < 100; ++round) {
    const Mat4 before = j;
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (j + j.adjoint()));
    const Eigen::Vector4d clipped = es.eigenvalues().cwiseMax(0.0);
    j = es.eigenvectors() * clipped.asDiagonal() *
        es.eigenvectors().adjoint();
    const Mat2 excess = output_partial_trace(j) - Mat2::Identity();
    j -= kron22(pauli(0), 0.5 * excess);
    if ((j - before).norm() < 1e-12) break;
  }
  return j;
}

}  // namespace

ReconstructionResult mle_cptp_fit(const CountsTable& t, const SuperOp& init) {
  const LikelihoodData data = likelihood_data(t);
  ReconstructionResult result;

  Mat4 j = project_cptp(choi_of(init).m);
  double objective = negative_log_likelihood(data, j);
  result.objective_trace.push_back(objective);

  double step = 1.0;
  bool converged = false;
  int iterations = 0;
  while (iterations < 5000) {
    ++iterations;
    const Mat4 gradient = likelihood_gradient(data, j);
    Mat4 accepted;
    double accepted_objective = objective;
    bool improved = false;
    for (int backtrack = 0; backtrack < 48; ++backtrack) {
      const Mat4 candidate = project_cptp(j - step * gradient);
      const double candidate_objective =
          negative_log_likelihood(data, candidate);
      if (candidate_objective <= objective) {
        accepted = candidate;
        accepted_objective = candidate_objective;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      converged = true;  // no descent direction at the smallest step
      break;
    }
    const double drop = objective - accepted_objective;
    j = accepted;
    objective = accepted_objective;
    result.objective_trace.push_back(objective);
    step = std::min(step * 2.0, 1e4);
    if (drop <= 1e-10 * std::max(1.0, std::abs(objective))) {
      converged = true;
      break;
    }
  }

  result.choi_estimate.m = j;
  result.superop_estimate = superop_of_choi(result.choi_estimate);
  result.neg_log_likelihood = objective;
  result.iterations = iterations;
  result.converged = converged;
  return result;
}

ReconstructionResult mle_cptp_fit(const CountsTable& t) {
  return mle_cptp_fit(t, depolarizing_channel(1.0));
}

namespace {

// PSD square root with negative eigenvalues clipped.
Mat4 psd_sqrt(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (m + m.adjoint()));
  const Eigen::Vector4d clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

double process_fidelity(const SuperOp& a, const SuperOp& b) {
  for (const SuperOp* s : {&a, &b}) {
    const Mat2 excess =
        output_partial_trace(choi_of(*s).m) - Mat2::Identity();
    if (excess.cwiseAbs().maxCoeff() > 1e-9)
      throw PreconditionError(
          "process fidelity requires trace-preserving channels");
  }
  // tr sqrt(sqrt(A) B sqrt(A)) equals the nuclear norm of sqrt(A) sqrt(B);
  // the singular-value form avoids squaring small eigenvalues and is
  // symmetric in A and B by construction.
  const Mat4 root_a = psd_sqrt(0.5 * choi_of(a).m);
  const Mat4 root_b = psd_sqrt(0.5 * choi_of(b).m);
  const double nuclear =
      Eigen::JacobiSVD<Mat4>(root_a * root_b).singularValues().sum();
  return nuclear * nuclear;
}

PipelineResult full_pipeline(const SuperOp& s, int shots, std::uint64_t seed,
                             double depolarizing_noise) {
  if (depolarizing_noise < 0.0 || depolarizing_noise > 1.0)
    throw ValidationError("depolarizing noise strength must be in [0, 1]");
  SuperOp probed = s;
  if (depolarizing_noise > 0.0)
    probed.m = depolarizing_channel(depolarizing_noise).m * s.m;
  const CountsTable table = shots == 0
                                ? exact_experiment(probed)
                                : simulate_experiment(probed, shots, seed);
  PipelineResult result;
  result.reconstruction = mle_cptp_fit(table);
  result.fidelity = process_fidelity(result.reconstruction.superop_estimate, s);
  result.eigenvalues =
      spectrum(superop_to_affine(result.reconstruction.superop_estimate)
                   .distortion)
          .eigenvalues;
  return result;
}

std::string counts_to_json(const CountsTable& t) {
  nlohmann::ordered_json doc;
  doc["shots"] = t.shots_per_setting;
  doc["seed"] = t.seed;
  nlohmann::ordered_json counts;
  const bool integral = t.shots_per_setting > 0;
  for (int prep = 0; prep < kPrepCount; ++prep) {
    for (int basis = 0; basis < kBasisCount; ++basis) {
      const auto& pair = t.counts[static_cast<std::size_t>(prep)]
                                 [static_cast<std::size_t>(basis)];
      if (integral)
        counts[setting_key(prep, basis)] = {
            static_cast<std::int64_t>(std::llround(pair[0])),
            static_cast<std::int64_t>(std::llround(pair[1]))};
      else
        counts[setting_key(prep, basis)] = {pair[0], pair[1]};
    }
  }
  doc["counts"] = std::move(counts);
  return doc.dump(2);
}

CountsTable counts_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("counts table is not valid JSON: ") +
                          e.what());
  }
  if (!doc.is_object() || !doc.contains("shots") || !doc.contains("seed") ||
      !doc.contains("counts"))
    throw ValidationError(
        "counts table needs the fields shots, seed, and counts");
  CountsTable t;
  if (!doc["shots"].is_number_integer() || doc["shots"].get<int>() < 0)
    throw ValidationError("shots must be a non-negative integer");
  t.shots_per_setting = doc["shots"].get<int>();
  if (!doc["seed"].is_number_integer())
    throw ValidationError("seed must be an integer");
  t.seed = doc["seed"].get<std::uint64_t>();
  const auto& counts = doc["counts"];
  if (!counts.is_object())
    throw ValidationError("counts must be an object keyed by prep/basis");
  for (int prep = 0; prep < kPrepCount; ++prep) {
    for (int basis = 0; basis < kBasisCount; ++basis) {
      const std::string key = setting_key(prep, basis);
      if (!counts.contains(key))
        throw ValidationError("counts table is missing setting " + key);
      const auto& pair = counts[key];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number())
        throw ValidationError("counts for " + key +
                              " must be a two-entry numeric array");
      const double plus = pair[0].get<double>();
      const double minus = pair[1].get<double>();
      if (plus < 0.0 || minus < 0.0)
        throw ValidationError("counts for " + key + " must be non-negative");
      const double expected =
          t.shots_per_setting > 0 ? t.shots_per_setting : 1.0;
      if (std::abs(plus + minus - expected) > 1e-9)
        throw ValidationError("counts for " + key + " must sum to " +
                              (t.shots_per_setting > 0
                                   ? std::to_string(t.shots_per_setting)
                                   : std::string("1")));
      t.counts[static_cast<std::size_t>(prep)]
              [static_cast<std::size_t>(basis)] = {plus, minus};
    }
  }
  return t;
}

}  // namespace chanep
