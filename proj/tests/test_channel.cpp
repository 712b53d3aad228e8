#include "chanep/channel.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <doctest.h>

#include "chanep/channel_io.hpp"
#include "chanep/errors.hpp"
#include "test_util.hpp"

using namespace chanep;
using namespace chanep::test;

TEST_CASE("principal square root of sigma_x") {
  const Mat2 root = sqrt_pauli_x();
  CHECK(max_abs_diff(root * root, pauli(1)) < 1e-15);
  // Principal branch keeps eigenvalues {1, i}: trace = 1 + i.
  CHECK(std::abs(root.trace() - Complex(1.0, 1.0)) < 1e-15);
  CHECK(max_abs_diff(root * root.adjoint(), pauli(0)) < 1e-15);
}

TEST_CASE("kraus_to_superop maps the trivial set to the identity") {
  CHECK(max_abs_diff(kraus_to_superop({pauli(0)}).m, Mat4::Identity()) == 0.0);
  CHECK_THROWS_AS(kraus_to_superop({}), ValidationError);
}

TEST_CASE("endpoint channels reduce to their published Bloch forms") {
  // Pauli-trace oracle on the raw Kraus sets, then frozen matrices.
  const AffineRep oracle1 = affine_from_kraus_oracle(kraus_e1());
  const AffineRep oracle2 = affine_from_kraus_oracle(kraus_e2());

  Mat3 expected1;
  expected1 << 0, 0, 0,
      0, 0, -0.5,
      0, 0.5, 0;
  Mat3 expected2;
  expected2 << 0, 0, 0,
      0, 0.5, 0,
      0, 0, -0.5;

  CHECK(max_abs_diff(oracle1.distortion, expected1) < 1e-15);
  CHECK(oracle1.shift.norm() < 1e-15);
  CHECK(max_abs_diff(oracle2.distortion, expected2) < 1e-15);
  CHECK(oracle2.shift.norm() < 1e-15);

  // Production conversion path agrees with the oracle.
  const AffineRep a1 = superop_to_affine(channel_e1());
  const AffineRep a2 = superop_to_affine(channel_e2());
  CHECK(max_abs_diff(a1.distortion, expected1) < 1e-14);
  CHECK(a1.shift.norm() < 1e-14);
  CHECK(max_abs_diff(a2.distortion, expected2) < 1e-14);
  CHECK(a2.shift.norm() < 1e-14);
}

TEST_CASE("superop_to_affine identity and reset") {
  const AffineRep id = superop_to_affine(identity_channel());
  CHECK(max_abs_diff(id.distortion, Mat3::Identity()) < 1e-15);
  CHECK(id.shift.norm() < 1e-15);

  // Reset built from its Kraus set {|0><0|, |0><1|} rather than the fixture.
  Mat2 k0 = Mat2::Zero(), k1 = Mat2::Zero();
  k0(0, 0) = 1.0;
  k1(0, 1) = 1.0;
  const AffineRep reset = superop_to_affine(kraus_to_superop({k0, k1}));
  CHECK(max_abs_diff(reset.distortion, Mat3::Zero()) < 1e-15);
  CHECK(max_abs_diff(reset.shift, Vec3(0, 0, 1)) < 1e-15);
  CHECK(max_abs_diff(reset.distortion,
                     superop_to_affine(reset_channel()).distortion) < 1e-15);
}

TEST_CASE("superop_to_affine rejects non-trace-preserving maps") {
  CHECK_THROWS_AS(superop_to_affine(SuperOp{0.5 * Mat4::Identity()}),
                  PreconditionError);
  // rho -> sx rho sz changes the trace, so the TP check fires.
  const Mat2 a = pauli(1), b = pauli(3);
  SuperOp skew{kron22(b.conjugate(), a)};
  CHECK_THROWS_AS(superop_to_affine(skew), PreconditionError);
  // rho -> A rho A^-1 preserves the trace but maps some Hermitian inputs
  // to non-Hermitian outputs, which shows up as an imaginary part in the
  // Bloch-basis matrix.
  Mat2 sim_l = Mat2::Zero(), sim_r = Mat2::Zero();
  sim_l.diagonal() << 1.0, 2.0;
  sim_r.diagonal() << 1.0, 0.5;
  SuperOp similarity{kron22(sim_r.transpose(), sim_l)};
  CHECK_THROWS_AS(superop_to_affine(similarity), ValidationError);
}

TEST_CASE("affine round trip preserves the channel action") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    AffineRep a;
    for (int r = 0; r < 3; ++r) {
      a.shift(r) = 0.5 * rng.normal();
      for (int c = 0; c < 3; ++c) a.distortion(r, c) = rng.normal();
    }
    const SuperOp s = affine_to_superop(a);
    const AffineRep back = superop_to_affine(s);
    CHECK(max_abs_diff(back.distortion, a.distortion) < 1e-12);
    CHECK(max_abs_diff(back.shift, a.shift) < 1e-12);
    // Affine action and superoperator action agree on random states.
    for (int k = 0; k < 5; ++k) {
      const Mat2 rho = random_density(rng);
      const Vec3 direct = a.distortion * bloch_from_density(rho) + a.shift;
      const Vec3 via_superop = bloch_from_density(apply_linear(s, rho));
      CHECK(max_abs_diff(direct, via_superop) < 1e-12);
    }
  }
}

TEST_CASE("kraus and superop actions agree with the direct oracle") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const KrausSet kraus = random_kraus(rng, 1 + trial % 4);
    const SuperOp s = kraus_to_superop(kraus);
    for (int k = 0; k < 5; ++k) {
      const Mat2 rho = random_density(rng);
      CHECK(max_abs_diff(apply_linear(s, rho), apply_kraus_direct(kraus, rho)) <
            1e-12);
    }
  }
}

TEST_CASE("choi matrix matches the definition-based oracle") {
  const auto cases = std::vector<KrausSet>{kraus_e1(), kraus_e2(), {pauli(0)}};
  for (const KrausSet& kraus : cases) {
    const Mat4 oracle = choi_from_action_oracle(
        [&](const Mat2& unit) { return apply_kraus_direct(kraus, unit); });
    const Mat4 produced = choi_of(kraus_to_superop(kraus)).m;
    CHECK(max_abs_diff(produced, oracle) < 1e-14);
    CHECK(std::abs(produced.trace() - Complex(2.0)) < 1e-13);
  }
}

TEST_CASE("choi eigenvalues of the fixtures") {
  const auto id_eigs = sorted_real_eigenvalues(choi_of(identity_channel()).m);
  CHECK(std::abs(id_eigs[3] - 2.0) < 1e-14);
  CHECK(std::abs(id_eigs[0]) < 1e-14);
  CHECK(std::abs(id_eigs[1]) < 1e-14);
  CHECK(std::abs(id_eigs[2]) < 1e-14);

  // Orthogonal unitary components with weights {1/4, 1/4, 1/2} scaled by the
  // trace-2 normalization.
  const auto e2_eigs = sorted_real_eigenvalues(choi_of(channel_e2()).m);
  CHECK(std::abs(e2_eigs[0] - 0.0) < 1e-14);
  CHECK(std::abs(e2_eigs[1] - 0.5) < 1e-14);
  CHECK(std::abs(e2_eigs[2] - 0.5) < 1e-14);
  CHECK(std::abs(e2_eigs[3] - 1.0) < 1e-14);

  const auto dep_eigs =
      sorted_real_eigenvalues(choi_of(depolarizing_channel(1.0)).m);
  for (double v : dep_eigs) CHECK(std::abs(v - 0.5) < 1e-14);
}

TEST_CASE("choi round trip") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const SuperOp s = random_cptp(1000 + static_cast<std::uint64_t>(trial));
    CHECK(max_abs_diff(superop_of_choi(choi_of(s)).m, s.m) == 0.0);
  }
}

TEST_CASE("check_cptp separates physical and unphysical maps") {
  for (const auto& s : {channel_e1(), channel_e2(), channel_e3(),
                        identity_channel(), reset_channel()}) {
    const CPTPReport r = check_cptp(s);
    CHECK(r.is_cp);
    CHECK(r.is_tp);
    CHECK(r.min_choi_eigenvalue >= -1e-12);
    CHECK(r.tp_residual <= 1e-12);
  }

  // Transpose-like map diag(1, 1, -1): trace preserving but not CP.
  AffineRep flip;
  flip.distortion = Vec3(1, 1, -1).asDiagonal();
  const CPTPReport r = check_cptp(affine_to_superop(flip));
  CHECK_FALSE(r.is_cp);
  CHECK(r.is_tp);
  CHECK(r.min_choi_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("mix reproduces the closed-form interpolation") {
  const std::vector<SuperOp> pair{channel_e1(), channel_e2()};
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    const SuperOp s = mix(pair, {1.0 - p, p});
    const AffineRep a = superop_to_affine(s);
    CHECK(max_abs_diff(a.distortion, interpolated_distortion(p)) < 1e-14);
    CHECK(a.shift.norm() < 1e-14);
  }
}

TEST_CASE("mix validates its inputs") {
  const std::vector<SuperOp> pair{channel_e1(), channel_e2()};
  CHECK_THROWS_AS(mix({}, {}), ValidationError);
  CHECK_THROWS_AS(mix(pair, {0.5}), ValidationError);
  CHECK_THROWS_AS(mix(pair, {0.7, 0.7}), ValidationError);
  CHECK_THROWS_AS(mix(pair, {1.5, -0.5}), ValidationError);

  // Singleton and zero-weight mixtures are legal.
  CHECK(max_abs_diff(mix({channel_e2()}, {1.0}).m, channel_e2().m) == 0.0);
  CHECK(max_abs_diff(mix(pair, {1.0, 0.0}).m, channel_e1().m) == 0.0);

  const SuperOp uniform =
      mix({channel_e1(), channel_e2(), channel_e3()}, {1 / 3.0, 1 / 3.0, 1 / 3.0});
  CHECK(check_cptp(uniform).is_cp);
}

TEST_CASE("apply_channel on reference states") {
  const Mat2 ground = density_from_bloch(Vec3(0, 0, 1));
  CHECK(max_abs_diff(apply_channel(identity_channel(), ground), ground) < 1e-15);

  // Second endpoint sends the north pole to (0, 0, -1/2).
  const Vec3 out = bloch_from_density(apply_channel(channel_e2(), ground));
  CHECK(max_abs_diff(out, Vec3(0, 0, -0.5)) < 1e-14);

  // Midpoint mixture maps (0,1,0) to (0, 1/4, 1/4).
  const SuperOp mid = mix({channel_e1(), channel_e2()}, {0.5, 0.5});
  const Vec3 mid_out =
      bloch_from_density(apply_channel(mid, density_from_bloch(Vec3(0, 1, 0))));
  CHECK(max_abs_diff(mid_out, Vec3(0, 0.25, 0.25)) < 1e-14);

  // Outputs stay Hermitian with unit trace.
  Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    const Mat2 rho = random_density(rng);
    const Mat2 img = apply_channel(mid, rho);
    CHECK((img - img.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(img.trace() - Complex(1.0)) < 1e-14);
  }

  Mat2 unnormalized = Mat2::Identity();
  CHECK_THROWS_AS(apply_channel(identity_channel(), unnormalized),
                  ValidationError);
}

TEST_CASE("builtin rotation fixtures") {
  // Rotation by -pi/2 about (1,1,1)/sqrt(3) has the closed entrywise form
  // (1/3) [[1, 1+sqrt3, 1-sqrt3], [1-sqrt3, 1, 1+sqrt3], [1+sqrt3, 1-sqrt3, 1]].
  const double s3 = std::sqrt(3.0);
  Mat3 expected;
  expected << 1, 1 + s3, 1 - s3,
      1 - s3, 1, 1 + s3,
      1 + s3, 1 - s3, 1;
  expected /= 3.0;
  CHECK(max_abs_diff(superop_to_affine(channel_e3()).distortion, expected) <
        1e-12);

  CHECK(max_abs_diff(
            superop_to_affine(rotation_channel(Vec3(0, 1, 0), 0.0)).distortion,
            Mat3::Identity()) < 1e-15);

  const Mat3 half_turn =
      superop_to_affine(rotation_channel(Vec3(0, 0, 1), std::numbers::pi))
          .distortion;
  CHECK(max_abs_diff(half_turn, Mat3(Vec3(-1, -1, 1).asDiagonal())) < 1e-12);

  // Unitary channels have unitary superoperators.
  const Mat4 u = channel_e3().m;
  CHECK(max_abs_diff(u * u.adjoint(), Mat4::Identity()) < 1e-12);
}

TEST_CASE("builtin_channel name handling") {
  CHECK(max_abs_diff(builtin_channel("E2").m, channel_e2().m) == 0.0);
  CHECK(max_abs_diff(builtin_channel("depolarizing:0.25").m,
                     depolarizing_channel(0.25).m) == 0.0);
  CHECK(max_abs_diff(builtin_channel("rotation:0,0,1:1.5").m,
                     rotation_channel(Vec3(0, 0, 1), 1.5).m) < 1e-15);
  CHECK_THROWS_AS(builtin_channel("amplitude_damping"), ValidationError);
  CHECK_THROWS_AS(builtin_channel("depolarizing:1.6"), ValidationError);
  CHECK_THROWS_AS(builtin_channel("rotation:0,0,2:1.0"), ValidationError);
  CHECK_THROWS_AS(rotation_channel(Vec3(0, 0, 2), 1.0), ValidationError);
}

TEST_CASE("random_cptp is deterministic and physical") {
  const SuperOp a = random_cptp(42), b = random_cptp(42), c = random_cptp(43);
  CHECK(max_abs_diff(a.m, b.m) == 0.0);
  CHECK(max_abs_diff(a.m, c.m) > 1e-3);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CPTPReport r = check_cptp(random_cptp(seed));
    CHECK(r.is_cp);
    CHECK(r.is_tp);
  }
}

TEST_CASE("channel spectra: contraction and conjugate closure") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const SuperOp s = random_cptp(seed);
    const AffineRep a = superop_to_affine(s);
    const Eigen::Vector3cd eigs =
        Eigen::EigenSolver<Mat3>(a.distortion).eigenvalues();

    // Unit-disk bound for distortion eigenvalues of CPTP maps.
    for (int i = 0; i < 3; ++i) CHECK(std::abs(eigs(i)) <= 1.0 + 1e-10);

    // Real matrix: non-real eigenvalues come in conjugate pairs.
    int complex_count = 0;
    for (int i = 0; i < 3; ++i)
      if (std::abs(eigs(i).imag()) > 1e-10) ++complex_count;
    CHECK(complex_count % 2 == 0);

    // Superoperator spectrum is {1} plus the distortion spectrum.
    Eigen::ComplexEigenSolver<Mat4> es4(s.m);
    std::vector<Complex> super(es4.eigenvalues().data(),
                               es4.eigenvalues().data() + 4);
    std::vector<Complex> expected{eigs(0), eigs(1), eigs(2), Complex(1.0)};
    for (const Complex& want : expected) {
      double best = 1e9;
      for (const Complex& got : super) best = std::min(best, std::abs(got - want));
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("channel json round trips preserve the action") {
  const std::string dir = "./io_test_tmp";
  std::filesystem::create_directories(dir);

  const SuperOp original = channel_e1();
  save_channel_json_affine(dir + "/a.json", "endpoint-1", original);
  save_channel_json_superop(dir + "/s.json", "endpoint-1", original);
  save_channel_json_kraus(dir + "/k.json", "endpoint-1", kraus_e1());

  for (const std::string file : {"a.json", "s.json", "k.json"}) {
    const NamedChannel loaded = load_channel_json(dir + "/" + file);
    CHECK(loaded.name == "endpoint-1");
    CHECK(max_abs_diff(loaded.channel.m, original.m) < 1e-12);
  }

  CHECK(max_abs_diff(resolve_channel(dir + "/a.json").m, original.m) < 1e-12);
  CHECK(max_abs_diff(resolve_channel("E1").m, original.m) == 0.0);
}

TEST_CASE("channel json schema violations are rejected") {
  namespace fs = std::filesystem;
  const std::string dir = "./io_test_tmp";
  fs::create_directories(dir);

  auto write = [&](const std::string& file, const std::string& body) {
    std::ofstream out(dir + "/" + file);
    out << body;
  };

  write("two_reprs.json", R"({"name":"x","repr":"affine",
    "shift":[0,0,0],
    "distortion":[[1,0,0],[0,1,0],[0,0,1]],
    "superop":[]})");
  CHECK_THROWS_AS(load_channel_json(dir + "/two_reprs.json"), ValidationError);

  write("missing_repr.json", R"({"name":"x","shift":[0,0,0]})");
  CHECK_THROWS_AS(load_channel_json(dir + "/missing_repr.json"), ValidationError);

  write("bad_repr.json", R"({"name":"x","repr":"pauli","kraus":[]})");
  CHECK_THROWS_AS(load_channel_json(dir + "/bad_repr.json"), ValidationError);

  write("short_shift.json", R"({"name":"x","repr":"affine",
    "shift":[0,0],
    "distortion":[[1,0,0],[0,1,0],[0,0,1]]})");
  CHECK_THROWS_AS(load_channel_json(dir + "/short_shift.json"), ValidationError);

  write("not_json.json", "E1 E2 E3");
  CHECK_THROWS_AS(load_channel_json(dir + "/not_json.json"), ValidationError);

  CHECK_THROWS_AS(load_channel_json(dir + "/does_not_exist.json"),
                  ValidationError);
}
