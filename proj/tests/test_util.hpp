#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "chanep/channel.hpp"
#include "chanep/linalg.hpp"

namespace chanep::test {

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Direct sum_k K rho K^dag by plain matrix products; reference path that
// bypasses vectorization entirely.
inline Mat2 apply_kraus_direct(const KrausSet& kraus, const Mat2& x) {
  Mat2 out = Mat2::Zero();
  for (const Mat2& k : kraus) out += k * x * k.adjoint();
  return out;
}

// Bloch-picture extraction from a Kraus set via Pauli traces:
//   distortion(i, j) = tr(sigma_i E(sigma_j)) / 2,  shift = bloch(E(I / 2)).
inline AffineRep affine_from_kraus_oracle(const KrausSet& kraus) {
  AffineRep a;
  for (int j = 0; j < 3; ++j) {
    const Mat2 image = apply_kraus_direct(kraus, pauli(j + 1));
    for (int i = 0; i < 3; ++i)
      a.distortion(i, j) = 0.5 * (pauli(i + 1) * image).trace().real();
  }
  a.shift = bloch_from_density(apply_kraus_direct(kraus, 0.5 * pauli(0)));
  return a;
}

// Choi matrix straight from its definition J = sum_ij E(|i><j|) (x) |i><j|
// (output factor first), for any linear action provided by the caller.
template <typename Action>
Mat4 choi_from_action_oracle(Action&& action) {
  Mat4 j = Mat4::Zero();
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj) {
      Mat2 unit = Mat2::Zero();
      unit(i, jj) = 1.0;
      const Mat2 image = action(unit);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) j(2 * a + i, 2 * b + jj) += image(a, b);
    }
  return j;
}

// Closed form of the two-endpoint mixture in the Bloch picture.
inline Mat3 interpolated_distortion(double p) {
  Mat3 e;
  e << 0, 0, 0,
      0, p, p - 1.0,
      0, 1.0 - p, -p;
  return 0.5 * e;
}

inline std::vector<double> sorted_real_eigenvalues(const Mat4& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (hermitian + hermitian.adjoint()));
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace chanep::test
