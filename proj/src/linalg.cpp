#include "chanep/linalg.hpp"

#include <array>
#include <cmath>

namespace chanep {

namespace {

std::array<Mat2, 4> make_paulis() {
  const Complex i(0.0, 1.0);
  std::array<Mat2, 4> p;
  p[0] << 1, 0, 0, 1;
  p[1] << 0, 1, 1, 0;
  p[2] << 0, -i, i, 0;
  p[3] << 1, 0, 0, -1;
  return p;
}

}  // namespace

const Mat2& pauli(int index) {
  static const std::array<Mat2, 4> paulis = make_paulis();
  return paulis.at(static_cast<std::size_t>(index));
}

Mat4 kron22(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Vec4 vec_density(const Mat2& m) {
  Vec4 v;
  v << m(0, 0), m(1, 0), m(0, 1), m(1, 1);
  return v;
}

Mat2 unvec_density(const Vec4& v) {
  Mat2 m;
  m << v(0), v(2), v(1), v(3);
  return m;
}

Mat2 density_from_bloch(const Vec3& r) {
  Mat2 rho = 0.5 * pauli(0);
  for (int k = 0; k < 3; ++k) rho += 0.5 * r(k) * pauli(k + 1);
  return rho;
}

Vec3 bloch_from_density(const Mat2& rho) {
  const Mat2 h = 0.5 * (rho + rho.adjoint());
  Vec3 r;
  for (int k = 0; k < 3; ++k) r(k) = (pauli(k + 1) * h).trace().real();
  return r;
}

Mat3 rodrigues_rotation(const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 cross;
  cross << 0, -axis.z(), axis.y(),
      axis.z(), 0, -axis.x(),
      -axis.y(), axis.x(), 0;
  return c * Mat3::Identity() + s * cross + (1.0 - c) * (axis * axis.transpose());
}

}  // namespace chanep
