#pragma once

#include <complex>

#include <Eigen/Dense>

namespace chanep {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3d;
using Mat3c = Eigen::Matrix3cd;
using Mat4 = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Vec4 = Eigen::Vector4cd;

// Pauli matrices; index 0..3 gives I, X, Y, Z.
const Mat2& pauli(int index);

// Kronecker product of 2x2 blocks; row index of the result is 2*i_a + i_b.
Mat4 kron22(const Mat2& a, const Mat2& b);

// Column-stacking vectorization of a 2x2 matrix: {m11, m21, m12, m22}.
Vec4 vec_density(const Mat2& m);
Mat2 unvec_density(const Vec4& v);

// rho = (I + r . sigma) / 2 and its inverse (inverse takes the Hermitian part).
Mat2 density_from_bloch(const Vec3& r);
Vec3 bloch_from_density(const Mat2& rho);

// Rotation about a unit axis by `angle` (right-handed). The axis must be
// normalized; callers validate.
Mat3 rodrigues_rotation(const Vec3& axis, double angle);

}  // namespace chanep
