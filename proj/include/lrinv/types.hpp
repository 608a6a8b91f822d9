#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lrinv {

using cplx = std::complex<double>;

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;
using CVec4 = Eigen::Vector4cd;
using CRow4 = Eigen::RowVector4cd;

// Phase-space vectors and matrices are always ordered X = (x1, p1, x2, p2).

}  // namespace lrinv
