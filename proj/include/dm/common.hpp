#pragma once
// Shared scalar/matrix aliases and Pauli algebra used across the library.

#include <Eigen/Dense>
#include <complex>
#include <cmath>

namespace dm {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

inline Mat2 pauli(int j) {
  Mat2 s = Mat2::Zero();
  switch (j) {
    case 0: s(0, 0) = 1; s(1, 1) = 1; break;
    case 1: s(0, 1) = 1; s(1, 0) = 1; break;
    case 2: s(0, 1) = -iu; s(1, 0) = iu; break;
    case 3: s(0, 0) = 1; s(1, 1) = -1; break;
  }
  return s;
}

// Kronecker product for small dense complex matrices.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace dm
