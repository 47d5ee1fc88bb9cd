#include "relaxflux/core/eigen_block.hpp"

#include <numbers>

namespace relaxflux {

std::array<double, 3> cubic_real_roots(double b, double c, double d) {
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  const double tol = 1e-9 * std::max({1.0, b * b, std::abs(c)});
  std::array<double, 3> r;
  if (std::abs(p) <= tol) {
    if (std::abs(q) > 1e-9 * std::max({1.0, std::abs(b * b * b), std::abs(d)})) {
      throw SolverError(ErrorKind::NonRealSpectrum, "cubic has one real and two complex roots");
    }
    r = {shift, shift, shift};
  } else {
    if (p > 0.0) {
      throw SolverError(ErrorKind::NonRealSpectrum, "cubic has one real and two complex roots");
    }
    double arg = (3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p);
    if (std::abs(arg) > 1.0 + 1e-9) {
      throw SolverError(ErrorKind::NonRealSpectrum, "cubic discriminant indicates complex roots");
    }
    arg = std::clamp(arg, -1.0, 1.0);
    const double amp = 2.0 * std::sqrt(-p / 3.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      r[k] = shift + amp * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
    }
  }
  for (double& x : r) {
    const double f = ((x + b) * x + c) * x + d;
    const double fp = (3.0 * x + 2.0 * b) * x + c;
    if (std::abs(fp) > 1e-8) x -= f / fp;
  }
  std::sort(r.begin(), r.end());
  return r;
}

RealEigen<3> eig_real_3x3(const Mat3& K) {
  if (!K.allFinite()) throw SolverError(ErrorKind::NonFiniteState, "matrix has non-finite entries");
  const double scale = K.cwiseAbs().maxCoeff();
  if (scale == 0.0) return {Vec3::Zero(), Mat3::Identity()};
  const Mat3 A = K / scale;
  const double tr = A.trace();
  const double minors = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) + A(0, 0) * A(2, 2) -
                        A(0, 2) * A(2, 0) + A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
  const double det = A.determinant();
  const auto roots = cubic_real_roots(-tr, minors, -det);
  Vec3 vals(roots[0], roots[1], roots[2]);
  RealEigen<3> e = detail::vectors_for<3>(A, vals);
  e.values *= scale;
  return e;
}

RealEigen<4> eig_real_4x4_reducible(const Mat4& K) {
  if (K(0, 1) != 0.0 || K(0, 2) != 0.0 || K(0, 3) != 0.0) {
    throw SolverError(ErrorKind::InvalidArgument, "4x4 block is not reducible along its first row");
  }
  const RealEigen<3> inner = eig_real_3x3(K.block<3, 3>(1, 1));
  Vec4 vals;
  vals << K(0, 0), inner.values;
  return detail::vectors_for<4>(K, vals);
}

}  // namespace relaxflux
