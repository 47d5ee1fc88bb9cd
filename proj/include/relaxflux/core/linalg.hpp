#pragma once

#include <Eigen/Dense>

namespace relaxflux {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;

template <int N>
using Mat = Eigen::Matrix<double, N, N>;

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using Vec4 = Vec<4>;
using Vec6 = Vec<6>;
using Vec8 = Vec<8>;
using Vec12 = Vec<12>;
using Mat3 = Mat<3>;
using Mat4 = Mat<4>;

}  // namespace relaxflux
