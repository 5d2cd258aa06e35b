#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace levlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

/// Extended reals are plain doubles; the endpoints of a compactified interval
/// are the IEEE infinities below and every function handles them analytically.
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace levlab
