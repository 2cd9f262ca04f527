// types.hpp - numeric aliases

#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace wgqed {

using Complex = std::complex<double>;
using ComplexX = std::complex<long double>;  // extended precision for direct solves
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

}  // namespace wgqed
