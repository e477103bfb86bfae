#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace ccrweyl {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Side on which a Weyl multiplier acts.
enum class Side { Left, Right };

}  // namespace ccrweyl
