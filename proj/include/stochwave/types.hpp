#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace stochwave {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar, int Rows = Eigen::Dynamic>
using Vector = Eigen::Matrix<Scalar, Rows, 1>;

template <typename Scalar, int Rows = Eigen::Dynamic, int Cols = Rows>
using Matrix = Eigen::Matrix<Scalar, Rows, Cols>;

using VectorXr = Vector<Real>;
using VectorXc = Vector<Complex>;
using MatrixXc = Matrix<Complex>;

inline constexpr Real two_pi = 2.0 * std::numbers::pi_v<Real>;

// Unit phasor e^{i theta}.
inline Complex phasor(Real theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace stochwave
