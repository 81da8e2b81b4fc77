#pragma once

#include "stochwave/types.hpp"

#include <Eigen/Jacobi>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace stochwave {

template <typename Scalar>
struct HermitianEigen {
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;

  Vector<RealScalar> values;  // ascending
  Matrix<Scalar> vectors;     // column j pairs with values(j)
  int sweeps = 0;
  bool converged = false;
};

/// Frobenius norm of the strictly off-diagonal part.
template <typename Derived>
typename Derived::RealScalar off_diagonal_norm(const Eigen::MatrixBase<Derived>& a) {
  typename Derived::RealScalar sum(0);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += Eigen::numext::abs2(a(i, j));
  return std::sqrt(sum);
}

/// Cyclic Jacobi eigensolver for a Hermitian (or real symmetric) matrix.
///
/// Sweeps every (p, q) pair with a two-sided rotation J^* H J that zeroes
/// H(p, q), until the off-diagonal Frobenius mass falls below
/// `tolerance * ||H||_F`. Only the upper triangle's conjugate symmetry is
/// assumed; the input is not checked.
template <typename Derived>
HermitianEigen<typename Derived::Scalar> jacobi_eigen(
    const Eigen::MatrixBase<Derived>& matrix,
    typename Derived::RealScalar tolerance = typename Derived::RealScalar(1e-12),
    int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using RealScalar = typename Derived::RealScalar;
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("jacobi_eigen: matrix must be square");

  const Eigen::Index n = matrix.rows();
  Matrix<Scalar> a = matrix;
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const RealScalar threshold = tolerance * a.norm();

  HermitianEigen<Scalar> result;
  while (off_diagonal_norm(a) > threshold) {
    if (result.sweeps == max_sweeps) break;
    ++result.sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        Eigen::JacobiRotation<Scalar> rot;
        if (!rot.makeJacobi(a, p, q)) continue;
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        v.applyOnTheRight(p, q, rot);
      }
    }
  }
  result.converged = off_diagonal_norm(a) <= threshold;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto diag = [&](Eigen::Index i) { return Eigen::numext::real(a(i, i)); };
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return diag(i) < diag(j); });

  result.values.resize(n);
  result.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    result.values(j) = diag(order[static_cast<std::size_t>(j)]);
    result.vectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return result;
}

/// max_j ||H q_j - lambda_j q_j||.
template <typename Derived, typename Scalar>
typename Derived::RealScalar eigen_residual(const Eigen::MatrixBase<Derived>& matrix,
                                            const HermitianEigen<Scalar>& eig) {
  typename Derived::RealScalar worst(0);
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    const auto r = (matrix * eig.vectors.col(j) - eig.values(j) * eig.vectors.col(j)).norm();
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace stochwave
