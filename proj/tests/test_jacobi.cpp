#include "oracles.hpp"
#include "stochwave/jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <random>

using namespace stochwave;
using Eigen::Index;

namespace {

MatrixXc random_hermitian(Index n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g;
  MatrixXc b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) b(i, j) = Complex(g(gen), g(gen));
  return b + b.adjoint();
}

}  // namespace

TEST(Jacobi, MatchesSelfAdjointEigenSolver) {
  for (Index n : {1, 2, 3, 5, 8, 16, 32}) {
    const MatrixXc h = random_hermitian(n, static_cast<unsigned>(n));
    const auto eig = jacobi_eigen(h);
    ASSERT_TRUE(eig.converged) << "n=" << n;
    Eigen::SelfAdjointEigenSolver<MatrixXc> ref(h);
    const double scale = h.norm();
    EXPECT_LE((eig.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12 * scale) << "n=" << n;
    EXPECT_LE(eigen_residual(h, eig), 1e-11 * scale);
    const MatrixXc gram = eig.vectors.adjoint() * eig.vectors;
    EXPECT_LE((gram - MatrixXc::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Jacobi, RealSymmetric) {
  Eigen::MatrixXd a(3, 3);
  a << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  const auto eig = jacobi_eigen(a);
  // Eigenvalues of the second-difference matrix are 2 - 2 cos(j pi / 4).
  for (int j = 1; j <= 3; ++j) EXPECT_NEAR(eig.values(j - 1), 2.0 - 2.0 * std::cos(j * oracle::pi / 4.0), 1e-13);
}

TEST(Jacobi, CubicCharacteristicPolynomial) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const MatrixXc h = random_hermitian(3, 100 + seed);
    // det(l I - H) = l^3 - tr(H) l^2 + c2 l - det(H), c2 = sum of principal 2x2 minors.
    const double tr = h.trace().real();
    double c2 = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) c2 += (h(i, i) * h(j, j) - h(i, j) * h(j, i)).real();
    const double det = h.determinant().real();
    const auto roots = oracle::cubic_real_roots(-tr, c2, -det);
    const auto eig = jacobi_eigen(h);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(eig.values(j), roots[j], 1e-10 * h.norm());
  }
}

TEST(Jacobi, DiagonalInputNeedsNoSweeps) {
  MatrixXc h = MatrixXc::Zero(3, 3);
  h.diagonal() << 3.0, -1.0, 2.0;
  const auto eig = jacobi_eigen(h);
  EXPECT_EQ(eig.sweeps, 0);
  EXPECT_TRUE(eig.converged);
  EXPECT_EQ(eig.values(0), -1.0);
  EXPECT_EQ(eig.values(2), 3.0);
}

TEST(Jacobi, RejectsNonSquare) {
  EXPECT_THROW(jacobi_eigen(MatrixXc(2, 3)), std::invalid_argument);
}
