#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "torus_qpt/bloch.hpp"
#include "torus_qpt/eigensolve.hpp"

using namespace tqpt;
using testing_support::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix random_hermitian(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST(Eigensolve, TwoByTwo) {
  ComplexMatrix h(2, 2);
  h << 1.0, Complex(0.0, 2.0), Complex(0.0, -2.0), -1.0;
  const auto w = eigenvalues(h);
  EXPECT_NEAR(w[0], -std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(w[1], std::sqrt(5.0), 1e-14);
}

TEST(Eigensolve, OpenFourSiteChain) {
  const auto w = eigenvalues(peierls_ring(1.0, 4, 0.0, 0.0, 1.0));
  const double g = (1 + std::sqrt(5.0)) / 2;
  EXPECT_NEAR(w[0], -g, 1e-14);
  EXPECT_NEAR(w[1], -1 / g, 1e-14);
  EXPECT_NEAR(w[2], 1 / g, 1e-14);
  EXPECT_NEAR(w[3], g, 1e-14);
}

TEST(Eigensolve, DiagonalIsSorted) {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(0, 0) = 3;
  h(1, 1) = -1;
  h(2, 2) = 2;
  h(3, 3) = 0;
  EXPECT_EQ(eigenvalues(h), (std::vector<double>{-1, 0, 2, 3}));
}

TEST(Eigensolve, AgreesWithJacobiOracle) {
  for (unsigned seed = 1; seed <= 4; ++seed) {
    const auto h = random_hermitian(12, seed);
    EXPECT_LT(max_abs_diff(oracle::eigvals(testing_support::from_eigen(h)), eigenvalues(h)), 1e-11);
  }
}

TEST(Eigensolve, VectorsAreOrthonormalEigenpairs) {
  const auto h = random_hermitian(30, 7);
  const Spectrum s = eigh(h, true);
  ASSERT_TRUE(s.vectors.has_value());
  const ComplexMatrix& v = *s.vectors;
  const ComplexMatrix gram = v.adjoint() * v;
  EXPECT_LT((gram - ComplexMatrix::Identity(30, 30)).cwiseAbs().maxCoeff(), 1e-12);
  for (int i = 0; i < 30; ++i) {
    EXPECT_LT((h * v.col(i) - s.values[i] * v.col(i)).norm(), 1e-12);
  }
}

TEST(Eigensolve, TraceIsPreserved) {
  const auto h = random_hermitian(25, 3);
  double sum = 0.0;
  for (double x : eigenvalues(h)) sum += x;
  EXPECT_NEAR(sum, h.trace().real(), 1e-11);
}

TEST(Eigensolve, ConjugateFluxSameSpectrum) {
  EXPECT_LT(max_abs_diff(eigenvalues(peierls_ring(0.4, 12, 0.7, 0.9, 1.0)),
                         eigenvalues(peierls_ring(0.4, 12, 0.7, -0.9, 1.0))),
            1e-13);
}

TEST(Eigensolve, RejectsNonHermitian) {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 1) = 1.0;
  EXPECT_THROW(eigh(h), NotHermitian);
  ComplexMatrix r(2, 3);
  r.setZero();
  EXPECT_THROW(eigh(r), std::invalid_argument);
}

TEST(Eigensolve, ToleratesRoundoffAsymmetry) {
  ComplexMatrix h = random_hermitian(6, 11);
  h(0, 1) += Complex(1e-15, 0.0);
  EXPECT_NO_THROW(eigh(h));
}

TEST(Eigensolve, SquareClosedFormMatchesDense) {
  for (int N : {2, 3, 8, 17, 64}) {
    for (double phi : {0.0, kPi / 4, kPi / 2}) {
      for (double l2k : {-2.0, 0.0, 1.0}) {
        for (int eta : {0, 1}) {
          const auto closed = square_ring_closed_form(N, phi, l2k, eta, 1.3);
          const auto dense = eigenvalues(uniform_ring(l2k, N, eta, phi, 1.3));
          EXPECT_LT(max_abs_diff(closed.values, dense), 1e-10) << N << " " << phi << " " << l2k << " " << eta;
        }
      }
    }
  }
  EXPECT_THROW(square_ring_closed_form(8, 0.0, 0.0, 2, 1.0), std::invalid_argument);
}

TEST(Eigensolve, DegenerateClusters) {
  const auto c = degenerate_clusters({-1.0, 0.0, 1e-12, 2.0, 2.0, 2.0 + 5e-10, 3.0});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (std::pair<int, int>{1, 3}));
  EXPECT_EQ(c[1], (std::pair<int, int>{3, 6}));
}

TEST(Eigensolve, FingerprintIsStable) {
  const auto h = random_hermitian(5, 2);
  EXPECT_EQ(matrix_fingerprint(h), matrix_fingerprint(h));
  ComplexMatrix g = h;
  g(0, 0) += 1.0;
  EXPECT_NE(matrix_fingerprint(h), matrix_fingerprint(g));
}
