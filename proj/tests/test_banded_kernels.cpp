#include <doctest.h>

#include "limitops/banded.hpp"
#include "test_util.hpp"

using namespace limitops;
using testutil::Rng;

namespace {

BandedMatrix randomBanded(Rng& rng, Index rows, Index cols, Index sub, Index super) {
  BandedMatrix M = BandedMatrix::zero(rows, cols, sub, super);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = std::max<Index>(0, c - super); r <= std::min(rows - 1, c + sub); ++r)
      M.set(r, c, rng.unitDisk());
  }
  return M;
}

}  // namespace

TEST_CASE("banded mat-vec agrees with dense") {
  Rng rng(3);
  BandedMatrix M = randomBanded(rng, 40, 33, 4, 2);
  Eigen::VectorXcd x(33);
  for (Index i = 0; i < 33; ++i) x(i) = rng.unitDisk();
  CHECK((M.mul(x) - M.dense() * x).norm() < 1e-12);
}

TEST_CASE("gram matrix matches dense M^H M") {
  Rng rng(5);
  BandedMatrix M = randomBanded(rng, 30, 24, 3, 1);
  Eigen::MatrixXcd G = gram(M).dense();
  Eigen::MatrixXcd Gd = M.dense().adjoint() * M.dense();
  CHECK((G - Gd).norm() < 1e-12);
}

TEST_CASE("inertia counts agree with dense eigenvalues") {
  Rng rng(9);
  BandedMatrix M = randomBanded(rng, 26, 20, 2, 2);
  HermitianBanded G = gram(M);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.dense());
  auto evs = es.eigenvalues();
  for (double sigma : {0.01, 0.2, 0.5, 1.5, 4.0}) {
    Index expected = 0;
    for (Index i = 0; i < evs.size(); ++i)
      if (evs(i) < sigma) ++expected;
    CHECK(eigenvalue_count_below(G, sigma) == expected);
  }
}

TEST_CASE("smallest eigenvalue bracket is tight") {
  Rng rng(21);
  BandedMatrix M = randomBanded(rng, 50, 44, 3, 2);
  HermitianBanded G = gram(M);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.dense());
  double lambda = es.eigenvalues().minCoeff();
  EigenBracket br = smallest_eigenvalue(G);
  CHECK(br.lo <= lambda + 1e-10);
  CHECK(br.hi >= lambda - 1e-10);
  CHECK(br.hi - br.lo < 1e-9 * std::max(1.0, std::abs(lambda)) + 1e-12);
}

TEST_CASE("banded smallest singular pair matches the dense SVD oracle") {
  Rng rng(33);
  for (int t = 0; t < 6; ++t) {
    Index cols = 60 + 30 * t;
    BandedMatrix M = randomBanded(rng, cols + 6, cols, 4, 2);
    SigmaPair sp = smallest_singular_banded(M);
    double oracle = testutil::oracleSmallestSingular(M.dense());
    CHECK(sp.sigma == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(std::abs(sp.v.norm() - 1.0) < 1e-12);
    CHECK((M.dense() * sp.v).norm() == doctest::Approx(sp.sigma).epsilon(1e-10));
  }
}

TEST_CASE("routing threshold keeps results consistent") {
  Rng rng(41);
  BandedMatrix M = randomBanded(rng, 96, 90, 2, 2);
  SigmaPair dense = smallest_singular(M);
  SigmaPair banded = smallest_singular_banded(M);
  CHECK(dense.sigma == doctest::Approx(banded.sigma).epsilon(1e-8));
}

TEST_CASE("banded cholesky solves shifted systems") {
  Rng rng(55);
  BandedMatrix M = randomBanded(rng, 30, 25, 2, 1);
  HermitianBanded G = gram(M);
  BandedCholesky chol;
  REQUIRE(chol.factor(G, -1.0));  // G + I is positive definite
  Eigen::VectorXcd b(25);
  for (Index i = 0; i < 25; ++i) b(i) = rng.unitDisk();
  Eigen::VectorXcd x = chol.solve(b);
  Eigen::MatrixXcd Gd = G.dense() + Eigen::MatrixXcd::Identity(25, 25);
  CHECK((Gd * x - b).norm() < 1e-10);
}
