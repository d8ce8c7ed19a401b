#pragma once

#include <Eigen/Dense>

#include "limitops/entry.hpp"
#include "limitops/window.hpp"

namespace limitops {

// Column-major banded storage for an m x n complex matrix:
// M(r, c) may be nonzero only for -super <= r - c <= sub.
struct BandedMatrix {
  Index rows = 0, cols = 0;
  Index sub = 0, super = 0;
  Eigen::MatrixXcd data;  // (sub + super + 1) x cols; entry (r,c) at data(r - c + super, c)

  static BandedMatrix zero(Index rows, Index cols, Index sub, Index super);
  Complex at(Index r, Index c) const;
  void set(Index r, Index c, Complex v);
  Eigen::VectorXcd mul(const Eigen::VectorXcd& x) const;  // M x
  Eigen::MatrixXcd dense() const;
};

// Hermitian banded matrix in lower storage: data(a, c) = H(c + a, c), 0 <= a <= kd.
struct HermitianBanded {
  Index n = 0;
  Index kd = 0;
  Eigen::MatrixXcd data;

  static HermitianBanded zero(Index n, Index kd);
  double diag(Index j) const { return data(0, j).real(); }
  Eigen::MatrixXcd dense() const;
};

// G = M^H M (Hermitian PSD, bandwidth sub + super).
HermitianBanded gram(const BandedMatrix& M);

// Number of eigenvalues of H strictly below sigma, via symmetric banded
// elimination with the Martin-Wilkinson tiny-pivot replacement.
Index eigenvalue_count_below(const HermitianBanded& H, double sigma);

// Smallest eigenvalue by inertia bisection; the returned interval [lo, hi]
// brackets it to near machine width.
struct EigenBracket {
  double lo;
  double hi;
};
EigenBracket smallest_eigenvalue(const HermitianBanded& H);

// Banded Cholesky of H - shift*I (requires shift < lambda_min) and the
// corresponding solver; used for inverse iteration.
struct BandedCholesky {
  Index n = 0, kd = 0;
  Eigen::MatrixXcd low;  // L in lower band storage
  bool factor(const HermitianBanded& H, double shift);
  Eigen::VectorXcd solve(Eigen::VectorXcd b) const;
};

struct SigmaPair {
  double sigma = 0.0;
  Eigen::VectorXcd v;  // unit right singular vector
};

SigmaPair smallest_singular_dense(const Eigen::MatrixXcd& M);
SigmaPair smallest_singular_banded(const BandedMatrix& M);
// Routes to the dense path for small column counts, banded otherwise.
SigmaPair smallest_singular(const BandedMatrix& M);

}  // namespace limitops
