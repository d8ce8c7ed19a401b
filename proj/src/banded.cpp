#include "limitops/banded.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "limitops/errors.hpp"

namespace limitops {

BandedMatrix BandedMatrix::zero(Index rows, Index cols, Index sub, Index super) {
  BandedMatrix M;
  M.rows = rows;
  M.cols = cols;
  M.sub = sub;
  M.super = super;
  M.data = Eigen::MatrixXcd::Zero(sub + super + 1, cols);
  return M;
}

Complex BandedMatrix::at(Index r, Index c) const {
  Index d = r - c;
  if (d < -super || d > sub) return {0.0, 0.0};
  return data(d + super, c);
}

void BandedMatrix::set(Index r, Index c, Complex v) {
  Index d = r - c;
  if (d < -super || d > sub)
    throw NumericError("BandViolation", "write outside band");
  data(d + super, c) = v;
}

Eigen::VectorXcd BandedMatrix::mul(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(rows);
  for (Index c = 0; c < cols; ++c) {
    Index rLo = std::max<Index>(0, c - super);
    Index rHi = std::min<Index>(rows - 1, c + sub);
    for (Index r = rLo; r <= rHi; ++r) y(r) += data(r - c + super, c) * x(c);
  }
  return y;
}

Eigen::MatrixXcd BandedMatrix::dense() const {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    Index rLo = std::max<Index>(0, c - super);
    Index rHi = std::min<Index>(rows - 1, c + sub);
    for (Index r = rLo; r <= rHi; ++r) M(r, c) = data(r - c + super, c);
  }
  return M;
}

HermitianBanded HermitianBanded::zero(Index n, Index kd) {
  HermitianBanded H;
  H.n = n;
  H.kd = kd;
  H.data = Eigen::MatrixXcd::Zero(kd + 1, n);
  return H;
}

Eigen::MatrixXcd HermitianBanded::dense() const {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index a = 0; a <= kd && c + a < n; ++a) {
      M(c + a, c) = data(a, c);
      M(c, c + a) = std::conj(data(a, c));
    }
  }
  return M;
}

HermitianBanded gram(const BandedMatrix& M) {
  Index kd = M.sub + M.super;
  HermitianBanded G = HermitianBanded::zero(M.cols, kd);
  for (Index c = 0; c < M.cols; ++c) {
    for (Index a = 0; a <= kd && c + a < M.cols; ++a) {
      Index c2 = c + a;  // G(c2, c) = sum_r conj(M(r, c2)) M(r, c)
      Index rLo = std::max({Index{0}, c - M.super, c2 - M.super});
      Index rHi = std::min({M.rows - 1, c + M.sub, c2 + M.sub});
      Complex s{0.0, 0.0};
      for (Index r = rLo; r <= rHi; ++r)
        s += std::conj(M.data(r - c2 + M.super, c2)) * M.data(r - c + M.super, c);
      G.data(a, c) = s;
    }
  }
  return G;
}

Index eigenvalue_count_below(const HermitianBanded& H, double sigma) {
  const Index n = H.n, kd = H.kd;
  Eigen::MatrixXcd W = H.data;
  for (Index j = 0; j < n; ++j) W(0, j) -= sigma;

  double anorm = 0.0;
  for (Index j = 0; j < n; ++j) {
    double s = std::abs(W(0, j).real());
    for (Index a = 1; a <= kd; ++a) {
      if (j + a < n) s += std::abs(W(a, j));
      if (j - a >= 0) s += std::abs(W(a, j - a));
    }
    anorm = std::max(anorm, s);
  }
  double tiny = anorm * std::numeric_limits<double>::epsilon() * 1e-2;
  if (!(tiny > 0.0)) tiny = 1e-300;

  Index cnt = 0;
  for (Index j = 0; j < n; ++j) {
    double d = W(0, j).real();
    if (std::abs(d) < tiny) d = (d < 0.0 ? -tiny : tiny);
    if (d < 0.0) ++cnt;
    Index lim = std::min(kd, n - 1 - j);
    for (Index a = 1; a <= lim; ++a) {
      Complex fa = W(a, j) / d;
      for (Index b = a; b <= lim; ++b) W(b - a, j + a) -= W(b, j) * std::conj(fa);
    }
  }
  return cnt;
}

EigenBracket smallest_eigenvalue(const HermitianBanded& H) {
  const Index n = H.n, kd = H.kd;
  double lo = H.diag(0), hi = H.diag(0);
  for (Index j = 0; j < n; ++j) {
    double radius = 0.0;
    for (Index a = 1; a <= kd; ++a) {
      if (j + a < n) radius += std::abs(H.data(a, j));
      if (j - a >= 0) radius += std::abs(H.data(a, j - a));
    }
    lo = std::min(lo, H.diag(j) - radius);
    hi = std::max(hi, H.diag(j) + radius);
  }
  double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  double a = lo - scale * 1e-12, b = hi + scale * 1e-12;
  // invariant: count(a) == 0, count(b) >= 1
  for (int iter = 0; iter < 80 && (b - a) > scale * 4e-16; ++iter) {
    double mid = 0.5 * (a + b);
    if (eigenvalue_count_below(H, mid) >= 1)
      b = mid;
    else
      a = mid;
  }
  return {a, b};
}

bool BandedCholesky::factor(const HermitianBanded& H, double shift) {
  n = H.n;
  kd = H.kd;
  low = H.data;
  for (Index j = 0; j < n; ++j) low(0, j) -= shift;
  for (Index j = 0; j < n; ++j) {
    double d = low(0, j).real();
    if (!(d > 0.0)) return false;
    double ljj = std::sqrt(d);
    low(0, j) = ljj;
    Index lim = std::min(kd, n - 1 - j);
    for (Index a = 1; a <= lim; ++a) low(a, j) /= ljj;
    for (Index a = 1; a <= lim; ++a) {
      Complex f = std::conj(low(a, j));
      for (Index b = a; b <= lim; ++b) low(b - a, j + a) -= low(b, j) * f;
    }
  }
  return true;
}

Eigen::VectorXcd BandedCholesky::solve(Eigen::VectorXcd b) const {
  // L y = b
  for (Index j = 0; j < n; ++j) {
    b(j) /= low(0, j).real();
    Index lim = std::min(kd, n - 1 - j);
    for (Index a = 1; a <= lim; ++a) b(j + a) -= low(a, j) * b(j);
  }
  // L^H x = y
  for (Index j = n - 1; j >= 0; --j) {
    Index lim = std::min(kd, n - 1 - j);
    for (Index a = 1; a <= lim; ++a) b(j) -= std::conj(low(a, j)) * b(j + a);
    b(j) /= low(0, j).real();
  }
  return b;
}

SigmaPair smallest_singular_dense(const Eigen::MatrixXcd& M) {
  SigmaPair out;
  if (M.cols() <= 160) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinV);
    out.v = svd.matrixV().col(M.cols() - 1);
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinV);
    out.v = svd.matrixV().col(M.cols() - 1);
  }
  out.v.normalize();
  out.sigma = (M * out.v).norm();
  return out;
}

SigmaPair smallest_singular_banded(const BandedMatrix& M) {
  if (M.cols > M.rows)
    throw PreconditionError("InvalidMatrix", "smallest singular value needs rows >= cols");
  HermitianBanded G = gram(M);
  EigenBracket br = smallest_eigenvalue(G);
  double scale = std::max(std::abs(br.hi), 1.0);
  double gap = std::max(br.hi - br.lo, scale * 1e-14);

  BandedCholesky chol;
  double shift = br.lo - gap;
  int attempts = 0;
  while (!chol.factor(G, shift) && attempts < 60) {
    gap *= 2.0;
    shift = br.lo - gap;
    ++attempts;
  }
  if (attempts >= 60)
    throw NumericError("InverseIterationFailed", "could not factor shifted Gram matrix");

  std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
  Eigen::VectorXcd v(M.cols);
  for (Index i = 0; i < M.cols; ++i) {
    double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    v(i) = Complex(re, im);
  }
  v.normalize();
  double rayleigh = br.hi;
  for (int iter = 0; iter < 50; ++iter) {
    Eigen::VectorXcd w = chol.solve(v);
    w.normalize();
    Eigen::VectorXcd mw = M.mul(w);
    double newRayleigh = mw.squaredNorm();
    v = w;
    if (std::abs(newRayleigh - rayleigh) <= 1e-14 * std::max(newRayleigh, 1e-300) && iter >= 2)
      break;
    rayleigh = newRayleigh;
  }
  SigmaPair out;
  out.v = v;
  out.sigma = M.mul(v).norm();
  return out;
}

SigmaPair smallest_singular(const BandedMatrix& M) {
  if (M.cols <= 512) return smallest_singular_dense(M.dense());
  return smallest_singular_banded(M);
}

}  // namespace limitops
