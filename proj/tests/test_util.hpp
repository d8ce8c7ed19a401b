#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <random>

#include "limitops/band_operator.hpp"

// Shared helpers for the test suites: deterministic random operators and the
// dense SVD oracle the lower-norm checks compare against.
namespace testutil {

using limitops::BandOperator;
using limitops::CoeffSeq;
using limitops::Complex;
using limitops::Entry;
using limitops::Index;
using limitops::Window;

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double uniform() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  Index integer(Index a, Index b) {  // inclusive
    return a + static_cast<Index>(g() % static_cast<std::uint64_t>(b - a + 1));
  }
  Complex unitDisk() {
    double r = std::sqrt(uniform());
    double phi = 2.0 * M_PI * uniform();
    return Complex(r * std::cos(phi), r * std::sin(phi));
  }
};

// Random scalar band operator with offsets |alpha| <= halfWidth, entries in
// the unit disk, per-diagonal kinds mixed over constant/periodic/eventually
// periodic tables.
inline BandOperator randomBandOperator(Rng& rng, Index halfWidth, double scale = 1.0) {
  std::map<Index, CoeffSeq> diagonals;
  for (Index alpha = -halfWidth; alpha <= halfWidth; ++alpha) {
    int kind = static_cast<int>(rng.integer(0, 2));
    auto entry = [&] { return Entry::scalar(scale * rng.unitDisk()); };
    if (kind == 0) {
      diagonals.emplace(alpha, CoeffSeq::constant(entry()));
    } else if (kind == 1) {
      Index q = rng.integer(2, 4);
      std::vector<Entry> table;
      for (Index t = 0; t < q; ++t) table.push_back(entry());
      diagonals.emplace(alpha, CoeffSeq::periodic(std::move(table)));
    } else {
      Index ql = rng.integer(1, 3), qr = rng.integer(1, 3), coreLen = rng.integer(0, 4);
      std::vector<Entry> left, right, core;
      for (Index t = 0; t < ql; ++t) left.push_back(entry());
      for (Index t = 0; t < qr; ++t) right.push_back(entry());
      for (Index t = 0; t < coreLen; ++t) core.push_back(entry());
      diagonals.emplace(alpha, CoeffSeq::eventuallyPeriodic(std::move(left),
                                                            rng.integer(-3, 3),
                                                            std::move(core),
                                                            std::move(right)));
    }
  }
  return BandOperator::fromDiagonals(std::move(diagonals), 1);
}

// Rescales entries so the Wiener bound does not exceed `cap`.
inline BandOperator randomBandOperatorCapped(Rng& rng, Index halfWidth, double cap) {
  BandOperator A = randomBandOperator(rng, halfWidth);
  double bound = wiener_norm_bound(A);
  if (bound <= cap) return A;
  double factor = (cap - 1e-9) / bound;
  std::map<Index, CoeffSeq> diagonals;
  for (const auto& [alpha, seq] : A.diagonals())
    diagonals.emplace(alpha, seq.mapEntries([factor](const Entry& e) {
      return e.scaled(factor);
    }));
  return BandOperator::fromDiagonals(std::move(diagonals), 1);
}

// Band operator that equals the given dense blocks at the given positions and
// is zero elsewhere (zero tails).
inline BandOperator operatorFromBlocks(
    const std::vector<std::pair<Index, Eigen::MatrixXcd>>& blocks) {
  std::map<Index, std::map<Index, Complex>> diag;  // alpha -> row -> value
  for (const auto& [start, B] : blocks) {
    for (Index a = 0; a < B.rows(); ++a)
      for (Index b = 0; b < B.cols(); ++b)
        if (B(a, b) != Complex{0.0, 0.0}) diag[a - b][start + a] = B(a, b);
  }
  std::map<Index, CoeffSeq> diagonals;
  for (const auto& [alpha, rows] : diag) {
    Index lo = rows.begin()->first, hi = rows.rbegin()->first;
    std::vector<Entry> core;
    for (Index i = lo; i <= hi; ++i) {
      auto it = rows.find(i);
      core.push_back(Entry::scalar(it == rows.end() ? Complex{0, 0} : it->second));
    }
    diagonals.emplace(alpha, CoeffSeq::eventuallyPeriodic({Entry::scalar({0, 0})}, lo,
                                                          std::move(core),
                                                          {Entry::scalar({0, 0})}));
  }
  return BandOperator::fromDiagonals(std::move(diagonals), 1);
}

inline double oracleSmallestSingular(const Eigen::MatrixXcd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues().minCoeff();
}

inline double oracleLargestSingular(const Eigen::MatrixXcd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues().maxCoeff();
}

// Dense oracle for nu(A|_F): smallest singular value of the column block on
// rows dilated by the band width.
inline double oracleNu(const BandOperator& A, const Window& F) {
  return oracleSmallestSingular(materialize_block(A, F.dilate(A.bandWidth()), F));
}

inline double oracleNuRestricted(const BandOperator& A, const Window& F, Index D) {
  double best = std::numeric_limits<double>::infinity();
  for (Index k = F.lo() - D; k <= F.hi(); ++k) {
    Window content = F.intersect(k, k + D);
    if (content.empty()) continue;
    best = std::min(best, oracleNu(A, content));
  }
  return best;
}

}  // namespace testutil
