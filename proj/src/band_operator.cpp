#include "limitops/band_operator.hpp"

#include <numeric>

namespace limitops {

namespace {

Entry zeroEntryLike(const BandOperator& A) {
  if (A.abstractEntries()) return Entry::abstract("0", 0.0, 0.0);
  if (A.entryDim() == 1) return Entry::scalar({0.0, 0.0});
  return Entry::matrix(Eigen::MatrixXcd::Zero(A.entryDim(), A.entryDim()));
}

Index lcmIndex(Index a, Index b) { return std::lcm(a, b); }

}  // namespace

BandOperator BandOperator::fromDiagonals(std::map<Index, CoeffSeq> diagonals, int entryDim) {
  if (entryDim < 1)
    throw PreconditionError("InvalidOperator", "entryDim must be positive");
  BandOperator A;
  A.entryDim_ = entryDim;
  for (const auto& [alpha, seq] : diagonals) {
    A.bandWidth_ = std::max(A.bandWidth_, std::abs(alpha));
    if (seq.containsAbstract()) A.abstract_ = true;
    if (seq.kind() == CoeffSeq::Kind::Scheme) {
      if (A.scheme_ && A.scheme_ != seq.schemePtr())
        throw PreconditionError("InvalidOperator", "mixed schemes in one operator");
      A.scheme_ = seq.schemePtr();
      A.schemeShift_ = seq.schemeShift();
    }
  }
  if (A.abstract_) {
    if (diagonals.size() != 1 || diagonals.begin()->first != 0)
      throw PreconditionError("InvalidOperator",
                              "abstract entries are legal only on pure diagonals");
  }
  A.diagonals_ = std::move(diagonals);
  return A;
}

BandOperator BandOperator::fromScheme(std::shared_ptr<const OperatorScheme> scheme) {
  if (!scheme) throw PreconditionError("InvalidOperator", "null scheme");
  std::map<Index, CoeffSeq> diagonals;
  for (Index alpha = -scheme->bandWidth(); alpha <= scheme->bandWidth(); ++alpha)
    diagonals.emplace(alpha, CoeffSeq::scheme(scheme, alpha));
  return fromDiagonals(std::move(diagonals), 1);
}

BandOperator BandOperator::identity(int entryDim) {
  Entry one = entryDim == 1
                  ? Entry::scalar({1.0, 0.0})
                  : Entry::matrix(Eigen::MatrixXcd::Identity(entryDim, entryDim));
  std::map<Index, CoeffSeq> d;
  d.emplace(0, CoeffSeq::constant(one));
  return fromDiagonals(std::move(d), entryDim);
}

BandOperator BandOperator::laurent(const std::map<Index, Complex>& symbolCoeffs) {
  std::map<Index, CoeffSeq> d;
  for (const auto& [alpha, c] : symbolCoeffs)
    d.emplace(alpha, CoeffSeq::constant(Entry::scalar(c)));
  return fromDiagonals(std::move(d), 1);
}

BandOperator BandOperator::diagonal(CoeffSeq mainDiagonal, int entryDim) {
  std::map<Index, CoeffSeq> d;
  d.emplace(0, std::move(mainDiagonal));
  return fromDiagonals(std::move(d), entryDim);
}

Entry BandOperator::entryAt(Index i, Index j) const {
  auto it = diagonals_.find(i - j);
  if (it == diagonals_.end()) return zeroEntryLike(*this);
  return it->second.at(i);
}

BandOperator BandOperator::withDeclaredNormBound(double bound) const {
  BandOperator A = *this;
  A.declaredNormBound_ = bound;
  return A;
}

Structure BandOperator::structure() const {
  Structure s;
  bool anyCore = false;
  Index coreLo = 0, coreHi = -1;
  Index period = 1, leftPeriod = 1, rightPeriod = 1;
  for (const auto& [alpha, seq] : diagonals_) {
    Index lo, hi;
    if (seq.coreRange(lo, hi)) {
      anyCore = true;
      if (coreHi < coreLo) {
        coreLo = lo;
        coreHi = hi;
      } else {
        coreLo = std::min(coreLo, lo);
        coreHi = std::max(coreHi, hi);
      }
    } else {
      period = lcmIndex(period, seq.period());
    }
    leftPeriod = lcmIndex(leftPeriod, seq.leftPeriod());
    rightPeriod = lcmIndex(rightPeriod, seq.rightPeriod());
  }
  if (!anyCore) {
    s.kind = Structure::Kind::Periodic;
    s.period = period;
    return s;
  }
  s.kind = Structure::Kind::EventuallyPeriodic;
  s.leftPeriod = lcmIndex(leftPeriod, period);
  s.rightPeriod = lcmIndex(rightPeriod, period);
  s.coreLo = coreLo - bandWidth_;
  s.coreHi = coreHi + bandWidth_;
  return s;
}

Entry entry_at(const BandOperator& A, Index i, Index j) { return A.entryAt(i, j); }

Eigen::MatrixXcd materialize_block(const BandOperator& A, const Window& rows,
                                   const Window& cols) {
  if (A.abstractEntries())
    throw PreconditionError("AbstractEntriesNotMaterializable",
                            "cannot materialize abstract entries");
  if (!rows.finite() || !cols.finite())
    throw PreconditionError("InfiniteWindow", "materialize_block needs finite windows");
  const int d = A.entryDim();
  auto ri = rows.indices();
  auto ci = cols.indices();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Index>(ri.size()) * d,
                                              static_cast<Index>(ci.size()) * d);
  for (size_t r = 0; r < ri.size(); ++r) {
    for (size_t c = 0; c < ci.size(); ++c) {
      if (std::abs(ri[r] - ci[c]) > A.bandWidth()) continue;
      Entry e = A.entryAt(ri[r], ci[c]);
      if (e.isZero()) continue;
      if (d == 1)
        M(static_cast<Index>(r), static_cast<Index>(c)) = e.scalarValue();
      else
        M.block(static_cast<Index>(r) * d, static_cast<Index>(c) * d, d, d) = e.matrixValue();
    }
  }
  return M;
}

BandOperator shift_conjugate(const BandOperator& A, Index j) {
  BandOperator B = A;
  for (auto& [alpha, seq] : B.diagonals_) seq = seq.shifted(j);
  B.schemeShift_ += B.scheme_ ? j : 0;
  return B;
}

BandOperator adjoint(const BandOperator& A) {
  if (A.abstractEntries())
    throw PreconditionError("AbstractEntriesNotMaterializable",
                            "adjoint of abstract-entry operator");
  if (A.scheme()) {
    bool allScheme = true;
    for (const auto& [alpha, seq] : A.diagonals())
      allScheme = allScheme && seq.kind() == CoeffSeq::Kind::Scheme;
    if (allScheme && A.scheme()->selfAdjoint()) return A;
    throw PreconditionError("UnsupportedClass", "adjoint of non-self-adjoint scheme");
  }
  std::map<Index, CoeffSeq> diagonals;
  for (const auto& [alpha, seq] : A.diagonals()) {
    // b_{-alpha}(i) = a_alpha(i + alpha)^*
    diagonals.emplace(-alpha, seq.shifted(alpha).mapEntries(
                                  [](const Entry& e) { return e.conjTranspose(); }));
  }
  return BandOperator::fromDiagonals(std::move(diagonals), A.entryDim());
}

double wiener_norm_bound(const BandOperator& A) {
  double sum = 0.0;
  for (const auto& [alpha, seq] : A.diagonals()) sum += seq.supNormBound();
  if (A.scheme()) sum = std::min(sum, A.scheme()->normBound());
  if (A.declaredNormBound()) sum = std::min(sum, *A.declaredNormBound());
  return sum;
}

BandOperator add_scalar_to_diagonal(const BandOperator& A, Complex lambda) {
  if (A.abstractEntries())
    throw PreconditionError("AbstractEntriesNotMaterializable",
                            "cannot shift abstract-entry operator");
  std::map<Index, CoeffSeq> diagonals = A.diagonals();
  auto it = diagonals.find(0);
  if (it == diagonals.end()) {
    Entry e = A.entryDim() == 1
                  ? Entry::scalar(lambda)
                  : Entry::matrix(lambda *
                                  Eigen::MatrixXcd::Identity(A.entryDim(), A.entryDim()));
    diagonals.emplace(0, CoeffSeq::constant(e));
  } else {
    if (it->second.kind() == CoeffSeq::Kind::Scheme)
      throw PreconditionError("UnsupportedClass", "cannot shift a scheme diagonal");
    it->second = it->second.mapEntries(
        [lambda](const Entry& e) { return e.plusScalar(lambda); });
  }
  return BandOperator::fromDiagonals(std::move(diagonals), A.entryDim());
}

bool probe_equal(const BandOperator& A, const BandOperator& B, Index halfWidth) {
  if (A.entryDim() != B.entryDim()) return false;
  Index w = std::max(A.bandWidth(), B.bandWidth());
  for (Index i = -halfWidth; i <= halfWidth; ++i)
    for (Index j = i - w; j <= i + w; ++j)
      if (!(A.entryAt(i, j) == B.entryAt(i, j))) return false;
  return true;
}

}  // namespace limitops
