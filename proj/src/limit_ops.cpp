#include "limitops/limit_ops.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <set>

#include "limitops/floquet.hpp"

namespace limitops {

GeneralOperator GeneralOperator::flipOnly(Complex coeff) {
  GeneralOperator op;
  op.flip_ = FlipPart{0, coeff};
  return op;
}

GeneralOperator& GeneralOperator::setFlip(FlipPart f) {
  if (band_ && band_->entryDim() != 1)
    throw PreconditionError("UnsupportedClass", "flip term needs scalar entries");
  flip_ = f;
  return *this;
}

int GeneralOperator::entryDim() const {
  if (band_) return band_->entryDim();
  return 1;
}

GeneralOperator GeneralOperator::shiftConjugate(Index j) const {
  GeneralOperator out;
  if (band_) out.band_ = shift_conjugate(*band_, j);
  if (flip_) out.flip_ = FlipPart{flip_->shift + j, flip_->coeff};
  return out;
}

Eigen::MatrixXcd GeneralOperator::materialize(const std::vector<Index>& rows,
                                              const std::vector<Index>& cols) const {
  const int d = entryDim();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(static_cast<Index>(rows.size()) * d,
                                              static_cast<Index>(cols.size()) * d);
  if (band_) {
    if (band_->abstractEntries())
      throw PreconditionError("AbstractEntriesNotMaterializable",
                              "cannot materialize abstract entries");
    for (size_t r = 0; r < rows.size(); ++r) {
      for (size_t c = 0; c < cols.size(); ++c) {
        if (std::abs(rows[r] - cols[c]) > band_->bandWidth()) continue;
        Entry e = band_->entryAt(rows[r], cols[c]);
        if (e.isZero()) continue;
        if (d == 1)
          M(static_cast<Index>(r), static_cast<Index>(c)) = e.scalarValue();
        else
          M.block(static_cast<Index>(r) * d, static_cast<Index>(c) * d, d, d) =
              e.matrixValue();
      }
    }
  }
  if (flip_) {
    for (size_t r = 0; r < rows.size(); ++r) {
      Index want = -rows[r] - 2 * flip_->shift;  // column of the flip entry in this row
      for (size_t c = 0; c < cols.size(); ++c)
        if (cols[c] == want)
          M(static_cast<Index>(r), static_cast<Index>(c)) += flip_->coeff;
    }
  }
  return M;
}

std::vector<Index> GeneralOperator::colSupport(const std::vector<Index>& rows) const {
  std::set<Index> cols;
  for (Index i : rows) {
    if (band_)
      for (Index j = i - band_->bandWidth(); j <= i + band_->bandWidth(); ++j) cols.insert(j);
    if (flip_) cols.insert(-i - 2 * flip_->shift);
  }
  return {cols.begin(), cols.end()};
}

std::vector<Index> GeneralOperator::rowSupport(const std::vector<Index>& cols) const {
  std::set<Index> rows;
  for (Index j : cols) {
    if (band_)
      for (Index i = j - band_->bandWidth(); i <= j + band_->bandWidth(); ++i) rows.insert(i);
    if (flip_) rows.insert(-j - 2 * flip_->shift);
  }
  return {rows.begin(), rows.end()};
}

namespace {

void pushUnique(std::vector<BandOperator>& reps, std::vector<std::string>& labels,
                BandOperator op, std::string label, Index probeHalfWidth) {
  for (const auto& r : reps)
    if (probe_equal(r, op, probeHalfWidth)) return;
  reps.push_back(std::move(op));
  labels.push_back(std::move(label));
}

BandOperator tailOperator(const BandOperator& A, bool left) {
  std::map<Index, CoeffSeq> diagonals;
  for (const auto& [alpha, seq] : A.diagonals())
    diagonals.emplace(alpha, left ? seq.leftTailSeq() : seq.rightTailSeq());
  return BandOperator::fromDiagonals(std::move(diagonals), A.entryDim());
}

}  // namespace

OperatorSpectrumEnum enumerate_spectrum(const BandOperator& A, Index maxReps) {
  if (maxReps < 1)
    throw PreconditionError("InvalidCertificateParams", "maxReps must be positive");
  if (A.scheme()) {
    register_gallery_schemes();
    auto& reg = scheme_enumerator_registry();
    auto it = reg.find(A.scheme()->name());
    if (it == reg.end())
      throw PreconditionError("UnsupportedClass", "no enumeration rule for scheme '" +
                                                      A.scheme()->name() + "'");
    return it->second(A, maxReps);
  }

  Structure st = A.structure();
  OperatorSpectrumEnum out;
  out.exhaustive = true;
  out.rich = true;
  // Band operators over finite-dimensional entry spaces are rich; for
  // abstract-entry diagonals with periodic/eventually periodic structure the
  // tail-translate argument is hand-proved.
  out.richTag = A.abstractEntries() ? RichTag::PaperAsserted : RichTag::FiniteDimEntries;

  if (st.kind == Structure::Kind::Periodic) {
    out.probeHalfWidth = std::max<Index>(3 * st.period, std::max<Index>(3 * A.bandWidth(), 8));
    for (Index l = 0; l < st.period; ++l)
      pushUnique(out.representatives, out.labels, shift_conjugate(A, l),
                 "V_{-" + std::to_string(l) + "} A V_{" + std::to_string(l) + "}",
                 out.probeHalfWidth);
    out.orbitRule = st.period == 1
                        ? "translation invariant: every limit operator equals A"
                        : "the listed conjugates form one shift orbit generating sigma_op";
    return out;
  }

  Index q = std::max(st.leftPeriod, st.rightPeriod);
  out.probeHalfWidth = std::max<Index>(3 * q, std::max<Index>(3 * A.bandWidth(), 8));
  BandOperator L = tailOperator(A, true);
  BandOperator R = tailOperator(A, false);
  for (Index l = 0; l < st.leftPeriod; ++l)
    pushUnique(out.representatives, out.labels, shift_conjugate(L, l),
               "left tail, shift " + std::to_string(l), out.probeHalfWidth);
  for (Index l = 0; l < st.rightPeriod; ++l)
    pushUnique(out.representatives, out.labels, shift_conjugate(R, l),
               "right tail, shift " + std::to_string(l), out.probeHalfWidth);
  out.orbitRule = "limit operators along -inf/+inf are the periodic tail operators' orbits";
  return out;
}

LowerNormEstimate representative_lower_norm(const BandOperator& B, int symbolSamples) {
  if (B.isDiagonal() && (B.abstractEntries() || B.entryDim() == 1))
    return nu_exact(B, Window::all(), 2.0);

  if (auto blocks = block_representatives(B)) {
    LowerNormEstimate best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& blk : *blocks) {
      LowerNormEstimate e = nu_exact(B, Window::interval(blk.a, blk.b), 2.0);
      if (e.value < best.value) {
        best = e;
        best.minimizingOffset = blk.a;
      }
    }
    best.kind = LowerNormEstimate::Kind::Exact;
    return best;
  }

  Structure st = B.structure();
  if (st.kind == Structure::Kind::Periodic) return nu_periodic_certified(B, symbolSamples);

  throw PreconditionError("UnsupportedClass",
                          "no certified lower-norm route for this representative; "
                          "use certified_lower_norm with a window budget");
}

std::map<std::string, SchemeEnumerator>& scheme_enumerator_registry() {
  static std::map<std::string, SchemeEnumerator> registry;
  return registry;
}

PConvergenceReport pconv_check(const std::function<GeneralOperator(Index)>& seq,
                               const GeneralOperator& candidate, const std::vector<int>& ms,
                               Index nMax, double tol) {
  if (ms.empty() || nMax < 1)
    throw PreconditionError("InvalidCertificateParams", "pconv needs ms and nMax >= 1");
  PConvergenceReport rep;
  rep.ms = ms;
  rep.tol = tol;
  for (Index n = 1; n <= nMax; ++n) rep.ns.push_back(n);
  rep.residuals.resize(static_cast<Index>(ms.size()), nMax);

  auto opNorm = [](const Eigen::MatrixXcd& M) {
    if (M.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues().maxCoeff();
  };

  for (size_t mi = 0; mi < ms.size(); ++mi) {
    std::vector<Index> probe;
    for (Index i = -ms[mi]; i <= ms[mi]; ++i) probe.push_back(i);
    for (Index n = 1; n <= nMax; ++n) {
      GeneralOperator An = seq(n);
      // P_m (A_n - A): rows [-m, m], columns wherever either operator acts
      std::vector<Index> cols;
      {
        auto c1 = An.colSupport(probe);
        auto c2 = candidate.colSupport(probe);
        std::set<Index> u(c1.begin(), c1.end());
        u.insert(c2.begin(), c2.end());
        cols.assign(u.begin(), u.end());
      }
      double left = opNorm(An.materialize(probe, cols) - candidate.materialize(probe, cols));
      // (A_n - A) P_m
      std::vector<Index> rows;
      {
        auto r1 = An.rowSupport(probe);
        auto r2 = candidate.rowSupport(probe);
        std::set<Index> u(r1.begin(), r1.end());
        u.insert(r2.begin(), r2.end());
        rows.assign(u.begin(), u.end());
      }
      double right = opNorm(An.materialize(rows, probe) - candidate.materialize(rows, probe));
      rep.residuals(static_cast<Index>(mi), n - 1) = std::max(left, right);
    }
  }

  rep.nThreshold.assign(ms.size(), -1);
  bool allConverged = true;
  double floorValue = std::numeric_limits<double>::infinity();
  for (size_t mi = 0; mi < ms.size(); ++mi) {
    Index thr = -1;
    for (Index n = nMax; n >= 1; --n) {
      if (rep.residuals(static_cast<Index>(mi), n - 1) < tol)
        thr = n;
      else
        break;
    }
    rep.nThreshold[mi] = thr;
    double last = rep.residuals(static_cast<Index>(mi), nMax - 1);
    floorValue = std::min(floorValue, last);
    allConverged = allConverged && thr >= 1 && last < tol;
  }
  if (allConverged) {
    rep.verdict = PConvergenceReport::Verdict::ConvergesNumerically;
  } else if (floorValue >= 10.0 * tol) {
    rep.verdict = PConvergenceReport::Verdict::FailsToConverge;
    rep.floorValue = floorValue;
  } else {
    rep.verdict = PConvergenceReport::Verdict::Inconclusive;
    rep.floorValue = floorValue;
  }
  return rep;
}

std::function<GeneralOperator(Index)> named_pconv_sequence(const std::string& name,
                                                           const GeneralOperator& candidate) {
  if (name == "constant") {
    return [candidate](Index) { return candidate; };
  }
  if (name == "shifted-flip") {
    // A_n = V_{-n} (I + J) V_n
    return [](Index n) {
      GeneralOperator op(BandOperator::identity());
      op.setFlip(FlipPart{n, Complex{1.0, 0.0}});
      return op;
    };
  }
  if (name == "bn-to-identity") {
    // B_n = P_n + (1/n)(I - P_n)
    return [](Index n) {
      std::vector<Entry> tail{Entry::scalar({1.0 / static_cast<double>(n), 0.0})};
      std::vector<Entry> core(static_cast<size_t>(2 * n + 1), Entry::scalar({1.0, 0.0}));
      return GeneralOperator(BandOperator::diagonal(
          CoeffSeq::eventuallyPeriodic(tail, -n, std::move(core), tail)));
    };
  }
  if (name == "periodic-shifts") {
    if (!candidate.band())
      throw PreconditionError("UnsupportedClass", "periodic-shifts needs a band candidate");
    Index q = candidate.band()->structure().kind == Structure::Kind::Periodic
                  ? candidate.band()->structure().period
                  : 1;
    return [candidate, q](Index n) { return candidate.shiftConjugate(n * q); };
  }
  throw PreconditionError("UnknownName", "unknown pconv sequence '" + name + "'");
}

}  // namespace limitops
