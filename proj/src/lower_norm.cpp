#include "limitops/lower_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace limitops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Index kMaxD = Index{1} << 60;

bool entryNonzero(const BandOperator& A, Index i, Index j) {
  return !A.entryAt(i, j).isZero();
}

// True when no band entry couples {.. , c-1} with {c, ..}.
bool isCutPoint(const BandOperator& A, Index c) {
  Index w = A.bandWidth();
  for (Index i = c - w; i <= c - 1; ++i) {
    for (Index j = c; j <= i + w; ++j) {
      if (entryNonzero(A, i, j) || entryNonzero(A, j, i)) return false;
    }
  }
  return true;
}

}  // namespace

Index VectorSegment::suppLo() const {
  for (Index s = 0; s < count(); ++s)
    if (values.segment(s * entryDim, entryDim).norm() > 0.0) return offset + s;
  return offset;
}

Index VectorSegment::suppHi() const {
  for (Index s = count() - 1; s >= 0; --s)
    if (values.segment(s * entryDim, entryDim).norm() > 0.0) return offset + s;
  return offset;
}

const char* method_name(WindowCertificate::Method m) {
  switch (m) {
    case WindowCertificate::Method::Proof1:
      return "Proof1";
    case WindowCertificate::Method::Proof2:
      return "Proof2";
    case WindowCertificate::Method::ExtremalP:
      return "ExtremalP";
  }
  return "?";
}

std::vector<WindowCertificate> window_size_all(double delta, double r, Index w, double p,
                                               Index N) {
  if (!(delta > 0.0) || !(r > 0.0) || w < 1 || N < 1)
    throw PreconditionError("InvalidCertificateParams", "need delta, r > 0, w >= 1, N >= 1");
  bool extremal = (p == 0.0) || std::isinf(p);
  if (!extremal && !(p >= 1.0))
    throw PreconditionError("InvalidCertificateParams", "p must lie in {0} or [1, inf]");

  std::vector<WindowCertificate> certs;
  auto base = [&](WindowCertificate::Method method) {
    WindowCertificate c;
    c.delta = delta;
    c.r = r;
    c.w = w;
    c.p = p;
    c.N = N;
    c.method = method;
    return c;
  };

  if (!extremal) {
    // Proof1: m = floor((2 N r / delta)^p) + 1, D = m * 4w.
    double mBase = std::pow(2.0 * static_cast<double>(N) * r / delta, p);
    if (mBase + 1.0 < 4.4e15) {
      Index m = static_cast<Index>(std::floor(mBase)) + 1;
      Index R = 4 * w;
      if (m <= kMaxD / R) {
        WindowCertificate c = base(WindowCertificate::Method::Proof1);
        c.m = m;
        c.R = R;
        c.D = m * R;
        certs.push_back(c);
      }
    }
    // Proof2: least n with d_n / c_n < (delta / 4r)^p, where c_n = (2n+1)^N
    // and d_n = c_{n+w} - c_{max(n-w,-1)}, c_{-1} = 0.
    double t = std::pow(delta / (4.0 * r), p);
    auto cOf = [&](Index n) {
      return n < 0 ? 0.0 : std::pow(2.0 * static_cast<double>(n) + 1.0,
                                    static_cast<double>(N));
    };
    auto predicate = [&](Index n) {
      double cn = cOf(n);
      double dn = cOf(n + w) - cOf(std::max<Index>(n - w, -1));
      return dn < t * cn;
    };
    Index n0 = -1;
    if (N == 1) {
      // d_n/c_n is decreasing in n; jump near the n >= w closed form then fix up.
      double guess = (4.0 * static_cast<double>(w) / t - 1.0) / 2.0;
      Index start = guess > 0 && guess < 4.4e15 ? static_cast<Index>(guess) : 0;
      Index n = std::max<Index>(0, start - 2);
      while (!predicate(n) && n < kMaxD) ++n;
      while (n > 0 && predicate(n - 1)) --n;
      if (n < kMaxD) n0 = n;
    } else {
      for (Index n = 0; n < 20000000; ++n) {
        if (predicate(n)) {
          n0 = n;
          break;
        }
      }
    }
    if (n0 >= 0 && n0 <= kMaxD / 2) {
      WindowCertificate c = base(WindowCertificate::Method::Proof2);
      c.n0 = n0;
      c.c = static_cast<Index>(cOf(n0));
      c.d = static_cast<Index>(cOf(n0 + w) - cOf(std::max<Index>(n0 - w, -1)));
      c.D = 2 * n0;
      certs.push_back(c);
    }
  } else {
    // p in {0, inf}: k = floor(w r / delta) + 1, D = 2k.
    double kBase = static_cast<double>(w) * r / delta;
    if (kBase + 1.0 < 4.4e15) {
      WindowCertificate c = base(WindowCertificate::Method::ExtremalP);
      c.k = static_cast<Index>(std::floor(kBase)) + 1;
      c.D = 2 * c.k;
      certs.push_back(c);
    }
  }
  if (certs.empty())
    throw NumericError("CertificateOverflow",
                       "no representable window size for these parameters");
  return certs;
}

WindowCertificate window_size(double delta, double r, Index w, double p, Index N) {
  auto certs = window_size_all(delta, r, w, p, N);
  const WindowCertificate* best = &certs.front();
  for (const auto& c : certs)
    if (c.D < best->D) best = &c;
  return *best;
}

namespace {

// Exact p=2 lower norm of A restricted to the columns of a finite window.
LowerNormEstimate nuColumns(const BandOperator& A, const Window& F) {
  const Index w = A.bandWidth();
  const int d = A.entryDim();
  SigmaPair sp;
  Index colLo = F.lo();
  if (F.parts().size() == 1 && F.count() > 512) {
    sp = smallest_singular(banded_window_matrix(A, F.lo(), F.hi()));
  } else {
    Eigen::MatrixXcd M = materialize_block(A, F.dilate(w), F);
    sp = smallest_singular_dense(M);
  }
  LowerNormEstimate est;
  est.value = sp.sigma;
  est.kind = LowerNormEstimate::Kind::Exact;
  est.pNorm = 2.0;

  // Embed the singular vector as a contiguous segment over the hull of F.
  VectorSegment seg;
  seg.entryDim = d;
  seg.offset = colLo;
  Index span = F.hi() - F.lo() + 1;
  seg.values = Eigen::VectorXcd::Zero(span * d);
  auto idx = F.indices();
  for (size_t kk = 0; kk < idx.size(); ++kk)
    seg.values.segment((idx[kk] - colLo) * d, d) = sp.v.segment(static_cast<Index>(kk) * d, d);
  est.witness = std::move(seg);
  return est;
}

LowerNormEstimate nuDiagonal(const BandOperator& A, const Window& F) {
  // inf over F of the entry lower norms; exact at every p for a pure diagonal.
  const auto& seq = A.diagonals().begin()->second;
  double best = kInf;
  Index bestI = 0;
  auto consider = [&](Index i, double v) {
    if (v < best) {
      best = v;
      bestI = i;
    }
  };
  if (F.finite()) {
    for (Index i : F.indices()) consider(i, seq.at(i).lowerNorm());
  } else {
    Index lo, hi;
    if (seq.coreRange(lo, hi)) {
      Index ql = seq.leftPeriod(), qr = seq.rightPeriod();
      for (Index i = lo - ql; i <= hi + qr; ++i) consider(i, seq.at(i).lowerNorm());
    } else {
      Index q = seq.period();
      for (Index i = 0; i < q; ++i) consider(i, seq.at(i).lowerNorm());
    }
  }
  LowerNormEstimate est;
  est.value = best == kInf ? 0.0 : best;
  est.kind = LowerNormEstimate::Kind::Exact;
  est.minimizingOffset = bestI;
  if (!A.abstractEntries() && best != kInf) {
    Entry e = A.entryAt(bestI, bestI);
    VectorSegment seg;
    seg.entryDim = A.entryDim();
    seg.offset = bestI;
    if (e.kind() == Entry::Kind::Scalar) {
      seg.values = Eigen::VectorXcd::Ones(1);
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e.matrixValue(), Eigen::ComputeThinV);
      seg.values = svd.matrixV().col(e.dim() - 1);
    }
    est.witness = std::move(seg);
  }
  return est;
}

bool diagonalAnyP(const BandOperator& A) { return A.isDiagonal(); }

}  // namespace

BandedMatrix banded_window_matrix(const BandOperator& A, Index colLo, Index colHi) {
  if (A.abstractEntries())
    throw PreconditionError("AbstractEntriesNotMaterializable",
                            "cannot materialize abstract entries");
  const Index w = A.bandWidth();
  const int d = A.entryDim();
  const Index rowLo = colLo - w;
  const Index nCols = (colHi - colLo + 1) * d;
  const Index nRows = (colHi - colLo + 1 + 2 * w) * d;
  // r - c in scalar coordinates for lattice offset i - j in [-w, w]
  BandedMatrix M = BandedMatrix::zero(nRows, nCols, 2 * w * d + d - 1, d - 1);
  for (Index j = colLo; j <= colHi; ++j) {
    for (Index i = std::max(j - w, rowLo); i <= j + w; ++i) {
      Entry e = A.entryAt(i, j);
      if (e.isZero()) continue;
      Index r0 = (i - rowLo) * d, c0 = (j - colLo) * d;
      if (d == 1) {
        M.set(r0, c0, e.scalarValue());
      } else {
        const auto& blk = e.matrixValue();
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) M.set(r0 + a, c0 + b, blk(a, b));
      }
    }
  }
  return M;
}

LowerNormEstimate nu_exact(const BandOperator& A, const Window& F, double p) {
  if (diagonalAnyP(A)) {
    // scalar/abstract entries: the entry lower norms are p-independent;
    // matrix entries: the entry infimum is exact at p = 2.
    bool scalarLike = A.abstractEntries() || A.entryDim() == 1;
    if (scalarLike || p == 2.0) {
      LowerNormEstimate est = nuDiagonal(A, F);
      est.pNorm = p;
      return est;
    }
  }
  if (p != 2.0)
    throw PreconditionError("UnsupportedP",
                            "exact lower norm only at p = 2 (or diagonal operators)");
  if (!F.finite())
    throw PreconditionError("InfiniteWindow",
                            "nu_exact needs a finite window; use certified_lower_norm");
  if (F.empty()) throw PreconditionError("InvalidWindow", "empty window");
  return nuColumns(A, F);
}

LowerNormEstimate nu_restricted(const BandOperator& A, const Window& F, Index D, double p) {
  if (D < 0) throw PreconditionError("InvalidCertificateParams", "D must be nonnegative");
  if (diagonalAnyP(A) && (A.abstractEntries() || A.entryDim() == 1 || p == 2.0)) {
    // single-site witnesses: nu_D == nu for every D >= 0
    LowerNormEstimate est = nuDiagonal(A, F);
    est.pNorm = p;
    return est;
  }
  if (p != 2.0)
    throw PreconditionError("UnsupportedP",
                            "restricted lower norm only at p = 2 (or diagonal operators)");

  struct Candidate {
    Index k;
    Window content;
  };
  std::vector<Candidate> cands;
  if (F.finite()) {
    if (F.empty()) throw PreconditionError("InvalidWindow", "empty window");
    Index lo = F.lo(), hi = F.hi();
    if (D >= hi - lo) {
      cands.push_back({lo, F});
    } else {
      Window prev = Window::interval(0, 0);
      bool havePrev = false;
      for (Index k = lo; k <= hi - D; ++k) {
        Window content = F.intersect(k, k + D);
        if (content.empty()) continue;
        if (havePrev && content == prev) continue;
        prev = content;
        havePrev = true;
        cands.push_back({k, std::move(content)});
      }
    }
  } else {
    Structure st = A.structure();
    if (st.kind == Structure::Kind::Periodic) {
      for (Index k = 0; k < st.period; ++k)
        cands.push_back({k, Window::interval(k, k + D)});
    } else {
      Index w = A.bandWidth();
      Index tLo = st.coreLo - D - w, tHi = st.coreHi + w;
      for (Index k = tLo - st.leftPeriod; k <= tLo - 1; ++k)
        cands.push_back({k, Window::interval(k, k + D)});
      for (Index k = tLo; k <= tHi; ++k) cands.push_back({k, Window::interval(k, k + D)});
      for (Index k = tHi + 1; k <= tHi + st.rightPeriod; ++k)
        cands.push_back({k, Window::interval(k, k + D)});
    }
  }

  LowerNormEstimate best;
  best.value = kInf;
  for (const auto& cand : cands) {
    LowerNormEstimate est = nuColumns(A, cand.content);
    if (est.value < best.value) {
      best = est;
      best.minimizingOffset = cand.k;
    }
  }
  if (best.value == kInf) throw PreconditionError("InvalidWindow", "no scan windows");
  best.pNorm = 2.0;
  return best;
}

CertificateReport verify_certificate(const BandOperator& A, const Window& F,
                                     const WindowCertificate& cert) {
  if (cert.p != 2.0)
    throw PreconditionError("PreconditionViolated", "verify_certificate needs p = 2");
  if (!F.finite())
    throw PreconditionError("PreconditionViolated", "verify_certificate needs finite F");
  if (!(wiener_norm_bound(A) < cert.r))
    throw PreconditionError("PreconditionViolated", "norm bound ||A|| < r fails");
  if (!(A.bandWidth() < cert.w))
    throw PreconditionError("PreconditionViolated", "band-width bound fails");
  CertificateReport rep;
  rep.nu = nu_exact(A, F, 2.0).value;
  rep.nuD = nu_restricted(A, F, cert.D, 2.0).value;
  rep.gap = rep.nuD - rep.nu;
  rep.delta = cert.delta;
  rep.pass = rep.gap >= -1e-12 && rep.gap <= cert.delta;
  return rep;
}

LowerNormEstimate certified_lower_norm(const BandOperator& A, const Window& F, double delta,
                                       double bandApproxError) {
  if (!(delta > 0.0))
    throw PreconditionError("InvalidCertificateParams", "delta must be positive");
  if (bandApproxError > delta / 3.0)
    throw PreconditionError("BudgetExhausted",
                            "bandApproxError exceeds delta/3; no certificate budget left");
  const double eps = bandApproxError;
  if (A.isDiagonal() && (A.abstractEntries() || A.entryDim() == 1)) {
    LowerNormEstimate est = nuDiagonal(A, F);
    est.kind = LowerNormEstimate::Kind::UpperWithinDelta;
    est.value += eps;
    est.delta = delta;
    return est;
  }
  double deltaPrime = delta - 2.0 * eps;
  double r = wiener_norm_bound(A) + 1e-9;
  WindowCertificate cert = window_size(deltaPrime, r, A.bandWidth() + 1, 2.0, 1);
  LowerNormEstimate est = nu_restricted(A, F, cert.D, 2.0);
  est.kind = LowerNormEstimate::Kind::UpperWithinDelta;
  est.value += eps;
  est.delta = delta;
  est.certificate = cert;
  return est;
}

std::optional<std::vector<Window::Interval>> block_representatives(const BandOperator& A) {
  if (A.abstractEntries()) return std::nullopt;
  Structure st = A.structure();
  std::vector<Index> cuts;
  if (st.kind == Structure::Kind::Periodic) {
    Index q = st.period;
    Index anchor = -1;
    for (Index c = 0; c < q; ++c) {
      if (isCutPoint(A, c)) {
        anchor = c;
        break;
      }
    }
    if (anchor < 0) return std::nullopt;
    for (Index c = anchor; c <= anchor + q; ++c)
      if (isCutPoint(A, c)) cuts.push_back(c);
  } else {
    Index w = A.bandWidth();
    Index L0 = st.coreLo - w - 2 * st.leftPeriod;
    Index R0 = st.coreHi + w + 2 * st.rightPeriod;
    std::optional<Index> anchor;
    for (Index c = L0; c < L0 + st.leftPeriod; ++c) {
      if (isCutPoint(A, c)) {
        anchor = c;
        break;
      }
    }
    if (!anchor) return std::nullopt;
    bool rightCut = false;
    for (Index c = R0; c < R0 + st.rightPeriod; ++c) rightCut = rightCut || isCutPoint(A, c);
    if (!rightCut) return std::nullopt;
    Index last = *anchor;
    cuts.push_back(*anchor);
    for (Index c = *anchor + 1; c <= R0 + st.rightPeriod; ++c) {
      if (isCutPoint(A, c)) {
        cuts.push_back(c);
        last = c;
      }
    }
    if (last < R0) return std::nullopt;
  }
  if (cuts.size() < 2) return std::nullopt;
  std::vector<Window::Interval> blocks;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    blocks.push_back(Window::Interval{cuts[i], cuts[i + 1] - 1});
  return blocks;
}

}  // namespace limitops
