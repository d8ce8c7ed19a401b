#include "limitops/localize.hpp"

#include <algorithm>
#include <cmath>

#include "limitops/floquet.hpp"

namespace limitops {

namespace {

Index floorDiv(Index a, Index b) {
  Index q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

Index evenUp(Index x) { return x % 2 == 0 ? x : x + 1; }

constexpr Index kWitnessWindowCap = 1 << 17;

struct Witness {
  VectorSegment x;
  double tau = 0.0;
  Index windowLo = 0, windowLen = 0;
  bool formal = false;
};

// Near-minimizing unit vector for C with ||C x|| <= target, diam supp <=
// diamMax, supp inside [posLo, posHi]. Routes: exact single-site witnesses for
// diagonal operators, exact block witnesses for direct sums, growing-window
// smallest singular vectors otherwise. Returns nullopt with *diamBound = true
// when the support bound itself prevented success.
std::optional<Witness> findWitness(const BandOperator& C, double target, Index diamMax,
                                   Index posLo, Index posHi, bool* diamBound) {
  *diamBound = false;
  if (C.isDiagonal() && (C.abstractEntries() || C.entryDim() == 1)) {
    LowerNormEstimate e = nu_exact(C, Window::all(), 2.0);
    Index site = e.minimizingOffset;
    if (site < posLo || site > posHi || e.value > target) {
      *diamBound = e.value > target;
      return std::nullopt;
    }
    Witness wit;
    wit.tau = e.value;
    wit.windowLo = site;
    wit.windowLen = 1;
    wit.formal = C.abstractEntries();
    if (e.witness) {
      wit.x = *e.witness;
    } else {
      wit.x.offset = site;
      wit.x.entryDim = 1;
      wit.x.values = Eigen::VectorXcd::Ones(1);
    }
    return wit;
  }

  if (auto blocks = block_representatives(C)) {
    std::optional<Witness> best;
    for (const auto& blk : *blocks) {
      Index width = blk.b - blk.a + 1;
      if (width - 1 > diamMax || blk.a < posLo || blk.b > posHi) continue;
      LowerNormEstimate e = nu_exact(C, Window::interval(blk.a, blk.b), 2.0);
      if (!best || e.value < best->tau) {
        Witness wit;
        wit.tau = e.value;
        wit.windowLo = blk.a;
        wit.windowLen = width;
        wit.x = *e.witness;
        best = std::move(wit);
      }
    }
    if (best && best->tau <= target) return best;
    if (best) *diamBound = true;
    return std::nullopt;
  }

  Structure st = C.structure();
  Index phase = st.kind == Structure::Kind::Periodic
                    ? std::min<Index>(st.period, 32)
                    : std::min<Index>(std::max(st.leftPeriod, st.rightPeriod), 32);
  for (Index L = 32;; L *= 2) {
    L = std::min(L, std::min(diamMax + 1, kWitnessWindowCap));
    std::vector<Index> positions;
    if (st.kind == Structure::Kind::Periodic) {
      for (Index a = 0; a < phase; ++a) positions.push_back(-L / 2 + a);
    } else {
      Index w = C.bandWidth();
      for (Index a = 0; a < phase; ++a) {
        positions.push_back(st.coreLo - w - 2 * L + a);  // deep left tail
        positions.push_back(st.coreHi + w + L + a);      // deep right tail
        positions.push_back(-L / 2 + a);                 // around the core
      }
    }
    std::optional<Witness> best;
    for (Index pos : positions) {
      if (pos < posLo || pos + L - 1 > posHi) continue;
      LowerNormEstimate e = nu_exact(C, Window::interval(pos, pos + L - 1), 2.0);
      if (!best || e.value < best->tau) {
        Witness wit;
        wit.tau = e.value;
        wit.windowLo = pos;
        wit.windowLen = L;
        wit.x = *e.witness;
        best = std::move(wit);
      }
    }
    if (best && best->tau <= target) return best;
    if (L >= diamMax + 1) {
      *diamBound = true;
      return std::nullopt;
    }
    if (L >= kWitnessWindowCap)
      throw NumericError("WitnessSearchBudget",
                         "witness search exceeded the window budget before "
                         "meeting its inequality");
  }
}

}  // namespace

LocalizationSchedule make_localization_schedule(const BandOperator& A, Index depth) {
  if (depth < 1)
    throw PreconditionError("InvalidCertificateParams", "depth must be positive");
  LocalizationSchedule s;
  s.depth = depth;
  s.r = wiener_norm_bound(A) + 1e-9;
  s.w = A.bandWidth() + 1;
  for (Index k = 0; k <= depth; ++k) s.deltas.push_back(std::ldexp(1.0, -static_cast<int>(k)));
  for (Index l = 0; l <= depth; ++l)
    s.tails.push_back(std::ldexp(1.0, 1 - static_cast<int>(l)));
  for (Index k = 0; k <= depth; ++k) {
    Index D = evenUp(window_size(s.deltas[k] / 2.0, s.r, s.w, 2.0, 1).D);
    if (k > 0) D = std::max(D, 2 * s.windowSizes[k - 1] + 2);
    s.windowSizes.push_back(D);
  }
  return s;
}

LocalizationTrace theorem8_localize(const BandOperator& A, Index depth, Index maxReps,
                                    const LocalizationSchedule* scheduleOverride) {
  LocalizationTrace trace;
  trace.schedule = scheduleOverride ? *scheduleOverride : make_localization_schedule(A, depth);
  if (trace.schedule.depth < depth)
    throw PreconditionError("InvalidCertificateParams", "schedule shorter than depth");
  const auto& D = trace.schedule.windowSizes;

  OperatorSpectrumEnum en = enumerate_spectrum(A, maxReps);
  if (!en.exhaustive)
    throw PreconditionError("NotExhaustive", "localization needs an exhaustive enumeration");

  // Certified representative lower norms; the sampling radius must stay well
  // under the finest half-step delta_depth / 2.
  double finest = trace.schedule.deltas[depth] / 2.0;
  for (const auto& B : en.representatives) {
    int samples = 8192;
    try {
      SymbolFamily fam = symbol_family(B);
      double lip = fam.lipschitz();
      if (lip > 0.0)
        samples = std::max(samples, static_cast<int>(std::ceil(20.0 * lip * M_PI / finest)));
    } catch (const Error&) {
      // non-periodic representatives use exact routes
    }
    LowerNormEstimate e = representative_lower_norm(B, samples);
    trace.repNu.push_back(e.value);
  }
  trace.enumeratedMinNu =
      *std::min_element(trace.repNu.begin(), trace.repNu.end());

  trace.selectorOrder.resize(trace.repNu.size());
  for (size_t i = 0; i < trace.selectorOrder.size(); ++i)
    trace.selectorOrder[i] = static_cast<Index>(i);
  std::stable_sort(trace.selectorOrder.begin(), trace.selectorOrder.end(),
                   [&](Index a, Index b) { return trace.repNu[a] > trace.repNu[b]; });

  for (Index n = 1; n <= depth; ++n) {
    Index repIdx =
        trace.selectorOrder[std::min<size_t>(static_cast<size_t>(n - 1),
                                             trace.selectorOrder.size() - 1)];
    const BandOperator& Bn = en.representatives[static_cast<size_t>(repIdx)];
    LowerNormEstimate nuEst = representative_lower_norm(Bn);
    LocalizeStage stage;
    stage.n = n;
    stage.repIndex = repIdx;
    stage.nuB = nuEst.value;
    stage.nuBCert = nuEst.kind == LowerNormEstimate::Kind::Exact ? 0.0 : nuEst.delta;

    BandOperator C = Bn;
    Index total = 0;
    for (Index k = 0; k <= n; ++k) {
      double deltaStep = trace.schedule.deltas[n - k];
      double target = stage.nuB - stage.nuBCert + 0.49 * deltaStep;
      Index diamMax = D[n - k];
      Index posBound = k == 0 ? 3 * D[n] : D[n - (k - 1)] / 2;
      bool diamBound = false;
      auto wit = findWitness(C, target, diamMax, -posBound, posBound, &diamBound);
      if (!wit) {
        if (diamBound)
          throw NumericError(
              "ScheduleTooShallow",
              "stage " + std::to_string(n) + " step " + std::to_string(k) +
                  " cannot meet nu + delta/2 within support diameter " +
                  std::to_string(diamMax));
        throw NumericError("WitnessSearchFailed", "no admissible witness window");
      }
      LocalizeStep step;
      step.k = k;
      step.windowLo = wit->windowLo;
      step.windowLen = wit->windowLen;
      step.tau = wit->tau;
      step.suppLo = wit->x.suppLo();
      step.suppHi = wit->x.suppHi();
      step.formalWitness = wit->formal;
      step.shift = -floorDiv(step.suppLo + step.suppHi, 2);
      stage.steps.push_back(step);
      C = shift_conjugate(C, -step.shift);
      total += step.shift;
    }
    stage.totalShift = total;
    for (Index l = 0; l <= n; ++l)
      stage.residuals.push_back(stage.steps[static_cast<size_t>(n - l)].tau - stage.nuB);

    // Window-stabilization matching: C_n = shift_conjugate(B_n, -total); scan
    // alignments around -total against every representative.
    for (size_t r = 0; r < en.representatives.size() && stage.matchedRep < 0; ++r) {
      for (Index t = -en.probeHalfWidth; t <= en.probeHalfWidth; ++t) {
        BandOperator cand = shift_conjugate(en.representatives[r], -total + t);
        if (probe_equal(shift_conjugate(Bn, -total), cand, en.probeHalfWidth)) {
          stage.matchedRep = static_cast<Index>(r);
          stage.matchShift = -total + t;
          break;
        }
      }
    }
    trace.stages.push_back(std::move(stage));
  }

  // Stable suffix of equal matches identifies the limit candidate C.
  Index suffix = 1;
  while (suffix < static_cast<Index>(trace.stages.size()) &&
         trace.stages[trace.stages.size() - 1 - suffix].matchedRep ==
             trace.stages.back().matchedRep)
    ++suffix;
  if (trace.stages.back().matchedRep >= 0 && suffix >= 2) {
    trace.outcome = LocalizationTrace::Outcome::Localized;
    trace.identifiedRep = trace.stages.back().matchedRep;
    trace.nuC = trace.repNu[static_cast<size_t>(trace.identifiedRep)];
    trace.stableFrom = static_cast<Index>(trace.stages.size()) - suffix + 1;
  } else {
    trace.outcome = LocalizationTrace::Outcome::NoStableSubsequence;
  }
  // Net decline over the last few stages (plateaus from tied representatives
  // are fine); a localized run sits on the minimum and shows none.
  if (trace.stages.size() >= 2) {
    size_t first = trace.stages.size() > 5 ? trace.stages.size() - 5 : 0;
    trace.nuTrendDecreasing =
        trace.stages.back().nuB < trace.stages[first].nuB - 1e-12;
  }
  return trace;
}

}  // namespace limitops
