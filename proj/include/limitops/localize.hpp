#pragma once

#include "limitops/limit_ops.hpp"

namespace limitops {

// Schedule for the minimizer-localization construction: delta_k = 2^-k,
// tails r_l = sum_{k >= l} delta_k = 2^{-l+1}, window sizes D_k certified for
// delta_k / 2 and inflated so D_{k+1} > 2 D_k, all even.
struct LocalizationSchedule {
  Index depth = 0;
  std::vector<double> deltas;      // k = 0..depth
  std::vector<double> tails;       // l = 0..depth
  std::vector<Index> windowSizes;  // D_k, k = 0..depth
  double r = 0.0;                  // norm bound fed to window_size
  Index w = 1;                     // strict band-width bound
};

LocalizationSchedule make_localization_schedule(const BandOperator& A, Index depth);

struct LocalizeStep {
  Index k = 0;
  Index windowLo = 0, windowLen = 0;  // search window that produced the witness
  double tau = 0.0;                   // exactly computed ||C x|| (declared value
                                      // for abstract-entry formal witnesses)
  Index suppLo = 0, suppHi = 0;       // support of x before centralization
  Index shift = 0;                    // centralizing shift j
  bool formalWitness = false;
};

struct LocalizeStage {
  Index n = 0;
  Index repIndex = 0;  // B_n
  double nuB = 0.0;    // certified nu(B_n)
  double nuBCert = 0.0;
  std::vector<LocalizeStep> steps;  // k = 0..n
  Index totalShift = 0;             // C_n = shift_conjugate(B_n, -totalShift)
  std::vector<double> residuals;    // per l: tau_{n-l} - nuB, upper bound on the
                                    // inequality-(4) residual nu(C_n|F_{3D_l}) - nu(B_n)
  Index matchedRep = -1;
  Index matchShift = 0;
};

struct LocalizationTrace {
  enum class Outcome { Localized, NoStableSubsequence };
  LocalizationSchedule schedule;
  std::vector<Index> selectorOrder;  // representatives ordered by decreasing nu
  std::vector<double> repNu;
  std::vector<LocalizeStage> stages;  // n = 1..depth
  Outcome outcome = Outcome::NoStableSubsequence;
  Index identifiedRep = -1;
  double nuC = 0.0;
  Index stableFrom = -1;  // first stage index (1-based n) of the stable suffix
  double enumeratedMinNu = 0.0;
  bool nuTrendDecreasing = false;  // evidence of non-attainment at this depth
};

// Runs the construction at stages n = 1..depth on B_n drawn from the
// enumerated spectrum ordered by decreasing lower norm (the last
// representative repeats once the list is exhausted). Throws
// ScheduleTooShallow when a step cannot meet its inequality within the
// schedule's support bound.
LocalizationTrace theorem8_localize(const BandOperator& A, Index depth, Index maxReps = 30,
                                    const LocalizationSchedule* scheduleOverride = nullptr);

}  // namespace limitops
