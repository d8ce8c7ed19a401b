#include <doctest.h>

#include "limitops/gallery.hpp"
#include "limitops/localize.hpp"
#include "test_util.hpp"

using namespace limitops;

namespace {

// Step potential with distinct tail lower norms after the +3 shift:
// left tail V1 + V-1 + 5I (nu = 3), right tail V1 + V-1 + 3I (nu = 1).
BandOperator shiftedStep() {
  std::map<Index, CoeffSeq> d;
  d.emplace(1, CoeffSeq::constant(Entry::scalar({1, 0})));
  d.emplace(-1, CoeffSeq::constant(Entry::scalar({1, 0})));
  d.emplace(0, CoeffSeq::eventuallyPeriodic({Entry::scalar({5, 0})}, 0, {},
                                            {Entry::scalar({3, 0})}));
  return BandOperator::fromDiagonals(std::move(d), 1);
}

void checkStageInvariants(const LocalizationTrace& trace) {
  const auto& D = trace.schedule.windowSizes;
  for (const auto& stage : trace.stages) {
    Index n = stage.n;
    REQUIRE(stage.steps.size() == static_cast<size_t>(n + 1));
    for (const auto& step : stage.steps) {
      Index k = step.k;
      // diam supp x_n^k <= D_{n-k}
      CHECK(step.suppHi - step.suppLo <= D[n - k]);
      if (k >= 1) {
        // supp x_n^k inside F_{D_{n-(k-1)}} and j_n^k in F_{D_{n-(k-1)}}
        CHECK(step.suppLo >= -D[n - k + 1] / 2);
        CHECK(step.suppHi <= D[n - k + 1] / 2);
        CHECK(std::abs(step.shift) <= D[n - k + 1] / 2);
      }
      // the step inequality ||C x|| < nu(B_n) + delta_{n-k}/2 (conservative form)
      CHECK(step.tau <= stage.nuB + trace.schedule.deltas[n - k] / 2.0 + 1e-12);
    }
    // shift budget of inequality (6): partial sums stay inside F_{D_l}
    for (Index l = 1; l <= n; ++l) {
      Index sum = 0;
      for (Index k = n - l + 1; k <= n; ++k) sum += stage.steps[k].shift;
      CHECK(std::abs(sum) <= D[l] / 2);
    }
    // inequality (4) residuals under the tails r_l
    for (Index l = 0; l <= n; ++l) {
      CHECK(stage.residuals[l] < trace.schedule.tails[l]);
      CHECK(stage.residuals[l] + stage.nuBCert < trace.schedule.tails[l]);
    }
  }
}

}  // namespace

TEST_CASE("schedule: dyadic deltas, exact tails, more-than-doubling windows") {
  BandOperator A = shiftedStep();
  LocalizationSchedule s = make_localization_schedule(A, 8);
  REQUIRE(s.deltas.size() == 9);
  for (Index k = 0; k <= 8; ++k)
    CHECK(s.deltas[k] == std::ldexp(1.0, -static_cast<int>(k)));
  for (Index l = 0; l <= 8; ++l) {
    CHECK(s.tails[l] == std::ldexp(1.0, 1 - static_cast<int>(l)));
    // r_l = sum_{k >= l} delta_k exactly (geometric tail)
    double sum = 0.0;
    for (int k = 60; k >= l; --k) sum += std::ldexp(1.0, -k);
    CHECK(s.tails[l] == doctest::Approx(sum).epsilon(1e-15));
  }
  for (Index k = 0; k <= 8; ++k) CHECK(s.windowSizes[k] % 2 == 0);
  for (Index k = 1; k <= 8; ++k) CHECK(s.windowSizes[k] > 2 * s.windowSizes[k - 1]);
  // window sizes come from certificates for delta_k / 2
  CHECK(s.windowSizes[0] >= window_size(0.5, s.r, s.w, 2.0, 1).D);
}

TEST_CASE("localize on a Laurent operator: sigma_op is a singleton, residuals vanish") {
  BandOperator A = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {-3, 0}}});
  LocalizationTrace trace = theorem8_localize(A, 4);
  CHECK(trace.outcome == LocalizationTrace::Outcome::Localized);
  CHECK(trace.identifiedRep == 0);
  CHECK(std::abs(trace.nuC - 1.0) < 1e-6);
  checkStageInvariants(trace);
  for (const auto& stage : trace.stages)
    for (double r : stage.residuals) CHECK(r <= stage.nuBCert + 0.5 + 1e-12);
}

TEST_CASE("localize picks the smaller-nu tail of a two-sided step operator") {
  BandOperator A = shiftedStep();
  LocalizationTrace trace = theorem8_localize(A, 6);
  checkStageInvariants(trace);
  REQUIRE(trace.outcome == LocalizationTrace::Outcome::Localized);
  CHECK(std::abs(trace.nuC - 1.0) < 1e-3);
  CHECK(trace.enumeratedMinNu == doctest::Approx(trace.nuC));
  // the identified representative lies in the right-tail orbit (nu = 1)
  BandOperator rightTail = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {3, 0}}});
  OperatorSpectrumEnum en = enumerate_spectrum(A);
  REQUIRE(trace.identifiedRep >= 0);
  bool inOrbit = false;
  for (Index t = -2; t <= 2; ++t)
    inOrbit = inOrbit || probe_equal(en.representatives[trace.identifiedRep],
                                     shift_conjugate(rightTail, t), 6);
  CHECK(inOrbit);
}

TEST_CASE("localize on example 14 reports the non-attainment behaviour") {
  BandOperator A = gallery_example14(10);
  LocalizationTrace trace = theorem8_localize(A, 6, 10);
  checkStageInvariants(trace);
  CHECK(trace.outcome == LocalizationTrace::Outcome::NoStableSubsequence);
  CHECK(trace.nuTrendDecreasing);
  CHECK(trace.enumeratedMinNu == doctest::Approx(1.0 / 11.0).epsilon(1e-9));
  // stages kept descending through distinct representatives
  for (size_t i = 1; i < trace.stages.size(); ++i)
    CHECK(trace.stages[i].nuB <= trace.stages[i - 1].nuB + 1e-12);
}

TEST_CASE("doctored schedule triggers ScheduleTooShallow") {
  BandOperator A = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {-3, 0}}});
  LocalizationSchedule s = make_localization_schedule(A, 3);
  for (auto& d : s.windowSizes) d = 4;  // far below any certified window
  CHECK_THROWS_AS(theorem8_localize(A, 3, 30, &s), NumericError);
}
