#include <doctest.h>

#include "limitops/gallery.hpp"
#include "limitops/spectral.hpp"
#include "test_util.hpp"

using namespace limitops;
using testutil::Rng;

namespace {

BandOperator schroedingerStep() {
  std::map<Index, CoeffSeq> d;
  d.emplace(1, CoeffSeq::constant(Entry::scalar({1, 0})));
  d.emplace(-1, CoeffSeq::constant(Entry::scalar({1, 0})));
  d.emplace(0, CoeffSeq::eventuallyPeriodic({Entry::scalar({2, 0})}, 0, {},
                                            {Entry::scalar({0, 0})}));
  return BandOperator::fromDiagonals(std::move(d), 1);
}

}  // namespace

TEST_CASE("floquet union of the step Schroedinger operator is [-2,2] u [0,4]") {
  EssentialSpectrumResult res = essential_spectrum_floquet(schroedingerStep(), 2048);
  REQUIRE(res.selfAdjoint);
  std::vector<std::pair<double, double>> expect{{-2.0, 4.0}};  // the union merges
  CHECK(hausdorff_distance(res.intervals, expect) <= 1e-6);
  CHECK(res.repCount == 2);
}

TEST_CASE("floquet union: Laurent hopping alone and compact perturbations of I") {
  BandOperator hop = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}});
  EssentialSpectrumResult r1 = essential_spectrum_floquet(hop);
  CHECK(hausdorff_distance(r1.intervals, {{-2.0, 2.0}}) <= 1e-9);

  // I + finitely supported perturbation: sigma_op = {I}, sp_ess = {1}
  std::map<Index, CoeffSeq> d;
  d.emplace(0, CoeffSeq::eventuallyPeriodic(
                   {Entry::scalar({1, 0})}, 0,
                   {Entry::scalar({5, 0}), Entry::scalar({-2, 0})}, {Entry::scalar({1, 0})}));
  BandOperator pert = BandOperator::fromDiagonals(std::move(d), 1);
  EssentialSpectrumResult r2 = essential_spectrum_floquet(pert);
  CHECK(hausdorff_distance(r2.intervals, {{1.0, 1.0}}) <= 1e-9);
}

TEST_CASE("hausdorff distance on interval unions") {
  CHECK(hausdorff_distance({{0, 1}}, {{0, 1}}) == 0.0);
  CHECK(hausdorff_distance({{0, 1}}, {{0, 2}}) == doctest::Approx(1.0));
  CHECK(hausdorff_distance({{0, 1}, {3, 4}}, {{0, 4}}) == doctest::Approx(1.0));
  CHECK(hausdorff_distance({{-2, 2}}, {{-2, 2}, {5, 6}}) == doctest::Approx(4.0));
}

TEST_CASE("gamma grid flags the spectrum strip and respects hysteresis") {
  GridBox box{-3.0, 5.0, -1.0, 1.0, 120, 61};
  EssentialSpectrumResult res =
      essential_spectrum_gamma(schroedingerStep(), box, 0.05, 2048);
  REQUIRE(res.gamma.size() == static_cast<size_t>(box.nx) * box.ny);
  for (int iy = 0; iy < box.ny; ++iy) {
    double im = box.im0 + (box.im1 - box.im0) * iy / (box.ny - 1.0);
    for (int ix = 0; ix < box.nx; ++ix) {
      double re = box.re0 + (box.re1 - box.re0) * ix / (box.nx - 1.0);
      double dist;  // analytic distance to [-2,4]
      if (re < -2.0)
        dist = std::hypot(re + 2.0, im);
      else if (re > 4.0)
        dist = std::hypot(re - 4.0, im);
      else
        dist = std::abs(im);
      size_t at = static_cast<size_t>(iy) * box.nx + ix;
      // sampled gamma overestimates the true distance by at most certRadius
      CHECK(res.gamma[at] >= dist - 1e-9);
      CHECK(res.gamma[at] <= dist + res.certRadius + 1e-9);
      if (res.verdict[at] == 0) CHECK(dist <= 0.05 + 1e-9);
      if (res.verdict[at] == 2) CHECK(res.gamma[at] > 0.1);
    }
  }
}

TEST_CASE("gamma evaluator routes: diagonal values and blocks are exact") {
  // diagonal period-2 values {1, -1}
  std::map<Index, CoeffSeq> d;
  d.emplace(0, CoeffSeq::periodic({Entry::scalar({1, 0}), Entry::scalar({-1, 0})}));
  BandOperator diag = BandOperator::fromDiagonals(std::move(d), 1);
  GammaEvaluator ev = GammaEvaluator::make(diag, 64);
  CHECK(ev.certRadius() == 0.0);
  CHECK(ev.eval({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(ev.eval({1.0, 0.5}) == doctest::Approx(0.5));

  GammaEvaluator bl = GammaEvaluator::make(deflation_periodic_rep(3), 64);
  CHECK(bl.certRadius() == 0.0);
  CHECK(bl.eval({0.0, 0.0}) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(bl.eval({1.0, 0.0}) <= 1e-12);
}

TEST_CASE("fredholm_check classifies the worked examples") {
  BandOperator gap = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {-3, 0}}});
  FredholmReport r1 = fredholm_check(gap, 0.25);
  CHECK(r1.verdict == FredholmReport::Verdict::PFredholm);
  CHECK(r1.invNormBound == doctest::Approx(1.0).epsilon(1e-3));

  BandOperator hop = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}});
  FredholmReport r2 = fredholm_check(hop, 0.25);
  CHECK(r2.verdict == FredholmReport::Verdict::NotPFredholm);
  CHECK(r2.witnessRep == 0);

  FredholmReport r3 = fredholm_check(BandOperator::identity(), 0.25);
  CHECK(r3.verdict == FredholmReport::Verdict::PFredholm);
}

TEST_CASE("fredholm_check agrees with the sign of dist(0, sp_ess) on test operators") {
  std::vector<BandOperator> ops;
  ops.push_back(schroedingerStep());
  ops.push_back(BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {-3, 0}}}));
  ops.push_back(BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {2.5, 0}}}));
  {
    std::map<Index, CoeffSeq> d;
    d.emplace(0, CoeffSeq::periodic({Entry::scalar({3, 0}), Entry::scalar({4, 0})}));
    d.emplace(1, CoeffSeq::constant(Entry::scalar({1, 0})));
    d.emplace(-1, CoeffSeq::constant(Entry::scalar({1, 0})));
    ops.push_back(BandOperator::fromDiagonals(std::move(d), 1));
  }
  for (const auto& A : ops) {
    EssentialSpectrumResult sp = essential_spectrum_floquet(A, 4096);
    double dist = hausdorff_distance({{0.0, 0.0}}, sp.intervals);
    // one-sided distance from 0 to the union
    double d0 = std::numeric_limits<double>::infinity();
    for (const auto& iv : sp.intervals)
      d0 = std::min(d0, 0.0 < iv.first ? iv.first : (0.0 > iv.second ? -iv.second : 0.0));
    FredholmReport fr = fredholm_check(A, 0.05);
    if (d0 > 0.1) CHECK(fr.verdict == FredholmReport::Verdict::PFredholm);
    if (d0 <= 1e-9) CHECK(fr.verdict == FredholmReport::Verdict::NotPFredholm);
    (void)dist;
  }
}

TEST_CASE("corollary-12 cross-check: gamma 'in' region vs floquet union") {
  BandOperator A = schroedingerStep();
  EssentialSpectrumResult fl = essential_spectrum_floquet(A, 4096);
  GridBox box{-3.0, 5.0, -0.5, 0.5, 100, 41};
  double delta = 0.04;
  EssentialSpectrumResult gm = essential_spectrum_gamma(A, box, delta, 4096);
  double pitchX = (box.re1 - box.re0) / (box.nx - 1);
  double pitchY = (box.im1 - box.im0) / (box.ny - 1);

  // "in" points lie within delta of the union
  for (int iy = 0; iy < box.ny; ++iy) {
    for (int ix = 0; ix < box.nx; ++ix) {
      size_t at = static_cast<size_t>(iy) * box.nx + ix;
      if (gm.verdict[at] != 0) continue;
      double re = box.re0 + pitchX * ix, im = box.im0 + pitchY * iy;
      double dist = std::numeric_limits<double>::infinity();
      for (const auto& iv : fl.intervals) {
        double dre = re < iv.first ? iv.first - re : (re > iv.second ? re - iv.second : 0.0);
        dist = std::min(dist, std::hypot(dre, im));
      }
      CHECK(dist <= delta + 1e-9);
    }
  }
  // every union point has a nearby grid point flagged in or boundary
  for (const auto& iv : fl.intervals) {
    for (double x = iv.first; x <= iv.second; x += 0.05) {
      int ix = static_cast<int>(std::lround((x - box.re0) / pitchX));
      int iy = static_cast<int>(std::lround((0.0 - box.im0) / pitchY));
      bool near = false;
      for (int dy = -1; dy <= 1 && !near; ++dy) {
        for (int dx = -1; dx <= 1 && !near; ++dx) {
          int jx = ix + dx, jy = iy + dy;
          if (jx < 0 || jx >= box.nx || jy < 0 || jy >= box.ny) continue;
          int v = gm.verdict[static_cast<size_t>(jy) * box.nx + jx];
          near = v != 2;
        }
      }
      CHECK(near);
    }
  }
}

TEST_CASE("corollary-10 surrogate: the inverse-norm bound is attained by a representative") {
  BandOperator A = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {3.5, 0}}});
  double delta = 0.05;
  FredholmReport fr = fredholm_check(A, delta);
  REQUIRE(fr.verdict == FredholmReport::Verdict::PFredholm);
  double minNu = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < fr.nu.size(); ++i)
    minNu = std::min(minNu, std::min(fr.nu[i], fr.nuAdjoint[i]));
  CHECK(std::isfinite(fr.invNormBound));
  CHECK(fr.invNormBound == doctest::Approx(1.0 / minNu).epsilon(1e-12));
  bool attained = false;
  for (size_t i = 0; i < fr.nu.size(); ++i)
    attained = attained || std::min(fr.nu[i], fr.nuAdjoint[i]) <= minNu + 2.0 * delta;
  CHECK(attained);
}
