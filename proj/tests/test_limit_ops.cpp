#include <doctest.h>

#include "limitops/floquet.hpp"
#include "limitops/gallery.hpp"
#include "limitops/limit_ops.hpp"
#include "test_util.hpp"

using namespace limitops;
using testutil::Rng;

namespace {

BandOperator laurentHop() {
  return BandOperator::laurent({{1, {1.0, 0.0}}, {-1, {1.0, 0.0}}});
}

// Eventually periodic Schroedinger operator: off-diagonals 1, potential 2 on
// the left tail and 0 on the right tail.
BandOperator schroedingerStep() {
  std::map<Index, CoeffSeq> d;
  d.emplace(1, CoeffSeq::constant(Entry::scalar({1, 0})));
  d.emplace(-1, CoeffSeq::constant(Entry::scalar({1, 0})));
  d.emplace(0, CoeffSeq::eventuallyPeriodic({Entry::scalar({2, 0})}, 0, {},
                                            {Entry::scalar({0, 0})}));
  return BandOperator::fromDiagonals(std::move(d), 1);
}

}  // namespace

TEST_CASE("floquet cloud of a Laurent operator lies on its symbol curve") {
  BandOperator A = BandOperator::laurent(
      {{1, {1, 0}}, {-1, {0.5, 0.25}}, {0, {-0.3, 0.1}}, {2, {0, -0.2}}});
  FloquetSpectrum sp = floquet_spectrum(A, 128);
  for (size_t k = 0; k < sp.thetas.size(); ++k) {
    Complex curve{0, 0};
    for (const auto& [alpha, seq] : A.diagonals())
      curve += seq.at(0).scalarValue() *
               std::exp(Complex(0, sp.thetas[k] * static_cast<double>(alpha)));
    REQUIRE(sp.eigenvalues[k].size() == 1);
    CHECK(std::abs(sp.eigenvalues[k](0) - curve) < 1e-9);
  }
}

TEST_CASE("floquet bands: hopping, shifted hopping, identity") {
  FloquetSpectrum hop = floquet_spectrum(laurentHop(), 256);
  REQUIRE(hop.selfAdjoint);
  REQUIRE(hop.bands.size() == 1);
  CHECK(hop.bands[0].first == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(hop.bands[0].second == doctest::Approx(2.0).epsilon(1e-12));

  FloquetSpectrum shifted = floquet_spectrum(
      BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {2, 0}}}), 256);
  CHECK(shifted.bands[0].first == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(shifted.bands[0].second == doctest::Approx(4.0).epsilon(1e-12));

  FloquetSpectrum id = floquet_spectrum(BandOperator::identity(), 16);
  CHECK(id.bands[0].first == doctest::Approx(1.0));
  CHECK(id.bands[0].second == doctest::Approx(1.0));
}

TEST_CASE("period-2 symbol eigenvalues agree with dense circulant sections") {
  // diagonal period 2 potential over the hopping operator
  std::map<Index, CoeffSeq> d;
  d.emplace(1, CoeffSeq::constant(Entry::scalar({1, 0})));
  d.emplace(-1, CoeffSeq::constant(Entry::scalar({1, 0})));
  d.emplace(0, CoeffSeq::periodic({Entry::scalar({0.7, 0}), Entry::scalar({-0.4, 0})}));
  BandOperator A = BandOperator::fromDiagonals(std::move(d), 1);
  FloquetSpectrum sp = floquet_spectrum(A, 64);
  REQUIRE(sp.blockDim == 2);
  // oracle: analytic dispersion of the period-2 Schroedinger symbol
  for (size_t k = 0; k < sp.thetas.size(); ++k) {
    double theta = sp.thetas[k];
    double mean = (0.7 - 0.4) / 2.0;
    double half = (0.7 + 0.4) / 2.0;
    double root = std::sqrt(half * half + 2.0 + 2.0 * std::cos(theta));
    std::vector<double> expect{mean - root, mean + root};
    std::vector<double> got{sp.eigenvalues[k](0).real(), sp.eigenvalues[k](1).real()};
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(expect[0]).epsilon(1e-9));
    CHECK(got[1] == doctest::Approx(expect[1]).epsilon(1e-9));
  }
}

TEST_CASE("nu_periodic_certified brackets the windowed oracle") {
  BandOperator A = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {-3, 0}}});
  LowerNormEstimate e = nu_periodic_certified(A, 8192);
  CHECK(e.value >= 1.0 - 1e-9);              // true nu = min|2cos - 3| = 1
  CHECK(e.value - e.delta <= 1.0 + 1e-9);
  CHECK(e.delta < 1e-2);

  // hopping operator has 0 in its spectrum
  LowerNormEstimate z = nu_periodic_certified(laurentHop(), 8192);
  CHECK(z.value < 2e-3);
}

TEST_CASE("enumerate_spectrum: Laurent, periodic, eventually periodic") {
  OperatorSpectrumEnum laur = enumerate_spectrum(laurentHop());
  CHECK(laur.representatives.size() == 1);
  CHECK(laur.exhaustive);
  CHECK(laur.rich);
  CHECK(laur.richTag == RichTag::FiniteDimEntries);
  CHECK(probe_equal(laur.representatives[0], laurentHop(), 10));

  std::map<Index, CoeffSeq> d;
  d.emplace(0, CoeffSeq::periodic({Entry::scalar({1, 0}), Entry::scalar({2, 0}),
                                   Entry::scalar({3, 0})}));
  d.emplace(1, CoeffSeq::constant(Entry::scalar({1, 0})));
  BandOperator P = BandOperator::fromDiagonals(std::move(d), 1);
  OperatorSpectrumEnum pe = enumerate_spectrum(P);
  CHECK(pe.representatives.size() == 3);
  for (size_t a = 0; a < pe.representatives.size(); ++a)
    for (size_t b = a + 1; b < pe.representatives.size(); ++b)
      CHECK(!probe_equal(pe.representatives[a], pe.representatives[b], pe.probeHalfWidth));

  OperatorSpectrumEnum se = enumerate_spectrum(schroedingerStep());
  REQUIRE(se.representatives.size() == 2);
  CHECK(se.exhaustive);
  CHECK(probe_equal(se.representatives[0],
                    BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {2, 0}}}), 10));
  CHECK(probe_equal(se.representatives[1], laurentHop(), 10));
}

TEST_CASE("enumerated representatives satisfy the band bounds of A") {
  BandOperator A = schroedingerStep();
  OperatorSpectrumEnum en = enumerate_spectrum(A);
  for (const auto& B : en.representatives) {
    CHECK(B.bandWidth() <= A.bandWidth());
    CHECK(wiener_norm_bound(B) <= wiener_norm_bound(A) + 1e-12);
  }

  BandOperator E14 = gallery_example14(8);
  OperatorSpectrumEnum e14 = enumerate_spectrum(E14, 8);
  for (const auto& B : e14.representatives) {
    CHECK(B.bandWidth() <= E14.bandWidth());
    CHECK(wiener_norm_bound(B) <= wiener_norm_bound(E14) + 1e-12);
  }
}

TEST_CASE("gallery example14: entries, blocks, wiener bound") {
  BandOperator A = gallery_example14(6);
  // first superblock D_1 = C_1 = (1/2) at index 0
  CHECK(entry_at(A, 0, 0).scalarValue() == Complex{0.5, 0.0});
  CHECK(entry_at(A, -1, -1).scalarValue() == Complex{1.0, 0.0});
  CHECK(wiener_norm_bound(A) == doctest::Approx(2.0));
  CHECK(A.scheme()->selfAdjoint());
  CHECK(probe_equal(adjoint(A), A, 12));

  CHECK(example14_averaging_block(3).isApprox(Eigen::MatrixXcd::Ones(3, 3) / 3.0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(example14_averaging_block(7));
  CHECK(svd.singularValues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));

  // D_2 = diag(C_1, C_1, C_2, C_2): block C_2 starts at 1 + 2 = 3
  auto blk = example14_deflation_block(2);
  Eigen::MatrixXcd M = materialize_block(A, Window::interval(3, 4), Window::interval(3, 4));
  CHECK(M.isApprox(blk, 1e-14));
  // deflation block spectrum: {1/(k+1), 1}
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(example14_deflation_block(5));
  CHECK(es.eigenvalues().minCoeff() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gallery example14: enumerated lower norms realize 1/(k+1) without attaining 0") {
  Index K = 8;
  BandOperator A = gallery_example14(K);
  OperatorSpectrumEnum en = enumerate_spectrum(A, K);
  CHECK(en.rich);
  CHECK(en.richTag == RichTag::PaperAsserted);
  CHECK(en.exhaustive);

  double minNu = std::numeric_limits<double>::infinity();
  for (const auto& B : en.representatives) {
    LowerNormEstimate e = representative_lower_norm(B);
    CHECK(e.value > 0.0);
    minNu = std::min(minNu, e.value);
  }
  CHECK(minNu == doctest::Approx(1.0 / (K + 1.0)).epsilon(1e-9));

  // pure repetition reps carry exactly nu(C_k) = 1/(k+1)
  for (Index k = 1; k <= K; ++k) {
    LowerNormEstimate e = representative_lower_norm(deflation_periodic_rep(k));
    CHECK(e.value == doctest::Approx(1.0 / (k + 1.0)).epsilon(1e-9));
  }
  LowerNormEstimate t = representative_lower_norm(deflation_transition_rep(3));
  CHECK(t.value == doctest::Approx(1.0 / 5.0).epsilon(1e-9));
}

TEST_CASE("gallery example13: analytic abstract entries and spectrum pattern") {
  BandOperator A = gallery_example13(6);
  CHECK(A.abstractEntries());
  CHECK(A.isDiagonal());
  // C_1 = (B_1) occupies index 0; C_2 = (B_1, B_1, B_2, B_2) starts at 1
  CHECK(entry_at(A, 0, 0).lowerNorm() == 1.0);
  CHECK(entry_at(A, 0, 0).label() == "B_1");
  CHECK(entry_at(A, 3, 3).label() == "B_2");
  CHECK(entry_at(A, 3, 3).lowerNorm() == 0.5);
  CHECK(entry_at(A, 3, 3).normBound() == 2.5);
  CHECK(entry_at(A, -2, -2).label() == "I");

  OperatorSpectrumEnum en = enumerate_spectrum(A, 6);
  CHECK(!en.rich);
  CHECK(en.richTag == RichTag::NotRich);
  double minNu = std::numeric_limits<double>::infinity();
  for (const auto& B : en.representatives) {
    LowerNormEstimate e = representative_lower_norm(B);
    CHECK(e.value > 0.0);
    minNu = std::min(minNu, e.value);
  }
  CHECK(minNu == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("flip operator: materialization and conjugation") {
  GeneralOperator J = gallery_example16_flip();
  std::vector<Index> idx{-2, -1, 0, 1, 2};
  Eigen::MatrixXcd M = J.materialize(idx, idx);
  Eigen::MatrixXcd antidiag = Eigen::MatrixXcd::Zero(5, 5);
  for (int i = 0; i < 5; ++i) antidiag(i, 4 - i) = 1.0;
  CHECK(M.isApprox(antidiag));

  GeneralOperator J2 = J.shiftConjugate(3).shiftConjugate(4);
  GeneralOperator J3 = J.shiftConjugate(7);
  CHECK(J2.flip()->shift == J3.flip()->shift);
}

TEST_CASE("pconv: B_n converges to the identity with zero residuals beyond m") {
  auto seq = named_pconv_sequence("bn-to-identity", GeneralOperator{});
  PConvergenceReport rep = pconv_check(seq, GeneralOperator(BandOperator::identity()),
                                       {1, 2, 5}, 40, 1e-8);
  CHECK(rep.verdict == PConvergenceReport::Verdict::ConvergesNumerically);
  for (size_t mi = 0; mi < rep.ms.size(); ++mi)
    for (Index n = rep.ms[mi]; n <= 40; ++n)
      CHECK(rep.residuals(static_cast<Index>(mi), n - 1) == 0.0);
}

TEST_CASE("pconv: shifted flip keeps residual exactly 1 and fails to converge") {
  auto seq = named_pconv_sequence("shifted-flip", GeneralOperator{});
  PConvergenceReport rep = pconv_check(seq, GeneralOperator(BandOperator::identity()),
                                       {1, 2, 5, 10}, 60, 1e-8);
  CHECK(rep.verdict == PConvergenceReport::Verdict::FailsToConverge);
  CHECK(rep.floorValue == doctest::Approx(1.0).epsilon(1e-12));
  for (size_t mi = 0; mi < rep.ms.size(); ++mi)
    for (Index n = rep.ms[mi] + 1; n <= 60; ++n)
      CHECK(rep.residuals(static_cast<Index>(mi), n - 1) ==
            doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pconv: constant sequence and periodic sub-sequence have zero residuals") {
  Rng rng(77);
  BandOperator A = testutil::randomBandOperator(rng, 1);
  GeneralOperator GA(A);
  PConvergenceReport c =
      pconv_check(named_pconv_sequence("constant", GA), GA, {1, 3}, 10, 1e-8);
  CHECK(c.verdict == PConvergenceReport::Verdict::ConvergesNumerically);
  CHECK(c.residuals.maxCoeff() == 0.0);

  std::map<Index, CoeffSeq> d;
  d.emplace(0, CoeffSeq::periodic({Entry::scalar({1, 0}), Entry::scalar({-1, 0})}));
  d.emplace(1, CoeffSeq::constant(Entry::scalar({0.5, 0})));
  GeneralOperator P(BandOperator::fromDiagonals(std::move(d), 1));
  PConvergenceReport r =
      pconv_check(named_pconv_sequence("periodic-shifts", P), P, {1, 2, 4}, 12, 1e-8);
  CHECK(r.verdict == PConvergenceReport::Verdict::ConvergesNumerically);
  CHECK(r.residuals.maxCoeff() == 0.0);
}
