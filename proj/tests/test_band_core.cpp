#include <doctest.h>

#include "test_util.hpp"

using namespace limitops;
using testutil::Rng;

namespace {

BandOperator laurentHop() {
  return BandOperator::laurent({{1, {1.0, 0.0}}, {-1, {1.0, 0.0}}});
}

}  // namespace

TEST_CASE("entry_at reads diagonals and vanishes outside the band") {
  BandOperator A = laurentHop();
  CHECK(A.bandWidth() == 1);
  CHECK(entry_at(A, 5, 4).scalarValue() == Complex{1.0, 0.0});
  CHECK(entry_at(A, 5, 5).scalarValue() == Complex{0.0, 0.0});
  CHECK(entry_at(A, 5, 3).isZero());
  CHECK(entry_at(A, 0, 7).isZero());
}

TEST_CASE("band sparsity holds on random index pairs") {
  Rng rng(7);
  BandOperator A = testutil::randomBandOperator(rng, 2);
  for (int t = 0; t < 200; ++t) {
    Index i = rng.integer(-50, 50);
    Index j = rng.integer(-50, 50);
    if (std::abs(i - j) > A.bandWidth()) CHECK(entry_at(A, i, j).isZero());
  }
}

TEST_CASE("materialize_block basics") {
  BandOperator I3 = BandOperator::identity();
  Eigen::MatrixXcd M = materialize_block(I3, Window::interval(0, 2), Window::interval(0, 2));
  CHECK(M.isApprox(Eigen::MatrixXcd::Identity(3, 3)));

  BandOperator A = laurentHop();
  Eigen::MatrixXcd col = materialize_block(A, Window::interval(-1, 1), Window::interval(0, 0));
  CHECK(col(0, 0) == Complex{1.0, 0.0});
  CHECK(col(1, 0) == Complex{0.0, 0.0});
  CHECK(col(2, 0) == Complex{1.0, 0.0});
}

TEST_CASE("shift_conjugate is a group action and fixes Laurent operators") {
  Rng rng(11);
  BandOperator A = testutil::randomBandOperator(rng, 2);
  BandOperator B = shift_conjugate(shift_conjugate(A, 3), 4);
  BandOperator C = shift_conjugate(A, 7);
  CHECK(probe_equal(B, C, 20));
  CHECK(probe_equal(shift_conjugate(shift_conjugate(A, 5), -5), A, 20));

  BandOperator L = laurentHop();
  CHECK(probe_equal(shift_conjugate(L, 9), L, 20));

  // entry_at(result, i, k) == entry_at(A, i + j, k + j)
  BandOperator S = shift_conjugate(A, -6);
  for (Index i = -5; i <= 5; ++i)
    for (Index k = i - 2; k <= i + 2; ++k)
      CHECK(entry_at(S, i, k) == entry_at(A, i - 6, k - 6));
}

TEST_CASE("diagonal entry moves under conjugation") {
  std::map<Index, CoeffSeq> d;
  d.emplace(0, CoeffSeq::eventuallyPeriodic({Entry::scalar({0, 0})}, 0,
                                            {Entry::scalar({4.0, 0.0})},
                                            {Entry::scalar({0, 0})}));
  BandOperator A = BandOperator::fromDiagonals(std::move(d), 1);
  BandOperator B = shift_conjugate(A, 5);
  CHECK(entry_at(B, -5, -5).scalarValue() == Complex{4.0, 0.0});
  CHECK(entry_at(B, 0, 0).isZero());
}

TEST_CASE("adjoint is an involution and matches conjugate transposition") {
  Rng rng(13);
  BandOperator A = testutil::randomBandOperator(rng, 2);
  BandOperator At = adjoint(A);
  for (Index i = -8; i <= 8; ++i)
    for (Index j = i - 2; j <= i + 2; ++j)
      CHECK(entry_at(At, i, j).scalarValue() ==
            std::conj(entry_at(A, j, i).scalarValue()));
  CHECK(probe_equal(adjoint(At), A, 12));

  CHECK(probe_equal(adjoint(BandOperator::laurent({{1, {1, 0}}})),
                    BandOperator::laurent({{-1, {1, 0}}}), 10));
  CHECK(probe_equal(adjoint(BandOperator::laurent({{0, {0, 1}}})),
                    BandOperator::laurent({{0, {0, -1}}}), 10));

  // Hermitian Jacobi operator is self-adjoint
  BandOperator J = BandOperator::laurent({{1, {1, 0}}, {-1, {1, 0}}, {0, {-3, 0}}});
  CHECK(probe_equal(adjoint(J), J, 10));
}

TEST_CASE("wiener_norm_bound sums diagonal sups and dominates the block norm") {
  CHECK(wiener_norm_bound(laurentHop()) == doctest::Approx(2.0));
  CHECK(wiener_norm_bound(BandOperator::identity()) == doctest::Approx(1.0));

  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    BandOperator A = testutil::randomBandOperator(rng, 2);
    Window F = Window::interval(-15, 15);
    double opNorm = testutil::oracleLargestSingular(
        materialize_block(A, F.dilate(A.bandWidth()), F));
    CHECK(opNorm <= wiener_norm_bound(A) + 1e-12);
  }
}

TEST_CASE("matrix entries materialize as blocks") {
  Eigen::MatrixXcd blk(2, 2);
  blk << Complex{1, 0}, Complex{2, 0}, Complex{3, 0}, Complex{4, 0};
  std::map<Index, CoeffSeq> d;
  d.emplace(0, CoeffSeq::constant(Entry::matrix(blk)));
  BandOperator A = BandOperator::fromDiagonals(std::move(d), 2);
  Eigen::MatrixXcd M = materialize_block(A, Window::interval(0, 1), Window::interval(0, 1));
  CHECK(M.rows() == 4);
  CHECK(M(0, 1) == Complex{2, 0});
  CHECK(M(3, 2) == Complex{3, 0});
  CHECK(M(0, 2) == Complex{0, 0});
}

TEST_CASE("abstract entries are diagonal-only and not materializable") {
  CoeffSeq diag = CoeffSeq::constant(Entry::abstract("b", 2.0, 0.5));
  BandOperator A = BandOperator::diagonal(diag);
  CHECK(A.abstractEntries());
  CHECK_THROWS_AS(materialize_block(A, Window::interval(0, 1), Window::interval(0, 1)),
                  PreconditionError);
  CHECK_THROWS_AS(adjoint(A), PreconditionError);

  std::map<Index, CoeffSeq> bad;
  bad.emplace(1, CoeffSeq::constant(Entry::abstract("b", 1.0, 0.5)));
  CHECK_THROWS_AS(BandOperator::fromDiagonals(std::move(bad), 1), PreconditionError);
}

TEST_CASE("structure detection: periodic vs eventually periodic") {
  BandOperator L = laurentHop();
  CHECK(L.structure().kind == Structure::Kind::Periodic);
  CHECK(L.structure().period == 1);

  std::map<Index, CoeffSeq> d;
  d.emplace(0, CoeffSeq::periodic({Entry::scalar({1, 0}), Entry::scalar({2, 0}),
                                   Entry::scalar({0, 0})}));
  d.emplace(1, CoeffSeq::periodic({Entry::scalar({1, 0}), Entry::scalar({5, 0})}));
  BandOperator P = BandOperator::fromDiagonals(std::move(d), 1);
  CHECK(P.structure().period == 6);

  std::map<Index, CoeffSeq> e;
  e.emplace(0, CoeffSeq::eventuallyPeriodic({Entry::scalar({2, 0})}, 0, {},
                                            {Entry::scalar({0, 0})}));
  e.emplace(1, CoeffSeq::constant(Entry::scalar({1, 0})));
  BandOperator E = BandOperator::fromDiagonals(std::move(e), 1);
  auto st = E.structure();
  CHECK(st.kind == Structure::Kind::EventuallyPeriodic);
  CHECK(st.leftPeriod == 1);
  CHECK(st.rightPeriod == 1);
}

TEST_CASE("window algebra") {
  Window u = Window::unionOf({{5, 7}, {0, 2}, {3, 4}});
  CHECK(u.parts().size() == 1);  // adjacent intervals merge
  CHECK(u.count() == 8);

  Window v = Window::unionOf({{0, 1}, {5, 6}});
  CHECK(v.dilate(1).parts().size() == 2);
  CHECK(v.dilate(2).parts().size() == 1);
  CHECK(v.intersect(1, 5).count() == 2);
  CHECK(v.contains(6));
  CHECK(!v.contains(3));
}
