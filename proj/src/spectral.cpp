#include "limitops/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>

#include "limitops/parallel.hpp"
#include <cmath>

namespace limitops {

namespace {

std::vector<std::pair<double, double>> mergeIntervals(
    std::vector<std::pair<double, double>> xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& x : xs) {
    if (!out.empty() && x.first <= out.back().second + 1e-12)
      out.back().second = std::max(out.back().second, x.second);
    else
      out.push_back(x);
  }
  return out;
}

}  // namespace

EssentialSpectrumResult essential_spectrum_floquet(const BandOperator& A, int samples,
                                                   Index maxReps) {
  OperatorSpectrumEnum en = enumerate_spectrum(A, maxReps);
  if (!en.exhaustive)
    throw PreconditionError("NotExhaustive",
                            "essential spectrum needs an exhaustive enumeration");
  EssentialSpectrumResult out;
  out.mode = EssentialSpectrumResult::Mode::FloquetUnion;
  out.repCount = static_cast<Index>(en.representatives.size());
  out.selfAdjoint = true;
  std::vector<std::pair<double, double>> intervals;
  for (const auto& B : en.representatives) {
    if (B.abstractEntries() || B.structure().kind != Structure::Kind::Periodic)
      throw PreconditionError("UnsupportedMode",
                              "FloquetUnion needs periodic/constant representatives "
                              "with materializable entries");
    FloquetSpectrum sp = floquet_spectrum(B, samples);
    out.selfAdjoint = out.selfAdjoint && sp.selfAdjoint;
    for (const auto& band : sp.bands) intervals.push_back(band);
    auto cloud = sp.cloud();
    out.cloud.insert(out.cloud.end(), cloud.begin(), cloud.end());
  }
  if (out.selfAdjoint) out.intervals = mergeIntervals(std::move(intervals));
  return out;
}

GammaEvaluator GammaEvaluator::make(const BandOperator& B, int samples) {
  GammaEvaluator ev;
  if (B.isDiagonal() && B.entryDim() == 1 && !B.abstractEntries()) {
    Structure st = B.structure();
    const auto& seq = B.diagonals().begin()->second;
    if (st.kind == Structure::Kind::Periodic) {
      for (Index i = 0; i < st.period; ++i) ev.diagValues_.push_back(seq.at(i).scalarValue());
    } else {
      for (Index i = st.coreLo - st.leftPeriod; i <= st.coreHi + st.rightPeriod; ++i)
        ev.diagValues_.push_back(seq.at(i).scalarValue());
    }
    return ev;
  }
  if (auto blocks = block_representatives(B)) {
    for (const auto& blk : *blocks) {
      Window wb = Window::interval(blk.a, blk.b);
      ev.blocks_.push_back(materialize_block(B, wb, wb));
    }
    return ev;
  }
  ev.symbol_ = sampled_symbol(B, samples);
  ev.certRadius_ = ev.symbol_->certRadius;
  return ev;
}

double GammaEvaluator::eval(Complex lambda) const {
  if (!diagValues_.empty()) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex v : diagValues_) best = std::min(best, std::abs(v - lambda));
    return best;
  }
  if (!blocks_.empty()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& blk : blocks_) {
      Eigen::MatrixXcd M = blk;
      M.diagonal().array() -= lambda;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
      best = std::min(best, svd.singularValues().minCoeff());
    }
    return best;
  }
  return symbol_->gamma(lambda);
}

EssentialSpectrumResult essential_spectrum_gamma(const BandOperator& A, const GridBox& box,
                                                 double delta, int samples, Index maxReps) {
  if (!(delta > 0.0) || box.nx < 2 || box.ny < 2)
    throw PreconditionError("InvalidCertificateParams", "gamma grid needs delta > 0, nx, ny >= 2");
  OperatorSpectrumEnum en = enumerate_spectrum(A, maxReps);
  if (!en.exhaustive)
    throw PreconditionError("NotExhaustive",
                            "essential spectrum needs an exhaustive enumeration");
  std::vector<GammaEvaluator> evals;
  for (const auto& B : en.representatives) {
    if (B.abstractEntries())
      throw PreconditionError("UnsupportedClass",
                              "gamma grid needs materializable representatives");
    evals.push_back(GammaEvaluator::make(B, samples));
  }
  EssentialSpectrumResult out;
  out.mode = EssentialSpectrumResult::Mode::GammaGrid;
  out.repCount = static_cast<Index>(en.representatives.size());
  out.box = box;
  out.delta = delta;
  for (const auto& ev : evals) out.certRadius = std::max(out.certRadius, ev.certRadius());
  out.gamma.resize(static_cast<size_t>(box.nx) * box.ny);
  out.verdict.resize(out.gamma.size());
  // grid points are independent work items; rows are split across workers
  parallel_for(box.ny, thread_hint(), [&](Index iy) {
    double im = box.im0 + (box.im1 - box.im0) * iy / static_cast<double>(box.ny - 1);
    for (int ix = 0; ix < box.nx; ++ix) {
      double re = box.re0 + (box.re1 - box.re0) * ix / static_cast<double>(box.nx - 1);
      Complex lambda(re, im);
      double g = std::numeric_limits<double>::infinity();
      for (const auto& ev : evals) g = std::min(g, ev.eval(lambda));
      size_t at = static_cast<size_t>(iy) * box.nx + ix;
      out.gamma[at] = g;
      out.verdict[at] = g <= delta ? 0 : (g > 2.0 * delta ? 2 : 1);
    }
  });
  return out;
}

FredholmReport fredholm_check(const BandOperator& A, double delta, Index maxReps,
                              int samples) {
  if (!(delta > 0.0))
    throw PreconditionError("InvalidCertificateParams", "delta must be positive");
  OperatorSpectrumEnum en = enumerate_spectrum(A, maxReps);
  if (!en.exhaustive)
    throw PreconditionError("NotExhaustive", "fredholm_check needs an exhaustive enumeration");
  FredholmReport rep;
  rep.delta = delta;
  bool allAbove = true;
  for (size_t i = 0; i < en.representatives.size(); ++i) {
    const BandOperator& B = en.representatives[i];
    LowerNormEstimate e = representative_lower_norm(B, samples);
    double rad = e.kind == LowerNormEstimate::Kind::Exact ? 0.0 : e.delta;
    double adjVal = std::numeric_limits<double>::quiet_NaN();
    if (!B.abstractEntries()) {
      LowerNormEstimate ea = representative_lower_norm(adjoint(B), samples);
      adjVal = ea.value;
      rad = std::max(rad, ea.kind == LowerNormEstimate::Kind::Exact ? 0.0 : ea.delta);
    }
    rep.nu.push_back(e.value);
    rep.nuAdjoint.push_back(adjVal);
    rep.certRadius.push_back(rad);

    double upper = std::isnan(adjVal) ? e.value : std::min(e.value, adjVal);
    double lower = upper - rad;
    if (upper < delta && rep.witnessRep < 0) rep.witnessRep = static_cast<Index>(i);
    if (upper < delta) allAbove = false;
    if (!(lower > delta) || std::isnan(adjVal)) allAbove = false;
    double safeNu = std::max(upper, 1e-300);
    rep.invNormBound = std::max(rep.invNormBound, 1.0 / safeNu);
  }
  if (rep.witnessRep >= 0)
    rep.verdict = FredholmReport::Verdict::NotPFredholm;
  else if (allAbove)
    rep.verdict = FredholmReport::Verdict::PFredholm;
  else
    rep.verdict = FredholmReport::Verdict::Inconclusive;
  return rep;
}

double hausdorff_distance(const std::vector<std::pair<double, double>>& a,
                          const std::vector<std::pair<double, double>>& b) {
  auto distToUnion = [](double x, const std::vector<std::pair<double, double>>& u) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& iv : u) {
      double d = x < iv.first ? iv.first - x : (x > iv.second ? x - iv.second : 0.0);
      best = std::min(best, d);
    }
    return best;
  };
  // The one-sided supremum over a union of intervals is attained either at an
  // endpoint or at a midpoint between consecutive intervals of the other set.
  auto oneSided = [&](const std::vector<std::pair<double, double>>& from,
                      const std::vector<std::pair<double, double>>& to) {
    double worst = 0.0;
    std::vector<double> probes;
    for (const auto& iv : from) {
      probes.push_back(iv.first);
      probes.push_back(iv.second);
    }
    for (size_t i = 0; i + 1 < to.size(); ++i) {
      double mid = 0.5 * (to[i].second + to[i + 1].first);
      for (const auto& iv : from)
        if (iv.first <= mid && mid <= iv.second) probes.push_back(mid);
    }
    for (double x : probes) worst = std::max(worst, distToUnion(x, to));
    return worst;
  };
  if (a.empty() || b.empty())
    return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  return std::max(oneSided(a, b), oneSided(b, a));
}

}  // namespace limitops
