#include "limitops/floquet.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace limitops {

Eigen::MatrixXcd SymbolFamily::eval(double theta) const {
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(dim(), dim());
  for (size_t k = 0; k < betas.size(); ++k)
    S += blocks[k] * std::exp(Complex(0.0, theta * static_cast<double>(betas[k])));
  return S;
}

double SymbolFamily::lipschitz() const {
  double L = 0.0;
  for (size_t k = 0; k < betas.size(); ++k) {
    if (betas[k] == 0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(blocks[k]);
    L += std::abs(static_cast<double>(betas[k])) * svd.singularValues().maxCoeff();
  }
  return L;
}

SymbolFamily symbol_family(const BandOperator& B) {
  if (B.abstractEntries())
    throw PreconditionError("UnsupportedClass", "symbol of abstract-entry operator");
  Structure st = B.structure();
  if (st.kind != Structure::Kind::Periodic)
    throw PreconditionError("UnsupportedClass", "symbol needs a periodic operator");
  SymbolFamily fam;
  fam.q = st.period;
  fam.d = B.entryDim();
  Index w = B.bandWidth();
  Index betaMax = (w + fam.q - 1) / fam.q;
  for (Index beta = -betaMax; beta <= betaMax; ++beta) {
    Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(fam.dim(), fam.dim());
    bool nonzero = false;
    for (Index s = 0; s < fam.q; ++s) {
      for (Index t = 0; t < fam.q; ++t) {
        Entry e = B.entryAt(s, t - fam.q * beta);
        if (e.isZero()) continue;
        nonzero = true;
        if (fam.d == 1)
          blk(s, t) = e.scalarValue();
        else
          blk.block(s * fam.d, t * fam.d, fam.d, fam.d) = e.matrixValue();
      }
    }
    if (nonzero) {
      fam.betas.push_back(beta);
      fam.blocks.push_back(std::move(blk));
    }
  }
  return fam;
}

namespace {

bool isSelfAdjoint(const BandOperator& B) {
  if (B.abstractEntries()) return false;
  try {
    Structure st = B.structure();
    Index hw = std::max<Index>(st.period + B.bandWidth() + 2, 8);
    return probe_equal(B, adjoint(B), hw);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::vector<Complex> FloquetSpectrum::cloud() const {
  std::vector<Complex> out;
  for (const auto& ev : eigenvalues)
    for (Index i = 0; i < ev.size(); ++i) out.push_back(ev(i));
  return out;
}

FloquetSpectrum floquet_spectrum(const BandOperator& B, int samples) {
  if (samples < 2) throw PreconditionError("InvalidCertificateParams", "samples >= 2");
  SymbolFamily fam = symbol_family(B);
  FloquetSpectrum out;
  out.period = fam.q;
  out.blockDim = static_cast<int>(fam.dim());
  out.selfAdjoint = isSelfAdjoint(B);
  out.thetas.reserve(samples);
  out.eigenvalues.reserve(samples);
  Index n = fam.dim();
  std::vector<double> branchLo(n, std::numeric_limits<double>::infinity());
  std::vector<double> branchHi(n, -std::numeric_limits<double>::infinity());
  for (int k = 0; k < samples; ++k) {
    double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(samples);
    Eigen::MatrixXcd S = fam.eval(theta);
    Eigen::VectorXcd ev;
    if (out.selfAdjoint) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
      ev = es.eigenvalues().cast<Complex>();
      for (Index b = 0; b < n; ++b) {
        double v = es.eigenvalues()(b);
        branchLo[b] = std::min(branchLo[b], v);
        branchHi[b] = std::max(branchHi[b], v);
      }
    } else {
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(S, false);
      ev = es.eigenvalues();
    }
    out.thetas.push_back(theta);
    out.eigenvalues.push_back(std::move(ev));
  }
  if (out.selfAdjoint)
    for (Index b = 0; b < n; ++b) out.bands.emplace_back(branchLo[b], branchHi[b]);
  return out;
}

LowerNormEstimate nu_periodic_certified(const BandOperator& B, int samples) {
  SampledSymbol S = sampled_symbol(B, samples);
  LowerNormEstimate est;
  est.value = S.gamma({0.0, 0.0});
  est.kind = LowerNormEstimate::Kind::UpperWithinDelta;
  est.delta = S.certRadius;
  est.pNorm = 2.0;
  return est;
}

double SampledSymbol::gamma(Complex lambda) const {
  double best = std::numeric_limits<double>::infinity();
  const Index n = samples.front().rows();
  if (n == 1) {
    for (const auto& S : samples) best = std::min(best, std::abs(S(0, 0) - lambda));
    return best;
  }
  Eigen::MatrixXcd work(n, n);
  for (const auto& S : samples) {
    work = S;
    work.diagonal().array() -= lambda;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(work);
    best = std::min(best, svd.singularValues().minCoeff());
  }
  return best;
}

SampledSymbol sampled_symbol(const BandOperator& B, int samples) {
  if (samples < 2) throw PreconditionError("InvalidCertificateParams", "samples >= 2");
  SymbolFamily fam = symbol_family(B);
  SampledSymbol out;
  out.samples.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    double theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(samples);
    out.samples.push_back(fam.eval(theta));
  }
  out.certRadius = fam.lipschitz() * M_PI / static_cast<double>(samples) + 1e-12;
  return out;
}

}  // namespace limitops
