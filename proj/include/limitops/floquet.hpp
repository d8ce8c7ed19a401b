#pragma once

#include <utility>
#include <vector>

#include "limitops/band_operator.hpp"
#include "limitops/lower_norm.hpp"

namespace limitops {

// Block symbol of a q-periodic band operator with d-dimensional entries:
// S(theta) = sum_beta B_beta e^{i beta theta} with (qd) x (qd) blocks
// B_beta[s*d + a, t*d + b] = entry(s, t - q*beta)[a, b].
struct SymbolFamily {
  Index q = 1;
  int d = 1;
  std::vector<Index> betas;
  std::vector<Eigen::MatrixXcd> blocks;

  Index dim() const { return q * d; }
  Eigen::MatrixXcd eval(double theta) const;
  // Lipschitz constant of theta -> S(theta) in the spectral norm:
  // sum |beta| * ||B_beta||.
  double lipschitz() const;
};

// Requires Periodic translation structure and materializable entries.
SymbolFamily symbol_family(const BandOperator& B);

struct FloquetSpectrum {
  Index period = 1;
  int blockDim = 1;
  std::vector<double> thetas;
  std::vector<Eigen::VectorXcd> eigenvalues;  // per theta
  bool selfAdjoint = false;
  // Per eigenvalue branch (ascending order), self-adjoint inputs only.
  std::vector<std::pair<double, double>> bands;

  std::vector<Complex> cloud() const;
};

FloquetSpectrum floquet_spectrum(const BandOperator& B, int samples = 2048);

// Certified lower norm of a periodic operator at p = 2 by symbol sampling:
// value = min over samples of sigma_min(S(theta)); the true nu lies in
// [value - delta, value] with delta = lipschitz * pi / samples. For symbols
// constant in theta (block-aligned operators) the value is exact.
LowerNormEstimate nu_periodic_certified(const BandOperator& B, int samples = 4096);

// Precomputed symbol samples for fast gamma(lambda) evaluation over a grid.
struct SampledSymbol {
  std::vector<Eigen::MatrixXcd> samples;
  double certRadius = 0.0;  // lipschitz * pi / M
  // min over samples of sigma_min(S(theta) - lambda I); >= the true
  // nu(B - lambda I), within certRadius of it.
  double gamma(Complex lambda) const;
};

SampledSymbol sampled_symbol(const BandOperator& B, int samples);

}  // namespace limitops
