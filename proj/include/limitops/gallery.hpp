#pragma once

#include "limitops/limit_ops.hpp"

namespace limitops {

// Non-rich diagonal operator over abstract entries B_k (multiplication by
// b_k(t) = 1/k + 1 + sin(2 pi k t) on L^p[0,1]): norm 2 + 1/k, lower norm 1/k,
// both analytic. Layout diag(..., I, I, C_1, C_2, ...) with
// C_n = diag(B_1 x n, ..., B_n x n), truncated to kMax superblocks.
BandOperator gallery_example13(Index kMax = 30);

// Rich but not band-dominated scalar operator built from the k x k blocks
// C_k = I - (k/(k+1)) B_k, B_k the averaging matrix (1/k) * ones. Layout
// diag(..., I, I, D_1, D_2, ...) with D_n = diag(C_1 x n, ..., C_n x n),
// truncated to kMax superblocks.
BandOperator gallery_example14(Index kMax = 30);

// The flip J : (x_i) -> (x_{-i}).
GeneralOperator gallery_example16_flip();

Eigen::MatrixXcd example14_averaging_block(Index n);  // B_n = ones(n, n) / n
Eigen::MatrixXcd example14_deflation_block(Index k);  // C_k = I - (k/(k+1)) B_k

// Periodic repetition diag(..., C_k, C_k, ...) of the deflation block, and the
// transition operator diag(..., C_k, C_k, C_{k+1}, C_{k+1}, ...) with the seam
// at index 0. Both appear in Example 14's operator spectrum.
BandOperator deflation_periodic_rep(Index k);
BandOperator deflation_transition_rep(Index k);

struct GalleryItem {
  std::optional<BandOperator> band;
  std::optional<GeneralOperator> extended;
};

// Lookup by registered name: "example13", "example14", "example16-flip"
// (alias "flip"). params: {"kMax": ...} where applicable.
GalleryItem gallery(const std::string& name, const std::map<std::string, Index>& params);

}  // namespace limitops
