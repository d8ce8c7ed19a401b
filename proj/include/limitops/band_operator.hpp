#pragma once

#include <map>
#include <memory>
#include <optional>

#include "limitops/coeff_seq.hpp"

namespace limitops {

// Translation structure of an operator's diagonals, used to reduce window
// scans over infinite index sets to finitely many representative offsets.
struct Structure {
  enum class Kind { Periodic, EventuallyPeriodic };
  Kind kind = Kind::Periodic;
  Index period = 1;                    // Periodic: common period of all diagonals
  Index leftPeriod = 1;                // EventuallyPeriodic tails
  Index rightPeriod = 1;
  Index coreLo = 0, coreHi = -1;       // row-index hull of the non-tail region
};

// A banded infinite matrix over Z: finitely many diagonals, each a coefficient
// sequence. The diagonal at offset alpha holds a_alpha(i) = A[i, i - alpha].
class BandOperator {
 public:
  BandOperator() = default;
  static BandOperator fromDiagonals(std::map<Index, CoeffSeq> diagonals, int entryDim);
  static BandOperator fromScheme(std::shared_ptr<const OperatorScheme> scheme);
  static BandOperator identity(int entryDim = 1);
  static BandOperator laurent(const std::map<Index, Complex>& symbolCoeffs);
  static BandOperator diagonal(CoeffSeq mainDiagonal, int entryDim = 1);

  Index bandWidth() const { return bandWidth_; }
  int entryDim() const { return entryDim_; }
  bool abstractEntries() const { return abstract_; }
  const std::map<Index, CoeffSeq>& diagonals() const { return diagonals_; }

  // Total: returns the zero entry outside the band.
  Entry entryAt(Index i, Index j) const;

  std::shared_ptr<const OperatorScheme> scheme() const { return scheme_; }
  Index schemeShift() const { return schemeShift_; }
  std::optional<double> declaredNormBound() const { return declaredNormBound_; }
  BandOperator withDeclaredNormBound(double bound) const;

  Structure structure() const;
  // Elementary diagonal blocks (lattice intervals) when the operator is a
  // direct sum of finite blocks; see detect_block_structure in lower_norm.
  bool isDiagonal() const { return bandWidth_ == 0; }

 private:
  std::map<Index, CoeffSeq> diagonals_;
  Index bandWidth_ = 0;
  int entryDim_ = 1;
  bool abstract_ = false;
  std::shared_ptr<const OperatorScheme> scheme_;
  Index schemeShift_ = 0;
  std::optional<double> declaredNormBound_;

  friend BandOperator shift_conjugate(const BandOperator&, Index);
};

// Generalized matrix entry lookup (total; zero outside the band).
Entry entry_at(const BandOperator& A, Index i, Index j);

// Dense block chi_rows A chi_cols, entries outside the band exact zeros.
// Throws AbstractEntriesNotMaterializable for abstract entries.
Eigen::MatrixXcd materialize_block(const BandOperator& A, const Window& rows,
                                   const Window& cols);

// V_{-j} A V_j: entry_at(result, i, k) == entry_at(A, i + j, k + j).
BandOperator shift_conjugate(const BandOperator& A, Index j);

// Conjugate-transpose: entry_at(adjoint(A), i, j) == entry_at(A, j, i)^*.
BandOperator adjoint(const BandOperator& A);

// Sum over diagonals of sup_i ||a_alpha(i)||: an upper bound for ||A|| on
// every l^p. Schemes may declare a sharper whole-operator bound.
double wiener_norm_bound(const BandOperator& A);

// A + lambda * I (table diagonals only).
BandOperator add_scalar_to_diagonal(const BandOperator& A, Complex lambda);

// Exact entry-wise equality on the probe window |i| <= halfWidth.
bool probe_equal(const BandOperator& A, const BandOperator& B, Index halfWidth);

}  // namespace limitops
