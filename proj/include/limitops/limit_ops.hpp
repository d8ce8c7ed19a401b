#pragma once

#include <functional>
#include <string>

#include "limitops/band_operator.hpp"
#include "limitops/lower_norm.hpp"

namespace limitops {

// The flip J : (x_i) -> (x_{-i}) conjugated by V_s, scaled:
// entries coeff * delta_{i, -j - 2*shift}. Not band-dominated; lives outside
// BandOperator and is admitted only by pconv_check and materialization.
struct FlipPart {
  Index shift = 0;
  Complex coeff{1.0, 0.0};
};

// Band operator plus an optional flip term; the common currency of
// pconv_check and of finite-window materialization for Example-16-style
// operators.
class GeneralOperator {
 public:
  GeneralOperator() = default;
  explicit GeneralOperator(BandOperator band) : band_(std::move(band)) {}
  static GeneralOperator flipOnly(Complex coeff = Complex{1.0, 0.0});

  GeneralOperator& setFlip(FlipPart f);
  const std::optional<BandOperator>& band() const { return band_; }
  const std::optional<FlipPart>& flip() const { return flip_; }
  int entryDim() const;

  GeneralOperator shiftConjugate(Index j) const;  // V_{-j} (.) V_j
  // Scalar-coordinate dense block on lattice row/column index lists.
  Eigen::MatrixXcd materialize(const std::vector<Index>& rows,
                               const std::vector<Index>& cols) const;
  std::vector<Index> colSupport(const std::vector<Index>& rows) const;
  std::vector<Index> rowSupport(const std::vector<Index>& cols) const;

 private:
  std::optional<BandOperator> band_;
  std::optional<FlipPart> flip_;
};

enum class RichTag { FiniteDimEntries, PaperAsserted, NotRich };

struct OperatorSpectrumEnum {
  std::vector<BandOperator> representatives;
  std::vector<std::string> labels;
  std::string orbitRule;
  bool rich = false;
  RichTag richTag = RichTag::NotRich;
  bool exhaustive = false;
  Index probeHalfWidth = 8;
};

// Limit-operator enumeration for the supported symbol classes: constant,
// periodic, eventually periodic diagonals, and registered schemes with
// hand-coded rules. maxReps caps scheme enumerations.
OperatorSpectrumEnum enumerate_spectrum(const BandOperator& A, Index maxReps = 30);

// Certified lower norm of an enumerated representative at p = 2 (any p for
// diagonal representatives): exact for diagonal and block-decomposable
// operators, Floquet-certified for periodic ones.
LowerNormEstimate representative_lower_norm(const BandOperator& B, int symbolSamples = 8192);

// Registry of hand-coded enumeration rules for named schemes.
using SchemeEnumerator =
    std::function<OperatorSpectrumEnum(const BandOperator&, Index maxReps)>;
std::map<std::string, SchemeEnumerator>& scheme_enumerator_registry();
void register_gallery_schemes();  // idempotent; defined in gallery.cpp

struct PConvergenceReport {
  enum class Verdict { ConvergesNumerically, FailsToConverge, Inconclusive };
  std::vector<int> ms;
  std::vector<Index> ns;
  Eigen::MatrixXd residuals;  // ms.size() x ns.size(); e(n, m)
  double tol = 1e-8;
  Verdict verdict = Verdict::Inconclusive;
  double floorValue = 0.0;          // FailsToConverge: min over m at the largest n
  std::vector<Index> nThreshold;    // per m: first n with e < tol from there on; -1 if none
};

// Numerical P-strong convergence check: e(n, m) =
// max(||P_m (A_n - A)||_2, ||(A_n - A) P_m||_2) with exact finite blocks.
PConvergenceReport pconv_check(const std::function<GeneralOperator(Index)>& seq,
                               const GeneralOperator& candidate, const std::vector<int>& ms,
                               Index nMax, double tol = 1e-8);

// Named operator sequences for the CLI: "shifted-flip", "bn-to-identity",
// "periodic-shifts" (shifts the candidate by multiples of its period),
// "constant".
std::function<GeneralOperator(Index)> named_pconv_sequence(const std::string& name,
                                                           const GeneralOperator& candidate);

}  // namespace limitops
