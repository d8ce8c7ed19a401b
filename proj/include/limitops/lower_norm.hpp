#pragma once

#include <optional>
#include <vector>

#include "limitops/band_operator.hpp"
#include "limitops/banded.hpp"

namespace limitops {

// A finitely supported vector over the lattice, stored contiguously from
// `offset` with entryDim complex coordinates per site.
struct VectorSegment {
  Index offset = 0;
  Eigen::VectorXcd values;
  int entryDim = 1;
  double pNorm = 2.0;

  Index count() const { return values.size() / entryDim; }
  Index suppLo() const;  // lattice index of first nonzero site
  Index suppHi() const;
  Index diamSupp() const { return suppHi() - suppLo(); }
};

struct WindowCertificate {
  enum class Method { Proof1, Proof2, ExtremalP };
  double delta = 0.0;
  double r = 0.0;
  Index w = 1;        // strict band-width bound ("band-width less than w")
  double p = 2.0;     // 0, [1, inf]; inf encoded as std::numeric_limits infinity
  Index N = 1;
  Index D = 0;
  Method method = Method::Proof1;
  // method internals
  Index m = 0, R = 0;          // Proof1: m = floor((2Nr/delta)^p)+1, R = 4w, D = mR
  Index n0 = 0, c = 0, d = 0;  // Proof2: least n with d_n/c_n < (delta/4r)^p, D = 2 n0
  Index k = 0;                 // ExtremalP: k = floor(w r / delta)+1, D = 2k
};

const char* method_name(WindowCertificate::Method m);

// All applicable certificates for the parameter tuple (Proof1 and Proof2 for
// p in [1, inf), ExtremalP for p in {0, inf}).
std::vector<WindowCertificate> window_size_all(double delta, double r, Index w, double p,
                                               Index N);
// The certificate with smallest D among the applicable methods.
WindowCertificate window_size(double delta, double r, Index w, double p, Index N);

struct LowerNormEstimate {
  enum class Kind { Exact, UpperWithinDelta };
  double value = 0.0;
  Kind kind = Kind::Exact;
  double delta = 0.0;  // UpperWithinDelta: true value in [value - delta, value]
  std::optional<VectorSegment> witness;
  double pNorm = 2.0;
  Index minimizingOffset = 0;
  std::optional<WindowCertificate> certificate;
};

// Exact lower norm of A|_F on a finite window (p = 2 via smallest singular
// value of the column block; diagonal operators at any p via entry infima).
LowerNormEstimate nu_exact(const BandOperator& A, const Window& F, double p = 2.0);

// Restricted lower norm nu_D(A|_F): minimum of nu_exact over sliding windows
// of diameter D. For F = All the scan reduces to representative offsets by
// the operator's translation structure.
LowerNormEstimate nu_restricted(const BandOperator& A, const Window& F, Index D,
                                double p = 2.0);

struct CertificateReport {
  double nu = 0.0;
  double nuD = 0.0;
  double gap = 0.0;
  double delta = 0.0;
  bool pass = false;
};

// Computes both sides of Prop-6-style inequality nu <= nu_D <= nu + delta on
// a finite window; preconditions: ||A||_wiener < cert.r, bandWidth(A) < cert.w.
CertificateReport verify_certificate(const BandOperator& A, const Window& F,
                                     const WindowCertificate& cert);

// Certified estimate of the lower norm over F within delta, optionally for a
// band-dominated target known only through a banded approximant with
// ||target - A|| <= bandApproxError (<= delta/3).
LowerNormEstimate certified_lower_norm(const BandOperator& A, const Window& F, double delta,
                                       double bandApproxError = 0.0);

// Representative diagonal blocks when A decomposes as a direct sum of finite
// blocks (no band entry crosses the block boundaries). The lower norm of A
// then equals the minimum of the blocks' smallest singular values.
std::optional<std::vector<Window::Interval>> block_representatives(const BandOperator& A);

// Banded column-block matrix of A on columns [colLo, colHi] with rows dilated
// by the band width (chi_{F+w} A chi_F = A chi_F).
BandedMatrix banded_window_matrix(const BandOperator& A, Index colLo, Index colHi);

}  // namespace limitops
