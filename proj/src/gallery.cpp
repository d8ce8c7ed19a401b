#include "limitops/gallery.hpp"

#include <cmath>

namespace limitops {

namespace {

// Shared layout bookkeeping for the two staircase examples: superblock n has
// segments k = 1..n, segment k holding n copies of a width-u(k) block.
class StaircaseLayout {
 public:
  StaircaseLayout(Index kMax, bool unitBlocks) : kMax_(kMax) {
    superStart_.push_back(0);
    for (Index n = 1; n <= kMax; ++n) {
      Index size = 0;
      for (Index k = 1; k <= n; ++k) size += n * (unitBlocks ? 1 : k);
      superStart_.push_back(superStart_.back() + size);
    }
    unitBlocks_ = unitBlocks;
  }

  Index coreEnd() const { return superStart_.back(); }  // exclusive

  struct Loc {
    Index k;          // block family index
    Index blockStart; // lattice start of the elementary block
  };

  // Elementary block containing core index i (0 <= i < coreEnd).
  Loc locate(Index i) const {
    size_t n = 1;
    while (superStart_[n] <= i) ++n;  // superblock n, 1-based
    Index pos = i - superStart_[n - 1];
    Index nn = static_cast<Index>(n);
    Index cum = 0;
    for (Index k = 1; k <= nn; ++k) {
      Index segLen = nn * (unitBlocks_ ? 1 : k);
      if (pos < cum + segLen) {
        Index width = unitBlocks_ ? 1 : k;
        Index copy = (pos - cum) / width;
        return Loc{k, superStart_[n - 1] + cum + copy * width};
      }
      cum += segLen;
    }
    throw NumericError("LayoutError", "index outside staircase layout");
  }

  std::vector<Window::Interval> allBlocks() const {
    std::vector<Window::Interval> out;
    for (size_t n = 1; n < superStart_.size(); ++n) {
      Index nn = static_cast<Index>(n);
      Index at = superStart_[n - 1];
      for (Index k = 1; k <= nn; ++k) {
        Index width = unitBlocks_ ? 1 : k;
        for (Index copy = 0; copy < nn; ++copy) {
          out.push_back(Window::Interval{at, at + width - 1});
          at += width;
        }
      }
    }
    return out;
  }

  Index kMax() const { return kMax_; }

 private:
  Index kMax_;
  bool unitBlocks_;
  std::vector<Index> superStart_;
};

class Example13Scheme final : public OperatorScheme {
 public:
  explicit Example13Scheme(Index kMax) : layout_(kMax, true) {}
  std::string name() const override { return "example13"; }
  std::map<std::string, Index> params() const override {
    return {{"kMax", layout_.kMax()}};
  }
  Index bandWidth() const override { return 0; }
  Index coreLo() const override { return 0; }
  Index coreHi() const override { return layout_.coreEnd() - 1; }
  bool abstractEntries() const override { return true; }
  bool selfAdjoint() const override { return false; }
  double normBound() const override { return 3.0; }  // sup_k (2 + 1/k) = 3
  double diagonalSup(Index alpha) const override { return alpha == 0 ? 3.0 : 0.0; }
  Entry entry(Index i, Index j) const override {
    if (i != j) return Entry::scalar({0.0, 0.0});
    if (i < 0 || i >= layout_.coreEnd()) return Entry::abstract("I", 1.0, 1.0);
    auto loc = layout_.locate(i);
    double k = static_cast<double>(loc.k);
    // inf/sup of |1/k + 1 + sin(2 pi k t)| over [0,1]: sin attains -1 and +1
    return Entry::abstract("B_" + std::to_string(loc.k), 2.0 + 1.0 / k, 1.0 / k);
  }
  std::vector<Window::Interval> blocks() const override { return layout_.allBlocks(); }
  Index blockBound() const override { return 1; }
  Index kMax() const { return layout_.kMax(); }

 private:
  StaircaseLayout layout_;
};

class Example14Scheme final : public OperatorScheme {
 public:
  explicit Example14Scheme(Index kMax) : layout_(kMax, false) {}
  std::string name() const override { return "example14"; }
  std::map<std::string, Index> params() const override {
    return {{"kMax", layout_.kMax()}};
  }
  Index bandWidth() const override { return std::max<Index>(layout_.kMax() - 1, 0); }
  Index coreLo() const override { return 0; }
  Index coreHi() const override { return layout_.coreEnd() - 1; }
  bool abstractEntries() const override { return false; }
  bool selfAdjoint() const override { return true; }
  double normBound() const override { return 2.0; }  // 1 + sup_k (k/(k+1)) ||B_k||
  double diagonalSup(Index alpha) const override {
    if (alpha == 0) return 1.0;
    Index a = std::abs(alpha);
    if (a > layout_.kMax() - 1) return 0.0;
    return 1.0 / (static_cast<double>(a) + 2.0);  // largest entry sits in C_{|alpha|+1}
  }
  Entry entry(Index i, Index j) const override {
    double diag = i == j ? 1.0 : 0.0;
    if (i < 0 || i >= layout_.coreEnd()) return Entry::scalar({diag, 0.0});
    auto loc = layout_.locate(i);
    if (j >= loc.blockStart && j < loc.blockStart + loc.k) {
      double k = static_cast<double>(loc.k);
      return Entry::scalar({diag - 1.0 / (k + 1.0), 0.0});
    }
    return Entry::scalar({diag, 0.0});
  }
  std::vector<Window::Interval> blocks() const override { return layout_.allBlocks(); }
  Index blockBound() const override { return layout_.kMax(); }
  Index kMax() const { return layout_.kMax(); }

 private:
  StaircaseLayout layout_;
};

OperatorSpectrumEnum enumerateExample13(const BandOperator& A, Index maxReps) {
  auto scheme = std::dynamic_pointer_cast<const Example13Scheme>(A.scheme());
  if (!scheme) throw PreconditionError("UnsupportedClass", "not an example13 operator");
  Index K = std::min(maxReps, scheme->kMax());
  auto abstractB = [](Index k) {
    double kk = static_cast<double>(k);
    return Entry::abstract("B_" + std::to_string(k), 2.0 + 1.0 / kk, 1.0 / kk);
  };
  OperatorSpectrumEnum out;
  out.rich = false;
  out.richTag = RichTag::NotRich;
  out.exhaustive = true;
  out.probeHalfWidth = 8;
  out.orbitRule =
      "transition representatives stand for all integer shifts V_{-l} (.) V_l, l in Z";
  out.representatives.push_back(
      BandOperator::diagonal(CoeffSeq::constant(Entry::abstract("I", 1.0, 1.0))));
  out.labels.push_back("I");
  for (Index k = 1; k <= K; ++k) {
    out.representatives.push_back(BandOperator::diagonal(CoeffSeq::constant(abstractB(k))));
    out.labels.push_back("diag(..., B_" + std::to_string(k) + ", B_" + std::to_string(k) +
                         ", ...)");
  }
  for (Index k = 1; k + 1 <= K; ++k) {
    out.representatives.push_back(BandOperator::diagonal(
        CoeffSeq::eventuallyPeriodic({abstractB(k)}, 0, {}, {abstractB(k + 1)})));
    out.labels.push_back("diag(..., B_" + std::to_string(k) + " | B_" +
                         std::to_string(k + 1) + ", ...)");
  }
  return out;
}

OperatorSpectrumEnum enumerateExample14(const BandOperator& A, Index maxReps) {
  auto scheme = std::dynamic_pointer_cast<const Example14Scheme>(A.scheme());
  if (!scheme) throw PreconditionError("UnsupportedClass", "not an example14 operator");
  Index K = std::min(maxReps, scheme->kMax());
  OperatorSpectrumEnum out;
  out.rich = true;
  out.richTag = RichTag::PaperAsserted;
  out.exhaustive = true;
  out.probeHalfWidth = std::max<Index>(3 * (K + 1), 8);
  out.orbitRule =
      "transition representatives stand for all integer shifts V_{-l} (.) V_l, l in Z";
  out.representatives.push_back(BandOperator::identity().withDeclaredNormBound(1.0));
  out.labels.push_back("I");
  for (Index k = 1; k <= K; ++k) {
    out.representatives.push_back(deflation_periodic_rep(k));
    out.labels.push_back("diag(..., C_" + std::to_string(k) + ", C_" + std::to_string(k) +
                         ", ...)");
  }
  {
    // diag(..., I, I, C_1, C_1, ...) with the seam at 0 (C_1 = (1/2))
    BandOperator t = BandOperator::diagonal(CoeffSeq::eventuallyPeriodic(
        {Entry::scalar({1.0, 0.0})}, 0, {}, {Entry::scalar({0.5, 0.0})}));
    out.representatives.push_back(t.withDeclaredNormBound(1.0));
    out.labels.push_back("diag(..., I | C_1, ...)");
  }
  for (Index k = 1; k + 1 <= K; ++k) {
    out.representatives.push_back(deflation_transition_rep(k));
    out.labels.push_back("diag(..., C_" + std::to_string(k) + " | C_" +
                         std::to_string(k + 1) + ", ...)");
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd example14_averaging_block(Index n) {
  return Eigen::MatrixXcd::Ones(n, n) / static_cast<double>(n);
}

Eigen::MatrixXcd example14_deflation_block(Index k) {
  double kk = static_cast<double>(k);
  return Eigen::MatrixXcd::Identity(k, k) -
         (kk / (kk + 1.0)) * example14_averaging_block(k);
}

BandOperator deflation_periodic_rep(Index k) {
  if (k < 1) throw PreconditionError("InvalidCertificateParams", "k >= 1");
  double off = 1.0 / (static_cast<double>(k) + 1.0);
  std::map<Index, CoeffSeq> diagonals;
  for (Index alpha = -(k - 1); alpha <= k - 1; ++alpha) {
    std::vector<Entry> table;
    for (Index a = 0; a < k; ++a) {
      Index b = a - alpha;
      double diag = alpha == 0 ? 1.0 : 0.0;
      table.push_back((b >= 0 && b < k) ? Entry::scalar({diag - off, 0.0})
                                        : Entry::scalar({0.0, 0.0}));
    }
    diagonals.emplace(alpha, CoeffSeq::periodic(std::move(table)));
  }
  return BandOperator::fromDiagonals(std::move(diagonals), 1).withDeclaredNormBound(1.0);
}

BandOperator deflation_transition_rep(Index k) {
  if (k < 1) throw PreconditionError("InvalidCertificateParams", "k >= 1");
  double offL = 1.0 / (static_cast<double>(k) + 1.0);
  double offR = 1.0 / (static_cast<double>(k) + 2.0);
  std::map<Index, CoeffSeq> diagonals;
  for (Index alpha = -k; alpha <= k; ++alpha) {
    double diag = alpha == 0 ? 1.0 : 0.0;
    std::vector<Entry> left, right;
    for (Index a = 0; a < k; ++a) {
      Index b = a - alpha;
      left.push_back((b >= 0 && b < k) ? Entry::scalar({diag - offL, 0.0})
                                       : Entry::scalar({0.0, 0.0}));
    }
    for (Index a = 0; a < k + 1; ++a) {
      Index b = a - alpha;
      right.push_back((b >= 0 && b < k + 1) ? Entry::scalar({diag - offR, 0.0})
                                            : Entry::scalar({0.0, 0.0}));
    }
    diagonals.emplace(alpha, CoeffSeq::eventuallyPeriodic(std::move(left), 0, {},
                                                          std::move(right)));
  }
  return BandOperator::fromDiagonals(std::move(diagonals), 1).withDeclaredNormBound(1.0);
}

BandOperator gallery_example13(Index kMax) {
  if (kMax < 1) throw PreconditionError("InvalidCertificateParams", "kMax >= 1");
  return BandOperator::fromScheme(std::make_shared<Example13Scheme>(kMax));
}

BandOperator gallery_example14(Index kMax) {
  if (kMax < 1) throw PreconditionError("InvalidCertificateParams", "kMax >= 1");
  return BandOperator::fromScheme(std::make_shared<Example14Scheme>(kMax));
}

GeneralOperator gallery_example16_flip() { return GeneralOperator::flipOnly(); }

GalleryItem gallery(const std::string& name, const std::map<std::string, Index>& params) {
  auto kMax = [&]() -> Index {
    auto it = params.find("kMax");
    return it == params.end() ? 30 : it->second;
  };
  GalleryItem item;
  if (name == "example13") {
    item.band = gallery_example13(kMax());
  } else if (name == "example14") {
    item.band = gallery_example14(kMax());
  } else if (name == "example16-flip" || name == "flip") {
    item.extended = gallery_example16_flip();
  } else {
    throw PreconditionError("UnknownName", "unknown gallery operator '" + name + "'");
  }
  return item;
}

void register_gallery_schemes() {
  static bool done = [] {
    auto& reg = scheme_enumerator_registry();
    reg["example13"] = enumerateExample13;
    reg["example14"] = enumerateExample14;
    return true;
  }();
  (void)done;
}

}  // namespace limitops
