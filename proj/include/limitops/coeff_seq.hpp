#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "limitops/entry.hpp"
#include "limitops/window.hpp"

namespace limitops {

inline Index floor_mod(Index a, Index q) {
  Index r = a % q;
  return r < 0 ? r + q : r;
}

// Closed-form banded entry rule used by the gallery operators. The operator
// behaves like the identity outside a finite core and exposes the structure
// (core range, elementary diagonal blocks, per-diagonal sups, a whole-operator
// norm bound) that window scans and enumeration rules need.
class OperatorScheme {
 public:
  virtual ~OperatorScheme() = default;
  virtual std::string name() const = 0;
  virtual std::map<std::string, Index> params() const = 0;
  virtual Index bandWidth() const = 0;
  virtual Index coreLo() const = 0;
  virtual Index coreHi() const = 0;
  virtual bool abstractEntries() const = 0;
  virtual bool selfAdjoint() const = 0;
  // Whole-operator norm bound valid on every l^p. For block schemes this can
  // be far sharper than the diagonal-sum bound.
  virtual double normBound() const = 0;
  // sup_i of the entry norm on diagonal alpha; negative means undeclared.
  virtual double diagonalSup(Index alpha) const = 0;
  virtual Entry entry(Index i, Index j) const = 0;
  // Elementary diagonal blocks tiling the core (sorted, disjoint). Entries
  // outside all blocks and off the main diagonal vanish.
  virtual std::vector<Window::Interval> blocks() const = 0;
  virtual Index blockBound() const = 0;  // max block length
};

// One matrix diagonal of a band operator: the coefficient sequence
// i -> a_alpha(i). Shift conjugation translates sequences, so every variant
// supports exact translation.
class CoeffSeq {
 public:
  enum class Kind { Constant, Periodic, EventuallyPeriodic, Scheme };

  static CoeffSeq constant(Entry e);
  static CoeffSeq periodic(std::vector<Entry> table);
  // left/right are periodic tails anchored at absolute index 0 (entry(i) =
  // table[i mod q]); the core overrides indices [coreStart, coreStart+|core|).
  // An empty core places the seam at coreStart: left rules i < coreStart,
  // right rules i >= coreStart.
  static CoeffSeq eventuallyPeriodic(std::vector<Entry> left, Index coreStart,
                                     std::vector<Entry> core, std::vector<Entry> right);
  static CoeffSeq scheme(std::shared_ptr<const OperatorScheme> s, Index alpha,
                         Index shift = 0);

  Kind kind() const { return kind_; }
  Entry at(Index i) const;
  CoeffSeq shifted(Index j) const;  // entries s'(i) = s(i + j)

  // Period of the sequence (1 for Constant); 0 when not globally periodic.
  Index period() const;
  Index leftPeriod() const;   // tail periods for EventuallyPeriodic/Scheme
  Index rightPeriod() const;
  // Smallest interval outside of which the sequence is given by its tails.
  // Returns false for globally periodic kinds.
  bool coreRange(Index& lo, Index& hi) const;

  double supNormBound() const;  // sup_i ||entry(i)||, throws UnboundedScheme
  bool containsAbstract() const;

  // Entry-wise transform; preserves structure. Table kinds only.
  CoeffSeq mapEntries(const std::function<Entry(const Entry&)>& fn) const;

  // Periodic sequences agreeing with the far-left / far-right tail.
  CoeffSeq leftTailSeq() const;
  CoeffSeq rightTailSeq() const;

  const std::vector<Entry>& periodicTable() const { return core_; }
  std::shared_ptr<const OperatorScheme> schemePtr() const { return scheme_; }
  Index schemeAlpha() const { return alpha_; }
  Index schemeShift() const { return shift_; }

 private:
  CoeffSeq() = default;
  Kind kind_ = Kind::Constant;
  // Periodic/Constant: core_ is the table (anchored at 0). EventuallyPeriodic:
  // left_/right_ are tail tables, core_ the explicit middle, coreStart_ its
  // first index.
  std::vector<Entry> left_, core_, right_;
  Index coreStart_ = 0;
  std::shared_ptr<const OperatorScheme> scheme_;
  Index alpha_ = 0;
  Index shift_ = 0;
};

}  // namespace limitops
