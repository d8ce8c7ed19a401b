#pragma once

#include <cstdint>
#include <vector>

#include "limitops/errors.hpp"

namespace limitops {

using Index = std::int64_t;

// A subset of the lattice Z on which restrictions A|_F live: all of Z or a
// sorted union of disjoint finite intervals.
class Window {
 public:
  struct Interval {
    Index a;
    Index b;  // inclusive, a <= b
  };

  static Window all() { return Window(true, {}); }
  static Window interval(Index a, Index b);
  static Window unionOf(std::vector<Interval> parts);  // normalizes + validates

  bool isAll() const { return all_; }
  bool finite() const { return !all_; }
  bool empty() const { return !all_ && parts_.empty(); }

  const std::vector<Interval>& parts() const { return parts_; }
  Index count() const;                 // finite only
  std::vector<Index> indices() const;  // finite only
  Index lo() const;                    // hull bounds, finite nonempty only
  Index hi() const;
  Index diameter() const;  // hi - lo, finite nonempty only

  bool contains(Index i) const;
  Window dilate(Index w) const;  // each interval widened by w, overlaps merged
  Window intersect(Index lo, Index hi) const;

  bool operator==(const Window& other) const {
    if (all_ != other.all_) return false;
    if (parts_.size() != other.parts_.size()) return false;
    for (size_t k = 0; k < parts_.size(); ++k)
      if (parts_[k].a != other.parts_[k].a || parts_[k].b != other.parts_[k].b)
        return false;
    return true;
  }

 private:
  Window(bool all, std::vector<Interval> parts) : all_(all), parts_(std::move(parts)) {}
  bool all_;
  std::vector<Interval> parts_;
};

}  // namespace limitops
