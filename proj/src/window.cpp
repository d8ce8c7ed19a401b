#include "limitops/window.hpp"

#include <algorithm>

namespace limitops {

Window Window::interval(Index a, Index b) {
  if (a > b) throw PreconditionError("InvalidWindow", "interval needs a <= b");
  return Window(false, {Interval{a, b}});
}

Window Window::unionOf(std::vector<Interval> parts) {
  for (const auto& p : parts)
    if (p.a > p.b) throw PreconditionError("InvalidWindow", "interval needs a <= b");
  std::sort(parts.begin(), parts.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  std::vector<Interval> merged;
  for (const auto& p : parts) {
    if (!merged.empty() && p.a <= merged.back().b + 1)
      merged.back().b = std::max(merged.back().b, p.b);
    else
      merged.push_back(p);
  }
  return Window(false, std::move(merged));
}

Index Window::count() const {
  if (all_) throw PreconditionError("InfiniteWindow", "count of infinite window");
  Index n = 0;
  for (const auto& p : parts_) n += p.b - p.a + 1;
  return n;
}

std::vector<Index> Window::indices() const {
  if (all_) throw PreconditionError("InfiniteWindow", "indices of infinite window");
  std::vector<Index> out;
  out.reserve(static_cast<size_t>(count()));
  for (const auto& p : parts_)
    for (Index i = p.a; i <= p.b; ++i) out.push_back(i);
  return out;
}

Index Window::lo() const {
  if (all_ || parts_.empty())
    throw PreconditionError("InfiniteWindow", "hull of infinite/empty window");
  return parts_.front().a;
}

Index Window::hi() const {
  if (all_ || parts_.empty())
    throw PreconditionError("InfiniteWindow", "hull of infinite/empty window");
  return parts_.back().b;
}

Index Window::diameter() const { return hi() - lo(); }

bool Window::contains(Index i) const {
  if (all_) return true;
  for (const auto& p : parts_)
    if (p.a <= i && i <= p.b) return true;
  return false;
}

Window Window::dilate(Index w) const {
  if (all_) return *this;
  std::vector<Interval> parts;
  parts.reserve(parts_.size());
  for (const auto& p : parts_) parts.push_back(Interval{p.a - w, p.b + w});
  return unionOf(std::move(parts));
}

Window Window::intersect(Index lo, Index hi) const {
  std::vector<Interval> parts;
  if (all_) {
    if (lo <= hi) parts.push_back(Interval{lo, hi});
    return Window(false, std::move(parts));
  }
  for (const auto& p : parts_) {
    Index a = std::max(p.a, lo), b = std::min(p.b, hi);
    if (a <= b) parts.push_back(Interval{a, b});
  }
  return Window(false, std::move(parts));
}

}  // namespace limitops
