#include "limitops/coeff_seq.hpp"

#include <algorithm>

namespace limitops {

CoeffSeq CoeffSeq::constant(Entry e) {
  CoeffSeq s;
  s.kind_ = Kind::Constant;
  s.core_ = {std::move(e)};
  return s;
}

CoeffSeq CoeffSeq::periodic(std::vector<Entry> table) {
  if (table.empty())
    throw PreconditionError("InvalidCoeffSeq", "periodic table must be nonempty");
  CoeffSeq s;
  s.kind_ = table.size() == 1 ? Kind::Constant : Kind::Periodic;
  s.core_ = std::move(table);
  return s;
}

CoeffSeq CoeffSeq::eventuallyPeriodic(std::vector<Entry> left, Index coreStart,
                                      std::vector<Entry> core, std::vector<Entry> right) {
  if (left.empty() || right.empty())
    throw PreconditionError("InvalidCoeffSeq", "eventually periodic tails must be nonempty");
  CoeffSeq s;
  s.kind_ = Kind::EventuallyPeriodic;
  s.left_ = std::move(left);
  s.right_ = std::move(right);
  s.core_ = std::move(core);
  s.coreStart_ = coreStart;
  return s;
}

CoeffSeq CoeffSeq::scheme(std::shared_ptr<const OperatorScheme> sch, Index alpha, Index shift) {
  if (!sch) throw PreconditionError("InvalidCoeffSeq", "null scheme");
  CoeffSeq s;
  s.kind_ = Kind::Scheme;
  s.scheme_ = std::move(sch);
  s.alpha_ = alpha;
  s.shift_ = shift;
  return s;
}

Entry CoeffSeq::at(Index i) const {
  switch (kind_) {
    case Kind::Constant:
      return core_[0];
    case Kind::Periodic:
      return core_[static_cast<size_t>(floor_mod(i, static_cast<Index>(core_.size())))];
    case Kind::EventuallyPeriodic: {
      Index coreEnd = coreStart_ + static_cast<Index>(core_.size());  // exclusive
      if (i < coreStart_)
        return left_[static_cast<size_t>(floor_mod(i, static_cast<Index>(left_.size())))];
      if (i >= coreEnd)
        return right_[static_cast<size_t>(floor_mod(i, static_cast<Index>(right_.size())))];
      return core_[static_cast<size_t>(i - coreStart_)];
    }
    case Kind::Scheme: {
      Index row = i + shift_;
      return scheme_->entry(row, row - alpha_);
    }
  }
  return Entry();
}

CoeffSeq CoeffSeq::shifted(Index j) const {
  if (j == 0) return *this;
  CoeffSeq s = *this;
  switch (kind_) {
    case Kind::Constant:
      return s;
    case Kind::Periodic: {
      Index q = static_cast<Index>(core_.size());
      std::vector<Entry> rotated(core_.size());
      for (Index r = 0; r < q; ++r)
        rotated[static_cast<size_t>(r)] = core_[static_cast<size_t>(floor_mod(r + j, q))];
      s.core_ = std::move(rotated);
      return s;
    }
    case Kind::EventuallyPeriodic: {
      Index ql = static_cast<Index>(left_.size());
      Index qr = static_cast<Index>(right_.size());
      std::vector<Entry> left(left_.size()), right(right_.size());
      for (Index r = 0; r < ql; ++r)
        left[static_cast<size_t>(r)] = left_[static_cast<size_t>(floor_mod(r + j, ql))];
      for (Index r = 0; r < qr; ++r)
        right[static_cast<size_t>(r)] = right_[static_cast<size_t>(floor_mod(r + j, qr))];
      s.left_ = std::move(left);
      s.right_ = std::move(right);
      s.coreStart_ = coreStart_ - j;
      return s;
    }
    case Kind::Scheme:
      s.shift_ = shift_ + j;
      return s;
  }
  return s;
}

Index CoeffSeq::period() const {
  switch (kind_) {
    case Kind::Constant:
      return 1;
    case Kind::Periodic:
      return static_cast<Index>(core_.size());
    default:
      return 0;
  }
}

Index CoeffSeq::leftPeriod() const {
  switch (kind_) {
    case Kind::Constant:
      return 1;
    case Kind::Periodic:
      return static_cast<Index>(core_.size());
    case Kind::EventuallyPeriodic:
      return static_cast<Index>(left_.size());
    case Kind::Scheme:
      return 1;  // identity tails
  }
  return 1;
}

Index CoeffSeq::rightPeriod() const {
  switch (kind_) {
    case Kind::Constant:
      return 1;
    case Kind::Periodic:
      return static_cast<Index>(core_.size());
    case Kind::EventuallyPeriodic:
      return static_cast<Index>(right_.size());
    case Kind::Scheme:
      return 1;
  }
  return 1;
}

bool CoeffSeq::coreRange(Index& lo, Index& hi) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Periodic:
      return false;
    case Kind::EventuallyPeriodic:
      lo = coreStart_;
      hi = coreStart_ + static_cast<Index>(core_.size()) - 1;  // may be lo-1 (empty)
      return true;
    case Kind::Scheme:
      lo = scheme_->coreLo() - shift_;
      hi = scheme_->coreHi() - shift_;
      return true;
  }
  return false;
}

double CoeffSeq::supNormBound() const {
  auto tableMax = [](const std::vector<Entry>& t) {
    double m = 0.0;
    for (const auto& e : t) m = std::max(m, e.normBound());
    return m;
  };
  switch (kind_) {
    case Kind::Constant:
    case Kind::Periodic:
      return tableMax(core_);
    case Kind::EventuallyPeriodic:
      return std::max({tableMax(left_), tableMax(core_), tableMax(right_)});
    case Kind::Scheme: {
      double s = scheme_->diagonalSup(alpha_);
      if (s < 0.0)
        throw PreconditionError("UnboundedScheme",
                                "scheme '" + scheme_->name() + "' declares no sup bound");
      return s;
    }
  }
  return 0.0;
}

bool CoeffSeq::containsAbstract() const {
  auto tableHas = [](const std::vector<Entry>& t) {
    return std::any_of(t.begin(), t.end(), [](const Entry& e) { return e.isAbstract(); });
  };
  switch (kind_) {
    case Kind::Constant:
    case Kind::Periodic:
      return tableHas(core_);
    case Kind::EventuallyPeriodic:
      return tableHas(left_) || tableHas(core_) || tableHas(right_);
    case Kind::Scheme:
      return scheme_->abstractEntries();
  }
  return false;
}

CoeffSeq CoeffSeq::leftTailSeq() const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Periodic:
      return *this;
    case Kind::EventuallyPeriodic:
      return CoeffSeq::periodic(left_);
    case Kind::Scheme:
      return CoeffSeq::constant(alpha_ == 0 ? Entry::scalar({1.0, 0.0})
                                            : Entry::scalar({0.0, 0.0}));
  }
  return *this;
}

CoeffSeq CoeffSeq::rightTailSeq() const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Periodic:
      return *this;
    case Kind::EventuallyPeriodic:
      return CoeffSeq::periodic(right_);
    case Kind::Scheme:
      return CoeffSeq::constant(alpha_ == 0 ? Entry::scalar({1.0, 0.0})
                                            : Entry::scalar({0.0, 0.0}));
  }
  return *this;
}

CoeffSeq CoeffSeq::mapEntries(const std::function<Entry(const Entry&)>& fn) const {
  if (kind_ == Kind::Scheme)
    throw PreconditionError("UnsupportedClass", "cannot map entries of a scheme diagonal");
  CoeffSeq s = *this;
  auto mapTable = [&](std::vector<Entry>& t) {
    for (auto& e : t) e = fn(e);
  };
  mapTable(s.left_);
  mapTable(s.core_);
  mapTable(s.right_);
  return s;
}

}  // namespace limitops
