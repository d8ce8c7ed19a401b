#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>

#include "limitops/errors.hpp"

namespace limitops {

using Complex = std::complex<double>;

// A generalized matrix entry: a complex scalar, a dense d x d complex block,
// or an abstract operator known only through its norm and lower norm. The
// abstract variant models diagonal operators whose entries act on an
// infinite-dimensional space (e.g. multiplication operators on L^p[0,1]).
class Entry {
 public:
  enum class Kind { Scalar, Matrix, Abstract };

  Entry() : value_(Complex{0.0, 0.0}) {}

  static Entry scalar(Complex v) { return Entry(v); }
  static Entry matrix(Eigen::MatrixXcd m);
  static Entry abstract(std::string label, double norm, double lowerNorm);

  Kind kind() const;
  bool isAbstract() const { return kind() == Kind::Abstract; }
  bool isZero() const;
  // Entry dimension: 1 for scalars, d for d x d blocks. Abstract entries have
  // no finite dimension; callers must not materialize them.
  int dim() const;

  Complex scalarValue() const;
  const Eigen::MatrixXcd& matrixValue() const;
  const std::string& label() const;

  // sup-style norm bound valid on every l^p: |c| for scalars,
  // max(row-sum, column-sum) for blocks (interpolation), declared for abstract.
  double normBound() const;
  // Lower norm of the entry as an operator: |c| for scalars (p-independent),
  // smallest singular value for blocks (the p = 2 value), declared for
  // abstract entries.
  double lowerNorm() const;

  Entry conjTranspose() const;
  Entry plusScalar(Complex lambda) const;  // entry + lambda * I
  Entry scaled(Complex factor) const;

  bool operator==(const Entry& other) const;
  bool operator!=(const Entry& other) const { return !(*this == other); }

 private:
  struct Abstract {
    std::string label;
    double norm = 0.0;
    double lowerNorm = 0.0;
  };
  explicit Entry(Complex v) : value_(v) {}
  explicit Entry(Eigen::MatrixXcd m) : value_(std::move(m)) {}
  explicit Entry(Abstract a) : value_(std::move(a)) {}

  std::variant<Complex, Eigen::MatrixXcd, Abstract> value_;
};

}  // namespace limitops
