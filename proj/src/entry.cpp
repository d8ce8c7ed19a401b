#include "limitops/entry.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace limitops {

Entry Entry::matrix(Eigen::MatrixXcd m) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw PreconditionError("InvalidEntry", "matrix entries must be square, d >= 1");
  if (!m.allFinite())
    throw PreconditionError("InvalidEntry", "matrix entries must be finite");
  return Entry(std::move(m));
}

Entry Entry::abstract(std::string label, double norm, double lowerNorm) {
  if (!(0.0 <= lowerNorm && lowerNorm <= norm))
    throw PreconditionError("InvalidEntry", "abstract entry needs 0 <= lowerNorm <= norm");
  return Entry(Abstract{std::move(label), norm, lowerNorm});
}

Entry::Kind Entry::kind() const {
  if (std::holds_alternative<Complex>(value_)) return Kind::Scalar;
  if (std::holds_alternative<Eigen::MatrixXcd>(value_)) return Kind::Matrix;
  return Kind::Abstract;
}

bool Entry::isZero() const {
  switch (kind()) {
    case Kind::Scalar:
      return scalarValue() == Complex{0.0, 0.0};
    case Kind::Matrix:
      return matrixValue().isZero(0.0);
    case Kind::Abstract:
      return std::get<Abstract>(value_).norm == 0.0;
  }
  return false;
}

int Entry::dim() const {
  switch (kind()) {
    case Kind::Scalar:
      return 1;
    case Kind::Matrix:
      return static_cast<int>(matrixValue().rows());
    case Kind::Abstract:
      throw PreconditionError("AbstractEntriesNotMaterializable",
                              "abstract entries have no finite dimension");
  }
  return 1;
}

Complex Entry::scalarValue() const { return std::get<Complex>(value_); }

const Eigen::MatrixXcd& Entry::matrixValue() const {
  return std::get<Eigen::MatrixXcd>(value_);
}

const std::string& Entry::label() const { return std::get<Abstract>(value_).label; }

double Entry::normBound() const {
  switch (kind()) {
    case Kind::Scalar:
      return std::abs(scalarValue());
    case Kind::Matrix: {
      const auto& m = matrixValue();
      double rowSum = m.cwiseAbs().rowwise().sum().maxCoeff();
      double colSum = m.cwiseAbs().colwise().sum().maxCoeff();
      return std::max(rowSum, colSum);
    }
    case Kind::Abstract:
      return std::get<Abstract>(value_).norm;
  }
  return 0.0;
}

double Entry::lowerNorm() const {
  switch (kind()) {
    case Kind::Scalar:
      return std::abs(scalarValue());
    case Kind::Matrix: {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrixValue());
      return svd.singularValues().minCoeff();
    }
    case Kind::Abstract:
      return std::get<Abstract>(value_).lowerNorm;
  }
  return 0.0;
}

Entry Entry::conjTranspose() const {
  switch (kind()) {
    case Kind::Scalar:
      return Entry::scalar(std::conj(scalarValue()));
    case Kind::Matrix:
      return Entry::matrix(matrixValue().adjoint());
    case Kind::Abstract:
      throw PreconditionError("AbstractEntriesNotMaterializable",
                              "adjoint of abstract entry '" + label() + "'");
  }
  return Entry();
}

Entry Entry::plusScalar(Complex lambda) const {
  switch (kind()) {
    case Kind::Scalar:
      return Entry::scalar(scalarValue() + lambda);
    case Kind::Matrix: {
      Eigen::MatrixXcd m = matrixValue();
      m += lambda * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
      return Entry::matrix(std::move(m));
    }
    case Kind::Abstract:
      throw PreconditionError("AbstractEntriesNotMaterializable",
                              "cannot shift abstract entry '" + label() + "'");
  }
  return Entry();
}

Entry Entry::scaled(Complex factor) const {
  switch (kind()) {
    case Kind::Scalar:
      return Entry::scalar(factor * scalarValue());
    case Kind::Matrix:
      return Entry::matrix(factor * matrixValue());
    case Kind::Abstract:
      throw PreconditionError("AbstractEntriesNotMaterializable",
                              "cannot scale abstract entry '" + label() + "'");
  }
  return Entry();
}

bool Entry::operator==(const Entry& other) const {
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Scalar:
      return scalarValue() == other.scalarValue();
    case Kind::Matrix:
      return matrixValue().rows() == other.matrixValue().rows() &&
             matrixValue() == other.matrixValue();
    case Kind::Abstract: {
      const auto& a = std::get<Abstract>(value_);
      const auto& b = std::get<Abstract>(other.value_);
      return a.label == b.label && a.norm == b.norm && a.lowerNorm == b.lowerNorm;
    }
  }
  return false;
}

}  // namespace limitops
