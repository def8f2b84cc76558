#pragma once

#include <cstddef>
#include <span>

#include "ripkit/numerics.hpp"

namespace ripkit {

// Column-major vectorization: vec(X)[i + j * rows] = X(i, j).
Vector vectorize(const DenseMatrix& x);
DenseMatrix unvectorize(std::span<const double> v, std::size_t rows, std::size_t cols);

// Linear map from m x n matrices to R^q, stored as its q x (m*n)
// representation acting on column-major vectorizations.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(DenseMatrix rep, std::size_t m, std::size_t n);

  // The map X -> vec(X) (q = m*n, orthonormal rows).
  static LinearMap vectorization(std::size_t m, std::size_t n);

  std::size_t q() const noexcept { return rep_.rows(); }
  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  const DenseMatrix& rep() const noexcept { return rep_; }

  Vector apply(const DenseMatrix& x) const;
  // Adjoint M*(z) = reshape(rep^T z).
  DenseMatrix adjoint(std::span<const double> z) const;

 private:
  DenseMatrix rep_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
};

}  // namespace ripkit
