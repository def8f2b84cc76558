#include "ripkit/linear_map.hpp"

#include "ripkit/errors.hpp"

namespace ripkit {

Vector vectorize(const DenseMatrix& x) {
  Vector v(x.rows() * x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t i = 0; i < x.rows(); ++i) v[i + j * x.rows()] = x(i, j);
  return v;
}

DenseMatrix unvectorize(std::span<const double> v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw InvalidInput("unvectorize: length mismatch");
  DenseMatrix x(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) x(i, j) = v[i + j * rows];
  return x;
}

LinearMap::LinearMap(DenseMatrix rep, std::size_t m, std::size_t n)
    : rep_(std::move(rep)), m_(m), n_(n) {
  if (m == 0 || n == 0) throw InvalidInput("LinearMap: matrix dimensions must be positive");
  if (rep_.cols() != m * n) throw InvalidInput("LinearMap: representation must have m*n columns");
  require_finite(rep_, "LinearMap");
}

LinearMap LinearMap::vectorization(std::size_t m, std::size_t n) {
  return LinearMap(DenseMatrix::identity(m * n), m, n);
}

Vector LinearMap::apply(const DenseMatrix& x) const {
  if (x.rows() != m_ || x.cols() != n_) throw InvalidInput("LinearMap::apply: shape mismatch");
  return rep_ * vectorize(x);
}

DenseMatrix LinearMap::adjoint(std::span<const double> z) const {
  return unvectorize(transpose_times(rep_, z), m_, n_);
}

}  // namespace ripkit
