#include "ripkit/errors.hpp"
#include "ripkit/numerics.hpp"

#include <cmath>
#include <utility>

namespace ripkit {

Cholesky::Cholesky(const DenseMatrix& spd) : lower_(spd.rows(), spd.cols()) {
  if (spd.rows() != spd.cols()) throw InvalidInput("Cholesky: matrix not square");
  require_finite(spd, "Cholesky");
  const std::size_t n = spd.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double d = spd(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lower_(j, k) * lower_(j, k);
    if (!(d > 0.0)) throw NotPositiveDefinite("Cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    lower_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = spd(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower_(i, k) * lower_(j, k);
      lower_(i, j) = s / ljj;
    }
  }
}

Vector Cholesky::solve(std::span<const double> rhs) const {
  const std::size_t n = size();
  if (rhs.size() != n) throw InvalidInput("Cholesky::solve: dimension mismatch");
  Vector y(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= lower_(i, k) * y[k];
    y[i] /= lower_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= lower_(k, i) * y[k];
    y[i] /= lower_(i, i);
  }
  return y;
}

Vector spd_solve(const DenseMatrix& spd, std::span<const double> rhs) {
  require_finite(rhs, "spd_solve");
  return Cholesky(spd).solve(rhs);
}

std::optional<Vector> lu_solve(DenseMatrix a, Vector rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.size() != n) throw InvalidInput("lu_solve: dimension mismatch");
  const double scale = std::max(a.max_abs(), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
    if (std::abs(a(piv, col)) <= 1e-14 * scale) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a(i, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      rhs[i] -= f * rhs[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * rhs[j];
    rhs[i] = s / a(i, i);
  }
  return rhs;
}

}  // namespace ripkit
