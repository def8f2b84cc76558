#pragma once

#include <cmath>

#include "ripkit/harness/rng.hpp"
#include "ripkit/numerics.hpp"

namespace testing {

inline ripkit::DenseMatrix random_matrix(std::size_t rows, std::size_t cols, ripkit::Rng& rng) {
  ripkit::DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

inline ripkit::Vector random_vector(std::size_t n, ripkit::Rng& rng) {
  ripkit::Vector v(n);
  for (double& e : v) e = rng.normal();
  return v;
}

inline ripkit::Vector random_unit(std::size_t n, ripkit::Rng& rng) {
  ripkit::Vector v = random_vector(n, rng);
  const double nrm = ripkit::norm2(v);
  for (double& e : v) e /= nrm;
  return v;
}

inline double max_abs_diff(const ripkit::DenseMatrix& a, const ripkit::DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::fabs(a.entries()[i] - b.entries()[i]));
  return worst;
}

inline double max_abs_diff(const ripkit::Vector& a, const ripkit::Vector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

// |Q^T Q - I|_max
inline double orthonormality_defect(const ripkit::DenseMatrix& q) {
  const ripkit::DenseMatrix g = ripkit::gram(q);
  return max_abs_diff(g, ripkit::DenseMatrix::identity(q.cols()));
}

}  // namespace testing
