#include "ripkit/errors.hpp"
#include "ripkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ripkit {

namespace {

constexpr int kMaxSweeps = 80;
constexpr double kJacobiEps = 1e-15;

// Hestenes one-sided Jacobi on column vectors; `cols` and `basis` are rotated
// together so that cols_in * basis == cols_out.
void hestenes(std::vector<Vector>& cols, std::vector<Vector>& basis) {
  const std::size_t n = cols.size();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Vector& wp = cols[p];
        Vector& wq = cols[q];
        const double alpha = dot(wp, wp);
        const double beta = dot(wq, wq);
        const double gamma = dot(wp, wq);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= kJacobiEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < wp.size(); ++i) {
          const double a = wp[i];
          const double b = wq[i];
          wp[i] = c * a - s * b;
          wq[i] = s * a + c * b;
        }
        Vector& vp = basis[p];
        Vector& vq = basis[q];
        for (std::size_t i = 0; i < vp.size(); ++i) {
          const double a = vp[i];
          const double b = vq[i];
          vp[i] = c * a - s * b;
          vq[i] = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
}

std::vector<Vector> columns_of(const DenseMatrix& m) {
  std::vector<Vector> cols(m.cols(), Vector(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) cols[j][i] = m(i, j);
  return cols;
}

std::vector<Vector> identity_columns(std::size_t n) {
  std::vector<Vector> cols(n, Vector(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) cols[j][j] = 1.0;
  return cols;
}

// Fills `missing` slots of `basis` with unit vectors orthogonal to the
// already-present columns (Gram-Schmidt against the standard basis).
void complete_orthonormal(std::vector<Vector>& basis, const std::vector<bool>& present) {
  if (basis.empty()) return;
  const std::size_t dim = basis.front().size();
  std::vector<std::size_t> done;
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (present[j]) done.push_back(j);
  std::size_t probe = 0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (present[j]) continue;
    while (probe < dim) {
      Vector v(dim, 0.0);
      v[probe++] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t d : done) axpy(-dot(basis[d], v), basis[d], v);
      const double nv = norm2(v);
      if (nv > 0.5) {
        for (double& x : v) x /= nv;
        basis[j] = std::move(v);
        done.push_back(j);
        break;
      }
    }
  }
}

// Requires m.rows() >= m.cols().
SvdFactors svd_tall(const DenseMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  std::vector<Vector> cols = columns_of(m);
  std::vector<Vector> basis = identity_columns(n);
  hestenes(cols, basis);

  Vector sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(cols[j]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  const double smax = n ? sigma[order.front()] : 0.0;
  std::vector<Vector> left(n);
  std::vector<bool> present(n, false);
  SvdFactors out{DenseMatrix(rows, n), Vector(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.singular[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.right(i, k) = basis[j][i];
    if (sigma[j] > 0.0 && sigma[j] > 1e-14 * smax) {
      left[k] = scaled(cols[j], 1.0 / sigma[j]);
      present[k] = true;
    } else {
      left[k] = Vector(rows, 0.0);
    }
  }
  complete_orthonormal(left, present);
  for (std::size_t k = 0; k < n; ++k) out.left.set_column(k, left[k]);
  return out;
}

}  // namespace

DenseMatrix SvdFactors::reconstruct() const {
  DenseMatrix scaled_left = left;
  for (std::size_t i = 0; i < scaled_left.rows(); ++i)
    for (std::size_t k = 0; k < singular.size(); ++k) scaled_left(i, k) *= singular[k];
  return scaled_left * right.transposed();
}

SvdFactors svd(const DenseMatrix& m) {
  require_finite(m, "svd");
  if (m.rows() >= m.cols()) return svd_tall(m);
  SvdFactors t = svd_tall(m.transposed());
  std::swap(t.left, t.right);
  return t;
}

ColumnOrthogonalization orthogonalize_columns(const DenseMatrix& m) {
  require_finite(m, "orthogonalize_columns");
  std::vector<Vector> cols = columns_of(m);
  std::vector<Vector> basis = identity_columns(m.cols());
  hestenes(cols, basis);
  ColumnOrthogonalization out{DenseMatrix(m.rows(), m.cols()), DenseMatrix(m.cols(), m.cols())};
  for (std::size_t j = 0; j < m.cols(); ++j) {
    out.rotated.set_column(j, cols[j]);
    out.v.set_column(j, basis[j]);
  }
  return out;
}

DenseMatrix pseudoinverse(const DenseMatrix& m) {
  const SvdFactors f = svd(m);
  DenseMatrix out(m.cols(), m.rows());
  const double cutoff = f.singular.empty() ? 0.0 : tol::kRank * f.singular.front();
  for (std::size_t k = 0; k < f.singular.size(); ++k) {
    const double s = f.singular[k];
    if (s <= cutoff || s == 0.0) continue;
    for (std::size_t i = 0; i < m.cols(); ++i) {
      const double vi = f.right(i, k) / s;
      for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) += vi * f.left(j, k);
    }
  }
  return out;
}

double spectral_norm(const DenseMatrix& m) {
  if (m.empty()) return 0.0;
  return svd(m).singular.front();
}

double nuclear_norm(const DenseMatrix& m) {
  if (m.empty()) return 0.0;
  const Vector s = svd(m).singular;
  return std::accumulate(s.begin(), s.end(), 0.0);
}

DenseMatrix orthonormal_extend(std::span<const double> v, std::size_t d) {
  if (v.size() != d || d == 0) throw InvalidInput("orthonormal_extend: dimension mismatch");
  require_finite(v, "orthonormal_extend");
  if (std::abs(norm2(v) - 1.0) > 1e-10) throw InvalidInput("orthonormal_extend: vector is not unit");

  // Reflector H = I - 2 w w^T / (w^T w) maps e1 to v for w = e1 - v, and to
  // -v for w = e1 + v. Pick the sign that keeps |w| >= 1, negating the first
  // column in the second case.
  const bool flip = v[0] > 0.0;
  Vector w(v.begin(), v.end());
  for (double& x : w) x = flip ? x : -x;
  w[0] += 1.0;
  const double wtw = dot(w, w);
  DenseMatrix q = DenseMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q(i, j) -= 2.0 * w[i] * w[j] / wtw;
  if (flip)
    for (std::size_t i = 0; i < d; ++i) q(i, 0) = -q(i, 0);
  // The first column is v up to rounding; store it exactly.
  for (std::size_t i = 0; i < d; ++i) q(i, 0) = v[i];
  return q;
}

}  // namespace ripkit
