#include "ripkit/errors.hpp"
#include "ripkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ripkit {

namespace {

constexpr int kMaxSweeps = 100;

void check_symmetric(const DenseMatrix& s) {
  if (s.rows() != s.cols()) throw InvalidInput("symmetric eigensolver: matrix not square");
  if (s.rows() == 0) throw InvalidInput("symmetric eigensolver: empty matrix");
  require_finite(s, "symmetric eigensolver");
  const double scale = std::max(1.0, s.max_abs());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j)
      if (std::abs(s(i, j) - s(j, i)) > tol::kOrtho * scale)
        throw InvalidInput("symmetric eigensolver: matrix not symmetric");
}

}  // namespace

SymEigen sym_eig(const DenseMatrix& s) {
  check_symmetric(s);
  const std::size_t n = s.rows();
  DenseMatrix a = s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (s(i, j) + s(j, i));
  DenseMatrix v = DenseMatrix::identity(n);

  const double tiny = 1e-17 * std::max(a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= tiny) continue;
        rotated = true;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double sn = t * c;
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = a(p, r) = c * arp - sn * arq;
            a(r, q) = a(q, r) = sn * arp + c * arq;
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - sn * vrq;
          v(r, q) = sn * vrp + c * vrq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymEigen out{Vector(n), DenseMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = v(r, order[i]);
  }
  return out;
}

std::pair<double, double> sym_eig_extremes(const DenseMatrix& s) {
  if (s.rows() == 1 && s.cols() == 1) {
    require_finite(s, "symmetric eigensolver");
    return {s(0, 0), s(0, 0)};
  }
  if (s.rows() == 2 && s.cols() == 2) {
    check_symmetric(s);
    // Closed form; the discriminant is computed with hypot so no cancellation
    // inside the square root.
    const double mean = 0.5 * (s(0, 0) + s(1, 1));
    const double half_gap = std::hypot(0.5 * (s(0, 0) - s(1, 1)), 0.5 * (s(0, 1) + s(1, 0)));
    return {mean - half_gap, mean + half_gap};
  }
  const SymEigen e = sym_eig(s);
  return {e.values.front(), e.values.back()};
}

}  // namespace ripkit
