#include "ripkit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ripkit/errors.hpp"

namespace ripkit {

namespace {

constexpr double kKitTol = 1e-10;

std::size_t count_nonzeros(std::span<const double> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double e) { return e != 0.0; }));
}

std::size_t numerical_rank(const DenseMatrix& x) {
  const SvdFactors f = svd(x);
  if (f.singular.empty() || f.singular.front() == 0.0) return 0;
  const double cut = tol::kRank * f.singular.front();
  return static_cast<std::size_t>(
      std::count_if(f.singular.begin(), f.singular.end(), [&](double s) { return s > cut; }));
}

void verify(const SignalKit& kit) {
  const double anchor_image = norm2(kit.op * kit.anchor);
  const double collision = norm2(subtract(kit.op * kit.gamma, kit.op * kit.eta));
  if (anchor_image > kKitTol || collision > kKitTol ||
      count_nonzeros(kit.gamma) > kit.order || count_nonzeros(kit.eta) > kit.order ||
      norm2(subtract(kit.gamma, kit.eta)) < 1.0)
    throw Error("signal kit failed its own verification");
}

void verify(const MatrixKit& kit) {
  const double anchor_image = norm2(kit.op.apply(kit.anchor));
  const double collision = norm2(subtract(kit.op.apply(kit.x), kit.op.apply(kit.y)));
  if (anchor_image > kKitTol || collision > kKitTol || numerical_rank(kit.x) > kit.order ||
      numerical_rank(kit.y) > kit.order || (kit.x - kit.y).frobenius_norm() < 1.0)
    throw Error("matrix kit failed its own verification");
}

// c * (columns 2..d of orthonormal_extend(v))^T: the coefficient map onto
// the orthogonal complement of v.
DenseMatrix complement_rows(std::span<const double> v, double c) {
  const std::size_t d = v.size();
  const DenseMatrix q = orthonormal_extend(v, d);
  DenseMatrix rep(d - 1, d);
  for (std::size_t i = 1; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) rep(i - 1, j) = c * q(j, i);
  return rep;
}

DenseMatrix diag_block(std::size_t m, std::size_t n, std::size_t from, std::size_t count,
                       double value) {
  DenseMatrix out(m, n);
  for (std::size_t i = from; i < from + count; ++i) out(i, i) = value;
  return out;
}

}  // namespace

SignalKit sharp_counterexample_signal(std::size_t p, std::size_t k) {
  if (k < 2 || 2 * k > p)
    throw InvalidInput("sharp_counterexample_signal: need 2 <= k <= p/2");
  SignalKit kit;
  kit.order = k;
  kit.claimed_ric = 1.0 / 3.0;
  kit.anchor.assign(p, 0.0);
  for (std::size_t i = 0; i < 2 * k; ++i) kit.anchor[i] = 1.0 / std::sqrt(2.0 * k);
  const double c = std::sqrt(4.0 / 3.0);
  kit.op = DenseMatrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      kit.op(i, j) = c * ((i == j ? 1.0 : 0.0) - kit.anchor[i] * kit.anchor[j]);
  kit.gamma.assign(p, 0.0);
  kit.eta.assign(p, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    kit.gamma[i] = 1.0;
    kit.eta[k + i] = -1.0;
  }
  verify(kit);
  return kit;
}

MatrixKit sharp_counterexample_matrix(std::size_t m, std::size_t n, std::size_t r) {
  if (r < 2 || 2 * r > std::min(m, n))
    throw InvalidInput("sharp_counterexample_matrix: need 2 <= r <= min(m, n)/2");
  MatrixKit kit;
  kit.order = r;
  kit.claimed_ric = 1.0 / 3.0;
  kit.anchor = diag_block(m, n, 0, 2 * r, 1.0 / std::sqrt(2.0 * r));
  kit.op = LinearMap(complement_rows(vectorize(kit.anchor), std::sqrt(4.0 / 3.0)), m, n);
  kit.x = diag_block(m, n, 0, r, 1.0);
  kit.y = diag_block(m, n, r, r, -1.0);
  verify(kit);
  return kit;
}

std::pair<DenseMatrix, double> null_spike_signal(std::size_t p, std::size_t k, std::size_t spread) {
  if (k == 0 || spread < 2 * k || spread > p)
    throw InvalidInput("null_spike_signal: need 1 <= k and 2k <= spread <= p");
  const double L = static_cast<double>(spread);
  const double kk = static_cast<double>(k);
  const double c = std::sqrt(2.0 * L / (2.0 * L - kk));
  Vector b(p, 0.0);
  for (std::size_t i = 0; i < spread; ++i) b[i] = 1.0 / std::sqrt(L);
  DenseMatrix a(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) a(i, j) = c * ((i == j ? 1.0 : 0.0) - b[i] * b[j]);
  return {a, kk / (2.0 * L - kk)};
}

std::pair<LinearMap, double> null_spike_matrix(
    std::size_t m, std::size_t n, std::size_t r, std::size_t spread,
    const std::optional<std::pair<DenseMatrix, DenseMatrix>>& rotation) {
  if (r == 0 || spread < 2 * r || spread > std::min(m, n))
    throw InvalidInput("null_spike_matrix: need 1 <= r and 2r <= spread <= min(m, n)");
  const double L = static_cast<double>(spread);
  const double rr = static_cast<double>(r);
  DenseMatrix anchor = diag_block(m, n, 0, spread, 1.0 / std::sqrt(L));
  if (rotation) {
    const auto& [u, v] = *rotation;
    if (u.rows() != m || u.cols() != m || v.rows() != n || v.cols() != n)
      throw InvalidInput("null_spike_matrix: rotation shapes must be m x m and n x n");
    anchor = u * anchor * v.transposed();
    anchor *= 1.0 / anchor.frobenius_norm();
  }
  const double c = std::sqrt(2.0 * L / (2.0 * L - rr));
  return {LinearMap(complement_rows(vectorize(anchor), c), m, n), rr / (2.0 * L - rr)};
}

SignalKit identifiability_gap_signal(std::size_t p) {
  if (p < 2) throw InvalidInput("identifiability_gap_signal: need p >= 2");
  SignalKit kit;
  kit.order = 1;
  kit.claimed_ric = 0.0;
  kit.op = DenseMatrix(p - 1, p);
  kit.op(0, 0) = 1.0;
  kit.op(0, 1) = -1.0;
  for (std::size_t i = 1; i + 1 < p; ++i) kit.op(i, i + 1) = 1.0;
  kit.anchor.assign(p, 0.0);
  kit.anchor[0] = kit.anchor[1] = 1.0 / std::sqrt(2.0);
  kit.gamma.assign(p, 0.0);
  kit.gamma[0] = 1.0;
  kit.eta.assign(p, 0.0);
  kit.eta[1] = -1.0;
  verify(kit);
  return kit;
}

MatrixKit identifiability_gap_matrix(std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) throw InvalidInput("identifiability_gap_matrix: need m, n >= 2");
  // Column-major indices of the leading 2 x 2 block.
  const std::size_t i11 = 0, i21 = 1, i12 = m, i22 = m + 1;
  DenseMatrix rep(m * n - 2, m * n);
  rep(0, i11) = 1.0;
  rep(0, i22) = -1.0;
  rep(1, i12) = 1.0;
  rep(1, i21) = 1.0;
  std::size_t row = 2;
  for (std::size_t j = 0; j < m * n; ++j)
    if (j != i11 && j != i21 && j != i12 && j != i22) rep(row++, j) = 1.0;

  MatrixKit kit;
  kit.op = LinearMap(std::move(rep), m, n);
  kit.order = 1;
  kit.claimed_ric = 0.0;
  kit.anchor = diag_block(m, n, 0, 2, 1.0 / std::sqrt(2.0));
  kit.x = diag_block(m, n, 0, 1, 1.0);
  kit.y = diag_block(m, n, 1, 1, -1.0);
  verify(kit);
  return kit;
}

bool rank_r_inner_bound_check(const DenseMatrix& b, const DenseMatrix& x, std::size_t r) {
  if (b.rows() != x.rows() || b.cols() != x.cols())
    throw InvalidInput("rank_r_inner_bound_check: shape mismatch");
  if (numerical_rank(b) > r)
    throw InvalidInput("rank_r_inner_bound_check: B has rank above " + std::to_string(r));
  const SvdFactors f = svd(x);
  double head = 0.0;
  for (std::size_t i = 0; i < std::min(r, f.singular.size()); ++i)
    head += f.singular[i] * f.singular[i];
  return std::fabs(inner(b, x)) <= b.frobenius_norm() * std::sqrt(head) + 1e-10;
}

}  // namespace ripkit
