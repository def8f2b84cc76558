#pragma once

// Explicit operators on the delta = 1/3 boundary and the identifiability-gap
// operators for order one. Every kit verifies its own invariants when built
// and throws Error if they fail.

#include <cstddef>
#include <optional>
#include <utility>

#include "ripkit/linear_map.hpp"
#include "ripkit/numerics.hpp"

namespace ripkit {

struct SignalKit {
  DenseMatrix op;
  std::size_t order = 0;
  Vector anchor;  // unit vector spanning the null space
  Vector gamma;   // A gamma = A eta, both order-sparse
  Vector eta;
  double claimed_ric = 0.0;
};

struct MatrixKit {
  LinearMap op;
  std::size_t order = 0;
  DenseMatrix anchor;  // unit Frobenius norm, spans the null space
  DenseMatrix x;       // M(x) = M(y), both of rank <= order
  DenseMatrix y;
  double claimed_ric = 0.0;
};

// A = sqrt(4/3) (I - b1 b1^T) with b1 = (1, ..., 1, 0, ..., 0)/sqrt(2k)
// (2k leading entries). delta_k(A) = 1/3, and gamma = (1 x k, 0, ...),
// eta = (0 x k, -1 x k, 0, ...) collide. Requires 2 <= k <= p/2.
SignalKit sharp_counterexample_signal(std::size_t p, std::size_t k);

// M(X) = sqrt(4/3) (<X, B_2>, ..., <X, B_mn>) where B_1 = X_1 =
// diag(1 x 2r, 0, ...)/sqrt(2r) and B_1..B_mn is the orthonormal basis of
// orthonormal_extend(vec X_1). delta_r(M) = 1/3; x = diag(1 x r, 0, ...)
// and y = diag(0 x r, -1 x r, 0, ...) collide. Requires 2 <= r <= min(m,n)/2.
MatrixKit sharp_counterexample_matrix(std::size_t m, std::size_t n, std::size_t r);

// Generalization with the null direction spread over `spread` >= 2k entries:
// b1 = (1 x L, 0, ...)/sqrt(L), A = c (I - b1 b1^T) with c^2 = 2L/(2L - k).
// Then delta_k = k/(2L - k) exactly (1/3 at L = 2k, smaller beyond), and the
// k-sparse vectors satisfy the null space property strictly when L > 2k.
// Returns the operator and the analytic delta_k.
std::pair<DenseMatrix, double> null_spike_signal(std::size_t p, std::size_t k, std::size_t spread);

// Matrix analogue: X_1 = U diag(1 x L, 0, ...) V^T / sqrt(L) and
// |M(Z)|^2 = c^2 (|Z|_F^2 - <Z, X_1>^2) with c^2 = 2L/(2L - r), so that
// delta_r = r/(2L - r). `rotation` supplies optional orthogonal (U, V);
// identity when absent. q = mn - 1.
std::pair<LinearMap, double> null_spike_matrix(
    std::size_t m, std::size_t n, std::size_t r, std::size_t spread,
    const std::optional<std::pair<DenseMatrix, DenseMatrix>>& rotation = std::nullopt);

// A: b -> (b1 - b2, b3, ..., bp); delta_1 = 0 yet A e1 = A(-e2). p >= 2.
SignalKit identifiability_gap_signal(std::size_t p);

// M(X) = (x11 - x22, x12 + x21, remaining entries); delta_1 = 0 yet
// M(diag(1,0,..)) = M(diag(0,-1,0,..)). m, n >= 2.
MatrixKit identifiability_gap_matrix(std::size_t m, std::size_t n);

// |<B, X>| <= |B|_F sqrt(sum_{i<=r} sigma_i(X)^2) + 1e-10 for rank(B) <= r.
// Throws InvalidInput when B has numerical rank above r.
bool rank_r_inner_bound_check(const DenseMatrix& b, const DenseMatrix& x, std::size_t r);

}  // namespace ripkit
