#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ripkit/constructions.hpp"
#include "ripkit/errors.hpp"
#include "ripkit/recovery.hpp"
#include "ripkit/rip.hpp"

using namespace ripkit;
using testing::random_matrix;

namespace {

double sq(const Vector& v) { return dot(v, v); }

DenseMatrix random_rank(std::size_t m, std::size_t n, std::size_t r, Rng& rng) {
  DenseMatrix x = random_matrix(m, r, rng) * random_matrix(r, n, rng);
  x *= 1.0 / x.frobenius_norm();
  return x;
}

}  // namespace

TEST_CASE("signal counterexample examples") {
  const SignalKit kit = sharp_counterexample_signal(6, 2);
  CHECK(std::fabs(sq(kit.op * kit.gamma) - 4.0 / 3.0) < 1e-12);
  CHECK(std::fabs(sq(kit.op * Vector{1, -1, 0, 0, 0, 0}) - 8.0 / 3.0) < 1e-12);
  CHECK(kit.claimed_ric == 1.0 / 3.0);
  CHECK(kit.order == 2);
  for (auto [p, k] : {std::pair{4, 2}, {7, 3}, {10, 4}, {9, 2}}) {
    const SignalKit kk = sharp_counterexample_signal(p, k);
    CHECK(std::fabs(ric_exact_signal(kk.op, k).value - 1.0 / 3.0) < 1e-9);
  }
  CHECK_THROWS_AS(sharp_counterexample_signal(6, 1), InvalidInput);
  CHECK_THROWS_AS(sharp_counterexample_signal(5, 3), InvalidInput);
}

TEST_CASE("signal counterexample two-sided bound on 10^3 sparse vectors") {
  Rng rng(50);
  const SignalKit kit = sharp_counterexample_signal(10, 3);
  for (int t = 0; t < 1000; ++t) {
    Vector g(10, 0.0);
    for (int i = 0; i < 3; ++i) g[rng.below(10)] = rng.normal();
    if (norm2(g) == 0.0) continue;
    g = scaled(g, 1.0 / norm2(g));
    const double v = sq(kit.op * g);
    CHECK(v >= 2.0 / 3.0 - 1e-10);
    CHECK(v <= 4.0 / 3.0 + 1e-10);
  }
}

TEST_CASE("matrix counterexample examples") {
  const MatrixKit kit = sharp_counterexample_matrix(4, 4, 2);
  CHECK(kit.op.q() == 15);
  CHECK(norm2(subtract(kit.op.apply(kit.x), kit.op.apply(kit.y))) < 1e-10);
  CHECK(svd(kit.x).singular[2] == 0.0);
  CHECK(svd(kit.y).singular[2] == 0.0);

  Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    const DenseMatrix z = random_matrix(4, 4, rng);
    const double ip = inner(z, kit.anchor);
    const double expect = 4.0 / 3.0 * (z.frobenius_norm() * z.frobenius_norm() - ip * ip);
    CHECK(std::fabs(sq(kit.op.apply(z)) - expect) < 1e-10 * std::max(1.0, expect));
  }

  DenseMatrix w1(4, 4), w2(4, 4);
  w1(0, 0) = w1(1, 1) = 1.0 / std::sqrt(2.0);
  w2(0, 0) = 1.0 / std::sqrt(2.0);
  w2(1, 1) = -1.0 / std::sqrt(2.0);
  CHECK(std::fabs(std::fabs(rip_ratio(kit.op, w1) - 1.0) - 1.0 / 3.0) < 1e-12);
  CHECK(std::fabs(std::fabs(rip_ratio(kit.op, w2) - 1.0) - 1.0 / 3.0) < 1e-12);

  MatrixRipOptions opt;
  opt.seeds = {w1, w2};
  CHECK(ric_lower_matrix(kit.op, 2, opt).value >= 1.0 / 3.0 - 1e-6);
  CHECK_THROWS_AS(sharp_counterexample_matrix(3, 4, 2), InvalidInput);
}

TEST_CASE("matrix counterexample two-sided bound on 10^3 low-rank matrices") {
  Rng rng(52);
  const MatrixKit kit = sharp_counterexample_matrix(5, 4, 2);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t r = 1 + rng.below(2);
    const DenseMatrix z = random_rank(5, 4, r, rng);
    // |<Z, X1>|^2 <= sigma_1(X1)^2 + sigma_2(X1)^2 = 1/2 gives the lower side.
    CHECK(rank_r_inner_bound_check(z, kit.anchor, 2));
    const double v = sq(kit.op.apply(z));
    CHECK(v >= 2.0 / 3.0 - 1e-10);
    CHECK(v <= 4.0 / 3.0 + 1e-10);
  }
}

TEST_CASE("colliding pairs tie in the recovery programs") {
  const SignalKit s = sharp_counterexample_signal(8, 3);
  SignalInstance inst{s.op, s.op * s.gamma, std::nullopt, 0.0, 0.0, Constraint::equality};
  const SolveReport r = solve_signal(inst, SolverMethod::lp);
  CHECK(std::fabs(r.objective - norm1(s.gamma)) < 1e-8);
  CHECK(std::fabs(r.objective - norm1(s.eta)) < 1e-8);
  CHECK(norm2(subtract(s.op * s.eta, inst.observation)) < 1e-8);

  const MatrixKit m = sharp_counterexample_matrix(4, 4, 2);
  MatrixInstance mi{m.op, m.op.apply(m.x), std::nullopt, 0.0, 0.0, Constraint::equality};
  const MatrixSolveReport mr = solve_matrix(mi);
  CHECK(std::fabs(mr.objective - nuclear_norm(m.x)) < 1e-6);
  CHECK(std::fabs(nuclear_norm(m.x) - nuclear_norm(m.y)) < 1e-12);
  CHECK(norm2(subtract(m.op.apply(m.y), mi.observation)) < 1e-8);
}

TEST_CASE("null spikes have the analytic constant") {
  for (auto [k, L] : {std::pair{2, 4}, {2, 6}, {3, 8}}) {
    const auto [a, delta] = null_spike_signal(9, k, L);
    CHECK(std::fabs(delta - double(k) / (2.0 * L - k)) < 1e-15);
    CHECK(std::fabs(ric_exact_signal(a, k).value - delta) < 1e-10);
  }
  CHECK_THROWS_AS(null_spike_signal(9, 3, 5), InvalidInput);

  Rng rng(53);
  const DenseMatrix u = orthogonalize_columns(random_matrix(5, 5, rng)).v;
  const DenseMatrix v = orthogonalize_columns(random_matrix(5, 5, rng)).v;
  const auto [map, delta] = null_spike_matrix(5, 5, 2, 5, std::pair{u, v});
  CHECK(map.q() == 24);
  CHECK(std::fabs(delta - 2.0 / 8.0) < 1e-15);
  // Rank-2 ratios stay inside [1 - delta, 1 + delta].
  for (int t = 0; t < 500; ++t) {
    const double ratio = rip_ratio(map, random_rank(5, 5, 2, rng));
    CHECK(std::fabs(ratio - 1.0) <= delta + 1e-10);
  }
}

TEST_CASE("inner-product bound") {
  DenseMatrix b(2, 2), x(2, 2);
  b(0, 0) = 1.0;
  x(0, 0) = 3.0;
  x(1, 1) = 2.0;
  CHECK(rank_r_inner_bound_check(b, x, 1));
  CHECK(std::fabs(std::fabs(inner(b, x)) - 3.0) < 1e-15);  // equality case
  CHECK(rank_r_inner_bound_check(b, DenseMatrix(2, 2), 1));
  CHECK_THROWS_AS(rank_r_inner_bound_check(DenseMatrix::identity(2), x, 1), InvalidInput);

  Rng rng(54);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 2 + rng.below(4), n = 2 + rng.below(4);
    const std::size_t r = 1 + rng.below(std::min(m, n));
    const DenseMatrix bb = random_matrix(m, r, rng) * random_matrix(r, n, rng);
    CHECK(rank_r_inner_bound_check(bb, random_matrix(m, n, rng), r));
  }
}

TEST_CASE("identifiability gap: signal") {
  const SignalKit kit = identifiability_gap_signal(3);
  CHECK(kit.claimed_ric == 0.0);
  CHECK(kit.order == 1);
  CHECK(kit.op * kit.gamma == kit.op * kit.eta);
  CHECK(ric_exact_signal(kit.op, 1).value < 1e-15);
  Rng rng(55);
  const SignalKit big = identifiability_gap_signal(6);
  for (int t = 0; t < 100; ++t) {
    Vector v(6, 0.0);
    v[rng.below(6)] = rng.normal();
    CHECK(std::fabs(sq(big.op * v) - sq(v)) < 1e-12);
  }
  CHECK_THROWS_AS(identifiability_gap_signal(1), InvalidInput);
}

TEST_CASE("identifiability gap: matrix") {
  const MatrixKit kit = identifiability_gap_matrix(2, 2);
  CHECK(kit.op.q() == 2);
  CHECK(norm2(subtract(kit.op.apply(kit.x), kit.op.apply(kit.y))) == 0.0);
  Rng rng(56);
  for (int t = 0; t < 1000; ++t) {
    const DenseMatrix x = random_rank(2, 2, 1, rng);
    CHECK(std::fabs(sq(kit.op.apply(x)) - 1.0) < 1e-12);
  }
  const MatrixKit wide = identifiability_gap_matrix(3, 4);
  CHECK(wide.op.q() == 10);
  for (int t = 0; t < 200; ++t)
    CHECK(std::fabs(sq(wide.op.apply(random_rank(3, 4, 1, rng))) - 1.0) < 1e-12);
  CHECK_THROWS_AS(identifiability_gap_matrix(1, 3), InvalidInput);
}
