#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "ripkit/errors.hpp"

using namespace ripkit;
using testing::max_abs_diff;
using testing::orthonormality_defect;
using testing::random_matrix;

TEST_CASE("sym_eig_extremes on closed forms") {
  auto [lo, hi] = sym_eig_extremes(DenseMatrix{{2, 0}, {0, 5}});
  CHECK(lo == doctest::Approx(2).epsilon(1e-12));
  CHECK(hi == doctest::Approx(5).epsilon(1e-12));

  std::tie(lo, hi) = sym_eig_extremes(DenseMatrix{{1, 0.3}, {0.3, 1}});
  CHECK(std::fabs(lo - 0.7) < 1e-12);
  CHECK(std::fabs(hi - 1.3) < 1e-12);

  std::tie(lo, hi) = sym_eig_extremes(DenseMatrix::identity(4));
  CHECK(std::fabs(lo - 1) < 1e-12);
  CHECK(std::fabs(hi - 1) < 1e-12);
}

TEST_CASE("sym_eig rejects bad input") {
  CHECK_THROWS_AS(sym_eig_extremes(DenseMatrix{{1, 2}, {0, 1}}), InvalidInput);
  DenseMatrix nan{{1, 0}, {0, 1}};
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(sym_eig_extremes(nan), InvalidInput);
}

TEST_CASE("sym_eig_extremes bounds the Rayleigh quotient") {
  Rng rng(11);
  for (std::size_t n : {3u, 6u, 9u}) {
    DenseMatrix b = random_matrix(n, n, rng);
    const DenseMatrix s = b + b.transposed();
    const auto [lo, hi] = sym_eig_extremes(s);
    for (int t = 0; t < 1000; ++t) {
      const Vector x = testing::random_unit(n, rng);
      const double rq = dot(x, s * x);
      CHECK(rq >= lo - 1e-9);
      CHECK(rq <= hi + 1e-9);
    }
  }
}

TEST_CASE("sym_eig reconstructs against its own eigenpairs") {
  Rng rng(12);
  DenseMatrix b = random_matrix(7, 7, rng);
  const DenseMatrix s = b + b.transposed();
  const SymEigen e = sym_eig(s);
  CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  CHECK(orthonormality_defect(e.vectors) < 1e-12);
  for (std::size_t i = 0; i < 7; ++i) {
    const Vector v = e.vectors.column(i);
    const Vector sv = s * v;
    for (std::size_t r = 0; r < 7; ++r) CHECK(std::fabs(sv[r] - e.values[i] * v[r]) < 1e-10);
  }
}

TEST_CASE("svd small examples") {
  CHECK(svd(DenseMatrix::identity(3)).singular == Vector{1, 1, 1});
  const SvdFactors d = svd(DenseMatrix{{3, 0}, {0, -2}});
  CHECK(std::fabs(d.singular[0] - 3) < 1e-14);
  CHECK(std::fabs(d.singular[1] - 2) < 1e-14);

  // u v^T with |u| = 2, |v| = 3.
  const Vector u{2, 0, 0}, v{0, 3, 0, 0};
  DenseMatrix outer(3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) outer(i, j) = u[i] * v[j];
  const SvdFactors f = svd(outer);
  CHECK(std::fabs(f.singular[0] - 6) < 1e-13);
  for (std::size_t i = 1; i < f.singular.size(); ++i) CHECK(f.singular[i] < 1e-13);
}

TEST_CASE("svd invariants on random shapes up to 50x50") {
  Rng rng(13);
  const std::pair<std::size_t, std::size_t> shapes[] = {{1, 1}, {5, 3}, {3, 5}, {20, 20}, {50, 50}, {50, 17}, {9, 40}};
  for (auto [r, c] : shapes) {
    CAPTURE(r);
    CAPTURE(c);
    const DenseMatrix m = random_matrix(r, c, rng);
    const SvdFactors f = svd(m);
    CHECK(f.singular.size() == std::min(r, c));
    CHECK(std::is_sorted(f.singular.rbegin(), f.singular.rend()));
    CHECK((f.reconstruct() - m).frobenius_norm() <= 1e-10 * m.frobenius_norm());
    CHECK(orthonormality_defect(f.left) < 1e-12);
    CHECK(orthonormality_defect(f.right) < 1e-12);
  }
}

TEST_CASE("svd of rank-deficient matrices keeps orthonormal factors") {
  Rng rng(14);
  const DenseMatrix m = random_matrix(8, 2, rng) * random_matrix(2, 6, rng);
  const SvdFactors f = svd(m);
  CHECK(f.singular[2] <= 1e-10 * f.singular[0]);
  CHECK(orthonormality_defect(f.left) < 1e-12);
  CHECK(orthonormality_defect(f.right) < 1e-12);
  CHECK((f.reconstruct() - m).frobenius_norm() <= 1e-10 * m.frobenius_norm());
  CHECK(svd(DenseMatrix(3, 2)).singular == Vector{0, 0});
}

TEST_CASE("orthonormal_extend") {
  const DenseMatrix e = orthonormal_extend(Vector{1, 0, 0}, 3);
  CHECK(e.column(0) == Vector{1, 0, 0});
  CHECK(orthonormality_defect(e) < 1e-12);

  const double h = 1.0 / std::sqrt(2.0);
  const DenseMatrix q2 = orthonormal_extend(Vector{h, h}, 2);
  CHECK(max_abs_diff(q2.column(0), Vector{h, h}) < 1e-15);
  CHECK(orthonormality_defect(q2) < 1e-12);

  Rng rng(15);
  for (int t = 0; t < 20; ++t) {
    const Vector v = testing::random_unit(8, rng);
    const DenseMatrix q = orthonormal_extend(v, 8);
    CHECK(max_abs_diff(q.column(0), v) < 1e-15);
    // Direct multiplication oracle.
    const DenseMatrix qtq = q.transposed() * q;
    CHECK(max_abs_diff(qtq, DenseMatrix::identity(8)) < 1e-12);
  }
  CHECK_THROWS_AS(orthonormal_extend(Vector{1, 1}, 2), InvalidInput);
}

TEST_CASE("pseudoinverse and norms") {
  Rng rng(16);
  const DenseMatrix a = random_matrix(4, 7, rng);
  const DenseMatrix pinv = pseudoinverse(a);
  CHECK(max_abs_diff(a * pinv * a, a) < 1e-10);
  CHECK(max_abs_diff(pinv * a * pinv, pinv) < 1e-10);
  const DenseMatrix d = DenseMatrix::diagonal(Vector{3, -1, 2});
  CHECK(std::fabs(spectral_norm(d) - 3) < 1e-14);
  CHECK(std::fabs(nuclear_norm(d) - 6) < 1e-14);
}

TEST_CASE("orthogonalize_columns exposes the null directions") {
  Rng rng(17);
  const DenseMatrix a = random_matrix(3, 5, rng);
  const ColumnOrthogonalization co = orthogonalize_columns(a);
  CHECK(orthonormality_defect(co.v) < 1e-12);
  CHECK(max_abs_diff(a * co.v, co.rotated) < 1e-12);
  std::size_t tiny = 0;
  for (std::size_t j = 0; j < 5; ++j) tiny += norm2(co.rotated.column(j)) < 1e-10;
  CHECK(tiny == 2);
}

// ---------------------------------------------------------------------------
// Linear programming.

TEST_CASE("simplex_lp textbook cases") {
  {
    // min -x s.t. x <= 1, x >= 0
    const LpSolution s = simplex_lp(Vector{-1}, DenseMatrix(0, 1), Vector{}, DenseMatrix{{1}}, Vector{1}, {});
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(std::fabs((*s.point)[0] - 1) < 1e-12);
    CHECK(std::fabs(*s.objective + 1) < 1e-12);
  }
  {
    // min x s.t. x >= 0, x = -1
    const LpSolution s = simplex_lp(Vector{1}, DenseMatrix{{1}}, Vector{-1}, DenseMatrix(0, 1), Vector{}, {});
    CHECK(s.status == LpStatus::infeasible);
    CHECK_FALSE(s.point.has_value());
  }
  {
    // min -x, x >= 0 unconstrained above
    const LpSolution s = simplex_lp(Vector{-1}, DenseMatrix(0, 1), Vector{}, DenseMatrix(0, 1), Vector{}, {});
    CHECK(s.status == LpStatus::unbounded);
  }
  {
    // Free variable: min |x - 2| style via x free, x = 2.
    LpProblem lp;
    lp.cost = {1.0};
    lp.eq_lhs = DenseMatrix{{1}};
    lp.eq_rhs = {-2.0};
    lp.ub_lhs = DenseMatrix(0, 1);
    lp.nonneg = {false};
    const LpSolution s = simplex_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(std::fabs((*s.point)[0] + 2) < 1e-12);
  }
}

namespace {

// Brute force over basic feasible solutions of {A x = b, x >= 0} in standard
// form: choose m columns, solve, keep nonnegative solutions.
std::optional<double> vertex_enumeration(const Vector& c, const DenseMatrix& a, const Vector& b) {
  const std::size_t m = a.rows(), n = a.cols();
  std::optional<double> best;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) cols.push_back(j);
    const auto xb = lu_solve(a.select_columns(cols), b);
    if (!xb) continue;
    if (std::any_of(xb->begin(), xb->end(), [](double v) { return v < -1e-9; })) continue;
    double obj = 0.0;
    for (std::size_t t = 0; t < m; ++t) obj += c[cols[t]] * (*xb)[t];
    if (!best || obj < *best) best = obj;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace

TEST_CASE("simplex_lp matches vertex enumeration on small random LPs") {
  Rng rng(21);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    // 3 equality rows, 7 nonnegative variables; bounded because sum x <= 5
    // enters as a fourth row with a slack (8 variables in standard form).
    const std::size_t m = 3, n = 7;
    DenseMatrix a(m + 1, n + 1);
    Vector x0(n);
    for (double& e : x0) e = rng.uniform();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.normal();
    for (std::size_t j = 0; j <= n; ++j) a(m, j) = 1.0;
    Vector b(m + 1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) b[i] += a(i, j) * x0[j];
    b[m] = 5.0;
    Vector c(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) c[j] = rng.normal();

    const LpSolution s = simplex_lp(c, a, b, DenseMatrix(0, n + 1), Vector{}, {});
    REQUIRE(s.status == LpStatus::optimal);
    const Vector& x = *s.point;
    for (double v : x) CHECK(v >= -1e-8);
    CHECK(norm_inf(subtract(a * x, b)) <= 1e-8);
    CHECK(std::fabs(dot(c, x) - *s.objective) <= 1e-10);
    const auto brute = vertex_enumeration(c, a, b);
    REQUIRE(brute.has_value());
    CHECK(std::fabs(*brute - *s.objective) <= 1e-8);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("simplex_lp l1 projection onto a null space agrees with vertex enumeration") {
  // min sum t s.t. A beta = 0 restricted to beta_0 = 1, written with
  // beta = u - v: an l1-minimal null vector through a fixed coordinate.
  Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    const DenseMatrix a = random_matrix(2, 4, rng);
    DenseMatrix eq(3, 8);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        eq(i, j) = a(i, j);
        eq(i, 4 + j) = -a(i, j);
      }
    eq(2, 0) = 1.0;
    eq(2, 4) = -1.0;
    const Vector b{0, 0, 1};
    const Vector c(8, 1.0);
    const LpSolution s = simplex_lp(c, eq, b, DenseMatrix(0, 8), Vector{}, {});
    REQUIRE(s.status == LpStatus::optimal);
    const auto brute = vertex_enumeration(c, eq, b);
    REQUIRE(brute.has_value());
    CHECK(std::fabs(*brute - *s.objective) <= 1e-9);
  }
}

TEST_CASE("simplex_lp handles redundant equality rows and degenerate vertices") {
  // Row 2 = row 0 + row 1.
  const DenseMatrix eq{{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 1, 1}};
  const Vector b{1, 1, 2};
  const LpSolution s = simplex_lp(Vector{1, 2, 3, 1}, eq, b, DenseMatrix(0, 4), Vector{}, {});
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(std::fabs(*s.objective - 2) < 1e-12);
  CHECK(norm_inf(subtract(eq * *s.point, b)) < 1e-12);
}

TEST_CASE("spd_solve and Cholesky") {
  CHECK(spd_solve(DenseMatrix::identity(3), Vector{1, 2, 3}) == Vector{1, 2, 3});
  CHECK(std::fabs(spd_solve(DenseMatrix{{4}}, Vector{8})[0] - 2) < 1e-15);
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    const DenseMatrix b = random_matrix(10, 10, rng);
    DenseMatrix s = gram(b);
    for (std::size_t i = 0; i < 10; ++i) s(i, i) += 0.1;
    const Vector rhs = testing::random_vector(10, rng);
    const Vector x = spd_solve(s, rhs);
    CHECK(norm2(subtract(s * x, rhs)) <= 1e-10 * norm2(rhs));
  }
  CHECK_THROWS_AS(Cholesky(DenseMatrix{{1, 2}, {2, 1}}), NotPositiveDefinite);
}

TEST_CASE("lu_solve reports singular systems") {
  CHECK_FALSE(lu_solve(DenseMatrix{{1, 2}, {2, 4}}, Vector{1, 2}).has_value());
  const auto x = lu_solve(DenseMatrix{{0, 1}, {1, 0}}, Vector{3, 4});
  REQUIRE(x.has_value());
  CHECK(*x == Vector{4, 3});
}

TEST_CASE("dense matrix basics") {
  const DenseMatrix a{{1, 2}, {3, 4}};
  CHECK(a.transposed() == DenseMatrix{{1, 3}, {2, 4}});
  CHECK(a * Vector{1, 1} == Vector{3, 7});
  CHECK(transpose_times(a, Vector{1, 1}) == Vector{4, 6});
  CHECK(gram(a) == a.transposed() * a);
  CHECK(std::fabs(inner(a, a) - 30) < 1e-15);
  CHECK(norm1(Vector{1, -2, 3}) == 6);
  CHECK(norm_inf(Vector{1, -5, 3}) == 5);
  CHECK(std::fabs(norm2(Vector{3, 4}) - 5) < 1e-15);
  // Scaled accumulation avoids overflow.
  CHECK(std::isfinite(norm2(Vector{1e200, 1e200})));
  CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>{1, 2, 3}), InvalidInput);
}
