#include "ripkit/nsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ripkit/errors.hpp"
#include "ripkit/harness/rng.hpp"
#include "ripkit/parallel.hpp"
#include "ripkit/recovery.hpp"
#include "ripkit/rip.hpp"

namespace ripkit {

std::string_view to_string(NspStatus s) {
  switch (s) {
    case NspStatus::holds: return "holds";
    case NspStatus::boundary: return "boundary";
    case NspStatus::fails: return "fails";
  }
  return "?";
}

NspStatus classify_nsp(double worst_value) {
  if (worst_value <= 0.5 - kNspDeadBand) return NspStatus::holds;
  if (worst_value >= 0.5 + kNspDeadBand) return NspStatus::fails;
  return NspStatus::boundary;
}

namespace {

// Splits the right singular basis of `a` into row-space and null-space columns.
std::pair<DenseMatrix, DenseMatrix> split_right_basis(const DenseMatrix& a) {
  require_finite(a, "null_space_basis");
  const std::size_t p = a.cols();
  if (a.rows() == 0) return {DenseMatrix(p, 0), DenseMatrix::identity(p)};
  const ColumnOrthogonalization co = orthogonalize_columns(a);
  Vector norms(p);
  double top = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    norms[j] = norm2(co.rotated.column(j));
    top = std::max(top, norms[j]);
  }
  std::vector<std::size_t> row_idx, null_idx;
  for (std::size_t j = 0; j < p; ++j)
    (norms[j] > tol::kRank * top ? row_idx : null_idx).push_back(j);
  return {co.v.select_columns(row_idx), co.v.select_columns(null_idx)};
}

}  // namespace

DenseMatrix null_space_basis(const DenseMatrix& a) { return split_right_basis(a).second; }

NspCertificate nsp_certify_signal(const DenseMatrix& a, std::size_t k, std::size_t budget) {
  const std::size_t p = a.cols();
  if (k == 0 || k > p) throw InvalidInput("nsp_certify_signal: order must lie in [1, p]");
  const std::size_t supports = binomial(p, k);
  const std::size_t patterns = k < 63 ? (std::size_t{1} << k) : SIZE_MAX;
  if (supports > budget || patterns > budget / supports)
    throw BudgetExceeded("nsp_certify_signal: C(p,k) * 2^k exceeds the budget of " +
                         std::to_string(budget));

  const auto [row_basis, nulls] = split_right_basis(a);
  NspCertificate cert;
  cert.order = k;
  if (nulls.cols() == 0) {
    cert.status = NspStatus::holds;
    return cert;
  }

  // beta = u - v with u, v >= 0; R^T beta = 0 with R an orthonormal basis of
  // the row space (full row rank, unlike A itself); sum(u + v) <= 1.
  const std::size_t rank = row_basis.cols();
  LpProblem base;
  base.eq_lhs = DenseMatrix(rank, 2 * p);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      base.eq_lhs(i, j) = row_basis(j, i);
      base.eq_lhs(i, p + j) = -row_basis(j, i);
    }
  base.eq_rhs.assign(rank, 0.0);
  base.ub_lhs = DenseMatrix(1, 2 * p, 1.0);
  base.ub_rhs = {1.0};

  // s and -s give the same value (negate the vector), so the first sign is
  // fixed to +1.
  const std::vector<Support> all = enumerate_supports(p, k);
  const std::size_t half = patterns / 2;
  struct Result {
    double value;
    Vector beta;
  };
  std::vector<Result> results(all.size() * half);
  parallel_for(results.size(), [&](std::size_t task) {
    const Support& s = all[task / half];
    const std::size_t mask = task % half;
    LpProblem lp = base;
    lp.cost.assign(2 * p, 0.0);
    for (std::size_t t = 0; t < k; ++t) {
      const double sign = (t > 0 && (mask >> (t - 1)) & 1U) ? -1.0 : 1.0;
      lp.cost[s[t]] = -sign;
      lp.cost[p + s[t]] = sign;
    }
    const LpSolution sol = simplex_lp(lp);
    if (sol.status != LpStatus::optimal) throw Error("nsp_certify_signal: LP not optimal");
    Vector beta(p);
    for (std::size_t j = 0; j < p; ++j) beta[j] = (*sol.point)[j] - (*sol.point)[p + j];
    results[task] = {-*sol.objective, std::move(beta)};
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value > results[best].value) best = i;

  const Support& s = all[best / half];
  const std::size_t mask = best % half;
  cert.worst_support = s;
  cert.worst_signs.resize(k);
  for (std::size_t t = 0; t < k; ++t)
    cert.worst_signs[t] = (t > 0 && (mask >> (t - 1)) & 1U) ? -1 : 1;

  Vector beta = results[best].beta;
  const double l1 = norm1(beta);
  if (l1 > 0.0) {
    for (double& e : beta) e /= l1;
    double value = 0.0;
    for (std::size_t t = 0; t < k; ++t) value += cert.worst_signs[t] * beta[s[t]];
    cert.worst_value = value;
    cert.worst_vector = std::move(beta);
  }
  cert.status = classify_nsp(cert.worst_value);
  return cert;
}

namespace {

double ratio_and_gradient(const DenseMatrix& x, std::size_t r, DenseMatrix* grad) {
  const SvdFactors f = svd(x);
  double total = 0.0, head = 0.0;
  for (std::size_t i = 0; i < f.singular.size(); ++i) {
    total += f.singular[i];
    if (i < r) head += f.singular[i];
  }
  if (total == 0.0) return 0.0;
  if (grad) {
    const double cutoff = tol::kRank * f.singular.front();
    *grad = DenseMatrix(x.rows(), x.cols());
    for (std::size_t i = 0; i < f.singular.size(); ++i) {
      if (f.singular[i] <= cutoff) break;
      const double w = ((i < r ? total : 0.0) - head) / (total * total);
      for (std::size_t a = 0; a < x.rows(); ++a)
        for (std::size_t b = 0; b < x.cols(); ++b)
          (*grad)(a, b) += w * f.left(a, i) * f.right(b, i);
    }
  }
  return head / total;
}

}  // namespace

std::optional<MatrixNspWitness> nsp_falsify_matrix(const LinearMap& map, std::size_t r,
                                                   std::size_t budget, std::uint64_t seed) {
  const std::size_t m = map.m(), n = map.n();
  if (r == 0 || r > std::min(m, n))
    throw InvalidInput("nsp_falsify_matrix: rank must lie in [1, min(m, n)]");
  const DenseMatrix nulls = null_space_basis(map.rep());
  const std::size_t d = nulls.cols();
  if (d == 0 || budget == 0) return std::nullopt;

  auto to_matrix = [&](std::span<const double> t) { return unvectorize(nulls * t, m, n); };
  constexpr std::size_t kIterations = 200;

  struct Best {
    double ratio = -1.0;
    Vector t;
  };
  std::vector<Best> found(budget);
  parallel_for(budget, [&](std::size_t i) {
    Rng rng(Rng::mix_seed(seed, i));
    Vector t(d);
    for (double& e : t) e = rng.normal();
    t = scaled(t, 1.0 / norm2(t));
    DenseMatrix grad;
    double f = ratio_and_gradient(to_matrix(t), r, &grad);
    double step = 0.5;
    found[i] = {f, t};
    for (std::size_t it = 0; it < kIterations && step > 1e-12; ++it) {
      Vector g = transpose_times(nulls, vectorize(grad));
      // The ratio is scale invariant, so the gradient is orthogonal to t up
      // to rounding; the step is taken relative to |t| = 1.
      const double gn = norm2(g);
      if (gn < 1e-15) break;
      Vector cand = add(t, scaled(g, step / gn));
      cand = scaled(cand, 1.0 / norm2(cand));
      DenseMatrix cand_grad;
      const double fc = ratio_and_gradient(to_matrix(cand), r, &cand_grad);
      if (fc > f) {
        t = std::move(cand);
        f = fc;
        grad = std::move(cand_grad);
        step = std::min(1.0, step * 1.5);
      } else {
        step *= 0.5;
      }
    }
    if (f > found[i].ratio) found[i] = {f, t};
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < found.size(); ++i)
    if (found[i].ratio > found[best].ratio) best = i;
  if (found[best].ratio < 0.5 - kNspDeadBand) return std::nullopt;

  MatrixNspWitness w;
  w.x = to_matrix(found[best].t);
  w.x *= 1.0 / nuclear_norm(w.x);
  w.ratio = ratio_and_gradient(w.x, r, nullptr);
  w.boundary = std::fabs(w.ratio - 0.5) < kNspDeadBand;
  return w;
}

std::pair<Vector, Vector> failing_pair_from_witness(const DenseMatrix& a,
                                                    std::span<const double> beta, std::size_t k) {
  if (beta.size() != a.cols()) throw InvalidInput("failing_pair_from_witness: length mismatch");
  if (norm2(a * beta) > 1e-8) throw InvalidWitness("failing_pair_from_witness: A b != 0");
  const SparseApprox split = best_s_term(beta, k);
  const double head = norm1(split.head);
  if (head < split.tail_norm - 1e-12)
    throw InvalidWitness("failing_pair_from_witness: the vector satisfies the property");
  Vector eta = subtract(split.head, beta);  // -(beta - head)
  return {split.head, std::move(eta)};
}

}  // namespace ripkit
