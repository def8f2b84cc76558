#include "ripkit/errors.hpp"
#include "ripkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ripkit {

namespace {

constexpr std::size_t kMaxPivots = 200000;

enum class ColumnKind { structural, slack, artificial };

// Dense simplex tableau for  min c.x  s.t.  A x = b, x >= 0  with b >= 0.
class Tableau {
 public:
  Tableau(DenseMatrix a, Vector b, std::vector<ColumnKind> kinds, std::vector<std::size_t> basis)
      : t_(a.rows(), a.cols() + 1), kinds_(std::move(kinds)), basis_(std::move(basis)) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) t_(i, j) = a(i, j);
      t_(i, a.cols()) = b[i];
    }
  }

  std::size_t rows() const { return t_.rows(); }
  std::size_t cols() const { return t_.cols() - 1; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  double rhs(std::size_t i) const { return t_(i, cols()); }
  ColumnKind kind(std::size_t j) const { return kinds_[j]; }

  // Runs Bland's-rule simplex for the given cost vector. Columns with
  // `allowed[j] == false` never enter. Returns false on unboundedness.
  bool optimize(const Vector& cost, const std::vector<bool>& allowed) {
    const std::size_t n = cols();
    Vector reduced(cost);
    for (std::size_t i = 0; i < rows(); ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) reduced[j] -= cb * t_(i, j);
    }
    for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (allowed[j] && reduced[j] < -tol::kLpPivot) {
          enter = j;
          break;
        }
      }
      if (enter == n) return true;

      std::size_t leave = rows();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= tol::kLpPivot) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        const double slack = leave == rows() ? 0.0 : 1e-12 * std::max(1.0, best);
        if (leave == rows() || ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (std::abs(ratio - best) <= slack && basis_[i] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter, &reduced);
    }
    throw Error("simplex_lp: pivot limit exceeded");
  }

  void pivot(std::size_t r, std::size_t e, Vector* reduced) {
    const std::size_t width = t_.cols();
    const double p = t_(r, e);
    for (std::size_t j = 0; j < width; ++j) t_(r, j) /= p;
    t_(r, e) = 1.0;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, e);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) t_(i, j) -= f * t_(r, j);
      t_(i, e) = 0.0;
    }
    if (reduced != nullptr) {
      const double f = (*reduced)[e];
      if (f != 0.0) {
        for (std::size_t j = 0; j + 1 < width; ++j) (*reduced)[j] -= f * t_(r, j);
        (*reduced)[e] = 0.0;
      }
    }
    basis_[r] = e;
  }

  // Pivots artificial variables out of the basis where possible and deletes
  // the rows that are linear combinations of the others.
  std::vector<std::size_t> drive_out_artificials() {
    std::vector<std::size_t> kept;
    std::vector<bool> keep(rows(), true);
    for (std::size_t i = 0; i < rows(); ++i) {
      if (kinds_[basis_[i]] != ColumnKind::artificial) continue;
      std::size_t best = cols();
      double best_abs = tol::kLpPivot;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (kinds_[j] == ColumnKind::artificial) continue;
        if (std::abs(t_(i, j)) > best_abs) {
          best_abs = std::abs(t_(i, j));
          best = j;
        }
      }
      if (best == cols()) {
        keep[i] = false;
      } else {
        pivot(i, best, nullptr);
      }
    }
    std::vector<double> entries;
    std::vector<std::size_t> basis;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (!keep[i]) continue;
      kept.push_back(i);
      auto r = t_.row(i);
      entries.insert(entries.end(), r.begin(), r.end());
      basis.push_back(basis_[i]);
    }
    t_ = DenseMatrix(kept.size(), t_.cols(), std::move(entries));
    basis_ = std::move(basis);
    return kept;
  }

 private:
  DenseMatrix t_;
  std::vector<ColumnKind> kinds_;
  std::vector<std::size_t> basis_;
};

void check_dimensions(const LpProblem& p) {
  const std::size_t n = p.cost.size();
  if (p.eq_lhs.rows() != p.eq_rhs.size() || (p.eq_lhs.rows() > 0 && p.eq_lhs.cols() != n))
    throw InvalidInput("simplex_lp: equality block has inconsistent dimensions");
  if (p.ub_lhs.rows() != p.ub_rhs.size() || (p.ub_lhs.rows() > 0 && p.ub_lhs.cols() != n))
    throw InvalidInput("simplex_lp: inequality block has inconsistent dimensions");
  if (!p.nonneg.empty() && p.nonneg.size() != n)
    throw InvalidInput("simplex_lp: sign restriction list has wrong length");
  require_finite(p.cost, "simplex_lp cost");
  require_finite(p.eq_lhs, "simplex_lp eq_lhs");
  require_finite(p.eq_rhs, "simplex_lp eq_rhs");
  require_finite(p.ub_lhs, "simplex_lp ub_lhs");
  require_finite(p.ub_rhs, "simplex_lp ub_rhs");
}

}  // namespace

LpSolution simplex_lp(const LpProblem& problem) {
  check_dimensions(problem);
  const std::size_t n = problem.cost.size();
  const std::size_t m_eq = problem.eq_lhs.rows();
  const std::size_t m_ub = problem.ub_lhs.rows();
  const std::size_t m = m_eq + m_ub;
  auto is_nonneg = [&](std::size_t j) { return problem.nonneg.empty() || problem.nonneg[j]; };

  // Structural columns: x_j, or x_j+ and x_j- for free variables.
  std::vector<std::size_t> pos_col(n);
  std::vector<std::size_t> neg_col(n, SIZE_MAX);
  std::size_t n_struct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = n_struct++;
    if (!is_nonneg(j)) neg_col[j] = n_struct++;
  }

  // Rows needing an artificial: every equality row, and inequality rows with
  // negative right-hand side.
  std::vector<bool> needs_art(m, false);
  Vector b(m);
  std::vector<double> sign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double rhs = i < m_eq ? problem.eq_rhs[i] : problem.ub_rhs[i - m_eq];
    if (rhs < 0.0) sign[i] = -1.0;
    b[i] = sign[i] * rhs;
    needs_art[i] = i < m_eq || rhs < 0.0;
  }
  const std::size_t n_art = static_cast<std::size_t>(std::count(needs_art.begin(), needs_art.end(), true));
  const std::size_t total = n_struct + m_ub + n_art;

  DenseMatrix a(m, total);
  std::vector<ColumnKind> kinds(total, ColumnKind::structural);
  std::vector<std::size_t> basis(m);
  std::size_t art = n_struct + m_ub;
  for (std::size_t i = 0; i < m; ++i) {
    auto src = i < m_eq ? problem.eq_lhs.row(i) : problem.ub_lhs.row(i - m_eq);
    for (std::size_t j = 0; j < n; ++j) {
      a(i, pos_col[j]) = sign[i] * src[j];
      if (neg_col[j] != SIZE_MAX) a(i, neg_col[j]) = -sign[i] * src[j];
    }
    if (i >= m_eq) {
      const std::size_t slack = n_struct + (i - m_eq);
      a(i, slack) = sign[i];
      kinds[slack] = ColumnKind::slack;
      if (!needs_art[i]) basis[i] = slack;
    }
    if (needs_art[i]) {
      a(i, art) = 1.0;
      kinds[art] = ColumnKind::artificial;
      basis[i] = art++;
    }
  }

  Tableau tableau(a, b, kinds, basis);

  // Phase I.
  if (n_art > 0) {
    Vector phase1(total, 0.0);
    for (std::size_t j = 0; j < total; ++j)
      if (kinds[j] == ColumnKind::artificial) phase1[j] = 1.0;
    std::vector<bool> allowed(total, true);
    tableau.optimize(phase1, allowed);
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < tableau.rows(); ++i)
      if (kinds[tableau.basis()[i]] == ColumnKind::artificial) infeasibility += tableau.rhs(i);
    if (infeasibility > tol::kLpFeasibility * std::max(1.0, norm_inf(b))) return {};
  }
  const std::vector<std::size_t> kept_rows = tableau.drive_out_artificials();

  // Phase II.
  Vector cost(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = problem.cost[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -problem.cost[j];
  }
  std::vector<bool> allowed(total);
  for (std::size_t j = 0; j < total; ++j) allowed[j] = kinds[j] != ColumnKind::artificial;
  if (!tableau.optimize(cost, allowed)) return {LpStatus::unbounded, std::nullopt, std::nullopt};

  // Read the basic solution, then re-solve B x_B = b from the original data
  // to shed the rounding accumulated by the tableau updates.
  Vector x_std(total, 0.0);
  const std::size_t mb = tableau.rows();
  for (std::size_t i = 0; i < mb; ++i) x_std[tableau.basis()[i]] = std::max(tableau.rhs(i), 0.0);
  if (mb > 0) {
    DenseMatrix bmat(mb, mb);
    Vector brhs(mb);
    for (std::size_t r = 0; r < mb; ++r) {
      brhs[r] = b[kept_rows[r]];
      for (std::size_t c = 0; c < mb; ++c) bmat(r, c) = a(kept_rows[r], tableau.basis()[c]);
    }
    if (auto refined = lu_solve(std::move(bmat), std::move(brhs))) {
      const double lowest = *std::min_element(refined->begin(), refined->end());
      if (lowest >= -1e-9 && all_finite(*refined)) {
        for (std::size_t c = 0; c < mb; ++c) x_std[tableau.basis()[c]] = std::max((*refined)[c], 0.0);
      }
    }
  }

  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = x_std[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) x[j] -= x_std[neg_col[j]];
  }
  const double objective = dot(problem.cost, x);
  return {LpStatus::optimal, std::move(x), objective};
}

LpSolution simplex_lp(std::span<const double> cost, const DenseMatrix& eq_lhs,
                      std::span<const double> eq_rhs, const DenseMatrix& ub_lhs,
                      std::span<const double> ub_rhs, const std::vector<bool>& nonneg) {
  LpProblem p;
  p.cost.assign(cost.begin(), cost.end());
  p.eq_lhs = eq_lhs;
  p.eq_rhs.assign(eq_rhs.begin(), eq_rhs.end());
  p.ub_lhs = ub_lhs;
  p.ub_rhs.assign(ub_rhs.begin(), ub_rhs.end());
  p.nonneg = nonneg;
  return simplex_lp(p);
}

}  // namespace ripkit
