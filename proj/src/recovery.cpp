#include "ripkit/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "admm.hpp"
#include "ripkit/errors.hpp"

namespace ripkit {

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::equality: return "equality";
    case Constraint::l2_ball: return "l2_ball";
    case Constraint::dantzig: return "dantzig";
  }
  return "?";
}

std::string_view to_string(SolverMethod m) { return m == SolverMethod::lp ? "lp" : "admm"; }

std::string_view to_string(BoundMode m) { return m == BoundMode::l2 ? "l2" : "ds"; }

Constraint parse_constraint(std::string_view name) {
  if (name == "equality") return Constraint::equality;
  if (name == "l2_ball" || name == "l2") return Constraint::l2_ball;
  if (name == "dantzig" || name == "ds") return Constraint::dantzig;
  throw InvalidInput("unknown constraint '" + std::string(name) + "'");
}

SolverMethod parse_method(std::string_view name) {
  if (name == "lp") return SolverMethod::lp;
  if (name == "admm") return SolverMethod::admm;
  throw InvalidInput("unknown solver method '" + std::string(name) + "'");
}

BoundMode parse_bound_mode(std::string_view name) {
  if (name == "l2") return BoundMode::l2;
  if (name == "ds") return BoundMode::ds;
  throw InvalidInput("unknown bound mode '" + std::string(name) + "'");
}

double soft_threshold(double x, double tau) {
  if (x > tau) return x - tau;
  if (x < -tau) return x + tau;
  return 0.0;
}

Vector soft_threshold(std::span<const double> x, double tau) {
  if (!(tau >= 0.0)) throw InvalidInput("soft_threshold: tau must be >= 0");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = soft_threshold(x[i], tau);
  return out;
}

DenseMatrix singular_value_threshold(const DenseMatrix& x, double tau) {
  if (!(tau >= 0.0)) throw InvalidInput("singular_value_threshold: tau must be >= 0");
  SvdFactors f = svd(x);
  for (double& s : f.singular) s = std::max(0.0, s - tau);
  return f.reconstruct();
}

SparseApprox best_s_term(std::span<const double> v, std::size_t s) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::fabs(v[a]) > std::fabs(v[b]); });
  SparseApprox out{Vector(v.size(), 0.0), 0.0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i < s)
      out.head[order[i]] = v[order[i]];
    else
      out.tail_norm += std::fabs(v[order[i]]);
  }
  return out;
}

LowRankApprox best_s_term(const DenseMatrix& x, std::size_t s) {
  SvdFactors f = svd(x);
  double tail = 0.0;
  for (std::size_t i = s; i < f.singular.size(); ++i) {
    tail += f.singular[i];
    f.singular[i] = 0.0;
  }
  return {f.reconstruct(), tail};
}

namespace {

void validate_common(std::size_t rows, std::size_t obs, double eps, double eta, Constraint c,
                     bool has_truth) {
  if (obs != rows) throw InvalidInput("instance: observation length does not match the operator");
  if (!std::isfinite(eps) || eps < 0.0) throw InvalidInput("instance: noise level must be >= 0");
  if (!std::isfinite(eta) || eta < 0.0) throw InvalidInput("instance: radius must be >= 0");
  if (c == Constraint::equality && eta != 0.0)
    throw InvalidInput("instance: equality constraint requires radius 0");
  if (has_truth && c != Constraint::equality && eta < eps)
    throw InvalidInput("instance: radius is below the noise level");
}

// Distance from c to the range of k.
double range_distance(const DenseMatrix& k, std::span<const double> c) {
  const Vector proj = k * (pseudoinverse(k) * c);
  return norm2(subtract(c, proj));
}

void check_feasible(const DenseMatrix& k, std::span<const double> c, Constraint constraint,
                    double eta) {
  if (constraint == Constraint::dantzig) return;  // least squares is always feasible
  const double dist = range_distance(k, c);
  const double slack = constraint == Constraint::equality
                           ? tol::kLpFeasibility * std::max(1.0, norm2(c))
                           : eta + tol::kLpFeasibility;
  if (dist > slack)
    throw Infeasible("recovery: constraint set is empty (distance to range " +
                     std::to_string(dist) + ")");
}

Vector clamp_box(std::span<const double> x, double eta) {
  Vector out(x.begin(), x.end());
  for (double& e : out) e = std::clamp(e, -eta, eta);
  return out;
}

Vector radial_shrink(std::span<const double> x, double eta) {
  const double nrm = norm2(x);
  if (nrm <= eta) return Vector(x.begin(), x.end());
  return scaled(x, eta / nrm);
}

SolveReport solve_signal_lp(const SignalInstance& inst) {
  const DenseMatrix& a = inst.op;
  const std::size_t n = a.rows();
  const std::size_t p = a.cols();
  LpProblem lp;
  lp.cost.assign(2 * p, 1.0);
  if (inst.constraint == Constraint::equality) {
    lp.eq_lhs = DenseMatrix(n, 2 * p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        lp.eq_lhs(i, j) = a(i, j);
        lp.eq_lhs(i, p + j) = -a(i, j);
      }
    lp.eq_rhs = inst.observation;
    lp.ub_lhs = DenseMatrix(0, 2 * p);
  } else if (inst.constraint == Constraint::dantzig) {
    const DenseMatrix g = gram(a);
    const Vector aty = transpose_times(a, inst.observation);
    lp.eq_lhs = DenseMatrix(0, 2 * p);
    lp.ub_lhs = DenseMatrix(2 * p, 2 * p);
    lp.ub_rhs.resize(2 * p);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        lp.ub_lhs(i, j) = g(i, j);
        lp.ub_lhs(i, p + j) = -g(i, j);
        lp.ub_lhs(p + i, j) = -g(i, j);
        lp.ub_lhs(p + i, p + j) = g(i, j);
      }
      lp.ub_rhs[i] = inst.radius + aty[i];
      lp.ub_rhs[p + i] = inst.radius - aty[i];
    }
  } else {
    throw InvalidInput("solve_signal: the lp method handles equality and dantzig only");
  }

  const LpSolution sol = simplex_lp(lp);
  if (sol.status == LpStatus::infeasible) throw Infeasible("solve_signal: constraint set is empty");
  if (sol.status != LpStatus::optimal) throw Error("solve_signal: LP reported unbounded");
  const Vector& uv = *sol.point;
  SolveReport out;
  out.solution.resize(p);
  for (std::size_t j = 0; j < p; ++j) out.solution[j] = uv[j] - uv[p + j];
  out.objective = norm1(out.solution);
  out.converged = true;
  return out;
}

}  // namespace

void SignalInstance::validate() const {
  require_finite(op, "signal instance operator");
  require_finite(observation, "signal instance observation");
  if (truth) {
    if (truth->size() != op.cols()) throw InvalidInput("instance: truth length mismatch");
    require_finite(*truth, "signal instance truth");
  }
  validate_common(op.rows(), observation.size(), noise_level, radius, constraint, truth.has_value());
}

void MatrixInstance::validate() const {
  require_finite(op.rep(), "matrix instance operator");
  require_finite(observation, "matrix instance observation");
  if (truth) {
    if (truth->rows() != op.m() || truth->cols() != op.n())
      throw InvalidInput("instance: truth shape mismatch");
    require_finite(*truth, "matrix instance truth");
  }
  validate_common(op.q(), observation.size(), noise_level, radius, constraint, truth.has_value());
}

SolveReport solve_signal(const SignalInstance& inst, SolverMethod method,
                         const AdmmOptions& options) {
  inst.validate();
  if (method == SolverMethod::lp) return solve_signal_lp(inst);

  detail::AdmmProblem pb;
  pb.prox = [](std::span<const double> v, double tau) { return soft_threshold(v, tau); };
  const double eta = inst.radius;
  switch (inst.constraint) {
    case Constraint::equality:
      pb.k = inst.op;
      pb.c = inst.observation;
      break;
    case Constraint::l2_ball:
      pb.k = inst.op;
      pb.c = inst.observation;
      pb.equality = false;
      pb.project = [eta](std::span<const double> w) { return radial_shrink(w, eta); };
      break;
    case Constraint::dantzig:
      pb.k = gram(inst.op);
      pb.c = transpose_times(inst.op, inst.observation);
      pb.equality = false;
      pb.project = [eta](std::span<const double> w) { return clamp_box(w, eta); };
      break;
  }
  check_feasible(inst.op, inst.observation, inst.constraint, eta);

  detail::AdmmResult res = detail::run_admm(pb, options);
  SolveReport out;
  out.objective = norm1(res.x);
  out.solution = std::move(res.x);
  out.converged = res.converged;
  out.iterations = res.iterations;
  out.primal_residual = res.primal_residual;
  out.dual_residual = res.dual_residual;
  return out;
}

MatrixSolveReport solve_matrix(const MatrixInstance& inst, const AdmmOptions& options) {
  inst.validate();
  const std::size_t m = inst.op.m();
  const std::size_t n = inst.op.n();
  const DenseMatrix& rep = inst.op.rep();
  const double eta = inst.radius;

  detail::AdmmProblem pb;
  pb.prox = [m, n](std::span<const double> v, double tau) {
    return vectorize(singular_value_threshold(unvectorize(v, m, n), tau));
  };
  switch (inst.constraint) {
    case Constraint::equality:
      pb.k = rep;
      pb.c = inst.observation;
      break;
    case Constraint::l2_ball:
      pb.k = rep;
      pb.c = inst.observation;
      pb.equality = false;
      pb.project = [eta](std::span<const double> w) { return radial_shrink(w, eta); };
      break;
    case Constraint::dantzig:
      pb.k = gram(rep);
      pb.c = transpose_times(rep, inst.observation);
      pb.equality = false;
      // Spectral-norm ball: clamp the singular values of M*(residual).
      pb.project = [eta, m, n](std::span<const double> w) {
        SvdFactors f = svd(unvectorize(w, m, n));
        for (double& s : f.singular) s = std::min(s, eta);
        return vectorize(f.reconstruct());
      };
      break;
  }
  check_feasible(rep, inst.observation, inst.constraint, eta);

  detail::AdmmResult res = detail::run_admm(pb, options);
  MatrixSolveReport out;
  out.solution = unvectorize(res.x, m, n);
  out.objective = nuclear_norm(out.solution);
  out.converged = res.converged;
  out.iterations = res.iterations;
  out.primal_residual = res.primal_residual;
  out.dual_residual = res.dual_residual;
  return out;
}

double error_bound(BoundMode mode, double delta, double epsilon, double eta, std::size_t s,
                   double tail) {
  if (!std::isfinite(delta) || delta < 0.0) throw InvalidInput("error_bound: delta must be >= 0");
  if (delta >= 1.0 / 3.0) throw OutOfRegime("error_bound: delta must be below 1/3");
  if (s < 2) throw InvalidInput("error_bound: order must be >= 2");
  if (!(epsilon >= 0.0) || !(eta >= 0.0) || !(tail >= 0.0))
    throw InvalidInput("error_bound: epsilon, eta and tail must be >= 0");

  const double gap = 1.0 - 3.0 * delta;
  const double noise_coeff = mode == BoundMode::l2 ? std::sqrt(2.0 * (1.0 + delta)) / gap
                                                   : std::sqrt(2.0 * static_cast<double>(s)) / gap;
  const double tail_coeff =
      (2.0 * std::sqrt(2.0) * (2.0 * delta + std::sqrt(gap * delta)) + 2.0 * gap) / gap;
  return noise_coeff * (epsilon + eta) + tail_coeff * tail / std::sqrt(static_cast<double>(s));
}

}  // namespace ripkit
