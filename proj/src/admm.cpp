#include "admm.hpp"

#include <cmath>

#include "ripkit/errors.hpp"

namespace ripkit::detail {

namespace {

struct Balancer {
  const AdmmOptions& options;
  double rho;

  // Returns the factor the scaled duals must be multiplied by.
  double update(std::size_t iteration, double primal, double dual) {
    if (options.balance_every == 0 || iteration > options.balance_until ||
        iteration % options.balance_every != 0)
      return 1.0;
    if (primal > options.balance_ratio * dual) {
      rho *= 2.0;
      return 0.5;
    }
    if (dual > options.balance_ratio * primal) {
      rho *= 0.5;
      return 2.0;
    }
    return 1.0;
  }
};

AdmmResult run_equality(const AdmmProblem& pb, const AdmmOptions& options) {
  const std::size_t d = pb.k.cols();
  const DenseMatrix pinv = pseudoinverse(pb.k);
  auto project = [&](Vector v) {
    const Vector resid = subtract(pb.k * v, pb.c);
    axpy(-1.0, pinv * resid, v);
    return v;
  };

  Vector x(d, 0.0), z(d, 0.0), u(d, 0.0);
  Balancer balance{options, options.rho};
  AdmmResult out;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    x = project(subtract(z, u));
    const Vector z_old = z;
    z = pb.prox(add(x, u), 1.0 / balance.rho);
    const Vector gap = subtract(x, z);
    axpy(1.0, gap, u);

    out.primal_residual = norm2(gap);
    out.dual_residual = balance.rho * norm2(subtract(z, z_old));
    out.iterations = it;
    if (out.primal_residual < options.tolerance && out.dual_residual < options.tolerance) {
      out.converged = true;
      break;
    }
    const double f = balance.update(it, out.primal_residual, out.dual_residual);
    if (f != 1.0)
      for (double& e : u) e *= f;
  }
  out.x = std::move(x);
  return out;
}

AdmmResult run_split(const AdmmProblem& pb, const AdmmOptions& options) {
  const std::size_t d = pb.k.cols();
  const std::size_t rows = pb.k.rows();
  DenseMatrix system = gram(pb.k);
  for (std::size_t i = 0; i < d; ++i) system(i, i) += 1.0;
  const Cholesky chol(system);

  Vector x(d, 0.0), z(d, 0.0), u(d, 0.0);
  Vector w = pb.project(scaled(pb.c, -1.0));
  Vector v(rows, 0.0);
  Balancer balance{options, options.rho};
  AdmmResult out;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    Vector target = add(pb.c, subtract(w, v));
    Vector rhs = transpose_times(pb.k, target);
    axpy(1.0, z, rhs);
    axpy(-1.0, u, rhs);
    x = chol.solve(rhs);

    const Vector z_old = z;
    z = pb.prox(add(x, u), 1.0 / balance.rho);
    const Vector kx_c = subtract(pb.k * x, pb.c);
    const Vector w_old = w;
    w = pb.project(add(kx_c, v));

    const Vector gap_x = subtract(x, z);
    const Vector gap_w = subtract(kx_c, w);
    axpy(1.0, gap_x, u);
    axpy(1.0, gap_w, v);

    Vector dual = subtract(z, z_old);
    axpy(1.0, transpose_times(pb.k, subtract(w, w_old)), dual);
    out.primal_residual = std::hypot(norm2(gap_x), norm2(gap_w));
    out.dual_residual = balance.rho * norm2(dual);
    out.iterations = it;
    if (out.primal_residual < options.tolerance && out.dual_residual < options.tolerance) {
      out.converged = true;
      break;
    }
    const double f = balance.update(it, out.primal_residual, out.dual_residual);
    if (f != 1.0) {
      for (double& e : u) e *= f;
      for (double& e : v) e *= f;
    }
  }
  out.x = std::move(x);
  return out;
}

}  // namespace

AdmmResult run_admm(const AdmmProblem& problem, const AdmmOptions& options) {
  if (!(options.tolerance > 0.0) || !(options.rho > 0.0) || options.max_iterations == 0)
    throw InvalidInput("ADMM: options must be positive");
  return problem.equality ? run_equality(problem, options) : run_split(problem, options);
}

}  // namespace ripkit::detail
