#pragma once

// ADMM engine shared by the signal and matrix solvers (private header).

#include <functional>
#include <span>

#include "ripkit/numerics.hpp"
#include "ripkit/recovery.hpp"

namespace ripkit::detail {

// minimize  f(x)  s.t.  K x - c in B.
//
// f enters only through its proximal map prox(v, tau) = argmin tau f(x) + |x - v|^2 / 2.
// For B = {0} the x-update is an exact projection onto {K x = c} through a
// pseudoinverse; otherwise the split K x - c = w, w in B is used and the
// x-update solves with a Cholesky factor of I + K^T K (independent of rho).
struct AdmmProblem {
  std::function<Vector(std::span<const double>, double)> prox;
  DenseMatrix k;
  Vector c;
  bool equality = true;
  std::function<Vector(std::span<const double>)> project;  // onto B
};

struct AdmmResult {
  Vector x;
  bool converged = false;
  std::size_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

AdmmResult run_admm(const AdmmProblem& problem, const AdmmOptions& options);

}  // namespace ripkit::detail
