#pragma once

// l1 and nuclear-norm recovery programs
//
//     min ||beta||_1  s.t.  A beta - y in B        (signals)
//     min ||X||_*     s.t.  M(X) - b  in B         (matrices)
//
// for B = {0}, an l2 ball of radius eta, or the Dantzig set
// {z : ||A^T z||_inf <= eta} (resp. ||M*(z)|| <= eta in spectral norm),
// together with the stable-recovery error bounds that hold when the
// restricted isometry constant of order s is below 1/3.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "ripkit/linear_map.hpp"
#include "ripkit/numerics.hpp"

namespace ripkit {

enum class Constraint { equality, l2_ball, dantzig };
enum class SolverMethod { lp, admm };

std::string_view to_string(Constraint c);
std::string_view to_string(SolverMethod m);
Constraint parse_constraint(std::string_view name);
SolverMethod parse_method(std::string_view name);

// ---------------------------------------------------------------------------
// Proximal maps and best approximations.

double soft_threshold(double x, double tau);
Vector soft_threshold(std::span<const double> x, double tau);
// U * soft_threshold(Sigma, tau) * V^T.
DenseMatrix singular_value_threshold(const DenseMatrix& x, double tau);

struct SparseApprox {
  Vector head;        // the s largest-magnitude entries, zeros elsewhere
  double tail_norm;   // ||v - head||_1
};

struct LowRankApprox {
  DenseMatrix head;   // sum of the s leading singular triplets
  double tail_norm;   // nuclear norm of x - head
};

// Ties in magnitude are broken by the lowest index.
SparseApprox best_s_term(std::span<const double> v, std::size_t s);
LowRankApprox best_s_term(const DenseMatrix& x, std::size_t s);

// ---------------------------------------------------------------------------
// Problem instances.

struct SignalInstance {
  DenseMatrix op;
  Vector observation;
  std::optional<Vector> truth;
  double noise_level = 0.0;  // epsilon
  double radius = 0.0;       // eta
  Constraint constraint = Constraint::equality;

  // Throws InvalidInput on shape errors, equality with eta != 0, or
  // (when truth is supplied) eta < epsilon.
  void validate() const;
};

struct MatrixInstance {
  LinearMap op;
  Vector observation;
  std::optional<DenseMatrix> truth;
  double noise_level = 0.0;
  double radius = 0.0;
  Constraint constraint = Constraint::equality;

  void validate() const;
};

struct AdmmOptions {
  double tolerance = 1e-8;          // on both primal and dual residuals
  std::size_t max_iterations = 100000;
  double rho = 1.0;
  double balance_ratio = 10.0;      // rescale rho when residuals differ by this
  std::size_t balance_every = 10;
  std::size_t balance_until = 2000;  // rho stays fixed after this iteration
};

struct SolveReport {
  Vector solution;
  double objective = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

struct MatrixSolveReport {
  DenseMatrix solution;
  double objective = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

// LP mode accepts equality and dantzig constraints; ADMM accepts all three.
// Throws Infeasible when the constraint set is empty.
SolveReport solve_signal(const SignalInstance& inst, SolverMethod method,
                         const AdmmOptions& options = {});

// Nuclear-norm minimization by ADMM with singular value thresholding.
MatrixSolveReport solve_matrix(const MatrixInstance& inst, const AdmmOptions& options = {});

// ---------------------------------------------------------------------------
// Error bounds.

enum class BoundMode { l2, ds };

std::string_view to_string(BoundMode m);
BoundMode parse_bound_mode(std::string_view name);

// Stable-recovery bound for delta in [0, 1/3):
//   l2: sqrt(2(1+d))/(1-3d) (eps+eta) + C(d) tail / sqrt(s)
//   ds: sqrt(2s)/(1-3d)     (eps+eta) + C(d) tail / sqrt(s)
// with C(d) = [2 sqrt2 (2d + sqrt((1-3d)d)) + 2(1-3d)] / (1-3d).
// `tail` is ||beta_{-max(s)}||_1 or ||X_{-max(s)}||_*.
// Throws OutOfRegime when delta >= 1/3.
double error_bound(BoundMode mode, double delta, double epsilon, double eta, std::size_t s,
                   double tail);

}  // namespace ripkit
