#pragma once

// Dense linear algebra and LP kernels shared by every other module.
//
// Everything here is a pure function of its inputs. Matrices are stored
// row-major; vectors are plain std::vector<double>.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ripkit {

using Vector = std::vector<double>;

namespace tol {
inline constexpr double kEig = 1e-10;
inline constexpr double kOrtho = 1e-12;
inline constexpr double kLpPivot = 1e-9;
inline constexpr double kLpFeasibility = 1e-8;
// Singular values at or below kRank * sigma_max are treated as zero.
inline constexpr double kRank = 1e-10;
}  // namespace tol

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // `entries` is row-major and must hold rows * cols values.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  // rows x cols matrix with `diag` on the leading diagonal.
  static DenseMatrix diagonal(std::size_t rows, std::size_t cols,
                              std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<double>& entries() const noexcept { return entries_; }
  std::span<double> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> values);

  DenseMatrix transposed() const;
  // Columns listed in `indices`, in that order.
  DenseMatrix select_columns(std::span<const std::size_t> indices) const;
  // Principal submatrix on `indices`.
  DenseMatrix principal(std::span<const std::size_t> indices) const;

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double scale);

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator*(double scale, DenseMatrix m);
DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs);
Vector operator*(const DenseMatrix& m, std::span<const double> x);
// m^T * x without forming the transpose.
Vector transpose_times(const DenseMatrix& m, std::span<const double> x);
// m^T * m.
DenseMatrix gram(const DenseMatrix& m);
// Frobenius inner product.
double inner(const DenseMatrix& a, const DenseMatrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm1(std::span<const double> x);
double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
Vector add(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> x, double s);
// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
bool all_finite(std::span<const double> x);

// Throws InvalidInput when any entry is NaN or infinite.
void require_finite(const DenseMatrix& m, const char* what);
void require_finite(std::span<const double> x, const char* what);

// ---------------------------------------------------------------------------
// Eigen / singular value decompositions (cyclic Jacobi).

struct SymEigen {
  Vector values;        // ascending
  DenseMatrix vectors;  // column i pairs with values[i]
};

// Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
SymEigen sym_eig(const DenseMatrix& s);

// Extreme eigenvalues (min, max) of a symmetric matrix.
std::pair<double, double> sym_eig_extremes(const DenseMatrix& s);

struct SvdFactors {
  DenseMatrix left;   // m x min(m,n), orthonormal columns
  Vector singular;    // nonincreasing, nonnegative
  DenseMatrix right;  // n x min(m,n), orthonormal columns

  DenseMatrix reconstruct() const;
};

// Thin SVD by one-sided (Hestenes) Jacobi.
SvdFactors svd(const DenseMatrix& m);

// One-sided Jacobi applied directly to the columns of `m` (any shape). On
// return `rotated = m * v` has mutually orthogonal columns and `v` is the
// full cols x cols orthogonal rotation. Used where the complete right basis
// (including the null directions) is needed.
struct ColumnOrthogonalization {
  DenseMatrix rotated;
  DenseMatrix v;
};
ColumnOrthogonalization orthogonalize_columns(const DenseMatrix& m);

// Moore-Penrose pseudoinverse; singular values <= kRank * sigma_max dropped.
DenseMatrix pseudoinverse(const DenseMatrix& m);

// Spectral norm (largest singular value).
double spectral_norm(const DenseMatrix& m);
// Sum of singular values.
double nuclear_norm(const DenseMatrix& m);

// Orthogonal d x d matrix whose first column is exactly `v` (a unit vector),
// built from a single Householder reflector.
DenseMatrix orthonormal_extend(std::span<const double> v, std::size_t d);

// ---------------------------------------------------------------------------
// Linear programming.

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::optional<Vector> point;
  std::optional<double> objective;
};

struct LpProblem {
  Vector cost;
  DenseMatrix eq_lhs;  // may have zero rows
  Vector eq_rhs;
  DenseMatrix ub_lhs;  // may have zero rows
  Vector ub_rhs;
  // Per-variable sign restriction; empty means every variable is >= 0.
  std::vector<bool> nonneg;
};

// minimize cost.x  s.t.  eq_lhs x = eq_rhs,  ub_lhs x <= ub_rhs,
// x_j >= 0 where nonneg[j]. Two-phase primal simplex on a dense tableau with
// Bland's rule; the final basis is re-solved from the original data.
LpSolution simplex_lp(const LpProblem& problem);

LpSolution simplex_lp(std::span<const double> cost, const DenseMatrix& eq_lhs,
                      std::span<const double> eq_rhs, const DenseMatrix& ub_lhs,
                      std::span<const double> ub_rhs, const std::vector<bool>& nonneg);

// ---------------------------------------------------------------------------
// Linear solves.

class Cholesky {
 public:
  // Throws NotPositiveDefinite when a pivot is not strictly positive.
  explicit Cholesky(const DenseMatrix& spd);
  Vector solve(std::span<const double> rhs) const;
  std::size_t size() const noexcept { return lower_.rows(); }

 private:
  DenseMatrix lower_;
};

Vector spd_solve(const DenseMatrix& spd, std::span<const double> rhs);

// Square solve by Gaussian elimination with partial pivoting. Returns
// std::nullopt when the matrix is numerically singular.
std::optional<Vector> lu_solve(DenseMatrix a, Vector rhs);

}  // namespace ripkit
