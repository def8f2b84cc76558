#pragma once

// Null space property.
//
// Signals: every k-sparse vector is the unique l1 minimizer of its
// measurements iff |b_S|_1 < |b_{S^c}|_1 for every nonzero null vector b and
// every |S| = k, i.e. iff
//     max { sum_{i in S} s_i b_i : A b = 0, |b|_1 <= 1 } < 1/2
// over supports S and sign patterns s. Each inner problem is an LP.
//
// Matrices: the analogous condition on |X_max(r)|_* / |X|_* is only
// searched for violations; not finding one proves nothing.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ripkit/linear_map.hpp"
#include "ripkit/numerics.hpp"

namespace ripkit {

enum class NspStatus { holds, boundary, fails };
std::string_view to_string(NspStatus s);

inline constexpr double kNspDeadBand = 1e-9;

NspStatus classify_nsp(double worst_value);

struct NspCertificate {
  std::size_t order = 0;
  NspStatus status = NspStatus::holds;
  double worst_value = 0.0;
  std::vector<std::size_t> worst_support;
  std::vector<int> worst_signs;
  std::optional<Vector> worst_vector;  // l1-normalized; absent for a trivial null space
};

// Orthonormal basis of the null space as columns (p x d).
DenseMatrix null_space_basis(const DenseMatrix& a);

// Throws BudgetExceeded when C(p, k) * 2^k > budget.
NspCertificate nsp_certify_signal(const DenseMatrix& a, std::size_t k,
                                  std::size_t budget = 1'000'000);

struct MatrixNspWitness {
  DenseMatrix x;        // in the null space, |x|_* = 1
  double ratio = 0.0;   // |x_max(r)|_* / |x|_*
  bool boundary = false;
};

// Random multi-start projected gradient ascent of the ratio over the null
// space. `budget` is the number of starts. Returns a witness iff the best
// ratio found is >= 1/2 - 1e-9.
std::optional<MatrixNspWitness> nsp_falsify_matrix(const LinearMap& map, std::size_t r,
                                                   std::size_t budget, std::uint64_t seed);

// Splits a violating null vector into gamma = b_max(k) and eta = -b_{-max(k)}:
// A gamma = A eta, |eta|_1 <= |gamma|_1, so gamma is not the unique l1
// minimizer of its measurements. Throws InvalidWitness when b is not in the
// null space of A or does not violate the property.
std::pair<Vector, Vector> failing_pair_from_witness(const DenseMatrix& a,
                                                    std::span<const double> beta, std::size_t k);

}  // namespace ripkit
