#pragma once

// Restricted isometry constants.
//
//   delta_k(A): smallest delta with (1-delta)|b|^2 <= |Ab|^2 <= (1+delta)|b|^2
//               for every k-sparse b; computed exactly by support enumeration.
//   delta_r(M): the same over matrices of rank <= r. No exact algorithm is
//               offered; ric_lower_matrix returns a lower bound certified by
//               the rank-r witnesses it found.

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "ripkit/linear_map.hpp"
#include "ripkit/numerics.hpp"

namespace ripkit {

using Support = std::vector<std::size_t>;
using RipWitness = std::variant<Support, DenseMatrix>;

struct RipEstimate {
  double value = 0.0;
  std::size_t order = 0;
  bool exact = false;
  // Minimizer of |Ab|^2/|b|^2 (or |M(X)|^2/|X|_F^2) and its ratio.
  RipWitness witness_low;
  double low_ratio = 1.0;
  // Maximizer and its ratio.
  RipWitness witness_high;
  double high_ratio = 1.0;
};

inline constexpr std::size_t kDefaultEnumerationBudget = 1'000'000;

// C(n, k), saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k);

// Supports of size k in lexicographic order.
std::vector<Support> enumerate_supports(std::size_t p, std::size_t k);

// Extreme eigenvalues of A_S^T A_S.
std::pair<double, double> support_extremes(const DenseMatrix& a, const Support& support);

// Exact delta_k. Throws BudgetExceeded when C(p, k) > budget. Ties keep the
// lexicographically first support.
RipEstimate ric_exact_signal(const DenseMatrix& a, std::size_t k,
                             std::size_t budget = kDefaultEnumerationBudget);

// Lower bound on delta_k from `samples` uniformly random supports.
RipEstimate ric_lower_signal_random(const DenseMatrix& a, std::size_t k, std::size_t samples,
                                    std::uint64_t seed);

struct MatrixRipOptions {
  std::size_t restarts = 32;
  std::size_t iterations = 200;
  std::uint64_t seed = 0;
  // Extra starting points; each is evaluated as-is and then refined.
  std::vector<DenseMatrix> seeds;
};

// Projected gradient ascent/descent of |M(X)|^2 over {rank <= r, |X|_F = 1}
// with step 0.1/|M|^2; the retraction is truncated SVD then renormalization.
// The best high and low witnesses are then walked further until they stall.
RipEstimate ric_lower_matrix(const LinearMap& map, std::size_t r,
                             const MatrixRipOptions& options = {});

// |M(X)|^2 / |X|_F^2.
double rip_ratio(const LinearMap& map, const DenseMatrix& x);

struct ScalingReport {
  double delta_k = 0.0;
  double delta_sk = 0.0;
  double bound = 0.0;  // (2s - 1) delta_k
  bool holds = false;
};

// delta_{sk} <= (2s - 1) delta_k, with both constants computed exactly.
ScalingReport scaling_lemma_report(const DenseMatrix& a, std::size_t k, std::size_t s,
                                   std::size_t budget = kDefaultEnumerationBudget);

}  // namespace ripkit
