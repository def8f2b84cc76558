#pragma once

// Monte Carlo check of the Gaussian-noise oracle inequalities for the
// Dantzig selector, and the K-functional minimizer used in their proof.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ripkit/harness/experiment.hpp"

namespace ripkit {

struct OracleConfig {
  Domain domain = Domain::signal;
  std::size_t n = 0, p = 0, k = 2;  // signals: A is n x p (n = 0 picks 3p/4)
  std::size_t m = 0, r = 2;         // matrices: X is m x n, map from null_spike_matrix
  double sigma = 0.1;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::optional<double> lambda;
  std::optional<double> gamma_penalty;
  double coherence = 0.25;
  std::size_t spread = 0;
  double signal_scale = 1.0;
  std::size_t max_attempts = 200;
  bool zero_input = true;
  bool timing = false;

  // 4 sigma sqrt((2/3) log p) for signals, 16 sigma sqrt((1/3) log(12) max(m,n)) for matrices.
  double resolved_lambda() const;
  // 2 sigma^2 log p.
  double resolved_gamma() const;

  static OracleConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

struct OracleSummary {
  double delta = 0.0;
  double lambda = 0.0;
  double gamma_penalty = 0.0;
  double violation_rate = 0.0;
  double mean_ratio = 0.0;         // mean of LHS / RHS
  double probability_bound = 0.0;  // 1/sqrt(pi log p); 0 for matrices (constant unknown)
  std::vector<TrialRecord> records;
  // Zero-input runs: trials with |A^T z|_inf <= lambda (|M*(z)| <= lambda),
  // and how many of those returned exactly zero.
  std::size_t zero_eligible = 0;
  std::size_t zero_exact = 0;

  nlohmann::json to_json() const;
};

// Throws OutOfRegime when the operator's delta is not below 1/3 and
// InvalidInput for k or r below 2.
OracleSummary run_oracle_mc(const OracleConfig& config);

struct KFunctional {
  Vector beta_bar;
  double value = 0.0;       // gamma |beta_bar|_0 + |A beta - A beta_bar|^2
  double lambda = 0.0;      // 4 sqrt(gamma / 3)
  double lemma_lhs = 0.0;   // |A^T A (beta_bar - beta)|_inf
  bool lemma_holds = false; // lemma_lhs <= lambda / 2
};

// Brute-force minimizer of gamma |xi|_0 + |A beta - A xi|^2 over supports of
// size <= k_max (least squares on each support). Ties keep the smaller, then
// lexicographically first, support. Throws BudgetExceeded past `budget` fits.
KFunctional k_functional_min(const DenseMatrix& a, std::span<const double> beta,
                             double gamma_penalty, std::size_t k_max,
                             std::size_t budget = 1'000'000);

}  // namespace ripkit
