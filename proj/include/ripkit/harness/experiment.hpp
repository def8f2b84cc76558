#pragma once

// Experiment drivers. A config (JSON, snake_case keys) selects one of the
// sweep kinds; each trial draws its instance from Rng(mix_seed(seed, trial)),
// so results do not depend on thread scheduling. With timing disabled (the
// default) wall_ms is written as 0 and the CSV is byte-identical across runs.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ripkit/harness/generators.hpp"
#include "ripkit/nsp.hpp"
#include "ripkit/recovery.hpp"

namespace ripkit {

enum class ExperimentKind { exact_recovery, noisy_bounds, oracle_mc, scaling_lemma, matrix_recovery, nsp_sweep };
enum class Ensemble { gaussian, incoherent, null_spike, counterexample };
enum class Domain { signal, matrix };

std::string_view to_string(ExperimentKind k);
std::string_view to_string(Ensemble e);
std::string_view to_string(Domain d);
ExperimentKind parse_kind(std::string_view name);
Ensemble parse_ensemble(std::string_view name);
Domain parse_domain(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::exact_recovery;
  Domain domain = Domain::signal;
  // Signals: A is n x p, sparsity k. Matrices: X is m x n, rank r, q measurements.
  std::size_t n = 0, p = 0, k = 0;
  std::size_t q = 0, m = 0, r = 0;
  std::size_t trials = 1;
  double noise = 0.0;   // epsilon for bounded noise, sigma for Gaussian noise
  double radius = 0.0;  // eta
  std::uint64_t seed = 0;
  SolverMethod method = SolverMethod::lp;
  BoundMode bound = BoundMode::l2;  // noise model and constraint of noisy_bounds
  Ensemble ensemble = Ensemble::incoherent;
  double coherence = 0.25;   // incoherent ensemble
  std::size_t spread = 0;    // null_spike width; 0 picks the largest allowed
  std::size_t s = 2;         // scaling_lemma multiplier
  double tail = 0.0;         // std. dev. of the off-support part of the truth
  Amplitude amplitude = Amplitude::gaussian;
  bool require_regime = false;    // redraw until delta < 1/3
  std::size_t max_attempts = 200;
  bool certify = true;            // exact_recovery: also certify the NSP
  bool estimate_delta = false;    // matrix_recovery on Gaussian maps
  std::size_t random_signals = 0; // nsp_sweep: extra random sparse signals
  double success_tol = 1e-6;
  bool timing = false;
  std::string output;
  // oracle_mc only.
  std::optional<double> lambda;
  std::optional<double> gamma_penalty;
  double signal_scale = 1.0;
  bool zero_input = true;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  // Throws InvalidInput.
  void validate() const;
};

struct TrialRecord {
  std::size_t trial = 0;
  double delta = 0.0;
  double error = 0.0;
  double bound = 0.0;
  bool success = false;
  std::size_t iters = 0;
  double wall_ms = 0.0;
  // Not written to the CSV.
  bool accepted = true;            // delta < 1/3 (or regime not required)
  std::optional<NspStatus> nsp;
  std::string note;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  nlohmann::json summary;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr const char* kRecordHeader = "trial,delta,error,bound,success,iters,wall_ms";
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);

}  // namespace ripkit
