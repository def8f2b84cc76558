#include "ripkit/harness/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <set>

#include "ripkit/constructions.hpp"
#include "ripkit/errors.hpp"
#include "ripkit/harness/generators.hpp"
#include "ripkit/parallel.hpp"
#include "ripkit/rip.hpp"

namespace ripkit {

double OracleConfig::resolved_lambda() const {
  if (lambda) return *lambda;
  if (domain == Domain::signal)
    return 4.0 * sigma * std::sqrt((2.0 / 3.0) * std::log(static_cast<double>(p)));
  return 16.0 * sigma *
         std::sqrt((1.0 / 3.0) * std::log(12.0) * static_cast<double>(std::max(m, n)));
}

double OracleConfig::resolved_gamma() const {
  if (gamma_penalty) return *gamma_penalty;
  return 2.0 * sigma * sigma * std::log(static_cast<double>(p));
}

OracleConfig OracleConfig::from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "kind", "domain", "n", "p", "k", "m", "r", "sigma", "noise", "trials", "seed", "lambda",
      "gamma_penalty", "coherence", "spread", "signal_scale", "max_attempts", "zero_input",
      "timing", "output"};
  if (!j.is_object()) throw InvalidInput("oracle config: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw InvalidInput("oracle config: unknown key '" + key + "'");
  try {
    OracleConfig c;
    if (j.contains("domain")) c.domain = parse_domain(j["domain"].get<std::string>());
    c.n = j.value("n", c.n);
    c.p = j.value("p", c.p);
    c.k = j.value("k", c.k);
    c.m = j.value("m", c.m);
    c.r = j.value("r", c.r);
    for (const char* key : {"noise", "sigma"})
      if (j.contains(key)) c.sigma = j[key].get<double>();
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
    if (j.contains("gamma_penalty")) c.gamma_penalty = j["gamma_penalty"].get<double>();
    c.coherence = j.value("coherence", c.coherence);
    c.spread = j.value("spread", c.spread);
    c.signal_scale = j.value("signal_scale", c.signal_scale);
    c.max_attempts = j.value("max_attempts", c.max_attempts);
    c.zero_input = j.value("zero_input", c.zero_input);
    c.timing = j.value("timing", c.timing);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("oracle config: ") + e.what());
  }
}

nlohmann::json OracleConfig::to_json() const {
  nlohmann::json j = {{"domain", to_string(domain)}, {"n", n}, {"p", p}, {"k", k}, {"m", m},
                      {"r", r}, {"sigma", sigma}, {"trials", trials}, {"seed", seed},
                      {"lambda", resolved_lambda()}, {"coherence", coherence},
                      {"spread", spread}, {"signal_scale", signal_scale},
                      {"max_attempts", max_attempts}, {"zero_input", zero_input},
                      {"timing", timing}};
  if (domain == Domain::signal) j["gamma_penalty"] = resolved_gamma();
  return j;
}

void OracleConfig::validate() const {
  if (trials == 0) throw InvalidInput("oracle config: trials must be >= 1");
  if (!(sigma >= 0.0)) throw InvalidInput("oracle config: sigma must be >= 0");
  if (lambda && !(*lambda >= 0.0)) throw InvalidInput("oracle config: lambda must be >= 0");
  if (domain == Domain::signal) {
    if (p < 2) throw InvalidInput("oracle config: p must be >= 2");
    if (k < 2 || k > p) throw InvalidInput("oracle config: need 2 <= k <= p");
  } else {
    if (m == 0 || n == 0) throw InvalidInput("oracle config: m and n must be positive");
    if (r < 2 || 2 * r > std::min(m, n))
      throw InvalidInput("oracle config: need 2 <= r <= min(m, n)/2");
  }
}

nlohmann::json OracleSummary::to_json() const {
  return {{"delta", delta},
          {"lambda", lambda},
          {"gamma_penalty", gamma_penalty},
          {"violation_rate", violation_rate},
          {"mean_ratio", mean_ratio},
          {"probability_bound", probability_bound},
          {"trials", records.size()},
          {"zero_eligible", zero_eligible},
          {"zero_exact", zero_exact}};
}

namespace {

constexpr double kThird = 1.0 / 3.0;

struct Draw {
  double lhs = 0.0;
  double rhs = 0.0;
  double floor = 0.0;  // solver round-off allowance on lhs
  std::size_t iters = 0;
  bool zero_eligible = false;
  bool zero_exact = false;
};

template <class TrialFn>
void run_mc(const OracleConfig& c, OracleSummary& out, TrialFn&& trial) {
  std::vector<Draw> draws(c.trials);
  std::vector<double> times(c.trials, 0.0);
  parallel_for(c.trials, [&](std::size_t t) {
    Rng rng(Rng::mix_seed(c.seed ^ 0x5eedULL, t));
    const auto start = std::chrono::steady_clock::now();
    draws[t] = trial(rng);
    if (c.timing)
      times[t] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });

  std::size_t violations = 0;
  double ratio_sum = 0.0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const Draw& d = draws[t];
    TrialRecord rec;
    rec.trial = t;
    rec.delta = out.delta;
    rec.error = d.lhs;
    rec.bound = d.rhs;
    rec.success = d.lhs <= d.rhs + d.floor;
    rec.iters = d.iters;
    rec.wall_ms = times[t];
    violations += !rec.success;
    ratio_sum += d.rhs > 0.0 ? d.lhs / d.rhs : (d.lhs > 0.0 ? INFINITY : 0.0);
    out.zero_eligible += d.zero_eligible;
    out.zero_exact += d.zero_eligible && d.zero_exact;
    out.records.push_back(rec);
  }
  out.violation_rate = static_cast<double>(violations) / static_cast<double>(c.trials);
  out.mean_ratio = ratio_sum / static_cast<double>(c.trials);
}

OracleSummary run_signal(const OracleConfig& c) {
  OracleSummary out;
  out.lambda = c.resolved_lambda();
  out.gamma_penalty = c.resolved_gamma();
  const double p = static_cast<double>(c.p);
  out.probability_bound = 1.0 / std::sqrt(std::numbers::pi * std::log(p));
  const std::size_t n = c.n ? c.n : (3 * c.p) / 4;

  // One operator and one truth for the whole run; only the noise varies.
  Rng setup(c.seed);
  DenseMatrix a;
  double delta = 1.0, delta1 = 1.0;
  for (std::size_t attempt = 0; attempt < c.max_attempts && !(delta < kThird && delta1 <= kThird);
       ++attempt) {
    a = incoherent_frame(n, c.p, c.coherence, setup);
    delta = ric_exact_signal(a, c.k).value;
    delta1 = ric_exact_signal(a, 1).value;
  }
  if (!(delta < kThird)) throw OutOfRegime("oracle: no operator with delta_k < 1/3 was found");
  if (delta1 > kThird) throw OutOfRegime("oracle: delta_1 exceeds 1/3");
  out.delta = delta;

  Vector beta = sparse_signal(c.p, c.k, Amplitude::gaussian, setup);
  beta = scaled(beta, c.signal_scale);
  double oracle = 0.0;
  for (double b : beta) oracle += std::min(b * b, c.sigma * c.sigma);
  const double gap = 1.0 - 3.0 * delta;
  const double rhs = 512.0 / (3.0 * gap * gap) * std::log(p) * oracle;

  run_mc(c, out, [&](Rng& rng) {
    Draw d;
    const Vector z = gaussian_noise(n, c.sigma, rng);
    SignalInstance inst{a, add(a * beta, z), std::nullopt, 0.0, out.lambda, Constraint::dantzig};
    const SolveReport sol = solve_signal(inst, SolverMethod::lp);
    const double err = norm2(subtract(sol.solution, beta));
    d.lhs = err * err;
    d.rhs = rhs;
    d.floor = 1e-14 * std::max(1.0, dot(beta, beta));
    if (c.zero_input) {
      d.zero_eligible = norm_inf(transpose_times(a, z)) <= out.lambda;
      SignalInstance zero{a, z, std::nullopt, 0.0, out.lambda, Constraint::dantzig};
      const SolveReport zs = solve_signal(zero, SolverMethod::lp);
      d.zero_exact = norm_inf(zs.solution) == 0.0;
    }
    return d;
  });
  return out;
}

OracleSummary run_matrix(const OracleConfig& c) {
  OracleSummary out;
  out.lambda = c.resolved_lambda();
  out.probability_bound = 0.0;

  Rng setup(c.seed);
  const std::size_t spread = c.spread ? c.spread : std::min(c.m, c.n);
  auto rotation = std::make_pair(random_orthogonal(c.m, setup), random_orthogonal(c.n, setup));
  const auto [map, delta] = null_spike_matrix(c.m, c.n, c.r, spread, rotation);
  if (!(delta < kThird)) throw OutOfRegime("oracle: delta_r of the map is not below 1/3");
  out.delta = delta;

  DenseMatrix x = low_rank(c.m, c.n, c.r, setup);
  x *= c.signal_scale / x.frobenius_norm();
  const double cap = static_cast<double>(std::max(c.m, c.n)) * c.sigma * c.sigma;
  double oracle = 0.0;
  for (double s : svd(x).singular) oracle += std::min(s * s, cap);
  const double gap = 1.0 - 3.0 * delta;
  const double rhs = 4096.0 * std::log(12.0) / (3.0 * gap * gap) * oracle;

  run_mc(c, out, [&](Rng& rng) {
    Draw d;
    const Vector z = gaussian_noise(map.q(), c.sigma, rng);
    MatrixInstance inst{map, add(map.apply(x), z), std::nullopt, 0.0, out.lambda, Constraint::dantzig};
    const MatrixSolveReport sol = solve_matrix(inst);
    const double err = (sol.solution - x).frobenius_norm();
    d.lhs = err * err;
    d.rhs = rhs;
    d.floor = 1e-12 * std::max(1.0, inner(x, x));  // ADMM stops at a 1e-8 residual
    d.iters = sol.iterations;
    if (c.zero_input) {
      d.zero_eligible = spectral_norm(map.adjoint(z)) <= out.lambda;
      MatrixInstance zero{map, z, std::nullopt, 0.0, out.lambda, Constraint::dantzig};
      // ADMM stops at a 1e-8 residual, so "exactly zero" means below that.
      d.zero_exact = solve_matrix(zero).solution.max_abs() <= 1e-8;
    }
    return d;
  });
  return out;
}

}  // namespace

OracleSummary run_oracle_mc(const OracleConfig& config) {
  config.validate();
  return config.domain == Domain::signal ? run_signal(config) : run_matrix(config);
}

KFunctional k_functional_min(const DenseMatrix& a, std::span<const double> beta,
                             double gamma_penalty, std::size_t k_max, std::size_t budget) {
  const std::size_t p = a.cols();
  if (beta.size() != p) throw InvalidInput("k_functional_min: length mismatch");
  if (!(gamma_penalty >= 0.0)) throw InvalidInput("k_functional_min: penalty must be >= 0");
  k_max = std::min(k_max, p);
  std::size_t fits = 0;
  for (std::size_t s = 0; s <= k_max; ++s) {
    const std::size_t c = binomial(p, s);
    if (c > budget - std::min(fits, budget)) throw BudgetExceeded("k_functional_min: too many supports");
    fits += c;
  }

  const Vector target = a * beta;
  KFunctional best;
  best.beta_bar.assign(p, 0.0);
  best.value = dot(target, target);
  for (std::size_t s = 1; s <= k_max; ++s) {
    const std::vector<Support> supports = enumerate_supports(p, s);
    std::vector<std::pair<double, Vector>> fitted(supports.size());
    parallel_for(supports.size(), [&](std::size_t i) {
      const DenseMatrix sub = a.select_columns(supports[i]);
      const DenseMatrix g = gram(sub);
      const Vector rhs = transpose_times(sub, target);
      // Least squares; the pseudoinverse covers rank-deficient column sets.
      std::optional<Vector> coef = lu_solve(g, rhs);
      if (!coef) coef = pseudoinverse(sub) * target;
      const Vector resid = subtract(target, sub * *coef);
      fitted[i] = {gamma_penalty * static_cast<double>(s) + dot(resid, resid), std::move(*coef)};
    });
    for (std::size_t i = 0; i < supports.size(); ++i) {
      if (fitted[i].first < best.value) {
        best.value = fitted[i].first;
        best.beta_bar.assign(p, 0.0);
        for (std::size_t t = 0; t < s; ++t) best.beta_bar[supports[i][t]] = fitted[i].second[t];
      }
    }
  }
  best.lambda = 4.0 * std::sqrt(gamma_penalty / 3.0);
  best.lemma_lhs = norm_inf(transpose_times(a, a * subtract(best.beta_bar, beta)));
  best.lemma_holds = best.lemma_lhs <= best.lambda / 2.0 + 1e-12;
  return best;
}

}  // namespace ripkit
