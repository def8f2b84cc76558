// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. `acceptance N` runs criterion N alone.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ripkit/constructions.hpp"
#include "ripkit/division.hpp"
#include "ripkit/harness/experiment.hpp"
#include "ripkit/harness/generators.hpp"
#include "ripkit/harness/oracle.hpp"
#include "ripkit/harness/rng.hpp"
#include "ripkit/nsp.hpp"
#include "ripkit/recovery.hpp"
#include "ripkit/rip.hpp"

using namespace ripkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

double sq(const Vector& v) { return dot(v, v); }

// --- 1 ---------------------------------------------------------------------
Outcome sharpness_signal() {
  Outcome o;
  const SignalKit kit = sharp_counterexample_signal(6, 2);
  const double delta = ric_exact_signal(kit.op, 2).value;
  const double collide = norm2(subtract(kit.op * kit.gamma, kit.op * kit.eta));
  const double dist = norm2(subtract(kit.gamma, kit.eta));
  o.require(std::fabs(delta - 1.0 / 3.0) <= 1e-9, "delta_2 = 1/3");
  o.require(collide <= 1e-10, "A gamma = A eta");
  o.require(std::fabs(dist - 2.0) <= 1e-12, "|gamma - eta| = 2");
  o.note("delta_2 = " + fmt("%.17g", delta) + ", |A(gamma-eta)| = " + fmt("%.2e", collide) +
         ", |gamma-eta| = " + fmt("%.17g", dist));
  return o;
}

// --- 2 ---------------------------------------------------------------------
Outcome sharpness_matrix() {
  Outcome o;
  const MatrixKit kit = sharp_counterexample_matrix(4, 4, 2);
  const double collide = norm2(subtract(kit.op.apply(kit.x), kit.op.apply(kit.y)));
  o.require(collide <= 1e-10, "M(X) = M(Y)");

  Rng rng(2002);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    DenseMatrix z(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) z(i, j) = rng.normal();
    const double ip = inner(z, kit.anchor);
    const double f = z.frobenius_norm();
    worst = std::max(worst, std::fabs(sq(kit.op.apply(z)) - 4.0 / 3.0 * (f * f - ip * ip)));
  }
  o.require(worst <= 1e-10, "norm identity on 1000 random Z");

  DenseMatrix w1(4, 4), w2(4, 4);
  w1(0, 0) = w1(1, 1) = 1.0 / std::sqrt(2.0);  // diag(1 x r)/sqrt(r), r = 2
  w2(0, 0) = 1.0 / std::sqrt(2.0);
  w2(1, 1) = -1.0 / std::sqrt(2.0);
  MatrixRipOptions opt;
  opt.seeds = {w1, w2};
  const double lower = ric_lower_matrix(kit.op, 2, opt).value;
  o.require(lower >= 1.0 / 3.0 - 1e-6, "ric_lower_matrix >= 1/3 - 1e-6");
  o.note("|M(X)-M(Y)| = " + fmt("%.2e", collide) + ", identity error " + fmt("%.2e", worst) +
         ", delta_2 lower bound " + fmt("%.12g", lower));
  return o;
}

// --- 3 ---------------------------------------------------------------------
Outcome sufficiency() {
  Outcome o;
  ExperimentConfig c;
  c.kind = ExperimentKind::exact_recovery;
  c.ensemble = Ensemble::incoherent;
  c.n = 18;
  c.p = 24;
  c.k = 2;
  c.trials = 200;
  c.seed = 3003;
  c.require_regime = true;
  c.certify = false;
  c.success_tol = 1e-6;
  const ExperimentResult r = run_experiment(c);
  std::size_t in_regime = 0, recovered = 0;
  double max_delta = 0.0, max_err = 0.0;
  for (const auto& t : r.records) {
    if (!(t.delta < 1.0 / 3.0)) continue;
    ++in_regime;
    recovered += t.success && t.error <= 1e-6;
    max_delta = std::max(max_delta, t.delta);
    max_err = std::max(max_err, t.error);
  }
  o.require(in_regime == 200, "200 instances with delta_2 < 1/3");
  o.require(recovered == in_regime, "100% exact recovery");
  o.note(std::to_string(recovered) + "/" + std::to_string(in_regime) +
         " recovered, max delta_2 " + fmt("%.4f", max_delta) + ", max error " + fmt("%.2e", max_err));
  return o;
}

// --- 4 ---------------------------------------------------------------------
// Basis pursuit recovery depends only on the support and sign pattern of the
// truth, so the +-1 spikes over every (S, sign) make the check exhaustive;
// 200 random-amplitude signals are added on top.
bool bp_recovers(const DenseMatrix& a, const Vector& b) {
  SignalInstance inst{a, a * b, std::nullopt, 0.0, 0.0, Constraint::equality};
  const Vector x = solve_signal(inst, SolverMethod::lp).solution;
  double err = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) err = std::max(err, std::fabs(x[i] - b[i]));
  return err <= 1e-7;
}

bool exhaustive_recovery(const DenseMatrix& a, std::size_t k, Rng& rng) {
  const std::size_t p = a.cols();
  for (const Support& s : enumerate_supports(p, k))
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Vector b(p, 0.0);
      for (std::size_t i = 0; i < k; ++i) b[s[i]] = (mask >> i) & 1 ? -1.0 : 1.0;
      if (!bp_recovers(a, b)) return false;
    }
  for (int t = 0; t < 200; ++t)
    if (!bp_recovers(a, sparse_signal(p, k, Amplitude::gaussian, rng))) return false;
  return true;
}

Outcome nsp_equivalence() {
  Outcome o;
  Rng rng(4004);
  std::size_t agree = 0, compared = 0, boundary = 0, holds = 0;
  for (int t = 0; t < 50; ++t) {
    const DenseMatrix a = gaussian_matrix(9, 12, rng);
    for (std::size_t k : {1u, 2u}) {
      const NspCertificate cert = nsp_certify_signal(a, k);
      if (cert.status == NspStatus::boundary) {
        ++boundary;
        continue;
      }
      ++compared;
      holds += cert.status == NspStatus::holds;
      agree += exhaustive_recovery(a, k, rng) == (cert.status == NspStatus::holds);
    }
  }
  o.require(agree == compared, "certificate matches recovery");
  o.note(std::to_string(agree) + "/" + std::to_string(compared) + " agree (" +
         std::to_string(holds) + " holds, " + std::to_string(compared - holds) + " fails, " +
         std::to_string(boundary) + " boundary excluded)");
  return o;
}

// --- 5 ---------------------------------------------------------------------
Outcome noisy_bounds() {
  Outcome o;
  std::size_t violations = 0, trials = 0, rejected = 0;
  double worst_ratio = 0.0;
  for (Domain d : {Domain::signal, Domain::matrix})
    for (BoundMode mode : {BoundMode::l2, BoundMode::ds}) {
      ExperimentConfig c;
      c.kind = ExperimentKind::noisy_bounds;
      c.domain = d;
      c.bound = mode;
      c.method = SolverMethod::admm;
      c.trials = 100;
      c.noise = 0.05;
      c.radius = 0.05;
      c.tail = 0.01;
      c.require_regime = true;
      c.seed = 5005 + static_cast<std::uint64_t>(2 * (d == Domain::matrix) + (mode == BoundMode::ds));
      if (d == Domain::signal) {
        c.ensemble = Ensemble::incoherent;
        c.n = 18;
        c.p = 24;
        c.k = 2;
      } else {
        c.ensemble = Ensemble::null_spike;
        c.m = c.n = 6;
        c.r = 2;
      }
      const ExperimentResult r = run_experiment(c);
      for (const auto& t : r.records) {
        ++trials;
        if (!t.accepted || !(t.delta < 1.0 / 3.0)) {
          ++rejected;
          continue;
        }
        violations += !(t.error <= t.bound);
        worst_ratio = std::max(worst_ratio, t.error / t.bound);
      }
      o.note(std::string(to_string(d)) + "/" + std::string(to_string(mode)) + " " +
             std::to_string(r.records.size()) + " trials");
    }
  o.require(trials == 400 && rejected == 0, "400 in-regime trials");
  o.require(violations == 0, "zero bound violations");
  o.note(std::to_string(violations) + " violations, worst error/bound " + fmt("%.4f", worst_ratio));
  return o;
}

// --- 6 ---------------------------------------------------------------------
bool tableau_ok(const DivisionTableau& t, const std::vector<double>& a, std::size_t r, double slack) {
  const std::size_t m = a.size();
  double head = slack;
  for (std::size_t w = 0; w < r; ++w) head += a[w];
  for (std::size_t j = 2 * r; j < m; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      if (t.s(i, j - 2 * r) < 0.0) return false;
      col += t.s(i, j - 2 * r);
    }
    if (std::fabs(col - a[j]) > 1e-12) return false;
  }
  for (std::size_t i = 0; i < r; ++i) {
    double load = a[r + i];
    for (std::size_t j = 2 * r; j < m; ++j) load += t.s(i, j - 2 * r);
    if (load > head / static_cast<double>(r) + 1e-12) return false;
  }
  return true;
}

Outcome division() {
  Outcome o;
  Rng rng(6006);
  std::size_t ok = 0, power_ok = 0, power_checked = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t r = 1 + rng.below(5);
    std::vector<double> a(2 * r + rng.below(12));
    for (double& e : a) e = std::pow(rng.uniform(), 1.0 + 3.0 * rng.uniform());
    std::sort(a.begin(), a.end(), std::greater<>());
    const double slack = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) (i < r ? head : tail) += a[i];
    if (head + slack < tail) {
      const double scale = (head + slack) / tail * rng.uniform();
      for (std::size_t i = r; i < a.size(); ++i) a[i] = std::min(a[i] * scale, a[r - 1]);
    }
    ok += tableau_ok(divide(a, r, slack), a, r, slack);
    for (double alpha : {1.0, 2.0, 3.0}) {
      ++power_checked;
      power_ok += tail_power_check(a, r, slack, alpha);
    }
  }
  o.require(ok == 10000, "all tableaux feasible");
  o.require(power_ok == power_checked, "tail power inequality");
  o.note(std::to_string(ok) + "/10000 tableaux, " + std::to_string(power_ok) + "/" +
         std::to_string(power_checked) + " power checks");
  return o;
}

// --- 7 ---------------------------------------------------------------------
Outcome scaling() {
  Outcome o;
  Rng rng(7007);
  std::size_t holds = 0;
  double worst_slack = -1.0;
  for (int t = 0; t < 100; ++t) {
    const ScalingReport r = scaling_lemma_report(gaussian_matrix(20, 24, rng), 2, 2);
    holds += r.delta_sk <= 3.0 * r.delta_k + 1e-9;
    worst_slack = std::max(worst_slack, r.delta_sk - 3.0 * r.delta_k);
  }
  o.require(holds == 100, "delta_4 <= 3 delta_2 on 100 Gaussian matrices");
  const SignalKit kit = sharp_counterexample_signal(8, 2);
  const ScalingReport eq = scaling_lemma_report(kit.op, 2, 2);
  o.require(std::fabs(eq.delta_sk - 1.0) <= 1e-9 && std::fabs(eq.bound - 1.0) <= 1e-9 && eq.holds,
            "equality case delta_4 = 1 = 3 delta_2");
  o.note(std::to_string(holds) + "/100 hold, max delta_4 - 3 delta_2 = " + fmt("%.4f", worst_slack) +
         "; counterexample delta_4 = " + fmt("%.12g", eq.delta_sk) + ", 3 delta_2 = " +
         fmt("%.12g", eq.bound));
  return o;
}

// --- 8 ---------------------------------------------------------------------
Outcome oracle() {
  Outcome o;
  OracleConfig c;
  c.p = 24;
  c.k = 2;
  c.sigma = 0.1;
  c.trials = 200;
  c.seed = 8008;
  const double lambda = 4.0 * 0.1 * std::sqrt(2.0 / 3.0 * std::log(24.0));
  const OracleSummary s = run_oracle_mc(c);
  const double limit = 1.0 / std::sqrt(std::numbers::pi * std::log(24.0));
  o.require(std::fabs(s.lambda - lambda) <= 1e-15, "lambda formula");
  o.require(s.delta < 1.0 / 3.0, "delta_2 < 1/3");
  o.require(s.violation_rate <= limit, "violation rate");
  o.require(s.zero_eligible > 0 && s.zero_exact == s.zero_eligible, "zero input recovered exactly");
  o.note("delta_2 " + fmt("%.4f", s.delta) + ", violation rate " + fmt("%.3f", s.violation_rate) +
         " <= " + fmt("%.3f", limit) + ", mean LHS/RHS " + fmt("%.2e", s.mean_ratio) + ", zero input " +
         std::to_string(s.zero_exact) + "/" + std::to_string(s.zero_eligible));
  return o;
}

// --- 9 ---------------------------------------------------------------------
Outcome solvers() {
  Outcome o;
  Rng rng(9009);
  std::size_t agree = 0, instances = 0, draws = 0;
  double worst = 0.0;
  while (instances < 100 && draws < 1000) {
    ++draws;
    const DenseMatrix a = gaussian_matrix(15, 24, rng);
    if (nsp_certify_signal(a, 2).status != NspStatus::holds) continue;  // unique minimizer
    ++instances;
    const Vector beta = sparse_signal(24, 2, Amplitude::gaussian, rng);
    SignalInstance inst{a, a * beta, std::nullopt, 0.0, 0.0, Constraint::equality};
    const Vector lp = solve_signal(inst, SolverMethod::lp).solution;
    const Vector ad = solve_signal(inst, SolverMethod::admm).solution;
    const double d = norm2(subtract(lp, ad));
    worst = std::max(worst, d);
    agree += d <= 1e-5;
  }
  o.require(instances == 100, "100 certified unique-minimizer instances");
  o.require(agree == instances, "LP and ADMM agree within 1e-5");

  std::size_t recovered = 0;
  double worst_rel = 0.0;
  for (int t = 0; t < 50; ++t) {
    const LinearMap map = gaussian_map(40, 6, 6, rng);
    const DenseMatrix x = low_rank(6, 6, 2, rng);
    MatrixInstance inst{map, map.apply(x), x, 0.0, 0.0, Constraint::equality};
    const double rel = (solve_matrix(inst).solution - x).frobenius_norm() / x.frobenius_norm();
    worst_rel = std::max(worst_rel, rel);
    recovered += rel <= 1e-4;
  }
  o.require(recovered == 50, "matrix recovery on 50 Gaussian maps");
  o.note("signal " + std::to_string(agree) + "/" + std::to_string(instances) + " agree (max l2 gap " +
         fmt("%.2e", worst) + "); matrix " + std::to_string(recovered) + "/50 (max rel error " +
         fmt("%.2e", worst_rel) + ")");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "signal sharpness witness", 1.0, sharpness_signal},
      {2, "matrix sharpness witness", 5.0, sharpness_matrix},
      {3, "sufficiency below 1/3", 120.0, sufficiency},
      {4, "NSP certificate vs basis pursuit", 300.0, nsp_equivalence},
      {5, "noisy error bounds", 600.0, noisy_bounds},
      {6, "division lemma", 10.0, division},
      {7, "scaling lemma", 300.0, scaling},
      {8, "oracle inequality", 300.0, oracle},
      {9, "solver cross-validation", 600.0, solvers},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const Criterion& c : all) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) out.require(false, "runtime budget " + fmt("%.0f s", c.budget_s));
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !out.pass;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
