// ripkit command line: generators, RIC/NSP computations, solvers, the
// sharpness constructions, experiment sweeps and the division tableau.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ripkit/constructions.hpp"
#include "ripkit/division.hpp"
#include "ripkit/errors.hpp"
#include "ripkit/harness/experiment.hpp"
#include "ripkit/harness/generators.hpp"
#include "ripkit/harness/io.hpp"
#include "ripkit/harness/oracle.hpp"
#include "ripkit/nsp.hpp"
#include "ripkit/recovery.hpp"
#include "ripkit/rip.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ripkit;

namespace {

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON config file");
  app->add_option("--seed", c.seed, "64-bit seed")->each([&c](const std::string&) { c.seed_set = true; });
  app->add_option("--out", c.out, "output path (stdout when omitted)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

json load_config(const Common& c) {
  if (c.config.empty()) return json::object();
  std::ifstream in(c.config);
  if (!in) throw InvalidInput("cannot open config '" + c.config + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw InvalidInput("cannot open '" + c.out + "' for writing");
  out << text;
}

json matrix_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(Vector(m.row(i).begin(), m.row(i).end()));
  return rows;
}

std::string matrix_text(const Common& c, const DenseMatrix& m) {
  if (c.format == "json") return matrix_json(m).dump(2) + "\n";
  std::ostringstream os;
  write_matrix_csv(os, m);
  return os.str();
}

std::string vector_text(const Common& c, const Vector& v) {
  if (c.format == "json") return json(v).dump(2) + "\n";
  std::ostringstream os;
  write_vector_csv(os, v);
  return os.str();
}

std::string record_text(const Common& c, const json& j) {
  if (c.format == "json") return j.dump(2) + "\n";
  std::ostringstream head, row;
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    if (value.is_structured()) continue;
    head << (first ? "" : ",") << key;
    row << (first ? "" : ",");
    if (value.is_number_float()) row << format_double(value.get<double>());
    else if (value.is_string()) row << value.get<std::string>();
    else row << value.dump();
    first = false;
  }
  return head.str() + "\n" + row.str() + "\n";
}

json witness_json(const RipWitness& w) {
  if (const auto* s = std::get_if<Support>(&w)) return *s;
  return matrix_json(std::get<DenseMatrix>(w));
}

// ---------------------------------------------------------------------------

int cmd_gen(const Common& c, const std::string& kind, std::size_t n, std::size_t p, std::size_t k,
            std::size_t q, std::size_t m, std::size_t r, double sigma, const std::string& amp,
            double coherence) {
  Rng rng(c.seed);
  if (kind == "gaussian_matrix") emit(c, matrix_text(c, gaussian_matrix(n, p, rng)));
  else if (kind == "incoherent_frame") emit(c, matrix_text(c, incoherent_frame(n, p, coherence, rng)));
  else if (kind == "sparse_signal") emit(c, vector_text(c, sparse_signal(p, k, parse_amplitude(amp), rng)));
  else if (kind == "low_rank") emit(c, matrix_text(c, low_rank(m, n, r, rng)));
  else if (kind == "gaussian_noise") emit(c, vector_text(c, gaussian_noise(n, sigma, rng)));
  else if (kind == "gaussian_map") {
    const LinearMap map = gaussian_map(q, m, n, rng);
    if (c.out.empty()) throw InvalidInput("gen gaussian_map: --out is required (a sidecar is written)");
    write_map(c.out, map);
  } else {
    throw InvalidInput("gen: unknown kind '" + kind + "'");
  }
  return 0;
}

int cmd_rip(const Common& c, const std::string& matrix, const std::string& map_path, std::size_t k,
            std::size_t r, std::size_t budget, std::size_t random_supports, std::size_t restarts,
            std::size_t iters) {
  RipEstimate est;
  if (!matrix.empty()) {
    const DenseMatrix a = read_matrix_csv(matrix);
    est = random_supports ? ric_lower_signal_random(a, k, random_supports, c.seed)
                          : ric_exact_signal(a, k, budget);
  } else if (!map_path.empty()) {
    MatrixRipOptions opts;
    opts.restarts = restarts;
    opts.iterations = iters;
    opts.seed = c.seed;
    est = ric_lower_matrix(read_map(map_path), r, opts);
  } else {
    throw InvalidInput("rip: pass --matrix or --map");
  }
  json j = {{"value", est.value},         {"order", est.order},
            {"exact", est.exact},         {"low_ratio", est.low_ratio},
            {"high_ratio", est.high_ratio}};
  if (c.format == "json") {
    j["witness_low"] = witness_json(est.witness_low);
    j["witness_high"] = witness_json(est.witness_high);
  }
  emit(c, record_text(c, j));
  return 0;
}

int cmd_nsp(const Common& c, const std::string& matrix, const std::string& map_path, std::size_t k,
            std::size_t r, std::size_t budget) {
  json j;
  if (!matrix.empty()) {
    const NspCertificate cert = nsp_certify_signal(read_matrix_csv(matrix), k, budget);
    j = {{"order", cert.order}, {"status", to_string(cert.status)}, {"worst_value", cert.worst_value}};
    if (c.format == "json") {
      j["worst_support"] = cert.worst_support;
      j["worst_signs"] = cert.worst_signs;
      if (cert.worst_vector) j["worst_vector"] = *cert.worst_vector;
    }
  } else if (!map_path.empty()) {
    const auto w = nsp_falsify_matrix(read_map(map_path), r, budget, c.seed);
    j = {{"order", r}, {"witness", w.has_value()}, {"ratio", w ? w->ratio : 0.0},
         {"boundary", w && w->boundary}};
    if (w && c.format == "json") j["x"] = matrix_json(w->x);
  } else {
    throw InvalidInput("nsp: pass --matrix or --map");
  }
  emit(c, record_text(c, j));
  return 0;
}

int cmd_solve(const Common& c, const std::string& matrix, const std::string& map_path,
              const std::string& obs, const std::string& constraint, double eta,
              const std::string& method) {
  if (obs.empty()) throw InvalidInput("solve: --observation is required");
  const Vector y = read_vector_csv(obs);
  const Constraint con = parse_constraint(constraint);
  if (!matrix.empty()) {
    SignalInstance inst{read_matrix_csv(matrix), y, std::nullopt, 0.0, eta, con};
    const SolveReport rep = solve_signal(inst, parse_method(method));
    if (!rep.converged) std::cerr << "warning: ADMM did not converge\n";
    emit(c, vector_text(c, rep.solution));
  } else if (!map_path.empty()) {
    MatrixInstance inst{read_map(map_path), y, std::nullopt, 0.0, eta, con};
    const MatrixSolveReport rep = solve_matrix(inst);
    if (!rep.converged) std::cerr << "warning: ADMM did not converge\n";
    emit(c, matrix_text(c, rep.solution));
  } else {
    throw InvalidInput("solve: pass --matrix or --map");
  }
  return 0;
}

int cmd_counterexample(const Common& c, const std::string& kind, std::size_t p, std::size_t k,
                       std::size_t m, std::size_t n, std::size_t r) {
  auto signal_json = [](const SignalKit& kit) {
    return json{{"order", kit.order}, {"claimed_ric", kit.claimed_ric}, {"anchor", kit.anchor},
                {"gamma", kit.gamma}, {"eta", kit.eta}, {"operator", matrix_json(kit.op)}};
  };
  auto matrix_kit_json = [](const MatrixKit& kit) {
    return json{{"order", kit.order}, {"claimed_ric", kit.claimed_ric},
                {"anchor", matrix_json(kit.anchor)}, {"x", matrix_json(kit.x)},
                {"y", matrix_json(kit.y)}, {"q", kit.op.q()}, {"m", kit.op.m()},
                {"n", kit.op.n()}, {"operator", matrix_json(kit.op.rep())}};
  };
  if (kind == "signal" || kind == "gap-signal") {
    const SignalKit kit = kind == "signal" ? sharp_counterexample_signal(p, k) : identifiability_gap_signal(p);
    emit(c, c.format == "json" ? signal_json(kit).dump(2) + "\n" : matrix_text(c, kit.op));
  } else if (kind == "matrix" || kind == "gap-matrix") {
    const MatrixKit kit = kind == "matrix" ? sharp_counterexample_matrix(m, n, r) : identifiability_gap_matrix(m, n);
    if (c.format == "json") emit(c, matrix_kit_json(kit).dump(2) + "\n");
    else if (!c.out.empty()) write_map(c.out, kit.op);
    else emit(c, matrix_text(c, kit.op.rep()));
  } else {
    throw InvalidInput("counterexample: kind must be signal, matrix, gap-signal or gap-matrix");
  }
  return 0;
}

void write_experiment(const Common& c, const json& summary, const std::vector<TrialRecord>& records) {
  if (c.format == "json") {
    json j = summary;
    json rows = json::array();
    for (const auto& r : records)
      rows.push_back({{"trial", r.trial}, {"delta", r.delta}, {"error", r.error}, {"bound", r.bound},
                      {"success", r.success}, {"iters", r.iters}, {"wall_ms", r.wall_ms},
                      {"note", r.note}});
    j["records"] = rows;
    emit(c, j.dump(2) + "\n");
    return;
  }
  std::ostringstream os;
  write_records_csv(os, records);
  emit(c, os.str());
  if (!c.out.empty()) {
    fs::path side(c.out);
    side.replace_extension(".summary.json");
    std::ofstream s(side);
    s << summary.dump(2) << '\n';
  } else {
    std::cerr << summary.dump(2) << '\n';
  }
}

int cmd_bounds(const Common& c, const std::string& mode, double delta, double eps, double eta,
               std::size_t s, double tail) {
  if (!c.config.empty()) {
    json j = load_config(c);
    if (c.seed_set) j["seed"] = c.seed;
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    const ExperimentResult res = run_experiment(cfg);
    write_experiment(c, res.summary, res.records);
    return 0;
  }
  const double b = error_bound(parse_bound_mode(mode), delta, eps, eta, s, tail);
  emit(c, record_text(c, json{{"mode", mode}, {"delta", delta}, {"epsilon", eps}, {"eta", eta},
                               {"s", s}, {"tail", tail}, {"bound", b}}));
  return 0;
}

int cmd_oracle(const Common& c) {
  json j = load_config(c);
  if (c.seed_set) j["seed"] = c.seed;
  j.erase("kind");
  const OracleConfig cfg = OracleConfig::from_json(j);
  const OracleSummary sum = run_oracle_mc(cfg);
  json summary = sum.to_json();
  summary["config"] = cfg.to_json();
  write_experiment(c, summary, sum.records);
  return 0;
}

int cmd_divide(const Common& c, std::vector<double> a, std::size_t r, double slack) {
  if (!c.config.empty()) {
    const json j = load_config(c);
    a = j.at("a").get<std::vector<double>>();
    r = j.value("r", r);
    slack = j.value("slack", slack);
  }
  const DivisionTableau t = divide(a, r, slack);
  json checks = json::object();
  for (double alpha : {1.0, 2.0, 3.0}) checks[format_double(alpha)] = tail_power_check(a, r, slack, alpha);
  if (c.format == "json") {
    emit(c, json{{"r", t.r}, {"m", t.m}, {"slack", t.slack}, {"s", matrix_json(t.s)},
                 {"column_sum_error", t.column_sum_error()}, {"row_cap_excess", t.row_cap_excess()},
                 {"satisfied", t.satisfies_constraints()}, {"tail_power", checks}}
                .dump(2) + "\n");
  } else {
    emit(c, matrix_text(c, t.s));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ripkit: restricted isometry, null space property and sparse/low-rank recovery"};
  app.require_subcommand(1);

  Common common;
  std::string kind = "gaussian_matrix", amplitude = "gaussian";
  std::size_t n = 0, p = 0, k = 1, q = 0, m = 0, r = 1;
  double sigma = 1.0, coherence = 0.25;
  auto* gen = app.add_subcommand("gen", "draw a random instance");
  add_common(gen, common);
  gen->add_option("--kind", kind, "gaussian_matrix|incoherent_frame|sparse_signal|gaussian_map|low_rank|gaussian_noise");
  gen->add_option("--n", n);
  gen->add_option("--p", p);
  gen->add_option("--k", k);
  gen->add_option("--q", q);
  gen->add_option("--m", m);
  gen->add_option("--r", r);
  gen->add_option("--sigma", sigma);
  gen->add_option("--amplitude", amplitude);
  gen->add_option("--coherence", coherence);

  std::string matrix, map_path, observation, constraint = "equality", method = "lp";
  std::size_t budget = kDefaultEnumerationBudget, random_supports = 0, restarts = 32, iters = 200;
  double eta = 0.0;
  auto* rip = app.add_subcommand("rip", "restricted isometry constant");
  add_common(rip, common);
  rip->add_option("--matrix", matrix, "A as CSV");
  rip->add_option("--map", map_path, "map CSV with JSON sidecar");
  rip->add_option("--k", k);
  rip->add_option("--r", r);
  rip->add_option("--budget", budget);
  rip->add_option("--random-supports", random_supports, "sample supports instead of enumerating");
  rip->add_option("--restarts", restarts);
  rip->add_option("--iters", iters);

  std::size_t nsp_budget = 1'000'000;
  auto* nsp = app.add_subcommand("nsp", "null space property certificate (signals) or search (matrices)");
  add_common(nsp, common);
  nsp->add_option("--matrix", matrix);
  nsp->add_option("--map", map_path);
  nsp->add_option("--k", k);
  nsp->add_option("--r", r);
  nsp->add_option("--budget", nsp_budget, "LP budget (signals) or number of starts (matrices)");

  auto* solve = app.add_subcommand("solve", "l1 or nuclear-norm recovery");
  add_common(solve, common);
  solve->add_option("--matrix", matrix);
  solve->add_option("--map", map_path);
  solve->add_option("--observation", observation, "y or b as CSV");
  solve->add_option("--constraint", constraint, "equality|l2_ball|dantzig");
  solve->add_option("--eta", eta);
  solve->add_option("--method", method, "lp|admm (signals)");

  std::string ce_kind = "signal";
  auto* ce = app.add_subcommand("counterexample", "operators on the delta = 1/3 boundary");
  add_common(ce, common);
  ce->add_option("--kind", ce_kind, "signal|matrix|gap-signal|gap-matrix");
  ce->add_option("--p", p);
  ce->add_option("--k", k);
  ce->add_option("--m", m);
  ce->add_option("--n", n);
  ce->add_option("--r", r);

  std::string mode = "l2";
  double delta = 0.0, eps = 0.0, tail = 0.0;
  std::size_t order = 2;
  auto* bounds = app.add_subcommand("bounds", "evaluate an error bound, or run an experiment (--config)");
  add_common(bounds, common);
  bounds->add_option("--mode", mode, "l2|ds");
  bounds->add_option("--delta", delta);
  bounds->add_option("--epsilon", eps);
  bounds->add_option("--eta", eta);
  bounds->add_option("--s", order);
  bounds->add_option("--tail", tail);

  auto* oracle = app.add_subcommand("oracle", "oracle-inequality Monte Carlo (--config)");
  add_common(oracle, common);

  std::vector<double> seq;
  double slack = 0.0;
  auto* div = app.add_subcommand("divide", "division tableau");
  add_common(div, common);
  div->add_option("--a", seq, "nonincreasing sequence")->delimiter(',');
  div->add_option("--r", r);
  div->add_option("--slack", slack);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(common, kind, n, p, k, q, m, r, sigma, amplitude, coherence);
    if (*rip) return cmd_rip(common, matrix, map_path, k, r, budget, random_supports, restarts, iters);
    if (*nsp) return cmd_nsp(common, matrix, map_path, k, r, nsp_budget);
    if (*solve) return cmd_solve(common, matrix, map_path, observation, constraint, eta, method);
    if (*ce) return cmd_counterexample(common, ce_kind, p, k, m, n, r);
    if (*bounds) return cmd_bounds(common, mode, delta, eps, eta, order, tail);
    if (*oracle) return cmd_oracle(common);
    if (*div) return cmd_divide(common, seq, r, slack);
  } catch (const ripkit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
