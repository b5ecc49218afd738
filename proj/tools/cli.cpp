// Copyright 2026 The ksbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ksbell/chsh.hpp"
#include "ksbell/constructions.hpp"
#include "ksbell/observable_dsl.hpp"
#include "ksbell/parity.hpp"
#include "ksbell/protocol.hpp"
#include "ksbell/state.hpp"
#include "ksbell/stats.hpp"

namespace ksbell::cli {

using json = nlohmann::ordered_json;

namespace {

// Bad user input that parsed syntactically (exit code 2).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json indices_1based(const std::vector<std::size_t>& rows) {
  json out = json::array();
  for (std::size_t r : rows) out.push_back(r + 1);
  return out;
}

ContextSystem system_for(std::size_t n) {
  if (n == 2) return mermin_square();
  try {
    return generalized_sets(n);
  } catch (const std::invalid_argument& e) {
    throw InputError(fmt::format("--n must be 2 (square) or odd in 3..13: {}", e.what()));
  }
}

void add_structure_checks(RunReport& report, const ContextSystem& system,
                          std::size_t expected_contexts, std::size_t expected_catalog,
                          const std::vector<int>& expected_signs) {
  const ValidationReport v = validate(system);
  report.add("context count", system.contexts().size() == expected_contexts,
             system.contexts().size(), expected_contexts);
  report.add("distinct observables", system.catalog().size() == expected_catalog,
             system.catalog().size(), expected_catalog);
  const bool twice = std::ranges::all_of(v.occurrences, [](std::size_t c) { return c == 2; });
  report.add("every observable in exactly two contexts", twice, v.occurrences, 2);
  report.add("all observables Hermitian", v.catalog_failures.empty(),
             v.catalog_failures.size(), 0);
  for (std::size_t c = 0; c < v.contexts.size(); ++c) {
    const ContextCheck& cc = v.contexts[c];
    report.add(fmt::format("context {} pairwise commuting", c + 1), cc.commuting, cc.commuting,
               true);
    const json measured = cc.product_sign ? json(cc.product_sign->value()) : json(nullptr);
    const int expected = c < expected_signs.size() ? expected_signs[c] : 0;
    report.add(fmt::format("context {} product sign", c + 1),
               cc.product_sign && cc.product_sign->value() == expected && cc.passed(), measured,
               expected);
  }
}

void add_unsat_checks(RunReport& report, const ContextSystem& system) {
  const ParitySystem ps = build_parity_system(system);
  const SolveResult result = solve(ps);
  const bool unsat = !is_satisfiable(result);
  report.results["parity_result"] = unsat ? "UNSAT" : "SAT";
  report.add("no noncontextual assignment (parity UNSAT)", unsat, unsat ? "UNSAT" : "SAT",
             "UNSAT");
  if (!unsat) return;
  const Certificate& cert = std::get<Certificate>(result);
  report.results["certificate_rows"] = indices_1based(cert.rows);
  report.add("certificate verifies", check_certificate(ps, cert), check_certificate(ps, cert),
             true);
  std::vector<std::size_t> all(ps.rows.size());
  for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
  report.add("certificate uses every context", cert.rows == all, indices_1based(cert.rows),
             indices_1based(all));
  if (ps.variables.size() <= kMaxBruteForceVariables) {
    const bool bf_unsat = !brute_force(ps, std::max(1u, std::thread::hardware_concurrency()));
    report.add("brute force agrees", bf_unsat, bf_unsat ? "UNSAT" : "SAT", "UNSAT");
  }
}

RunReport verify_square() {
  RunReport report{"verify square"};
  const ContextSystem system = mermin_square();
  add_structure_checks(report, system, 6, 9, {1, 1, 1, 1, 1, -1});
  add_unsat_checks(report, system);
  return report;
}

RunReport verify_sets(std::size_t n) {
  RunReport report{"verify sets"};
  report.parameters["n"] = n;
  if (n == 2) throw InputError("use 'verify square' for n = 2");
  const ContextSystem system = system_for(n);
  std::vector<int> signs(n + 2, 1);
  signs[0] = -1;
  add_structure_checks(report, system, n + 2, 3 * n + 1, signs);
  add_unsat_checks(report, system);
  return report;
}

RunReport bks_solve(std::optional<std::size_t> n, const std::string& file) {
  RunReport report{"bks solve"};
  ContextSystem system(1);
  if (n) {
    report.parameters["n"] = *n;
    system = system_for(*n);
  } else {
    report.parameters["file"] = file;
    try {
      system = load_document(file);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  const ParitySystem ps = build_parity_system(system);
  report.results["variables"] = ps.variables.size();
  report.results["rows"] = ps.rows.size();
  const SolveResult result = solve(ps);
  if (const auto* cert = std::get_if<Certificate>(&result)) {
    report.results["result"] = "UNSAT";
    report.results["certificate_rows"] = indices_1based(cert->rows);
    report.add("certificate verifies", check_certificate(ps, *cert), true, true);
  } else {
    const Assignment& a = std::get<Assignment>(result);
    report.results["result"] = "SAT";
    json names = json::array();
    json values = json::array();
    for (std::size_t v = 0; v < ps.variables.size(); ++v) {
      names.push_back(ps.variables[v]);
      values.push_back(a.values[v].value());
    }
    report.results["assignment_observables"] = names;
    report.results["assignment_values"] = values;
    report.add("assignment verifies", check_assignment(ps, a), true, true);
  }
  if (ps.variables.size() <= kMaxBruteForceVariables) {
    const bool sat = brute_force(ps, std::max(1u, std::thread::hardware_concurrency()))
                         .has_value();
    report.add("brute force agrees", sat == is_satisfiable(result), sat ? "SAT" : "UNSAT",
               is_satisfiable(result) ? "SAT" : "UNSAT");
  }
  return report;
}

RunReport ghz(const std::string& grouping) {
  RunReport report{"ghz"};
  report.parameters["grouping"] = grouping;
  const bool tripartite = grouping == "tripartite";

  PauliOperator product(3);
  for (const auto& o : ghz_observables()) product = product * o.observable;
  report.add("O1 O2 O3 O4 = -I", product.is_scalar() && product.phase_exponent() == 2,
             format_pauli(product), "- I");

  const StateVector psi = ghz_state();
  for (std::size_t k = 0; const auto& o : ghz_observables()) {
    ++k;
    const StateVector image = psi.apply(o.observable);
    double residual = 0;  // ||O psi - lambda psi||
    for (std::size_t b = 0; b < psi.dimension(); ++b) {
      residual += std::norm(image[b] - double(o.eigenvalue.value()) * psi[b]);
    }
    report.add(fmt::format("GHZ eigenvalue of O{} ({})", k, format_pauli(o.observable)),
               std::sqrt(residual) < 1e-12, expectation(psi, o.observable),
               o.eigenvalue.value(), 1e-12);
  }

  const ParitySystem ps =
      ghz_contexts(tripartite ? GhzGrouping::kTripartite : GhzGrouping::kBipartite);
  const SolveResult result = solve(ps);
  const char* expected = tripartite ? "UNSAT" : "SAT";
  const char* measured = is_satisfiable(result) ? "SAT" : "UNSAT";
  report.results["result"] = measured;
  json names = json::array();
  for (const auto& v : ps.variables) names.push_back(v);
  report.results["variables"] = names;
  report.add("realist value assignment", std::string(measured) == expected, measured, expected);
  if (const auto* cert = std::get_if<Certificate>(&result)) {
    report.results["certificate_rows"] = indices_1based(cert->rows);
    report.add("certificate verifies", check_certificate(ps, *cert), true, true);
  } else {
    const Assignment& a = std::get<Assignment>(result);
    json values = json::array();
    for (Outcome o : a.values) values.push_back(o.value());
    report.results["assignment_values"] = values;
    report.add("assignment verifies", check_assignment(ps, a), true, true);
  }
  const bool bf_sat = brute_force(ps).has_value();
  report.add("brute force agrees", bf_sat == is_satisfiable(result), bf_sat ? "SAT" : "UNSAT",
             measured);
  return report;
}

RunReport correlate(std::size_t n, std::size_t shots, double noise, double efficiency,
                    const std::string& sides, std::uint64_t seed, unsigned workers) {
  RunReport report{"correlate"};
  report.parameters["n"] = n;
  report.parameters["shots"] = shots;
  report.parameters["noise"] = noise;
  report.parameters["efficiency"] = efficiency;
  report.parameters["noise_sides"] = sides;
  report.seed = seed;
  const ContextSystem system = system_for(n);

  ExperimentConfig config;
  config.shots = shots;
  config.seed = seed;
  config.workers = workers;
  config.noise.flip_probability = noise;
  config.noise.efficiency = efficiency;
  config.noise.sides = sides == "alice"  ? NoiseSides::kAliceOnly
                       : sides == "bob" ? NoiseSides::kBobOnly
                                        : NoiseSides::kBoth;
  try {
    config.noise.check();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const ExperimentSummary s = run_experiment(system, config);

  report.results["conclusive_fraction"] = optional_number(s.conclusive_fraction());
  report.results["equality_rate"] = optional_number(s.equality_rate());
  report.results["equality_rate_alone"] = optional_number(s.equality_rate(BobMode::kAlone));
  report.results["equality_rate_in_context"] =
      optional_number(s.equality_rate(BobMode::kInContext));
  report.results["product_pass_rate"] = optional_number(s.products.rate());
  json per_context = json::array();
  for (const ProductStats& p : s.per_context) per_context.push_back(optional_number(p.rate()));
  report.results["product_pass_rate_per_context"] = per_context;
  const ChiSquareResult chi = chi_square_homogeneity(s.alone.joint, s.in_context.joint);
  report.results["alone_vs_in_context_chi2"] = chi.statistic;
  report.results["alone_vs_in_context_p"] = chi.p_value;

  // Without noise or loss the outcome relations are exact, so they are
  // checked; otherwise only raw statistics are reported.
  if (config.noise.ideal() && shots > 0) {
    report.add("shared-observable equality rate", s.equality_rate() == 1.0,
               optional_number(s.equality_rate()), 1.0);
    report.add("context product constraint on every shot", s.products.rate() == 1.0,
               optional_number(s.products.rate()), 1.0);
    report.add("Bob alone vs in context indistinguishable (chi-square p)",
               chi.p_value > 1e-3, chi.p_value, "> 0.001");
  }
  return report;
}

RunReport chsh(std::size_t n, std::uint64_t seed) {
  RunReport report{"chsh"};
  report.parameters["n"] = n;
  report.seed = seed;
  if (n == 0) throw InputError("--n must be at least 1");
  const MeasurementVectors v = optimal_vectors();
  const ChshReport gap = gap_report(n, v);
  const double target = std::pow(2.0 * std::numbers::sqrt2, static_cast<double>(n));
  report.results["quantum_value"] = gap.quantum_value;
  report.results["lhv_bound"] = gap.lhv_bound;
  report.results["ratio"] = gap.ratio;
  report.results["violates_lhv"] = gap.violates_lhv();

  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  report.add("quantum value (factorized) = (2 sqrt 2)^n", rel(gap.quantum_value, target) < 1e-9,
             gap.quantum_value, target, 1e-9);
  if (n <= kMaxDenseChshPairs) {
    const double dense = quantum_value(n, v, ChshPath::kDense);
    report.results["quantum_value_dense"] = dense;
    report.add("quantum value (dense) matches factorized",
               rel(dense, gap.quantum_value) < 1e-9, dense, gap.quantum_value, 1e-9);
  }
  const double lhv = std::pow(2.0, static_cast<double>(n));
  report.add("local realist bound = 2^n", gap.lhv_bound == lhv, gap.lhv_bound, lhv);
  const double ratio = std::pow(std::numbers::sqrt2, static_cast<double>(n));
  report.add("ratio = (sqrt 2)^n", rel(gap.ratio, ratio) < 1e-9, gap.ratio, ratio, 1e-9);

  // Random settings never beat the optimum.
  double worst = -1e300;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    CounterRng rng(seed, k);
    auto unit = [&rng] {
      const double z = 2 * rng.uniform() - 1;
      const double phi = 2 * std::numbers::pi * rng.uniform();
      const double r = std::sqrt(std::max(0.0, 1 - z * z));
      Eigen::Vector3d u(r * std::cos(phi), r * std::sin(phi), z);
      return Eigen::Vector3d(u.normalized());
    };
    const MeasurementVectors random{unit(), unit(), unit(), unit()};
    worst = std::max(worst, std::abs(quantum_value(1, random)));
  }
  report.results["random_settings_max_pair_value"] = worst;
  report.add("1000 random settings stay <= 2 sqrt 2", worst <= 2 * std::numbers::sqrt2 + 1e-9,
             worst, 2 * std::numbers::sqrt2, 1e-9);
  return report;
}

RunReport eigencheck(std::size_t n) {
  RunReport report{"eigencheck"};
  report.parameters["n"] = n;
  const ContextSystem system = system_for(n);
  double worst = 0;
  for (const CatalogEntry& e : system.catalog()) {
    const double r = eigenrelation_residual(n, e.observable);
    worst = std::max(worst, r);
    report.add(fmt::format("O_A O_B psi = psi for {}", format_pauli(e.observable)), r < 1e-12,
               r, 0.0, 1e-12);
  }
  report.results["observables"] = system.catalog().size();
  report.results["max_residual"] = worst;
  return report;
}

std::string render_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

bool RunReport::passed() const {
  return std::ranges::all_of(checks, [](const Check& c) { return c.passed; });
}

void RunReport::add(std::string name, bool passed, json measured, json expected,
                    std::optional<double> tolerance) {
  checks.push_back({std::move(name), passed, std::move(measured), std::move(expected), tolerance});
}

std::string render_json(const RunReport& report, bool with_timing) {
  json out;
  out["command"] = report.command;
  for (const auto& [k, v] : report.parameters.items()) out[k] = v;
  out["seed"] = report.seed ? json(*report.seed) : json(nullptr);
  for (const auto& [k, v] : report.results.items()) out[k] = v;
  out["passed"] = report.passed();
  json checks = json::array();
  for (const Check& c : report.checks) {
    json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["measured"] = c.measured;
    entry["expected"] = c.expected;
    entry["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
    checks.push_back(std::move(entry));
  }
  out["checks"] = std::move(checks);
  if (with_timing) out["wall_time_ms"] = report.wall_time_ms;
  return out.dump(2) + "\n";
}

std::string render_text(const RunReport& report) {
  std::ostringstream os;
  os << report.command;
  for (const auto& [k, v] : report.parameters.items()) os << ' ' << k << '=' << render_value(v);
  if (report.seed) os << " seed=" << *report.seed;
  os << '\n';
  for (const auto& [k, v] : report.results.items()) {
    os << "  " << k << ": " << render_value(v) << '\n';
  }
  std::size_t passed = 0;
  for (const Check& c : report.checks) {
    passed += c.passed;
    os << (c.passed ? "  [PASS] " : "  [FAIL] ") << c.name;
    os << "  measured=" << render_value(c.measured) << " expected=" << render_value(c.expected);
    if (c.tolerance) os << fmt::format(" tol={:g}", *c.tolerance);
    os << '\n';
  }
  os << fmt::format("{} ({}/{} checks passed, {:.1f} ms)\n",
                    report.passed() ? "PASS" : "FAIL", passed, report.checks.size(),
                    report.wall_time_ms);
  return os.str();
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextuality and Bell-nonlocality verification toolkit", "ksbell"};
  app.require_subcommand(1);
  std::string format = "text";
  bool timing = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--timing", timing, "Include wall time in JSON output");
  };

  std::size_t n = 0;
  std::optional<std::size_t> solve_n;
  std::string file;
  std::string grouping;
  std::size_t shots = 0;
  double noise = 0.0;
  double efficiency = 1.0;
  std::string sides = "both";
  std::uint64_t seed = 1;
  unsigned workers = 1;

  auto* verify = app.add_subcommand("verify", "Validate a built-in observable system");
  verify->require_subcommand(1);
  auto* v_square = verify->add_subcommand("square", "The 3x3 two-qubit square");
  add_common(v_square);
  auto* v_sets = verify->add_subcommand("sets", "The n+2 cyclic commuting sets");
  v_sets->add_option("--n", n, "Odd qubit count 3..13")->required();
  add_common(v_sets);

  auto* bks = app.add_subcommand("bks", "Noncontextual value-assignment solver");
  bks->require_subcommand(1);
  auto* b_solve = bks->add_subcommand("solve", "Decide a system by GF(2) elimination");
  auto* opt_n = b_solve->add_option("--n", solve_n, "Built-in system: 2 or odd 3..13");
  auto* opt_file = b_solve->add_option("--file", file, "An .obs file")->check(CLI::ExistingFile);
  opt_n->excludes(opt_file);
  add_common(b_solve);

  auto* g = app.add_subcommand("ghz", "GHZ observables split three ways or two ways");
  g->add_option("--grouping", grouping, "tripartite or bipartite")
      ->required()
      ->check(CLI::IsMember({"tripartite", "bipartite"}));
  add_common(g);

  auto* corr = app.add_subcommand("correlate", "Simulate two-observer rounds");
  corr->add_option("--n", n, "Pairs: 2 (square) or odd 3..13")->required();
  corr->add_option("--shots", shots, "Number of rounds")->required();
  corr->add_option("--noise", noise, "Outcome flip probability");
  corr->add_option("--efficiency", efficiency, "Detection efficiency");
  corr->add_option("--noise-sides", sides, "Which observers are noisy")
      ->check(CLI::IsMember({"both", "alice", "bob"}));
  corr->add_option("--seed", seed, "RNG seed");
  corr->add_option("--workers", workers, "Worker threads (does not change results)")
      ->check(CLI::PositiveNumber);
  add_common(corr);

  auto* ch = app.add_subcommand("chsh", "Amplified CHSH value on n singlets");
  ch->add_option("--n", n, "Number of singlets")->required()->check(CLI::PositiveNumber);
  ch->add_option("--seed", seed, "Seed for the random-settings sweep");
  add_common(ch);

  auto* eig = app.add_subcommand("eigencheck", "Check O_A O_B psi = psi on n Bell pairs");
  eig->add_option("--n", n, "Pairs: 2 (square) or odd 3..13")->required();
  add_common(eig);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  try {
    if (v_square->parsed()) {
      report = verify_square();
    } else if (v_sets->parsed()) {
      report = verify_sets(n);
    } else if (b_solve->parsed()) {
      if (!solve_n && file.empty()) throw InputError("bks solve needs --n or --file");
      report = bks_solve(solve_n, file);
    } else if (g->parsed()) {
      report = ghz(grouping);
    } else if (corr->parsed()) {
      report = correlate(n, shots, noise, efficiency, sides, seed, workers);
    } else if (ch->parsed()) {
      report = chsh(n, seed);
    } else if (eig->parsed()) {
      report = eigencheck(n);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();

  out << (format == "json" ? render_json(report, timing) : render_text(report));
  return report.passed() ? kOk : kVerificationFailed;
}

}  // namespace ksbell::cli
