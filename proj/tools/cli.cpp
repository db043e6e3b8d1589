// Copyright 2026 The polaron2d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polaron2d/cconstant.hpp"
#include "polaron2d/corefuncs.hpp"
#include "polaron2d/errors.hpp"
#include "polaron2d/parallel.hpp"
#include "polaron2d/solvers.hpp"
#include "polaron2d/verify.hpp"

namespace polaron2d::cli {

namespace {

using nlohmann::json;

enum class Format { kHuman, kJson, kCsv };

struct ScanSpec {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
  bool log_spacing = false;

  std::vector<double> values() const {
    std::vector<double> out;
    for (int i = 0; i < steps; ++i) {
      const double f = static_cast<double>(i) / (steps - 1);
      out.push_back(log_spacing ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                : start + f * (stop - start));
    }
    out.front() = start;
    out.back() = stop;
    return out;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "start:stop:steps" with an optional ":log" suffix.
ScanSpec parse_scan(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3 && parts.size() != 4) {
    throw UsageError("--scan expects start:stop:steps[:log], got '" + text + "'");
  }
  ScanSpec s;
  try {
    s.start = std::stod(parts[0]);
    s.stop = std::stod(parts[1]);
    s.steps = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("--scan has a non-numeric field: '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      s.log_spacing = true;
    } else if (parts[3] != "linear") {
      throw UsageError("--scan spacing must be 'linear' or 'log'");
    }
  }
  if (!(s.start < s.stop)) throw UsageError("--scan requires start < stop");
  if (s.steps < 2) throw UsageError("--scan requires at least 2 steps");
  if (s.log_spacing && !(s.start > 0.0)) throw UsageError("--scan log spacing requires start > 0");
  return s;
}

// Shortest representation that parses back to the same double.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

struct Common {
  std::string format = "human";
  unsigned threads = 0;

  Format fmt() const {
    if (format == "json") return Format::kJson;
    if (format == "csv") return Format::kCsv;
    return Format::kHuman;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  sub->add_option("--threads", c.threads, "Worker threads for scans and searches (0 = all cores)");
}

int exit_for(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  if (dynamic_cast<const SupercriticalMass*>(&e) != nullptr) return kSupercritical;
  if (dynamic_cast<const DomainError*>(&e) != nullptr) return kUsage;
  return kNonConvergence;
}

// bound -----------------------------------------------------------------------

struct BoundArgs {
  Common common;
  double mass = 0.0;
  double binding = 0.0;
  std::optional<double> lambda;
  bool optimize = false;
};

int cmd_bound(const BoundArgs& a, std::ostream& out, std::ostream&) {
  const ModelParams params{a.mass, a.binding};
  params.validate();
  if (a.optimize && a.lambda) throw UsageError("--lambda and --optimize-lambda are exclusive");

  const double alpha_m = alpha_of_mass(params.mass_ratio);
  CutoffChoice cutoff = BindingScaleCutoff{};
  if (a.optimize) {
    cutoff = default_cutoff_range(params);
  } else if (a.lambda) {
    cutoff = FixedCutoff{*a.lambda};
  }
  const BoundResult r = compute_bound(params, cutoff, alpha_m);

  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, json{{"mass_ratio", params.mass_ratio},
                          {"binding_energy", params.binding_energy},
                          {"lambda", r.lambda_used},
                          {"mu", r.mu},
                          {"gamma", r.gamma},
                          {"alpha_M", r.alpha_m},
                          {"residual", r.residual},
                          {"iterations", r.iterations},
                          {"optimized", r.optimized}});
      break;
    case Format::kCsv:
      out << "M,E_B,lambda,mu,gamma,alpha_M,residual\n"
          << num(params.mass_ratio) << ',' << num(params.binding_energy) << ','
          << num(r.lambda_used) << ',' << num(r.mu) << ',' << num(r.gamma) << ','
          << num(r.alpha_m) << ',' << num(r.residual) << '\n';
      break;
    case Format::kHuman:
      out << std::setprecision(12) << "lower bound  H_N >= " << r.mu << '\n'
          << "  M = " << params.mass_ratio << ", E_B = " << params.binding_energy << '\n'
          << "  lambda = " << r.lambda_used << (r.optimized ? " (optimized)" : "") << '\n'
          << "  gamma = mu/E_B = " << r.gamma << '\n'
          << "  alpha(M) = " << r.alpha_m << '\n'
          << "  residual = " << r.residual << ", iterations = " << r.iterations << '\n';
      break;
  }
  return kOk;
}

// gamma -----------------------------------------------------------------------

struct GammaArgs {
  Common common;
  std::optional<double> mass;
  std::optional<std::string> scan;
};

struct GammaRow {
  double mass = 0.0;
  double alpha_m = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

int cmd_gamma(const GammaArgs& a, std::ostream& out, std::ostream& err) {
  if (a.mass.has_value() == a.scan.has_value()) {
    throw UsageError("gamma needs exactly one of --mass or --scan");
  }
  const bool scan_mode = a.scan.has_value();
  const std::vector<double> masses = scan_mode ? parse_scan(*a.scan).values()
                                               : std::vector<double>{*a.mass};

  const std::vector<GammaRow> rows =
      parallel_map(masses.size(), a.common.threads, [&](std::size_t i) {
        GammaRow row;
        row.mass = masses[i];
        try {
          if (!(row.mass > 0.0)) throw DomainError("mass ratio must be positive");
          row.alpha_m = alpha_of_mass(row.mass);
          row.gamma = solve_gamma(row.mass, row.alpha_m);
        } catch (const Error& e) {
          row.error = e.what();
          if (!scan_mode) throw;
        }
        return row;
      });

  if (scan_mode) {
    for (const auto& r : rows) {
      if (!r.error.empty()) err << "warning: M = " << r.mass << ": " << r.error << '\n';
    }
    // Observation only: gamma is expected to fall as M grows.
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (const auto& r : rows) {
      if (!r.error.empty()) continue;
      if (!(r.gamma < prev)) decreasing = false;
      prev = r.gamma;
    }
    err << "observation: gamma column is " << (decreasing ? "" : "not ")
        << "strictly decreasing in M\n";
  }

  switch (a.common.fmt()) {
    case Format::kJson: {
      json arr = json::array();
      for (const auto& r : rows) {
        json row{{"M", r.mass}, {"gamma", jnum(r.gamma)}, {"alpha_M", jnum(r.alpha_m)}};
        if (!r.error.empty()) row["error"] = r.error;
        arr.push_back(std::move(row));
      }
      emit_json(out, json{{"rows", std::move(arr)}});
      break;
    }
    case Format::kCsv:
      out << "M,gamma,alpha_M\n";
      for (const auto& r : rows) {
        out << num(r.mass) << ',' << (r.error.empty() ? num(r.gamma) : "") << ','
            << (std::isfinite(r.alpha_m) ? num(r.alpha_m) : "") << '\n';
      }
      break;
    case Format::kHuman:
      out << std::setprecision(12);
      for (const auto& r : rows) {
        out << "M = " << r.mass;
        if (r.error.empty()) {
          out << "  gamma_M = " << r.gamma << "  alpha(M) = " << r.alpha_m << '\n';
        } else {
          out << "  failed: " << r.error << '\n';
        }
      }
      break;
  }
  return kOk;
}

// critical-mass ---------------------------------------------------------------

struct CriticalArgs {
  Common common;
  std::optional<double> tol;
};

int cmd_critical_mass(const CriticalArgs& a, std::ostream& out, std::ostream&) {
  RootFindSpec spec;
  if (a.tol) spec.x_tol = *a.tol;
  const CriticalMass cm = critical_mass(spec);
  switch (a.common.fmt()) {
    case Format::kJson:
      emit_json(out, json{{"m_star", cm.m_star},
                          {"alpha_at_m_star", cm.alpha_at_m_star},
                          {"residual", cm.residual}});
      break;
    case Format::kCsv:
      out << "m_star,alpha_at_m_star,residual\n"
          << num(cm.m_star) << ',' << num(cm.alpha_at_m_star) << ',' << num(cm.residual) << '\n';
      break;
    case Format::kHuman:
      out << std::setprecision(15) << "critical mass ratio M* = " << cm.m_star << '\n'
          << "  alpha(M*) = " << cm.alpha_at_m_star << '\n'
          << "  alpha(M*) - M*/(M*+1) = " << cm.residual << '\n'
          << "  a bound exists for every M > M*\n";
      break;
  }
  return kOk;
}

// c-constant ------------------------------------------------------------------

struct CArgs {
  Common common;
  std::optional<double> mass;
  std::optional<std::string> scan;
  double mu = -1.0;
  double lambda = 1.0;
  std::string grid = "coarse";
};

json estimate_json(const CEstimate& e) {
  json trace = json::array();
  for (const auto& [level, value] : e.refinement_trace) trace.push_back({level, value});
  return json{{"M", e.mass_ratio},
              {"mu", e.mu},
              {"lambda", e.lambda},
              {"C", e.value},
              {"prefactor", e.prefactor},
              {"ratio", e.ratio},
              {"argmax",
               {{"Q_mag", e.argmax.q_mag},
                {"p_par", e.argmax.p_par},
                {"p_perp", e.argmax.p_perp},
                {"tau", e.argmax.tau}}},
              {"refinement_trace", std::move(trace)},
              {"truncation_error_bound", e.truncation_error_bound},
              {"boundary_maximizer", e.boundary_maximizer},
              {"boundary_coordinates", e.boundary_coordinates},
              {"stable", e.stable},
              {"evaluations", e.evaluations}};
}

void warn_estimate(const CEstimate& e, std::ostream& err) {
  if (e.boundary_maximizer) {
    err << "warning: M = " << e.mass_ratio << ": maximizer on the search-box boundary (";
    for (std::size_t i = 0; i < e.boundary_coordinates.size(); ++i) {
      err << (i ? ", " : "") << e.boundary_coordinates[i];
    }
    err << ")\n";
  }
  if (!e.stable) {
    err << "warning: M = " << e.mass_ratio << ": final refinement levels differ by more than "
        << "the stability tolerance\n";
  }
}

int cmd_cconstant(const CArgs& a, std::ostream& out, std::ostream& err) {
  if (a.mass.has_value() == a.scan.has_value()) {
    throw UsageError("c-constant needs exactly one of --mass or --scan");
  }
  CSearchConfig cfg = a.grid == "fine" ? CSearchConfig::fine() : CSearchConfig::coarse();
  cfg.mu = a.mu;
  cfg.lambda = a.lambda;
  cfg.validate();

  std::vector<CScanRow> rows;
  if (a.mass) {
    if (!(*a.mass > 0.0)) throw DomainError("mass ratio must be positive");
    rows.push_back({*a.mass, estimate_c(cfg, ModelParams{*a.mass, -1.0}, a.common.threads), {}});
  } else {
    rows = scan_c_vs_mass(parse_scan(*a.scan).values(), cfg, a.common.threads);
  }

  std::optional<double> empirical;
  for (const auto& r : rows) {
    if (r.estimate) {
      warn_estimate(*r.estimate, err);
      if (!empirical && r.estimate->ratio < 1.0) empirical = r.mass_ratio;
    } else {
      err << "warning: M = " << r.mass_ratio << ": " << r.error << '\n';
    }
  }
  if (a.scan) {
    if (empirical) {
      err << "observation: smallest scanned M with C/prefactor < 1 is " << *empirical << '\n';
    } else {
      err << "observation: no scanned M has C/prefactor < 1\n";
    }
  }

  switch (a.common.fmt()) {
    case Format::kJson:
      if (a.mass) {
        emit_json(out, estimate_json(*rows.front().estimate));
      } else {
        json arr = json::array();
        for (const auto& r : rows) {
          arr.push_back(r.estimate ? estimate_json(*r.estimate)
                                   : json{{"M", r.mass_ratio}, {"error", r.error}});
        }
        emit_json(out, json{{"rows", std::move(arr)},
                            {"empirical_critical_mass", empirical ? json(*empirical) : json(nullptr)}});
      }
      break;
    case Format::kCsv:
      out << "M,mu,lambda,C,prefactor,ratio,Q_mag,p_par,p_perp,tau\n";
      for (const auto& r : rows) {
        if (!r.estimate) {
          out << num(r.mass_ratio) << ',' << num(cfg.mu) << ',' << num(cfg.lambda)
              << ",,,,,,,\n";
          continue;
        }
        const CEstimate& e = *r.estimate;
        out << num(e.mass_ratio) << ',' << num(e.mu) << ',' << num(e.lambda) << ','
            << num(e.value) << ',' << num(e.prefactor) << ',' << num(e.ratio) << ','
            << num(e.argmax.q_mag) << ',' << num(e.argmax.p_par) << ',' << num(e.argmax.p_perp)
            << ',' << num(e.argmax.tau) << '\n';
      }
      break;
    case Format::kHuman:
      out << std::setprecision(10);
      for (const auto& r : rows) {
        if (!r.estimate) {
          out << "M = " << r.mass_ratio << "  failed: " << r.error << '\n';
          continue;
        }
        const CEstimate& e = *r.estimate;
        out << "M = " << e.mass_ratio << "  C = " << e.value << "  pi/(1+1/M) = " << e.prefactor
            << "  ratio = " << e.ratio << '\n'
            << "  at |Q| = " << e.argmax.q_mag << ", p = (" << e.argmax.p_par << ", "
            << e.argmax.p_perp << "), tau = " << e.argmax.tau << '\n'
            << "  (mu, lambda) = (" << e.mu << ", " << e.lambda << "), tail bound "
            << e.truncation_error_bound << ", " << e.evaluations << " evaluations\n";
        for (const auto& [level, value] : e.refinement_trace) {
          out << "    level " << level << ": " << value << '\n';
        }
      }
      break;
  }
  return kOk;
}

// verify ----------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string suite = "all";
  long samples = 1000;
  std::uint64_t seed = 7;
  std::optional<double> tolerance;
};

std::string_view kind_name(CaseKind k) {
  return k == CaseKind::kIdentity ? "identity" : "inequality";
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const std::optional<Suite> suite = parse_suite(a.suite);
  if (!suite) throw UsageError("unknown suite '" + a.suite + "'");
  if (a.samples < 1) throw UsageError("--samples must be >= 1");
  if (a.tolerance && !(*a.tolerance > 0.0)) throw UsageError("--tolerance must be positive");

  VerifyOptions opts;
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.threads = a.common.threads;
  opts.tolerance = a.tolerance;
  const VerificationReport report = run_suite(*suite, opts);

  for (const auto& c : report.cases) {
    if (c.slack_warnings > 0) {
      err << "warning: " << c.name << ": " << c.slack_warnings
          << " samples inside the tolerance slack\n";
    }
    if (!c.passed) err << "failed: " << c.name << " (max violation " << c.max_violation << ")\n";
  }

  switch (a.common.fmt()) {
    case Format::kJson: {
      json cases = json::array();
      for (const auto& c : report.cases) {
        json worst = json::object();
        for (const auto& [k, v] : c.worst_input) worst[k] = jnum(v);
        cases.push_back(json{{"name", c.name},
                             {"kind", kind_name(c.kind)},
                             {"samples_run", c.samples_run},
                             {"max_violation", jnum(c.max_violation)},
                             {"tolerance", c.tolerance},
                             {"passed", c.passed},
                             {"slack_warnings", c.slack_warnings},
                             {"worst_input", std::move(worst)}});
      }
      emit_json(out, json{{"suite", suite_name(*suite)},
                          {"samples", a.samples},
                          {"seed", a.seed},
                          {"suite_passed", report.suite_passed},
                          {"cases", std::move(cases)}});
      break;
    }
    case Format::kCsv:
      out << "name,kind,samples_run,max_violation,tolerance,passed,slack_warnings,worst_input\n";
      for (const auto& c : report.cases) {
        out << c.name << ',' << kind_name(c.kind) << ',' << c.samples_run << ','
            << num(c.max_violation) << ',' << num(c.tolerance) << ',' << (c.passed ? 1 : 0) << ','
            << c.slack_warnings << ',';
        for (std::size_t i = 0; i < c.worst_input.size(); ++i) {
          out << (i ? ";" : "") << c.worst_input[i].first << '=' << num(c.worst_input[i].second);
        }
        out << '\n';
      }
      break;
    case Format::kHuman:
      out << std::setprecision(3);
      for (const auto& c : report.cases) {
        out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(30) << c.name
            << std::right << " n=" << c.samples_run << "  max_violation=" << c.max_violation
            << "  tol=" << c.tolerance << '\n';
      }
      out << (report.suite_passed ? "suite passed\n" : "suite FAILED\n");
      break;
  }
  return report.suite_passed ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds for the two-dimensional Fermi polaron"};
  app.name(args.empty() ? "polaron2d" : args.front());
  app.require_subcommand(1);

  BoundArgs bound;
  auto* sb = app.add_subcommand("bound", "Solve for the energy lower bound mu");
  sb->add_option("--mass", bound.mass, "Mass ratio M > 0")->required();
  sb->add_option("--binding", bound.binding, "Two-body binding energy E_B < 0")->required();
  sb->add_option("--lambda", bound.lambda, "Infrared cutoff (default -E_B)");
  sb->add_flag("--optimize-lambda", bound.optimize,
               "Maximize the bound over lambda in [1e-3, 1e3] |E_B|");
  add_common(sb, bound.common);

  GammaArgs gamma;
  auto* sg = app.add_subcommand("gamma", "Dimensionless ratio gamma_M with H_N >= gamma_M E_B");
  sg->add_option("--mass", gamma.mass, "Mass ratio M > 0");
  sg->add_option("--scan", gamma.scan, "Mass scan start:stop:steps[:log]");
  add_common(sg, gamma.common);

  CriticalArgs critical;
  auto* sm = app.add_subcommand("critical-mass", "Solve alpha(M) = M/(M+1)");
  sm->add_option("--tol", critical.tol, "Absolute tolerance on M*");
  add_common(sm, critical.common);

  CArgs cargs;
  auto* sc = app.add_subcommand("c-constant", "Estimate the weighted Schur-test constant C");
  sc->add_option("--mass", cargs.mass, "Mass ratio M > 0");
  sc->add_option("--scan", cargs.scan, "Mass scan start:stop:steps[:log]");
  sc->add_option("--mu", cargs.mu, "Evaluation energy mu < 0");
  sc->add_option("--lambda", cargs.lambda, "Infrared cutoff lambda > 0");
  sc->add_option("--grid", cargs.grid, "Search grid")->check(CLI::IsMember({"coarse", "fine"}));
  add_common(sc, cargs.common);

  VerifyArgs vargs;
  auto* sv = app.add_subcommand("verify", "Run the identity and inequality checks");
  sv->add_option("--suite", vargs.suite, "all|integrals|inequalities|monotonicity|chain");
  sv->add_option("--samples", vargs.samples, "Random samples per case");
  sv->add_option("--seed", vargs.seed, "Base seed");
  sv->add_option("--tolerance", vargs.tolerance, "Override every case tolerance");
  add_common(sv, vargs.common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (sb->parsed()) return cmd_bound(bound, out, err);
    if (sg->parsed()) return cmd_gamma(gamma, out, err);
    if (sm->parsed()) return cmd_critical_mass(critical, out, err);
    if (sc->parsed()) return cmd_cconstant(cargs, out, err);
    if (sv->parsed()) return cmd_verify(vargs, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    return exit_for(e, err);
  }
  return kUsage;
}

}  // namespace polaron2d::cli
