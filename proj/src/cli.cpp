#include "tauberlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tauberlab/asymptotics.hpp"
#include "tauberlab/classical.hpp"
#include "tauberlab/error.hpp"
#include "tauberlab/measure.hpp"
#include "tauberlab/report.hpp"
#include "tauberlab/transform.hpp"

namespace tauberlab::cli {
namespace {

constexpr std::string_view kModule = "cli";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Config file: "key = value" lines, '#' comments. Keys are flag names.

std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, kModule, "cannot open config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigParse, kModule,
                  path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::ConfigParse, kModule,
                  path + ":" + std::to_string(line_no) + ": empty key or value");
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

// Splices config entries right after the subcommand so that explicit flags,
// which come later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(ErrorCode::ConfigParse, kModule, "--config needs a path");
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config || rest.empty()) return rest;
  const auto from_file = read_config(*config);
  rest.insert(rest.begin() + 1, from_file.begin(), from_file.end());
  return rest;
}

// ---------------------------------------------------------------------------

struct ProblemOptions {
  std::optional<double> a, b, c;
  double offset = 0.0;
  std::string classical;
  std::optional<double> alpha, B, beta, rate;
  std::string measure_path;
  std::string perturbation;
  double k = 0.0;
};

struct GridOptions {
  double psi_min = 10.0;
  double psi_max = 1000.0;
  std::size_t n = 16;
};

struct OutputOptions {
  std::string report_path;
  std::string csv_path;
  std::string format = "text";
};

struct Problem {
  UnifiedParams params;
  std::optional<ClassicalSpec> spec;
  std::optional<TabulatedMeasure> measure;
};

void add_problem_options(CLI::App* cmd, ProblemOptions& o, bool with_target) {
  cmd->add_option("--a", o.a, "coefficient a of log P(x) ~ a x^b");
  cmd->add_option("--b", o.b, "exponent b");
  cmd->add_option("--c", o.c, "kernel rate c");
  cmd->add_option("--offset", o.offset, "additive constant of the transform");
  cmd->add_option("--classical", o.classical, "classical theorem")
      ->check(CLI::IsMember({"kohlbecker", "debruijn", "kasahara"}));
  cmd->add_option("--alpha", o.alpha, "alpha (Kohlbecker, Kasahara)");
  cmd->add_option("--B", o.B, "B (all classical theorems)");
  cmd->add_option("--beta", o.beta, "beta (de Bruijn)");
  cmd->add_option("--rate", o.rate, "rate A (de Bruijn)");
  cmd->add_option("--measure", o.measure_path, "measure fixture, 'location<TAB>mass' per line");
  if (with_target) {
    cmd->add_option("--perturbation", o.perturbation, "perturbation family of the target")
        ->check(CLI::IsMember({"inverse-log", "sine-log"}));
    cmd->add_option("--k", o.k, "perturbation magnitude, |k| <= 0.5");
  }
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--psi-min", g.psi_min, "smallest regime variable");
  cmd->add_option("--psi-max", g.psi_max, "largest regime variable");
  cmd->add_option("--n", g.n, "grid size (>= 8)");
}

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--report", o.report_path, "structured report path");
  cmd->add_option("--csv", o.csv_path, "CSV sample table path");
  cmd->add_option("--format", o.format, "stdout format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
}

double require(const std::optional<double>& v, const char* flag, std::string_view theorem) {
  if (!v) {
    throw Error(ErrorCode::ConfigParse, kModule,
                std::string(theorem) + " needs " + flag);
  }
  return *v;
}

Problem resolve(const ProblemOptions& o) {
  const bool raw = o.a || o.b || o.c;
  if (raw == !o.classical.empty()) {
    throw Error(ErrorCode::ConfigParse, kModule,
                "give either --a/--b/--c or --classical with its parameters");
  }
  std::optional<TabulatedMeasure> measure;
  if (!o.measure_path.empty()) measure = read_measure_file(o.measure_path);
  if (raw) {
    if (!o.a || !o.b || !o.c) {
      throw Error(ErrorCode::ConfigParse, kModule, "raw parameters need all of --a, --b, --c");
    }
    return Problem{validate(*o.a, *o.b, *o.c, o.offset), std::nullopt, std::move(measure)};
  }
  ClassicalSpec spec;
  if (o.classical == "kohlbecker") {
    spec = Kohlbecker{require(o.alpha, "--alpha", o.classical), require(o.B, "--B", o.classical)};
  } else if (o.classical == "debruijn") {
    spec = DeBruijn{require(o.beta, "--beta", o.classical), require(o.B, "--B", o.classical),
                    o.rate.value_or(1.0)};
  } else {
    std::optional<double> mass;
    if (measure) mass = measure->total_mass();
    spec = Kasahara{require(o.alpha, "--alpha", o.classical), require(o.B, "--B", o.classical), mass};
  }
  return Problem{to_unified(spec).params, spec, std::move(measure)};
}

TargetFunction make_target(const ProblemOptions& o, const UnifiedParams& p) {
  if (o.perturbation.empty()) return TargetFunction::pure_power(p.a(), p.b());
  return TargetFunction::perturbed_power(p.a(), p.b(), perturbation_from_string(o.perturbation), o.k);
}

void emit_outputs(const OutputOptions& o, const std::string& json, const std::string& csv,
                  const std::string& summary, std::ostream& out) {
  if (!o.report_path.empty()) report::write_file(o.report_path, json);
  if (!o.csv_path.empty()) report::write_file(o.csv_path, csv);
  if (o.format == "json") {
    out << json;
  } else if (o.format == "csv") {
    out << csv;
  } else {
    out << summary;
  }
}

void print_params(std::ostream& out, const UnifiedParams& p) {
  const double x_m = saddle_location(p.a(), p.b(), p.c());
  out << "a = " << num(p.a()) << '\n'
      << "b = " << num(p.b()) << '\n'
      << "c = " << num(p.c()) << '\n'
      << "offset = " << num(p.offset()) << '\n'
      << "d = " << num(p.d()) << '\n'
      << "dual_exp = " << num(p.dual_exp()) << '\n'
      << "regime = " << to_string(p.regime()) << '\n'
      << "x_M = " << num(x_m) << '\n';
}

std::string csv_of(std::span<const EquivalenceRow> rows) {
  std::ostringstream os;
  report::write_csv(os, rows);
  return os.str();
}

std::string summary_of(const EquivalenceReport& r) {
  std::ostringstream os;
  print_params(os, r.params);
  for (const CheckOutcome& c : r.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << num(c.value)
       << " (threshold " << num(c.threshold) << ")\n";
  }
  if (r.fit) {
    os << "exponent_hat = " << num(r.fit->exponent_hat) << '\n'
       << "coefficient_hat = " << num(r.fit->coefficient_hat) << '\n';
  }
  if (r.recovered) {
    os << "a_hat = " << num(r.recovered->a) << '\n' << "b_hat = " << num(r.recovered->b) << '\n';
  }
  if (!r.failure.empty()) os << "failure: " << r.failure << '\n';
  os << "verdict = " << (r.passed ? "pass" : "fail") << '\n';
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for exponential Tauberian theorems", "tauberlab"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  ProblemOptions problem;
  GridOptions grid;
  OutputOptions output;
  ToleranceProfile profile;
  double tol = profile.quadrature.tol;

  auto* validate_cmd = app.add_subcommand("validate", "check parameters and print derived quantities");
  add_problem_options(validate_cmd, problem, false);

  std::vector<double> psis;
  std::string order = "both";
  auto* predict_cmd = app.add_subcommand("predict", "Laplace-method prediction of log f");
  add_problem_options(predict_cmd, problem, false);
  predict_cmd->add_option("--psi", psis, "regime variable(s)")->required()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeAll);
  predict_cmd->add_option("--order", order, "leading, corrected or both")
      ->check(CLI::IsMember({"leading", "corrected", "both"}));

  auto add_profile = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "quadrature tolerance on log f");
    cmd->add_option("--ratio-tol", profile.ratio_tol_top, "ratio tolerance at the grid top");
    cmd->add_option("--gap-tol", profile.corrected_gap_nats, "corrected-prediction gap (nats)");
    cmd->add_option("--exponent-tol", profile.exponent_rel_tol, "relative exponent tolerance");
    cmd->add_option("--inverse-tol", profile.inverse_rel_tol, "relative tolerance on (a, b)");
    cmd->add_option("--coefficient-tol", profile.coefficient_rel_tol,
                    "relative coefficient tolerance (reported only when unset)");
  };

  auto* verify_cmd = app.add_subcommand("verify", "sweep, fit and score the growth equivalence");
  add_problem_options(verify_cmd, problem, true);
  add_grid_options(verify_cmd, grid);
  add_output_options(verify_cmd, output);
  add_profile(verify_cmd);

  std::optional<double> inv_d, inv_e;
  auto* invert_cmd = app.add_subcommand("invert", "recover (a, b) from transform-side growth");
  add_problem_options(invert_cmd, problem, true);
  add_grid_options(invert_cmd, grid);
  add_output_options(invert_cmd, output);
  add_profile(invert_cmd);
  invert_cmd->add_option("--d", inv_d, "transform-side coefficient");
  invert_cmd->add_option("--e", inv_e, "transform-side exponent");

  std::vector<double> lambdas;
  auto* classical_cmd = app.add_subcommand("classical", "reduce a classical theorem to unified parameters");
  add_problem_options(classical_cmd, problem, false);
  classical_cmd->add_option("--lambda", lambdas, "lambda values for the measure comparison")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate log f over the grid");
  add_problem_options(sweep_cmd, problem, true);
  add_grid_options(sweep_cmd, grid);
  add_output_options(sweep_cmd, output);
  sweep_cmd->add_option("--tol", tol, "quadrature tolerance on log f");

  std::string input_path;
  bool log_values = false;
  std::optional<double> tau;
  std::vector<double> epsilons;
  auto* ck_cmd = app.add_subcommand("ck-index", "log-index estimate and class-M diagnostic");
  ck_cmd->add_option("--input", input_path, "'x<TAB>U' per line")->required();
  ck_cmd->add_flag("--log-values", log_values, "second column holds log U");
  ck_cmd->add_option("--tau", tau, "index to test for class-M membership");
  ck_cmd->add_option("--epsilon", epsilons, "epsilons of the class-M check")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  profile.quadrature.tol = tol;

  // Input problems (validation, parsing) map to exit 2; engine failures
  // during a verification are reported and map to exit 1.
  try {
    if (*validate_cmd) {
      const Problem pr = resolve(problem);
      print_params(out, pr.params);
      const SaddlePoint sp = saddle_analysis(pr.params);
      out << "h_at_max = " << num(sp.h_at_max) << '\n' << "curvature = " << num(sp.curvature) << '\n';
      return kExitPass;
    }

    if (*predict_cmd) {
      const Problem pr = resolve(problem);
      for (double psi : psis) {
        out << "psi = " << num(psi);
        if (order != "corrected") {
          out << " leading = " << num(predict_log_f(pr.params, psi, PredictionOrder::Leading));
        }
        if (order != "leading") {
          out << " corrected = " << num(predict_log_f(pr.params, psi, PredictionOrder::Corrected));
        }
        out << '\n';
      }
      return kExitPass;
    }

    if (*classical_cmd) {
      const Problem pr = resolve(problem);
      if (!pr.spec) throw Error(ErrorCode::ConfigParse, kModule, "classical needs --classical");
      const UnifiedReduction red = to_unified(*pr.spec);
      const CoefficientIdentity id = coefficient_identity_check(*pr.spec);
      out << "theorem = " << name_of(*pr.spec) << '\n';
      print_params(out, red.params);
      out << "classical_coefficient = " << num(red.classical_coefficient) << '\n'
          << "lambda_exponent = " << num(red.lambda_exponent) << '\n'
          << "lambda_of_s = " << (red.lambda_map == LambdaMap::Identity ? "s" : "1/s") << '\n'
          << "coefficient_rel_gap = " << num(id.rel_gap) << '\n';
      bool ok = id.rel_gap < 1e-12;
      if (pr.measure) {
        if (std::holds_alternative<DeBruijn>(*pr.spec)) {
          throw Error(ErrorCode::ConfigParse, kModule, "measure fixtures apply to kohlbecker and kasahara");
        }
        const bool kohl = std::holds_alternative<Kohlbecker>(*pr.spec);
        const TargetFunction target = TargetFunction::tabulated(
            *pr.measure, kohl ? MeasureSide::Cumulative : MeasureSide::Tail);
        if (lambdas.empty()) lambdas = {1.0};
        for (double lambda : lambdas) {
          const double direct = kohl ? measure_transform_kohlbecker(*pr.measure, lambda)
                                     : measure_transform_kasahara(*pr.measure, lambda);
          const double by_parts =
              kohl ? log_transform(target, -1.0, 0.0, lambda).log_f
                   : log_transform(target, 1.0, pr.measure->total_mass(), 1.0 / lambda).log_f;
          const double gap = std::fabs(direct - by_parts);
          ok = ok && gap <= 1e-9 * std::max(1.0, std::fabs(direct));
          out << "lambda = " << num(lambda) << " log_M_sum = " << num(direct)
              << " log_M_parts = " << num(by_parts) << " gap = " << num(gap) << '\n';
        }
      }
      out << "verdict = " << (ok ? "pass" : "fail") << '\n';
      return ok ? kExitPass : kExitVerificationFailed;
    }

    if (*ck_cmd) {
      std::ifstream in(input_path);
      if (!in) throw Error(ErrorCode::IoError, kModule, "cannot open " + input_path);
      std::vector<IndexSample> samples;
      std::string line;
      while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        double x = 0.0, u = 0.0;
        if (!(fields >> x >> u)) throw Error(ErrorCode::ParseError, kModule, "malformed line: " + line);
        samples.push_back(log_values ? IndexSample{x, u} : IndexSample::from_value(x, u));
      }
      const CkIndexResult idx = ck_index(samples);
      for (const IndexPoint& pt : idx.points) {
        out << "x = " << num(pt.x) << " tau_hat = " << num(pt.tau_hat) << '\n';
      }
      out << "tau_final = " << num(idx.tau_final) << '\n'
          << "spread_last_quarter = " << num(idx.spread_last_quarter) << '\n';
      if (!tau) return kExitPass;
      if (epsilons.empty()) epsilons = {0.1, 0.25};
      const ClassMDiagnostic diag = class_m_check(samples, *tau, epsilons);
      for (const EpsilonCheck& c : diag.epsilon_checks) {
        out << "epsilon = " << num(c.epsilon) << " upper = " << to_string(c.upper_verdict)
            << " lower = " << to_string(c.lower_verdict) << (c.passed ? " pass" : " fail") << '\n';
      }
      out << "class_m_consistent = " << (diag.consistent ? "true" : "false") << '\n';
      return diag.consistent ? kExitPass : kExitVerificationFailed;
    }

    if (*invert_cmd && inv_d) {
      if (!inv_e || !problem.c) {
        throw Error(ErrorCode::ConfigParse, kModule, "closed-form inversion needs --d, --e and --c");
      }
      const PrimalRecovery rec = recover_primal(*inv_d, *inv_e, *problem.c);
      out << "a_hat = " << num(rec.a) << '\n' << "b_hat = " << num(rec.b) << '\n'
          << "v0 = " << num(rec.v0) << '\n';
      return kExitPass;
    }

    // verify, invert (sweep mode) and sweep all evaluate the grid.
    const Problem pr = resolve(problem);
    const TargetFunction target = make_target(problem, pr.params);
    const EvalGrid eval_grid = make_grid(grid.psi_min, grid.psi_max, grid.n);

    if (*sweep_cmd) {
      std::vector<EquivalenceRow> rows;
      int code = kExitPass;
      try {
        for (const TransformSample& s :
             sample_transforms(pr.params, target, eval_grid.psi_values(), profile.quadrature)) {
          rows.push_back(make_row(pr.params, s));
        }
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        code = kExitVerificationFailed;
      }
      const std::string csv = csv_of(rows);
      if (!output.csv_path.empty()) report::write_file(output.csv_path, csv);
      if (output.csv_path.empty() || output.format == "csv") out << csv;
      return code;
    }

    const EquivalenceReport rep = verify_equivalence(pr.params, target, eval_grid, profile);
    const std::string json = report::render_equivalence(rep, pr.spec);
    const std::string csv = csv_of(rep.rows);

    if (*invert_cmd) {
      std::ostringstream os;
      bool ok = rep.recovered.has_value();
      if (rep.recovered) {
        const double ga = std::fabs(rep.recovered->a - pr.params.a()) / std::fabs(pr.params.a());
        const double gb = std::fabs(rep.recovered->b - pr.params.b()) / std::fabs(pr.params.b());
        ok = ga <= profile.inverse_rel_tol && gb <= profile.inverse_rel_tol;
        os << "a = " << num(pr.params.a()) << " a_hat = " << num(rep.recovered->a)
           << " rel_gap = " << num(ga) << '\n'
           << "b = " << num(pr.params.b()) << " b_hat = " << num(rep.recovered->b)
           << " rel_gap = " << num(gb) << '\n';
      }
      if (!rep.failure.empty()) os << "failure: " << rep.failure << '\n';
      os << "verdict = " << (ok ? "pass" : "fail") << '\n';
      emit_outputs(output, json, csv, os.str(), out);
      return ok ? kExitPass : kExitVerificationFailed;
    }

    emit_outputs(output, json, csv, summary_of(rep), out);
    return rep.passed ? kExitPass : kExitVerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::IoError ? kExitInputError : kExitInputError;
  }
}

}  // namespace tauberlab::cli
