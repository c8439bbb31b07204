#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quasidiff/analysis.hpp"
#include "quasidiff/bundled.hpp"
#include "quasidiff/document.hpp"
#include "quasidiff/report.hpp"
#include "quasidiff/solver.hpp"

namespace quasidiff::cli {

namespace {

using nlohmann::ordered_json;

// Raised for configuration problems detected by the driver itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string spec;
  Index horizon = 0;  // 0: command default
  std::optional<double> eps_residual;
  std::optional<double> eps_sign;
  std::optional<double> suffix_fraction;
  std::string out_path;
  std::string csv_path;
  std::string beta;
  std::optional<Index> lambda;
  std::vector<double> seed_values;
  std::vector<double> closed_form;
  std::optional<double> perturb_d;
  std::string source = "auto";

  bool theorem1 = false;
  bool theorem2 = false;
  bool certificate = false;
  bool lemma2 = false;
  std::string parity;
  Index samples = 50;
  Index series_horizon = 100000;
  std::uint64_t rng_seed = 20240601;
  std::string write_dir;
};

// The equation under study plus, when known, a closed-form solution x_n = kappa rho^n.
struct Problem {
  EquationSpec eq;
  std::optional<BundledExample> bundled;
  std::optional<std::pair<double, double>> closed_form;
  Index default_horizon = 60;

  std::optional<Evaluator> evaluator() const {
    if (!closed_form) return std::nullopt;
    const auto [k, r] = *closed_form;
    return Evaluator([k, r](Index n) { return k * std::pow(r, static_cast<double>(n)); });
  }
};

bool is_bundled_name(const std::string& s) {
  for (const auto& n : bundled_names()) {
    if (n == s) return true;
  }
  return false;
}

Problem load_problem(const Options& o) {
  Problem pb;
  if (is_bundled_name(o.spec)) {
    ExampleParameters params;
    if (!o.beta.empty()) params.beta = OddRatio::parse(o.beta);
    params.lambda = o.lambda;
    pb.bundled = bundled_example(o.spec, params);
    pb.eq = pb.bundled->equation;
    pb.closed_form = std::pair{pb.bundled->kappa, pb.bundled->rho};
    pb.default_horizon = pb.bundled->verify_horizon;
  } else {
    if (!o.beta.empty() || o.lambda) throw UsageError("--beta/--lambda apply to bundled examples only");
    pb.eq = load_equation(o.spec);
  }
  if (!o.closed_form.empty()) {
    if (o.closed_form.size() != 2) throw UsageError("--closed-form expects KAPPA,RHO");
    pb.closed_form = std::pair{o.closed_form[0], o.closed_form[1]};
  }
  if (o.perturb_d) pb.eq.d = pb.eq.d * Sequence::constant(*o.perturb_d);
  return pb;
}

ToleranceProfile tolerances(const Options& o) {
  ToleranceProfile tol;
  if (o.eps_residual) tol.eps_residual = *o.eps_residual;
  if (o.eps_sign) tol.eps_sign = *o.eps_sign;
  if (o.suffix_fraction) tol.suffix_fraction = *o.suffix_fraction;
  try {
    tol.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return tol;
}

Index horizon_of(const Options& o, const Problem& pb) {
  const Index h = o.horizon > 0 ? o.horizon : pb.default_horizon;
  if (o.horizon != 0 && o.horizon < 8) throw UsageError("--horizon must be at least 8");
  return h;
}

SeedWindow seed_of(const Options& o, const Problem& pb) {
  const SeedRange need = seed_range(pb.eq);
  const auto count = static_cast<std::size_t>(need.last - need.first + 1);
  if (!o.seed_values.empty()) {
    if (o.seed_values.size() != count) {
      throw UsageError("--seed-values needs " + std::to_string(count) + " values for indices [" +
                       std::to_string(need.first) + ", " + std::to_string(need.last) + "]");
    }
    return {need.first, o.seed_values};
  }
  if (auto ev = pb.evaluator()) return seed_from(pb.eq, *ev);
  throw UsageError("no seed: pass --seed-values or --closed-form");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << content;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  write_csv(f, traj);
}

ordered_json header(const char* command, const Problem& pb) {
  ordered_json j;
  j["command"] = command;
  j["equation"] = pb.eq.name.empty() ? ordered_json(nullptr) : ordered_json(pb.eq.name);
  return j;
}

void emit(const Options& o, const ordered_json& j) {
  if (!o.out_path.empty()) write_file(o.out_path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

int cmd_list(const Options& o, std::ostream& out) {
  for (const auto& name : bundled_names()) {
    const auto ex = bundled_example(name);
    out << name << "  " << ex.summary << "\n";
    if (!o.write_dir.empty()) {
      std::filesystem::create_directories(o.write_dir);
      write_file((std::filesystem::path(o.write_dir) / (name + ".json")).string(), dump_equation(ex.equation));
    }
  }
  return kPass;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Problem pb = load_problem(o);
  const ToleranceProfile tol = tolerances(o);
  const Index horizon = horizon_of(o, pb);
  const SeedWindow seed = seed_of(o, pb);
  const Trajectory traj = solve(pb.eq, seed, horizon, tol);
  const ResidualSummary res = trajectory_residuals(pb.eq, traj);
  const bool ok = res.max_relative <= tol.eps_residual;

  out << "mode: " << to_string(solving_mode(pb.eq)) << "\n";
  out << "x computed on [" << traj.first() << ", " << traj.last() << "]\n";
  out << "max relative residual: " << format_real(res.max_relative) << " at n=" << res.worst_index << " ("
      << (ok ? "within" : "EXCEEDS") << " eps_residual " << tol.eps_residual << ")\n";
  if (traj.truncation) {
    out << "WARNING: trajectory truncated at n=" << traj.truncation->index << " (" << traj.truncation->reason
        << ")\n";
  }
  for (const auto& w : traj.warnings) out << "WARNING: " << w << "\n";
  if (!o.csv_path.empty()) write_trajectory_csv(o.csv_path, traj);

  ordered_json j = header("solve", pb);
  j["mode"] = to_string(solving_mode(pb.eq));
  j["first"] = traj.first();
  j["last"] = traj.last();
  j["max_relative_residual"] = res.max_relative;
  j["residual_ok"] = ok;
  j["truncation"] = traj.truncation ? ordered_json{{"index", traj.truncation->index}, {"reason", traj.truncation->reason}}
                                    : ordered_json(nullptr);
  j["warnings"] = traj.warnings;
  emit(o, j);
  return ok ? kPass : kCheckFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Problem pb = load_problem(o);
  const ToleranceProfile tol = tolerances(o);
  const auto ev = pb.evaluator();
  if (!ev) throw UsageError("verify needs a bundled example or --closed-form KAPPA,RHO");
  const Index horizon = horizon_of(o, pb);
  const Index first = pb.eq.n0;
  const ResidualSummary res = evaluator_residuals(pb.eq, *ev, first, first + horizon - 1);
  std::size_t failing = 0;
  for (double r : res.relative) failing += !(r <= tol.eps_residual);
  const bool ok = failing == 0;

  out << (ok ? "PASS" : "FAIL") << " " << (pb.eq.name.empty() ? o.spec : pb.eq.name) << ": x_n = "
      << format_real(pb.closed_form->first) << " * (" << format_real(pb.closed_form->second) << ")^n on [" << first
      << ", " << res.last << "]\n";
  out << "max relative residual: " << format_real(res.max_relative) << " at n=" << res.worst_index
      << ", eps_residual " << tol.eps_residual << "\n";
  if (!ok) out << "residual exceeds tolerance at " << failing << " of " << res.relative.size() << " indices\n";

  ordered_json j = header("verify", pb);
  j["pass"] = ok;
  j["eps_residual"] = tol.eps_residual;
  j["failing_indices"] = failing;
  j["residuals"] = to_json(res);
  emit(o, j);
  return ok ? kPass : kCheckFailed;
}

int cmd_check(Options o, std::ostream& out) {
  const Problem pb = load_problem(o);
  const ToleranceProfile tol = tolerances(o);
  if (!o.theorem1 && !o.theorem2 && !o.certificate && !o.lemma2) o.theorem1 = o.theorem2 = true;
  ordered_json j = header("check", pb);
  bool ok = true;

  if (o.theorem1) {
    const ConditionReport rep = check_theorem1(pb.eq, std::max<Index>(o.horizon, 256));
    out << render(rep);
    j["theorem1"] = to_json(rep);
    ok = ok && rep.hypotheses_hold();
  }
  if (o.theorem2) {
    const ConditionReport rep = check_theorem2(pb.eq, o.series_horizon, kDefaultDivergenceThreshold, tol);
    out << render(rep);
    j["theorem2"] = to_json(rep);
    ok = ok && rep.hypotheses_hold();
  }
  if (o.certificate) {
    Parity parity;
    if (o.parity == "even") {
      parity = Parity::even;
    } else if (o.parity == "odd") {
      parity = Parity::odd;
    } else if (o.parity.empty()) {
      const ConditionReport rep = check_theorem1(pb.eq);
      if (!rep.excluded_positive_terms) throw UsageError("hypotheses fail; pass --parity to force a certificate");
      parity = *rep.excluded_positive_terms;
    } else {
      throw UsageError("--parity must be even or odd");
    }
    std::mt19937_64 rng(o.rng_seed);
    std::uniform_real_distribution<double> log_q(std::log(1e-3), std::log(1e3));
    const Index lead = std::max<Index>({pb.eq.delta, pb.eq.tau, 0});
    const Index len = lead + std::max<Index>(4, -pb.eq.tau) + 32;
    Index valid = 0;
    ordered_json certs = ordered_json::array();
    for (Index s = 0; s < o.samples; ++s) {
      IndexedWindow q{pb.eq.n0 - lead, {}};
      for (Index i = 0; i < len; ++i) q.values.push_back(std::exp(log_q(rng)));
      const auto cert = contradiction_certificate(pb.eq, q, parity);
      valid += cert.valid;
      if (s == 0) out << render(cert);
      certs.push_back({{"valid", cert.valid}, {"conflicts", cert.conflict_count()}, {"indices", cert.conflict.size()}});
    }
    out << "certificates (positive " << to_string(parity) << " terms): " << valid << "/" << o.samples << " valid\n";
    j["certificates"] = {{"positive_terms", to_string(parity)}, {"valid", valid}, {"samples", o.samples},
                         {"runs", std::move(certs)}};
    ok = ok && valid == o.samples;
  }
  if (o.lemma2) {
    const auto ev = pb.evaluator();
    if (!ev) throw UsageError("--lemma2 needs a bundled example or --closed-form");
    const Index h = o.horizon > 0 ? o.horizon : 500;
    const Index n1 = pb.eq.n0 + pb.eq.delta;
    IndexedWindow z{n1, {}};
    for (Index n = n1; n < n1 + h; ++n) z.values.push_back(companion(*ev, pb.eq.p, pb.eq.delta, n));
    IndexedWindow startup{n1 - pb.eq.delta, {}};
    for (Index n = n1 - pb.eq.delta; n < n1; ++n) startup.values.push_back((*ev)(n));
    const double p_limit = pb.eq.p(pb.eq.n0 + o.series_horizon);
    const BoundCertificate cert = lemma2_bound(z, pb.eq.p, p_limit, pb.eq.delta, n1, startup);
    out << render(cert);
    j["lemma2"] = to_json(cert);
    ok = ok && cert.valid;
  }
  emit(o, j);
  return ok ? kPass : kCheckFailed;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const Problem pb = load_problem(o);
  const ToleranceProfile tol = tolerances(o);
  const Index horizon = horizon_of(o, pb);
  std::string source = o.source;
  if (source == "auto") source = (pb.closed_form && o.seed_values.empty()) ? "closed-form" : "solve";

  Trajectory traj;
  if (source == "closed-form") {
    const auto ev = pb.evaluator();
    if (!ev) throw UsageError("no closed form available; pass --closed-form or --source solve");
    traj = sample_trajectory(pb.eq, *ev, pb.eq.n0, pb.eq.n0 + horizon - 1);
  } else if (source == "solve") {
    traj = solve(pb.eq, seed_of(o, pb), horizon, tol);
  } else {
    throw UsageError("--source must be closed-form, solve or auto");
  }

  const Verdict v = classify(traj, tol);
  out << "source: " << to_string(traj.provenance) << " on [" << traj.first() << ", " << traj.last() << "]\n";
  out << render(v);
  ordered_json j = header("classify", pb);
  j["provenance"] = to_string(traj.provenance);
  j["verdict"] = to_json(v);
  if (traj.has_chain() && traj.t.size() >= 16) {
    const SignProfile prof = component_sign_profile(traj, tol);
    out << render(prof);
    j["sign_profile"] = to_json(prof);
  }
  if (traj.truncation) {
    out << "WARNING: trajectory truncated at n=" << traj.truncation->index << " (" << traj.truncation->reason
        << ")\n";
  }
  if (!o.csv_path.empty()) write_trajectory_csv(o.csv_path, traj);
  emit(o, j);
  return kPass;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--eps-residual", o.eps_residual, "relative residual tolerance (default 1e-9)");
  cmd->add_option("--eps-sign", o.eps_sign, "sign resolution relative to the window maximum (default 1e-12)");
  cmd->add_option("--suffix-fraction", o.suffix_fraction, "portion of the window treated as eventual (default 0.5)");
  cmd->add_option("--out", o.out_path, "write a structured JSON report");
  cmd->add_option("--beta", o.beta, "beta for example-1/example-2, as num/den");
  cmd->add_option("--lambda", o.lambda, "lambda for example-1/example-2");
  cmd->add_option("--closed-form", o.closed_form, "closed-form solution KAPPA,RHO meaning kappa*rho^n")
      ->delimiter(',')
      ->expected(2);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate, classify and check fourth-order neutral difference equations with quasidifferences"};
  app.require_subcommand(1);
  Options o;

  auto* list = app.add_subcommand("list-examples", "list the bundled example equations");
  list->add_option("--write-dir", o.write_dir, "also write each bundled equation document into this directory");

  auto* solve_cmd = app.add_subcommand("solve", "solve an equation from a seed window");
  solve_cmd->add_option("spec", o.spec, "bundled example name or equation document")->required();
  solve_cmd->add_option("--horizon", o.horizon, "number of recursion steps (>= 8)");
  solve_cmd->add_option("--seed-values", o.seed_values, "x on the seed window, comma separated")->delimiter(',');
  solve_cmd->add_option("--csv", o.csv_path, "write the trajectory as CSV");
  add_common(solve_cmd, o);

  auto* verify_cmd = app.add_subcommand("verify", "check a closed-form solution against the equation");
  verify_cmd->add_option("selector", o.spec, "bundled example name or equation document")->required();
  verify_cmd->add_option("--horizon", o.horizon, "number of indices checked from n0 (>= 8)");
  verify_cmd->add_option("--perturb-d", o.perturb_d, "multiply d_n by this factor");
  add_common(verify_cmd, o);

  auto* check_cmd = app.add_subcommand("check", "check theorem hypotheses and build certificates");
  check_cmd->add_option("spec", o.spec, "bundled example name or equation document")->required();
  check_cmd->add_flag("--theorem1", o.theorem1, "hypotheses of the quick-oscillation exclusion");
  check_cmd->add_flag("--theorem2", o.theorem2, "hypotheses of the almost-oscillation theorem");
  check_cmd->add_flag("--certificate", o.certificate, "sign-conflict certificates on random positive q windows");
  check_cmd->add_flag("--lemma2", o.lemma2, "bound certificate for the closed-form solution");
  check_cmd->add_option("--parity", o.parity, "positive-term parity for --certificate (even|odd)");
  check_cmd->add_option("--samples", o.samples, "number of random q windows for --certificate");
  check_cmd->add_option("--series-horizon", o.series_horizon, "terms summed for series heuristics");
  check_cmd->add_option("--rng-seed", o.rng_seed, "seed for the random q windows");
  check_cmd->add_option("--horizon", o.horizon, "sample length for coefficient checks");
  check_cmd->add_option("--perturb-d", o.perturb_d, "multiply d_n by this factor");
  add_common(check_cmd, o);

  auto* classify_cmd = app.add_subcommand("classify", "classify a trajectory");
  classify_cmd->add_option("spec", o.spec, "bundled example name or equation document")->required();
  classify_cmd->add_option("--horizon", o.horizon, "trajectory length (>= 8)");
  classify_cmd->add_option("--source", o.source, "closed-form, solve or auto");
  classify_cmd->add_option("--seed-values", o.seed_values, "x on the seed window when solving")->delimiter(',');
  classify_cmd->add_option("--csv", o.csv_path, "write n,x,z,y,w,t as CSV");
  add_common(classify_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*list) return cmd_list(o, out);
    if (*solve_cmd) return cmd_solve(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*check_cmd) return cmd_check(o, out);
    if (*classify_cmd) return cmd_classify(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  }
  return kUsageError;
}

}  // namespace quasidiff::cli
