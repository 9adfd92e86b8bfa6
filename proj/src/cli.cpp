#include "fracgs/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fracgs/config.hpp"
#include "fracgs/conformance.hpp"
#include "fracgs/error.hpp"
#include "fracgs/field_io.hpp"
#include "fracgs/solver.hpp"
#include "fracgs/variational.hpp"
#include "json.hpp"

namespace fracgs::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kCsvHelp = R"(Output files (CSV columns):
  solve:               report.json, field.json, manifest.json,
                       field.csv (t,u), residuals.csv (iteration,residual,sigma,energy),
                       vanishing.csv (y,mass)
  compare:             compare.json, manifest.json
  fiber-scan:          fiber.csv (sigma,psi), fiber.json, manifest.json
  validate-ops:        ops.csv (check,alpha,residual,tolerance,pass), manifest.json
  validate-hypotheses: hypotheses.csv (hypothesis,pass,margin,witness_t,witness_xi),
                       hypotheses.json, manifest.json
Exit codes: 0 converged/completed, 1 not converged or failed checks, 2 invalid input.)";

struct Invocation {
  std::string subcommand;
  std::string config_path;
  std::string output_dir = "out";
  std::vector<std::string> overrides;
};

// Counter-based uniform generator: identical streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  double uniform(double lo, double hi) {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return lo + (hi - lo) * static_cast<double>(z >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  return f;
}

void write_json(const fs::path& path, const json& doc) {
  auto f = open_output(path);
  f << doc.dump(2) << '\n';
}

void write_manifest(const fs::path& dir, const Invocation& inv, const RunSettings& s) {
  json resolved = json::object();
  for (const auto& [k, v] : s.resolved) resolved[k] = v;
  write_json(dir / "manifest.json", {{"schema", 1},
                                     {"subcommand", inv.subcommand},
                                     {"config_path", inv.config_path},
                                     {"overrides", inv.overrides},
                                     {"seed", s.seed},
                                     {"resolved", resolved}});
}

json history(const std::vector<double>& v) { return json(v); }

json solve_summary(const SolveReport& r) {
  return {{"level", r.level},
          {"final_residual", r.final_residual},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

int cmd_solve(const RunSettings& s, const fs::path& dir, std::ostream& out) {
  const SolveReport r = solve_ground_state(s.solve);
  const FracOrder alpha = s.solve.order();
  const Grid1D grid = s.solve.grid();

  json report = {{"schema", 1},
                 {"level", r.level},
                 {"final_residual", r.final_residual},
                 {"residual_tol", s.solve.residual_tol},
                 {"nehari_residual", r.nehari_residual},
                 {"iterations", r.iterations},
                 {"rejected_steps", r.rejected_steps},
                 {"converged", r.converged},
                 {"recentred_shift", r.recentred_shift},
                 {"bounded", r.bounded},
                 {"vanishing",
                  {{"radius", s.solve.vanishing_radius},
                   {"max_mass", r.vanishing.max_mass},
                   {"argmax_y", r.vanishing.argmax_y},
                   {"alternative", r.vanished ? "vanishing" : "concentration"}}},
                 {"residual_history", history(r.residual_history)},
                 {"sigma_history", history(r.sigma_history)},
                 {"energy_history", history(r.energy_history)}};

  if (s.candidates > 0) {
    SplitMix64 rng(s.seed);
    std::vector<SpectralField> candidates;
    for (int i = 0; i < s.candidates; ++i) {
      const double c = rng.uniform(-5.0, 5.0);
      const double w = rng.uniform(0.5, 4.0);
      const double a = rng.uniform(0.5, 2.0);
      candidates.push_back(SpectralField::sample(grid, [&](double t) {
        const double z = (t - c) / w;
        return a * std::exp(-z * z);
      }));
    }
    const LevelEstimate est =
        estimate_level(s.solve.spec, alpha, candidates, s.solve.autonomous);
    report["candidate_level"] = {{"count", s.candidates},
                                 {"level", est.level},
                                 {"argmin_index", est.argmin_index},
                                 {"failures", est.failures.size()}};
  }

  if (s.sensitivity) {
    SolveConfig fine = s.solve;
    fine.n_points *= 2;
    fine.max_iters = s.solve.max_iters;
    SolveConfig wide = s.solve;
    wide.half_width *= 2.0;
    if (wide.init.kind == InitKind::custom) {
      report["sensitivity"] = "skipped: custom initial field is tied to the grid";
    } else {
      const SolveReport rf = solve_ground_state(fine);
      const SolveReport rw = solve_ground_state(wide);
      report["sensitivity"] = {
          {"double_N", solve_summary(rf)},
          {"double_L", solve_summary(rw)},
          {"rel_change_double_N", std::abs(rf.level - r.level) / std::abs(r.level)},
          {"rel_change_double_L", std::abs(rw.level - r.level) / std::abs(r.level)}};
    }
  }

  if (s.mp_sweeps > 0) {
    const MountainPassResult mp =
        mountain_pass_path(s.solve, s.mp_endpoint_scale, s.mp_nodes, s.mp_sweeps);
    report["mountain_pass"] = {{"nodes", s.mp_nodes},
                               {"sweeps", s.mp_sweeps},
                               {"endpoint_scale", mp.endpoint_scale},
                               {"path_max_energy", mp.path_max_energy},
                               {"node_max_energy", mp.node_max_energy},
                               {"gap_to_level", mp.path_max_energy - r.level}};
  }

  write_json(dir / "report.json", report);
  write_json(dir / "field.json", field_to_json(r.field));
  {
    auto f = open_output(dir / "field.csv");
    write_field_csv(f, r.field);
  }
  {
    auto f = open_output(dir / "residuals.csv");
    f << "iteration,residual,sigma,energy\n";
    for (std::size_t k = 0; k < r.residual_history.size(); ++k) {
      f << k << ',' << format_double(r.residual_history[k]) << ','
        << format_double(r.sigma_history[k]) << ',' << format_double(r.energy_history[k]) << '\n';
    }
  }
  {
    auto f = open_output(dir / "vanishing.csv");
    f << "y,mass\n";
    for (const auto& [y, mass] : r.vanishing.profile) {
      f << format_double(y) << ',' << format_double(mass) << '\n';
    }
  }
  out << "solve: level=" << format_double(r.level)
      << " residual=" << format_double(r.final_residual) << " iterations=" << r.iterations
      << " converged=" << (r.converged ? "true" : "false") << '\n';
  return r.converged ? kExitOk : kExitNotConverged;
}

int cmd_compare(const RunSettings& s, const fs::path& dir, std::ostream& out) {
  const LevelComparison cmp = compare_levels(s.solve);
  write_json(dir / "compare.json", {{"schema", 1},
                                    {"c", cmp.c},
                                    {"c_bar", cmp.c_bar},
                                    {"gap", cmp.gap},
                                    {"strict", cmp.strict},
                                    {"one_shot_level", cmp.one_shot_level},
                                    {"one_shot_sigma", cmp.one_shot_sigma},
                                    {"one_shot_below", cmp.one_shot_below},
                                    {"perturbed", solve_summary(cmp.perturbed)},
                                    {"autonomous", solve_summary(cmp.autonomous)}});
  const bool ok = cmp.perturbed.converged && cmp.autonomous.converged;
  out << "compare: c=" << format_double(cmp.c) << " c_bar=" << format_double(cmp.c_bar)
      << " gap=" << format_double(cmp.gap) << " strict=" << (cmp.strict ? "true" : "false")
      << " residual=" << format_double(std::max(cmp.perturbed.final_residual,
                                                cmp.autonomous.final_residual))
      << " iterations=" << cmp.perturbed.iterations + cmp.autonomous.iterations << '\n';
  return ok ? kExitOk : kExitNotConverged;
}

int cmd_fiber_scan(const RunSettings& s, const fs::path& dir, std::ostream& out) {
  const Grid1D grid = s.solve.grid();
  const FracOrder alpha = s.solve.order();
  const SpectralField u = initial_field(s.solve, grid);
  std::vector<double> sigmas{0.0};
  const double lmin = std::log10(s.fiber_sigma_min);
  const double lmax = std::log10(s.fiber_sigma_max);
  for (int i = 0; i < s.fiber_points; ++i) {
    sigmas.push_back(std::pow(10.0, lmin + (lmax - lmin) * i / (s.fiber_points - 1)));
  }
  const FiberScan scan = fiber_map(u, s.solve.spec, alpha, sigmas, s.solve.autonomous);
  const NehariResult proj = nehari_project(u, s.solve.spec, alpha, s.solve.autonomous);
  {
    auto f = open_output(dir / "fiber.csv");
    f << "sigma,psi\n";
    for (const auto& [sigma, psi] : scan.samples) {
      f << format_double(sigma) << ',' << format_double(psi) << '\n';
    }
  }
  write_json(dir / "fiber.json", {{"schema", 1},
                                  {"derivative_sign_changes", scan.derivative_sign_changes},
                                  {"plus_to_minus", scan.plus_to_minus},
                                  {"sigma_u", proj.sigma},
                                  {"max_energy", proj.energy},
                                  {"constraint_residual", proj.constraint_residual}});
  out << "fiber-scan: sigma_u=" << format_double(proj.sigma)
      << " level=" << format_double(proj.energy)
      << " residual=" << format_double(proj.constraint_residual)
      << " sign_changes=" << scan.derivative_sign_changes << '\n';
  return kExitOk;
}

int cmd_validate_ops(const RunSettings& s, const fs::path& dir, std::ostream& out) {
  const auto checks = operator_identity_checks(s.solve.grid(), s.solve.alpha);
  auto f = open_output(dir / "ops.csv");
  f << "check,alpha,residual,tolerance,pass\n";
  bool all = true;
  double worst = 0.0;
  for (const auto& c : checks) {
    f << c.name << ',' << format_double(c.alpha) << ',' << format_double(c.residual) << ','
      << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
    all = all && c.pass;
    worst = std::max(worst, c.residual / c.tolerance);
  }
  out << "validate-ops: checks=" << checks.size() << " all_pass=" << (all ? "true" : "false")
      << " worst_residual_over_tolerance=" << format_double(worst) << '\n';
  return all ? kExitOk : kExitNotConverged;
}

int cmd_validate_hypotheses(const RunSettings& s, const fs::path& dir, std::ostream& out) {
  const HypothesisReport rep = validate_hypotheses(s.solve.spec, s.hypothesis_box);
  auto f = open_output(dir / "hypotheses.csv");
  f << "hypothesis,pass,margin,witness_t,witness_xi\n";
  json checks = json::array();
  for (const auto& c : rep.checks) {
    f << c.name << ',' << (c.pass ? "true" : "false") << ',' << format_double(c.margin) << ','
      << format_double(c.witness_t) << ',' << format_double(c.witness_xi) << '\n';
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"margin", c.margin},
                      {"witness_t", c.witness_t},
                      {"witness_xi", c.witness_xi},
                      {"detail", c.detail}});
  }
  write_json(dir / "hypotheses.json",
             {{"schema", 1},
              {"checks", checks},
              {"all_pass", rep.all_pass()},
              {"growth_epsilon", rep.growth_epsilon},
              {"growth_constant_sampled", rep.growth_constant_sampled},
              {"growth_constant_explicit", rep.growth_constant_explicit}});
  out << "validate-hypotheses: all_pass=" << (rep.all_pass() ? "true" : "false");
  for (const auto& c : rep.checks) out << ' ' << c.name << '=' << (c.pass ? "pass" : "fail");
  out << '\n';
  return kExitOk;
}

RunSettings load_settings(const Invocation& inv) {
  ConfigMap given;
  if (!inv.config_path.empty()) {
    std::ifstream in(inv.config_path);
    if (!in) throw Error(ErrorCode::Config, "config: cannot open " + inv.config_path);
    given = parse_config(in, inv.config_path);
  }
  for (const auto& o : inv.overrides) apply_override(given, o);
  RunSettings s = resolve_settings(given);
  if (s.solve.init.kind == InitKind::custom) {
    const std::string& path = s.resolved.at("init.file");
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Config, "init.file: cannot open " + path);
    try {
      s.solve.init.values = read_field_csv(in, s.solve.grid()).values();
    } catch (const Error& e) {
      throw Error(ErrorCode::Config, std::string("init.file: ") + e.what());
    }
    s.solve.validate();
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ground states of two-sided fractional equations on the real line", "fracgs"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);

  Invocation inv;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", inv.config_path, "flat key = value configuration file");
    sub->add_option("-o,--out", inv.output_dir, "output directory")->capture_default_str();
    sub->add_option("-s,--set", inv.overrides, "override a configuration key (key=value)");
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve", "compute a ground state by Nehari-projected descent"},
      {"compare", "compare perturbed and autonomous ground-state levels"},
      {"fiber-scan", "sample psi(sigma) = I(sigma u) along the initial field"},
      {"validate-ops", "check fractional operator identities"},
      {"validate-hypotheses", "sample hypotheses (f0)-(f5) on the nonlinearity"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  std::vector<std::string> storage{"fracgs"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitInvalidInput;
  }
  inv.subcommand = app.get_subcommands().front()->get_name();

  try {
    const RunSettings s = load_settings(inv);
    const fs::path dir(inv.output_dir);
    fs::create_directories(dir);
    write_manifest(dir, inv, s);
    if (inv.subcommand == "solve") return cmd_solve(s, dir, out);
    if (inv.subcommand == "compare") return cmd_compare(s, dir, out);
    if (inv.subcommand == "fiber-scan") return cmd_fiber_scan(s, dir, out);
    if (inv.subcommand == "validate-ops") return cmd_validate_ops(s, dir, out);
    return cmd_validate_hypotheses(s, dir, out);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::Diverged:
      case ErrorCode::BracketFailure:
      case ErrorCode::EndpointNotNegative:
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return kExitNotConverged;
      default:
        err << "invalid input (" << to_string(e.code()) << "): " << e.what() << '\n';
        return kExitInvalidInput;
    }
  } catch (const fs::filesystem_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace fracgs::cli
