// Command-line front-end: closed-form equilibria, value grids, path
// simulation, the Monte Carlo verification battery, the finite-difference
// oracle, and deviation sweeps. Machine-readable JSON/CSV output only.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hirefire/equilibrium.hpp"
#include "hirefire/errors.hpp"
#include "hirefire/fbp_oracle.hpp"
#include "hirefire/json_writer.hpp"
#include "hirefire/run_config.hpp"
#include "hirefire/sim.hpp"
#include "hirefire/verification.hpp"

namespace {

using namespace hirefire;
namespace fs = std::filesystem;

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::SemiSeparating: return "semi_separating";
    case Regime::Pooling: return "pooling";
    case Regime::NoHire: return "no_hire";
  }
  return "";
}

void write_stopping(JsonWriter& w, const StoppingRule& rule) {
  if (rule.is_never_stop()) {
    w.value("never_stop");
  } else if (rule.is_stop_immediately()) {
    w.value("stop_immediately");
  } else {
    w.value(rule.threshold());
  }
}

void write_equilibrium(JsonWriter& w, const Equilibrium& eq) {
  w.begin_object();
  w.field("regime", regime_name(eq.regime));
  w.key("a_star").begin_array().value(eq.a_star.first).value(eq.a_star.second).end_array();
  w.key("belief").begin_array().value(eq.belief.first).value(eq.belief.second).end_array();
  w.key("threshold_low");
  write_stopping(w, eq.threshold_low);
  w.key("threshold_high");
  write_stopping(w, eq.threshold_high);
  w.field("value_weak", eq.value_weak);
  if (eq.value_strong) {
    w.field("value_strong", *eq.value_strong);
  } else {
    w.null_field("value_strong");
  }
  w.end_object();
}

void write_estimate(JsonWriter& w, const MonteCarloEstimate& est) {
  w.begin_object();
  w.field("mean", est.mean)
      .field("stderr", est.std_error)
      .field("n_paths", est.n_paths)
      .field("truncation_bound", est.truncation_bound)
      .field("clamp_events", static_cast<unsigned long long>(est.clamp_events));
  w.end_object();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigViolation("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

void emit(const RunConfig& cfg, const std::string& filename, const std::string& content) {
  std::cout << content;
  if (!cfg.out_dir.empty()) write_file_atomic(fs::path(cfg.out_dir) / filename, content);
}

// ---------------------------------------------------------------------------

int cmd_equilibrium(const RunConfig& cfg) {
  const GameParams gp = game_params(cfg);
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);

  JsonWriter w;
  w.begin_object();
  w.key("config");
  write_config(w, cfg);
  w.key("derived").begin_object();
  w.field("omega", d.omega)
      .field("gamma1", d.gamma1)
      .field("gamma2", d.gamma2)
      .field("b", b)
      .field("p_hat", p_hat);
  if (cfg.extension == ExtensionKind::FiringCost) {
    const FiringCostParams fc = validate_firing_cost(gp, cfg.epsilon);
    const double b_eps = firing_cost_threshold(gp, d, fc);
    w.field("b_eps", b_eps);
  }
  if (cfg.extension == ExtensionKind::Interview) {
    const InterviewParams iv = validate_interview(gp, cfg.q);
    w.field("p_hat_interview", interview_indifference(gp, d, b, iv));
  }
  w.end_object();

  switch (cfg.extension) {
    case ExtensionKind::None: {
      w.key("equilibrium");
      write_equilibrium(w, assemble_pbe(gp));
      break;
    }
    case ExtensionKind::FiringCost: {
      const FiringCostResult res = firing_cost_pbe(gp, validate_firing_cost(gp, cfg.epsilon));
      w.key("equilibrium");
      write_equilibrium(w, res.eq);
      w.field("hire", res.hire).field("gate_value", res.gate_value);
      break;
    }
    case ExtensionKind::TypeUncertainty: {
      const TypeUncertaintyParams tu = validate_type_uncertainty(cfg.p1, cfg.q);
      w.key("equilibrium");
      write_equilibrium(w, type_uncertainty_pbe(gp, tu));
      break;
    }
    case ExtensionKind::Interview: {
      const InterviewEquilibrium eq = interview_pbe(gp, validate_interview(gp, cfg.q));
      w.key("equilibrium").begin_object();
      w.key("a_star").begin_array().value(eq.a_star.first).value(eq.a_star.second).end_array();
      w.key("belief").begin_array();
      for (double belief : eq.belief) w.value(belief);
      w.end_array();
      w.key("stopping").begin_array();
      for (const StoppingRule& rule : eq.stopping) write_stopping(w, rule);
      w.end_array();
      w.field("p_hat_interview", eq.p_hat_interview);
      w.end_object();
      break;
    }
  }
  w.end_object();
  emit(cfg, "equilibrium.json", w.str() + "\n");
  return 0;
}

int cmd_value_grid(const RunConfig& cfg, std::size_t n_points) {
  if (n_points < 2) throw ConfigViolation("value-grid needs at least 2 points");
  const GameParams gp = game_params(cfg);
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);

  double threshold = b;
  bool firing = false;
  FiringCostParams fc{0.0};
  if (cfg.extension == ExtensionKind::FiringCost) {
    fc = validate_firing_cost(gp, cfg.epsilon);
    threshold = firing_cost_threshold(gp, d, fc);
    firing = true;
  }

  std::string csv = "pi,V,U\n";
  for (std::size_t i = 0; i < n_points; ++i) {
    const double pi = static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double v = firing ? employer_value_firing(pi, gp, d, fc)
                            : employer_value(pi, gp, d, b);
    const double u = employee_value_weak(pi, gp, d, threshold);
    csv += fmt_g9(pi) + "," + fmt_g9(v) + "," + fmt_g9(u) + "\n";
  }
  emit(cfg, "value_grid.csv", csv);
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::string& measure_name, double pi0,
                 double threshold, bool threshold_set) {
  if (!cfg.seed_set) throw ConfigViolation("simulate requires --seed");
  Measure measure = Measure::Employer;
  if (measure_name == "employer") {
    measure = Measure::Employer;
  } else if (measure_name == "given_weak") {
    measure = Measure::GivenWeak;
  } else if (measure_name == "given_strong") {
    measure = Measure::GivenStrong;
  } else {
    throw ConfigViolation("measure must be employer | given_weak | given_strong");
  }
  const GameParams gp = game_params(cfg);
  const SimConfig sim = sim_config(cfg);

  JsonWriter w;
  w.begin_object();
  w.key("config");
  write_config(w, cfg);
  w.field("measure", measure_name).field("pi0", pi0);
  w.key("paths").begin_array();
  for (std::size_t i = 0; i < cfg.paths; ++i) {
    PathSample path = simulate_filter_path(pi0, sim, measure, gp, i);
    if (threshold_set) first_passage(path, threshold);

    std::string csv = path.x.empty() ? "t,pi\n" : "t,pi,x\n";
    for (std::size_t k = 0; k < path.pi.size(); ++k) {
      csv += fmt_g9(path.times[k]) + "," + fmt_g9(path.pi[k]);
      if (!path.x.empty()) csv += "," + fmt_g9(path.x[k]);
      csv += "\n";
    }
    char name[32];
    std::snprintf(name, sizeof(name), "path_%03zu.csv", i);
    const fs::path dir = cfg.out_dir.empty() ? fs::path(".") : fs::path(cfg.out_dir);
    write_file_atomic(dir / name, csv);

    w.begin_object();
    w.field("path", i).field("file", std::string(name));
    if (path.hit_time) {
      w.field("hit_time", *path.hit_time);
    } else if (threshold_set) {
      w.null_field("hit_time");
    }
    w.field("pi_end", path.pi.back())
        .field("clamp_events", static_cast<unsigned long long>(path.clamp_events));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  std::cout << w.str() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg_in, const std::string& battery) {
  if (!cfg_in.seed_set) throw ConfigViolation("verify requires --seed");
  RunConfig cfg = cfg_in;
  if (battery == "quick") {
    // Desk-scale smoke battery; budgets widen with the config, so the
    // checks stay honest at the reduced size.
    cfg.paths = std::min<std::size_t>(cfg.paths, 2000);
    cfg.dt = std::max(cfg.dt, 4e-3);
    cfg.horizon = std::min(cfg.horizon, 50.0);
  } else if (battery != "standard") {
    throw ConfigViolation("battery must be standard | quick");
  }
  const GameParams gp = game_params(cfg);
  McConfig mc{sim_config(cfg), cfg.paths};
  const BatteryReport report = run_standard_battery(gp, mc);

  JsonWriter w;
  w.begin_object();
  w.key("config");
  write_config(w, cfg);
  w.field("battery", battery);
  w.key("checks").begin_array();
  for (const CheckRow& row : report.rows) {
    w.begin_object();
    w.field("name", row.name)
        .field("mean", row.mean)
        .field("stderr", row.std_error)
        .field("target", row.target)
        .field("stat_budget", row.stat_budget)
        .field("det_budget", row.det_budget)
        .field("n_paths", row.n_paths)
        .field("pass", row.pass);
    w.end_object();
  }
  w.end_array();
  w.field("all_pass", report.all_pass);
  w.end_object();
  emit(cfg, "verify_report.json", w.str() + "\n");
  return report.all_pass ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, const std::string& problem, double epsilon,
               const GridConfig& gc_in) {
  const GameParams gp = game_params(cfg);
  const DerivedQuantities d = derived_quantities(gp);
  const GridConfig& gc = gc_in;

  GridSolution sol;
  if (problem == "employer") {
    sol = solve_employer_vi(gp, -epsilon, gc);
  } else if (problem == "employee") {
    sol = solve_employee_bvp(gp, stopping_threshold(gp, d), gc);
  } else {
    throw ConfigViolation("oracle problem must be employer | employee");
  }

  JsonWriter w;
  w.begin_object();
  w.key("config");
  write_config(w, cfg);
  w.field("problem", problem)
      .field("points", sol.pi_grid.size())
      .field("obstacle", sol.obstacle)
      .field("boundary_estimate", sol.boundary_estimate)
      .field("iterations", sol.iterations)
      .field("residual", sol.residual);
  if (problem == "employer")
    w.field("complementarity_residual", max_complementarity_residual(sol, gp));
  w.end_object();
  std::cout << w.str() << "\n";

  if (!cfg.out_dir.empty()) {
    std::string csv = "pi,value\n";
    for (std::size_t i = 0; i < sol.pi_grid.size(); ++i)
      csv += fmt_g9(sol.pi_grid[i]) + "," + fmt_g9(sol.values[i]) + "\n";
    write_file_atomic(fs::path(cfg.out_dir) / ("oracle_" + problem + ".csv"), csv);
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& kind, std::vector<double> grid,
              double pi0, bool pi0_set) {
  if (!cfg.seed_set) throw ConfigViolation("sweep requires --seed");
  const GameParams gp = game_params(cfg);
  const DerivedQuantities d = derived_quantities(gp);
  const double b = stopping_threshold(gp, d);
  const double p_hat = indifference_point(gp, d, b);
  McConfig mc{sim_config(cfg), cfg.paths};

  DeviationReport report;
  if (kind == "employer-threshold") {
    if (grid.empty()) grid = {0.05, 0.10, b, 0.25, 0.35};
    report = employer_deviation_sweep(gp, mc, grid, pi0_set ? pi0 : std::max(p_hat, gp.p));
  } else if (kind == "weak-mixing") {
    if (grid.empty()) grid = {0.0, 0.25, weak_type_mixing(gp.p, p_hat), 0.75, 1.0};
    report = weak_mixing_sweep(gp, mc, grid);
  } else if (kind == "strong-mixing") {
    if (grid.empty()) grid = {0.0, 0.5, 1.0};
    report = strong_mixing_sweep(gp, mc, grid);
  } else {
    throw ConfigViolation("sweep kind must be employer-threshold | weak-mixing | strong-mixing");
  }

  JsonWriter w;
  w.begin_object();
  w.key("config");
  write_config(w, cfg);
  w.field("kind", report.kind)
      .field("equilibrium_index", report.equilibrium_index)
      .field("note", report.note);
  w.key("points").begin_array();
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    w.begin_object();
    w.field("parameter", report.grid[i]);
    w.key("estimate");
    write_estimate(w, report.values[i]);
    w.field("diff_vs_equilibrium", report.diff_mean[i])
        .field("diff_stderr", report.diff_std_error[i]);
    w.end_object();
  }
  w.end_array();
  w.field("pass", report.pass);
  w.end_object();
  std::cout << w.str() << "\n";

  std::string csv = "parameter,mean,stderr,diff_vs_equilibrium,diff_stderr\n";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    csv += fmt_g9(report.grid[i]) + "," + fmt_g9(report.values[i].mean) + "," +
           fmt_g9(report.values[i].std_error) + "," + fmt_g9(report.diff_mean[i]) + "," +
           fmt_g9(report.diff_std_error[i]) + "\n";
  }
  if (!cfg.out_dir.empty())
    write_file_atomic(fs::path(cfg.out_dir) / ("sweep_" + report.kind + ".csv"), csv);
  return report.pass ? 0 : 1;
}

struct CommonOptions {
  std::string config_path;
  double mu0 = 0, mu1 = 0, sigma = 0, p = 0, r = 0, c0 = 0, c1 = 0;
  std::string extension;
  double epsilon = 0, p1 = 0, q = 0;
  std::uint64_t seed = 0;
  std::size_t paths = 0;
  double dt = 0, horizon = 0;
  std::string out_dir, format, scheme;

  CLI::Option* o_config = nullptr;
  CLI::Option *o_mu0 = nullptr, *o_mu1 = nullptr, *o_sigma = nullptr, *o_p = nullptr,
              *o_r = nullptr, *o_c0 = nullptr, *o_c1 = nullptr;
  CLI::Option *o_ext = nullptr, *o_eps = nullptr, *o_p1 = nullptr, *o_q = nullptr;
  CLI::Option *o_seed = nullptr, *o_paths = nullptr, *o_dt = nullptr, *o_horizon = nullptr;
  CLI::Option *o_out = nullptr, *o_format = nullptr, *o_scheme = nullptr;

  void attach(CLI::App& app) {
    o_config = app.add_option("--config", config_path, "JSON config file");
    o_mu0 = app.add_option("--mu0", mu0, "weak-type drift");
    o_mu1 = app.add_option("--mu1", mu1, "strong-type drift");
    o_sigma = app.add_option("--sigma", sigma, "observation volatility");
    o_p = app.add_option("--p", p, "prior probability of the strong type");
    o_r = app.add_option("--r", r, "discount rate");
    o_c0 = app.add_option("--c0", c0, "low salary rate");
    o_c1 = app.add_option("--c1", c1, "high salary rate");
    o_ext = app.add_option("--extension", extension,
                           "none | firing_cost | type_uncertainty | interview");
    o_eps = app.add_option("--epsilon", epsilon, "firing cost");
    o_p1 = app.add_option("--p1", p1, "P(strong belief)");
    o_q = app.add_option("--q", q, "extension conditional probability");
    o_seed = app.add_option("--seed", seed, "RNG seed (required for simulate/verify/sweep)");
    o_paths = app.add_option("--paths", paths, "Monte Carlo path count");
    o_dt = app.add_option("--dt", dt, "simulation time step");
    o_horizon = app.add_option("--horizon", horizon, "simulation horizon");
    o_out = app.add_option("--out", out_dir, "output directory");
    o_format = app.add_option("--format", format, "json | csv");
    o_scheme = app.add_option("--scheme", scheme, "euler_pi | exact_filter");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (o_config->count()) cfg = load_config_file(config_path);
    if (o_mu0->count()) cfg.mu0 = mu0;
    if (o_mu1->count()) cfg.mu1 = mu1;
    if (o_sigma->count()) cfg.sigma = sigma;
    if (o_p->count()) cfg.p = p;
    if (o_r->count()) cfg.r = r;
    if (o_c0->count()) cfg.c0 = c0;
    if (o_c1->count()) cfg.c1 = c1;
    if (o_ext->count()) {
      if (extension == "none") {
        cfg.extension = ExtensionKind::None;
      } else if (extension == "firing_cost") {
        cfg.extension = ExtensionKind::FiringCost;
      } else if (extension == "type_uncertainty") {
        cfg.extension = ExtensionKind::TypeUncertainty;
      } else if (extension == "interview") {
        cfg.extension = ExtensionKind::Interview;
      } else {
        throw ConfigViolation(
            "--extension must be none | firing_cost | type_uncertainty | interview");
      }
    }
    if (o_eps->count()) cfg.epsilon = epsilon;
    if (o_p1->count()) cfg.p1 = p1;
    if (o_q->count()) cfg.q = q;
    if (o_seed->count()) {
      cfg.seed = seed;
      cfg.seed_set = true;
    }
    if (o_paths->count()) cfg.paths = paths;
    if (o_dt->count()) cfg.dt = dt;
    if (o_horizon->count()) cfg.horizon = horizon;
    if (o_out->count()) cfg.out_dir = out_dir;
    if (o_format->count()) {
      if (format != "json" && format != "csv")
        throw ConfigViolation("--format must be json | csv");
      cfg.format = format;
    }
    if (o_scheme->count()) {
      if (scheme == "euler_pi") {
        cfg.scheme = Scheme::EulerOnPi;
      } else if (scheme == "exact_filter") {
        cfg.scheme = Scheme::ExactFilterFromX;
      } else {
        throw ConfigViolation("--scheme must be euler_pi | exact_filter");
      }
    }
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hirefire: equilibria of the hiring-and-firing signaling game"};
  app.require_subcommand(1);

  CommonOptions common;
  common.attach(app);

  CLI::App* eq = app.add_subcommand("equilibrium", "closed-form equilibrium report");
  CLI::App* grid = app.add_subcommand("value-grid", "CSV grid of the value functions");
  std::size_t grid_points = 1001;
  grid->add_option("--points", grid_points, "grid size (>= 2)");
  CLI::App* sim = app.add_subcommand("simulate", "dump belief paths as CSV");
  std::string measure = "employer";
  double pi0 = 0.5;
  double sim_threshold = 0.0;
  sim->add_option("--measure", measure, "employer | given_weak | given_strong");
  sim->add_option("--pi0", pi0, "initial belief");
  CLI::Option* o_thr = sim->add_option("--threshold", sim_threshold,
                                       "record first passage below this level");
  CLI::App* verify = app.add_subcommand("verify", "Monte Carlo verification battery");
  std::string battery = "standard";
  verify->add_option("--battery", battery, "standard | quick");
  CLI::App* oracle = app.add_subcommand("oracle", "finite-difference free-boundary solver");
  std::string problem = "employer";
  double oracle_eps = 0.0;
  GridConfig oracle_grid;
  oracle->add_option("--problem", problem, "employer | employee");
  oracle->add_option("--epsilon", oracle_eps, "firing cost (employer obstacle = -epsilon)");
  oracle->add_option("--points", oracle_grid.points, "grid resolution");
  oracle->add_option("--relaxation", oracle_grid.relaxation, "projected-SOR factor");
  oracle->add_option("--max-iterations", oracle_grid.max_iterations, "sweep cap");
  oracle->add_option("--tolerance", oracle_grid.tolerance, "sweep update tolerance");
  oracle->add_flag("--cold-start", [&oracle_grid](std::int64_t) { oracle_grid.warm_start = false; },
                   "skip the active-set warm start");
  CLI::App* sweep = app.add_subcommand("sweep", "no-profitable-deviation sweeps");
  std::string sweep_kind = "employer-threshold";
  std::vector<double> sweep_grid;
  double sweep_pi0 = 0.0;
  sweep->add_option("--kind", sweep_kind,
                    "employer-threshold | weak-mixing | strong-mixing");
  sweep->add_option("--grid", sweep_grid, "deviation parameter grid")->delimiter(',');
  CLI::Option* o_sweep_pi0 = sweep->add_option("--pi0", sweep_pi0, "employer sweep belief");

  for (CLI::App* sub : {eq, grid, sim, verify, oracle, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
    const RunConfig cfg = common.resolve();
    if (eq->parsed()) return cmd_equilibrium(cfg);
    if (grid->parsed()) return cmd_value_grid(cfg, grid_points);
    if (sim->parsed())
      return cmd_simulate(cfg, measure, pi0, sim_threshold, o_thr->count() > 0);
    if (verify->parsed()) return cmd_verify(cfg, battery);
    if (oracle->parsed()) return cmd_oracle(cfg, problem, oracle_eps, oracle_grid);
    if (sweep->parsed())
      return cmd_sweep(cfg, sweep_kind, sweep_grid, sweep_pi0, o_sweep_pi0->count() > 0);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
