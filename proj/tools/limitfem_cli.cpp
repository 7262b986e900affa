#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "limitfem/config.hpp"
#include "limitfem/experiment.hpp"
#include "limitfem/mms.hpp"

namespace {

using namespace limitfem;

// Flag values are kept as text and applied through the same setter as the
// config file so both paths share validation.
struct Overrides {
  std::string config;
  std::map<std::string, std::string> values;
};

void add_common_options(CLI::App& cmd, Overrides& o, bool with_case_selection) {
  cmd.add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
  auto flag = [&](const char* name, const char* key, const char* help) {
    cmd.add_option_function<std::string>(name, [&o, key](const std::string& v) { o.values[key] = v; }, help);
  };
  if (with_case_selection) {
    flag("--domain", "domain", "example1 | example2");
    flag("--case", "case", "temperature case 1 | 2");
    flag("--model", "model", "linear | nonlinear");
  }
  flag("--refinements", "refinements", "global refinements of the unit square");
  flag("--beta", "beta", "strain-limiting parameter beta");
  flag("--a", "a", "strain-limiting exponent a");
  flag("--tol", "tol", "Newton residual tolerance");
  flag("--max-iter", "max_iter", "Newton iteration cap");
  flag("--outdir", "outdir", "output directory (default $LIMITFEM_OUTDIR or ./results)");
  flag("--workers", "workers", "concurrent runs for sweep");
}

RunConfig resolve(const Overrides& o) {
  RunConfig base;
  base.outdir = default_outdir();
  RunConfig cfg = o.config.empty() ? base : load_config(o.config, base);
  for (const auto& [key, value] : o.values) apply_setting(cfg, key, value);
  return cfg;
}

ExperimentSpec to_spec(const RunConfig& cfg) {
  ExperimentSpec s;
  s.domain = cfg.domain;
  s.temperature_case = cfg.temperature_case;
  s.model = cfg.model;
  s.refinements = cfg.refinements;
  s.params = cfg.material;
  s.newton = cfg.newton();
  return s;
}

ArtifactSelection selection(const RunConfig& cfg) {
  return {cfg.exports.vtk, cfg.exports.csv, cfg.exports.profile};
}

void print_history(std::ostream& out, const SolutionState& state) {
  out << "residual history:";
  for (double r : state.newton_history) out << ' ' << std::setprecision(6) << r;
  out << '\n';
}

int cmd_run(const RunConfig& cfg) {
  cfg.validate();
  const ExperimentSpec spec = to_spec(cfg);
  const auto dir = cfg.outdir / run_name(spec.domain, spec.temperature_case, spec.model);
  const ExperimentResult result = run_experiment(spec);
  write_artifacts(spec, result, dir, selection(cfg));
  std::ofstream(dir / "config.txt") << serialize_config(cfg);

  std::cout << run_name(spec.domain, spec.temperature_case, spec.model) << ": "
            << (result.state.converged ? "converged" : "NOT converged") << " after "
            << result.state.iterations() << " Newton iterations, certificate " << std::setprecision(6)
            << result.certificate << ", " << result.wall_seconds << " s\n"
            << "outputs in " << dir.string() << '\n';
  if (!result.state.converged) {
    print_history(std::cerr, result.state);
    return 2;
  }
  return 0;
}

int cmd_mms(const RunConfig& cfg, const Overrides& o) {
  cfg.validate();
  ManufacturedCase mc;
  if (o.values.count("beta")) mc.params.beta = cfg.material.beta;
  if (o.values.count("a")) mc.params.a = cfg.material.a;
  const auto rows = convergence_study(cfg.cycles, mc, cfg.newton());
  print_convergence_table(rows, std::cout);
  std::filesystem::create_directories(cfg.outdir);
  const auto path = cfg.outdir / "convergence.csv";
  write_convergence_csv(rows, path);
  std::cout << "table written to " << path.string() << '\n';
  for (const auto& r : rows) {
    if (!r.converged) {
      std::cerr << "Newton did not converge on cycle " << r.cycle << '\n';
      return 2;
    }
  }
  return 0;
}

struct SweepEntry {
  RunConfig cfg;
  std::string name;
  bool ok = false;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  double certificate = 0.0;
  double seconds = 0.0;
  std::string error;
};

int cmd_sweep(const RunConfig& base) {
  std::vector<SweepEntry> entries;
  for (auto d : {Domain::Example1, Domain::Example2}) {
    for (auto c : {TemperatureCase::Case1, TemperatureCase::Case2}) {
      for (auto m : {Model::Linear, Model::Nonlinear}) {
        SweepEntry e;
        e.cfg = base;
        e.cfg.domain = d;
        e.cfg.temperature_case = c;
        e.cfg.model = m;
        e.cfg.validate();
        e.name = run_name(d, c, m);
        entries.push_back(std::move(e));
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex log;
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      auto& e = entries[i];
      try {
        const ExperimentSpec spec = to_spec(e.cfg);
        const ExperimentResult r = run_experiment(spec);
        write_artifacts(spec, r, base.outdir / e.name, selection(e.cfg));
        e.ok = true;
        e.converged = r.state.converged;
        e.iterations = r.state.iterations();
        e.residual = r.state.newton_history.empty() ? 0.0 : r.state.newton_history.back();
        e.certificate = r.certificate;
        e.seconds = r.wall_seconds;
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
      std::lock_guard lock(log);
      std::cout << e.name << ": " << (e.ok ? (e.converged ? "converged" : "NOT converged") : "failed: " + e.error)
                << '\n';
    }
  };
  const int n = std::min<int>(base.workers, static_cast<int>(entries.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::filesystem::create_directories(base.outdir);
  const auto manifest = base.outdir / "manifest.csv";
  std::ofstream out(manifest);
  out << std::setprecision(17) << "run,status,converged,iterations,final_residual,certificate,wall_seconds\n";
  bool all_good = true;
  for (const auto& e : entries) {
    all_good = all_good && e.ok && e.converged;
    out << e.name << ',' << (e.ok ? "ok" : "error") << ',' << (e.converged ? "true" : "false") << ','
        << e.iterations << ',' << e.residual << ',' << e.certificate << ',' << e.seconds << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write to " + manifest.string() + " failed");
  std::cout << "manifest written to " << manifest.string() << '\n';
  return all_good ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Q1 finite elements for strain-limiting thermoelasticity"};
  app.require_subcommand(1);

  Overrides run_o, mms_o, sweep_o;
  auto* run = app.add_subcommand("run", "solve one configuration and export fields");
  add_common_options(*run, run_o, true);
  auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  add_common_options(*mms, mms_o, false);
  mms->add_option_function<std::string>("--cycles", [&](const std::string& v) { mms_o.values["cycles"] = v; },
                                        "number of refinement cycles");
  auto* sweep = app.add_subcommand("sweep", "all 2 x 2 x 2 domain/case/model combinations");
  add_common_options(*sweep, sweep_o, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(resolve(run_o));
    if (*mms) {
      RunConfig cfg = resolve(mms_o);
      // The manufactured case fixes its own material; only Newton settings apply.
      cfg.model = Model::Linear;
      return cmd_mms(cfg, mms_o);
    }
    return cmd_sweep(resolve(sweep_o));
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
