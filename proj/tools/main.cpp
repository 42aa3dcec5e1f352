#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "kuramoto/dynamics.hpp"
#include "kuramoto/experiments.hpp"

namespace {

int dispatch(const CLI::App& app, const kuramoto::ExperimentConfig& cfg) {
  using namespace kuramoto;
  if (app.got_subcommand("simulate")) {
    return run_simulate(cfg, std::cout, std::cerr);
  }
  if (app.got_subcommand("bounds")) return run_bounds(cfg, std::cout, std::cerr);
  if (app.got_subcommand("fixedpoint")) {
    return run_fixedpoint(cfg, std::cout, std::cerr);
  }
  if (app.got_subcommand("threshold")) {
    return run_threshold(cfg, std::cout, std::cerr);
  }
  if (app.got_subcommand("spectrum")) {
    return run_spectrum(cfg, std::cout, std::cerr);
  }
  if (app.got_subcommand("sweep")) return run_sweep(cfg, std::cout, std::cerr);
  throw kuramoto::ConfigError("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coupled-oscillator synchronization toolbox: simulation, "
      "critical-coupling bounds, fixed points, and threshold search on "
      "connected graphs"};
  app.fallthrough();  // options may appear after the subcommand name
  // --h is the step-size option, so help loses its single-dash short form.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "Read options from a flat key=value file");

  kuramoto::ExperimentConfig cfg;
  bool dump_config = false;

  app.add_option("--graph", cfg.graph_spec,
                 "Graph: edge-list file path or gen:<name>:<N> "
                 "(complete|path|cycle|star)")
      ->capture_default_str();
  app.add_option("--omega", cfg.omega_spec,
                 "Frequencies: vector file path, normal:<sigma>, or zero")
      ->capture_default_str();
  app.add_option("--k", cfg.k_spec,
                 "Coupling: value, or lo:hi:steps (sweep grid / threshold "
                 "bracket)")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Base RNG seed (required for random omega)");
  app.add_option("--seeds", cfg.seeds, "Seed replicates per coupling (sweep)")
      ->capture_default_str();
  app.add_option("--out", cfg.out_dir, "Directory for CSV outputs")
      ->capture_default_str();
  app.add_option("--h,--step", cfg.step, "Integrator step size")
      ->capture_default_str();
  app.add_option("--t-end", cfg.t_end,
                 "Simulation horizon (0 = pick from coupling and graph)")
      ->capture_default_str();
  app.add_option("--record-every", cfg.record_every,
                 "Record every this many steps")
      ->capture_default_str();
  app.add_option("--tail-fraction", cfg.tail_fraction,
                 "Fraction of the trace inspected for synchronization")
      ->capture_default_str();
  app.add_option("--residual-tol", cfg.residual_tol,
                 "Phase-velocity disagreement tolerance for sync")
      ->capture_default_str();
  app.add_option("--tol-k", cfg.tol_k, "Bisection width for threshold search")
      ->capture_default_str();
  app.add_option("--picard-tol", cfg.picard_tol,
                 "Fixed-point iteration tolerance")
      ->capture_default_str();
  app.add_option("--picard-max-iter", cfg.picard_max_iter,
                 "Fixed-point iteration cap")
      ->capture_default_str();
  app.add_option("--samples", cfg.infnorm_samples,
                 "Sample count for the infinity-norm bound estimate")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format: json or csv")
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads (0 = hardware)")
      ->capture_default_str();
  app.add_flag("--dump-config", dump_config,
               "Print the effective configuration and exit");

  app.add_subcommand("simulate", "Integrate the dynamics and test for sync");
  app.add_subcommand("bounds", "Critical-coupling bound report");
  app.add_subcommand("fixedpoint", "Solve for the phase-locked state");
  app.add_subcommand("threshold", "Bisect for the smallest locking coupling");
  app.add_subcommand("spectrum", "Laplacian eigenvalues and pseudoinverse norm");
  app.add_subcommand("sweep", "Coupling x seed grid of simulations");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kuramoto::kExitConfig;
  }

  if (dump_config) {
    std::cout << app.config_to_str(true, true);
    return kuramoto::kExitOk;
  }

  try {
    return dispatch(app, cfg);
  } catch (const kuramoto::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kuramoto::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kuramoto::kExitConfig;
  } catch (const kuramoto::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kuramoto::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kuramoto::kExitNumerical;
  }
}
