#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "pulseflow/pipeline.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
  std::string config_path;
  std::optional<int> jobs;
  std::optional<int> modes;
  std::optional<int> grid_cells;
  std::optional<int> max_temporal;
  std::optional<std::string> output_dir;
  bool emit_contours = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_solver_flags) {
  cmd->add_option("-c,--config", flags.config_path, "JSON configuration file")->required();
  cmd->add_option("-o,--output", flags.output_dir, "override the output directory");
  if (with_solver_flags) {
    cmd->add_option("-j,--jobs", flags.jobs, "worker threads for the cut-off sweep");
    cmd->add_option("-m,--modes", flags.modes, "override the waveform mode count M");
    cmd->add_option("--grid", flags.grid_cells, "override the radial grid cell count J");
    cmd->add_option("--max-temporal", flags.max_temporal, "override M*");
    cmd->add_flag("--emit-contours", flags.emit_contours,
                  "write the per-(m,N) mu/s tables into truncation.json");
  }
}

pulseflow::RunConfig make_config(const CommonFlags& flags) {
  pulseflow::RunConfig cfg = pulseflow::load_config(flags.config_path);
  if (flags.jobs) cfg.jobs = *flags.jobs;
  if (flags.modes) cfg.waveform.mode_count = *flags.modes;
  if (flags.grid_cells) cfg.grid_cells = *flags.grid_cells;
  if (flags.max_temporal) cfg.max_temporal = *flags.max_temporal;
  if (flags.output_dir) cfg.output_dir = *flags.output_dir;
  if (flags.emit_contours) cfg.emit_contours = true;
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulseflow: pulsatile flow in elliptical vessels from a prescribed flow rate"};
  app.require_subcommand(1);

  CommonFlags solve_flags, stationary_flags, circle_flags, oracle_flags, sweep_flags;

  CLI::App* solve = app.add_subcommand(
      "solve", "inverse pipeline: flow rate to pressure gradient and velocity field");
  add_common(solve, solve_flags, true);

  CLI::App* stationary =
      app.add_subcommand("stationary", "steady solution for a constant flow rate");
  add_common(stationary, stationary_flags, false);

  CLI::App* circle = app.add_subcommand(
      "circle-inverse", "inverse problem in the circle via special functions");
  add_common(circle, circle_flags, true);

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "validate a solve against the transient finite-difference solver");
  add_common(oracle, oracle_flags, true);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run several waveforms against one cached mode basis");
  add_common(sweep, sweep_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (solve->parsed()) {
      const pulseflow::RunConfig cfg = make_config(solve_flags);
      const pulseflow::PipelineResult result = pulseflow::run_pipeline(cfg);
      pulseflow::write_outputs(result, cfg);
      std::cout << "solve: N*=" << result.truncation.nstar << " M=" << result.mode_count
                << " -> " << cfg.output_dir.string() << "\n";
    } else if (stationary->parsed()) {
      pulseflow::write_stationary_outputs(make_config(stationary_flags));
    } else if (circle->parsed()) {
      pulseflow::write_circle_outputs(make_config(circle_flags));
    } else if (oracle->parsed()) {
      pulseflow::write_oracle_outputs(make_config(oracle_flags));
    } else if (sweep->parsed()) {
      pulseflow::write_sweep_outputs(make_config(sweep_flags));
    }
  } catch (const pulseflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const pulseflow::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const pulseflow::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
