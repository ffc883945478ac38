#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "pulseflow/direct_solver.hpp"
#include "pulseflow/inverse.hpp"
#include "pulseflow/mode_solver.hpp"
#include "pulseflow/waveform.hpp"

namespace pulseflow {

/// Where and how to read one flow-rate waveform.
struct WaveformSource {
  std::filesystem::path csv;
  std::optional<double> period;    ///< inferred from the samples when absent
  std::optional<int> mode_count;   ///< M; picked by the Pearson gap when absent
  double pearson_gap = 1e-3;       ///< target 1 - r for automatic M selection
};

/// Batch configuration of the inverse pipeline.
struct RunConfig {
  SectionGeometry geometry = Circle(1.0);
  double nu = 0.0;
  WaveformSource waveform;
  std::vector<WaveformSource> extra_waveforms; ///< sweep subcommand only

  int max_temporal = 50;       ///< M*, upper bound of the solved basis
  double mu_threshold = 1e-12;
  double s_threshold = 1e-12;
  int grid_cells = 512;        ///< J
  int cutoff_cap = 64;
  int jobs = 1;
  std::vector<double> phases = {0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875};
  int profile_points = 65;
  std::filesystem::path output_dir = "out";
  bool emit_contours = false;

  double flow_rate = 0.0; ///< stationary subcommand only

  /// Transient-oracle controls (oracle-check subcommand).
  DirectOptions oracle;
};

/// Parses the JSON configuration document.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Wall-clock stage costs in milliseconds.
struct StageTimings {
  double ingest_ms = 0.0;
  double fit_ms = 0.0;
  double truncation_ms = 0.0;
  double basis_ms = 0.0;
  double lambda_ms = 0.0;
  double assembly_ms = 0.0;
  bool basis_reused = false;
};

/// Reusable product of the cut-off sweep: the unit-gradient mode basis for
/// m = 0..max_temporal at the selected cut-off.
struct ModeBasis {
  SectionGeometry geometry = Circle(1.0);
  double nu = 0.0;
  double period = 0.0;
  int grid_cells = 0;
  TruncationReport report;
  std::vector<ModeStack> stacks;

  bool compatible(const RunConfig& cfg, double period_in) const;
};

struct PipelineResult {
  FlowSolution solution;
  TruncationReport truncation;
  FlowDiagnostics diag;
  int mode_count = 0; ///< M actually used
  StageTimings timings;
};

/// Executes ingest, fit, cut-off selection, the flux-to-gradient map and the
/// field assembly. When `basis` is non-null a filled basis is reused (the
/// sweep subcommand) and an empty one is filled for later reuse.
PipelineResult run_pipeline(const RunConfig& cfg, ModeBasis* basis = nullptr);

/// Writes profiles.csv, lambda.csv, truncation.json, summary.json and
/// timings.json into the output directory.
void write_outputs(const PipelineResult& result, const RunConfig& cfg);

/// Steady solve and its outputs (stationary subcommand).
void write_stationary_outputs(const RunConfig& cfg);

/// Circle inverse solve via the special-function route and its outputs
/// (circle-inverse subcommand).
void write_circle_outputs(const RunConfig& cfg);

/// Runs the transient oracle against a freshly assembled solution and writes
/// oracle_report.json plus oracle_flux.csv (oracle-check subcommand).
void write_oracle_outputs(const RunConfig& cfg);

/// Re-runs the tail of the pipeline for every waveform against one shared
/// basis (sweep subcommand); per-waveform outputs land in w000, w001, ...
void write_sweep_outputs(const RunConfig& cfg);

} // namespace pulseflow
