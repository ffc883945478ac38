#include "pulseflow/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "pulseflow/io.hpp"
#include "pulseflow/stationary.hpp"
#include "pulseflow/womersley.hpp"

namespace pulseflow {

using json = nlohmann::ordered_json;
using std::numbers::pi;

namespace {

class StageTimer {
public:
  StageTimer() : start_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

private:
  std::chrono::steady_clock::time_point start_;
};

SectionGeometry parse_geometry(const json& j) {
  if (j.contains("circle")) {
    return Circle(j.at("circle").at("radius").get<double>());
  }
  if (j.contains("circular_annulus")) {
    const auto& c = j.at("circular_annulus");
    return CircularAnnulus(c.at("inner_radius").get<double>(),
                           c.at("outer_radius").get<double>());
  }
  if (j.contains("ellipse")) {
    const auto& e = j.at("ellipse");
    if (e.contains("alpha"))
      return ellipse_from_semiaxes(e.at("alpha").get<double>(), e.at("beta").get<double>());
    return Ellipse(e.at("a").get<double>(), e.at("b").get<double>());
  }
  if (j.contains("elliptical_annulus")) {
    const auto& e = j.at("elliptical_annulus");
    if (e.contains("alpha2"))
      return confocal_annulus_from_semiaxes(e.at("alpha2").get<double>(),
                                            e.at("beta2").get<double>(),
                                            e.at("beta1").get<double>());
    return EllipticalAnnulus(e.at("a").get<double>(), e.at("b1").get<double>(),
                             e.at("b2").get<double>());
  }
  throw ConfigError("config: unknown geometry kind");
}

json geometry_to_json(const SectionGeometry& g) {
  json out;
  std::visit(
      [&out](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          out["circle"] = {{"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, CircularAnnulus>) {
          out["circular_annulus"] = {{"inner_radius", s.inner_radius},
                                     {"outer_radius", s.outer_radius}};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          out["ellipse"] = {{"a", s.semi_focal},
                            {"b", s.wall_eta},
                            {"alpha", s.major_semiaxis()},
                            {"beta", s.minor_semiaxis()}};
        } else {
          out["elliptical_annulus"] = {{"a", s.semi_focal},
                                       {"b1", s.inner_eta},
                                       {"b2", s.outer_eta},
                                       {"alpha1", s.inner_major_semiaxis()},
                                       {"beta1", s.inner_minor_semiaxis()},
                                       {"alpha2", s.outer_major_semiaxis()},
                                       {"beta2", s.outer_minor_semiaxis()}};
        }
      },
      g);
  return out;
}

WaveformSource parse_waveform(const json& j) {
  WaveformSource src;
  src.csv = j.at("csv").get<std::string>();
  if (j.contains("period")) src.period = j.at("period").get<double>();
  if (j.contains("modes")) src.mode_count = j.at("modes").get<int>();
  if (j.contains("pearson_gap")) src.pearson_gap = j.at("pearson_gap").get<double>();
  return src;
}

bool same_geometry(const SectionGeometry& a, const SectionGeometry& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& sa) {
        using T = std::decay_t<decltype(sa)>;
        const auto& sb = std::get<T>(b);
        if constexpr (std::is_same_v<T, Circle>) {
          return sa.radius == sb.radius;
        } else if constexpr (std::is_same_v<T, CircularAnnulus>) {
          return sa.inner_radius == sb.inner_radius && sa.outer_radius == sb.outer_radius;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return sa.semi_focal == sb.semi_focal && sa.wall_eta == sb.wall_eta;
        } else {
          return sa.semi_focal == sb.semi_focal && sa.inner_eta == sb.inner_eta &&
                 sa.outer_eta == sb.outer_eta;
        }
      },
      a);
}

json diagnostics_to_json(const FlowDiagnostics& d) {
  return json{{"reynolds", d.reynolds},
              {"womersley", d.womersley},
              {"characteristic_frequency", d.characteristic_frequency},
              {"characteristic_length", d.characteristic_length},
              {"area", d.area},
              {"mean_speed", d.mean_speed},
              {"peak_speed", d.peak_speed},
              {"ellipticity", d.ellipticity},
              {"eccentricity", d.eccentricity}};
}

json series_to_json(const HarmonicSeries& series) {
  json coeffs = json::array();
  for (int m = 0; m <= series.mode_count(); ++m)
    coeffs.push_back({{"m", m},
                      {"re", series.coeff(m).real()},
                      {"im", series.coeff(m).imag()}});
  return coeffs;
}

json truncation_to_json(const TruncationReport& report, bool with_tables) {
  json out{{"mu_threshold", report.mu_threshold},
           {"s_threshold", report.s_threshold},
           {"max_temporal", report.max_temporal},
           {"grid_cells", report.grid_cells},
           {"nstar_mu", report.nstar_mu},
           {"nstar_s", report.nstar_s},
           {"nstar", report.nstar}};
  if (with_tables) {
    json table = json::array();
    for (const TruncationSample& s : report.samples)
      table.push_back({{"m", s.temporal_index}, {"N", s.cutoff}, {"mu", s.mu}, {"s", s.s}});
    out["samples"] = table;
  }
  return out;
}

void dump_json(const json& j, const std::filesystem::path& path) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string profile_header() { return "axis,phase,coordinate,velocity,velocity_over_mean\n"; }

const char* axis_name(Axis axis) { return axis == Axis::Major ? "major" : "minor"; }

} // namespace

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
  }
  try {
    RunConfig cfg;
    cfg.geometry = parse_geometry(j.at("geometry"));
    cfg.nu = j.at("nu").get<double>();
    if (j.contains("waveform")) cfg.waveform = parse_waveform(j.at("waveform"));
    if (j.contains("waveforms")) {
      const auto& list = j.at("waveforms");
      if (!list.is_array() || list.empty())
        throw ConfigError("config: waveforms must be a non-empty array");
      cfg.waveform = parse_waveform(list.at(0));
      for (size_t i = 1; i < list.size(); ++i)
        cfg.extra_waveforms.push_back(parse_waveform(list.at(i)));
    }
    if (j.contains("max_temporal")) cfg.max_temporal = j.at("max_temporal").get<int>();
    if (j.contains("mu_threshold")) cfg.mu_threshold = j.at("mu_threshold").get<double>();
    if (j.contains("s_threshold")) cfg.s_threshold = j.at("s_threshold").get<double>();
    if (j.contains("grid_cells")) cfg.grid_cells = j.at("grid_cells").get<int>();
    if (j.contains("cutoff_cap")) cfg.cutoff_cap = j.at("cutoff_cap").get<int>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    if (j.contains("phases")) cfg.phases = j.at("phases").get<std::vector<double>>();
    if (j.contains("profile_points")) cfg.profile_points = j.at("profile_points").get<int>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("emit_contours")) cfg.emit_contours = j.at("emit_contours").get<bool>();
    if (j.contains("flow_rate")) cfg.flow_rate = j.at("flow_rate").get<double>();
    if (j.contains("oracle")) {
      const auto& o = j.at("oracle");
      if (o.contains("eta_cells")) cfg.oracle.eta_cells = o.at("eta_cells").get<int>();
      if (o.contains("theta_cells")) cfg.oracle.theta_cells = o.at("theta_cells").get<int>();
      if (o.contains("steps_per_period"))
        cfg.oracle.steps_per_period = o.at("steps_per_period").get<int>();
      if (o.contains("max_periods")) cfg.oracle.max_periods = o.at("max_periods").get<int>();
      if (o.contains("periodicity_tol"))
        cfg.oracle.periodicity_tol = o.at("periodicity_tol").get<double>();
    }
    if (!(cfg.mu_threshold > 0.0) || !(cfg.s_threshold > 0.0))
      throw ConfigError("config: thresholds must be positive");
    if (cfg.max_temporal < 0) throw ConfigError("config: max_temporal must be >= 0");
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_config: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

bool ModeBasis::compatible(const RunConfig& cfg, double period_in) const {
  return same_geometry(geometry, cfg.geometry) && nu == cfg.nu && period == period_in &&
         grid_cells == cfg.grid_cells && report.mu_threshold == cfg.mu_threshold &&
         report.s_threshold == cfg.s_threshold && report.max_temporal == cfg.max_temporal;
}

namespace {

PipelineResult run_pipeline_source(const RunConfig& cfg, const WaveformSource& source,
                                   ModeBasis* basis) {
  if (!is_elliptical(cfg.geometry))
    throw ConfigError("run_pipeline: the coupled-mode pipeline needs an elliptical section; "
                      "use the circle-inverse subcommand for circular ones");
  if (!(cfg.nu > 0.0)) throw ConfigError("run_pipeline: nu must be positive");

  StageTimings timings;
  StageTimer timer;

  const SampledWaveform samples = ingest_csv(source.csv, source.period);
  timings.ingest_ms = timer.lap_ms();

  const int mode_count =
      source.mode_count ? *source.mode_count : smallest_mode_count(samples, source.pearson_gap);
  FourierWaveform fw = fourier_fit(samples, mode_count);
  timings.fit_ms = timer.lap_ms();

  if (mode_count > cfg.max_temporal)
    throw ConfigError("run_pipeline: max_temporal (M*) must be at least the waveform mode count");

  TruncationReport report;
  std::vector<ModeStack> stacks;
  if (basis && !basis->stacks.empty()) {
    if (!basis->compatible(cfg, fw.period()))
      throw ConfigError("run_pipeline: cached basis does not match this configuration");
    if (static_cast<int>(basis->stacks.size()) < mode_count + 1)
      throw ConfigError("run_pipeline: cached basis covers fewer modes than the waveform");
    report = basis->report;
    stacks.assign(basis->stacks.begin(), basis->stacks.begin() + mode_count + 1);
    timings.basis_reused = true;
    timings.truncation_ms = 0.0;
    timings.basis_ms = timer.lap_ms();
  } else {
    report = determine_nstar(cfg.geometry, cfg.nu, fw.period(), cfg.max_temporal,
                             cfg.mu_threshold, cfg.s_threshold, cfg.grid_cells, cfg.cutoff_cap,
                             cfg.jobs);
    timings.truncation_ms = timer.lap_ms();
    std::vector<ModeStack> all = solve_basis(cfg.geometry, cfg.nu, fw.period(),
                                             cfg.max_temporal, report.nstar, cfg.grid_cells,
                                             cfg.jobs, true);
    timings.basis_ms = timer.lap_ms();
    if (basis) {
      basis->geometry = cfg.geometry;
      basis->nu = cfg.nu;
      basis->period = fw.period();
      basis->grid_cells = cfg.grid_cells;
      basis->report = report;
      basis->stacks = std::move(all);
      stacks.assign(basis->stacks.begin(), basis->stacks.begin() + mode_count + 1);
    } else {
      all.resize(mode_count + 1);
      stacks = std::move(all);
    }
  }

  PressureGradientSeries lambda = lambda_from_flux(fw, stacks);
  timings.lambda_ms = timer.lap_ms();

  FlowDiagnostics diag = diagnostics(fw, cfg.geometry, cfg.nu);
  FlowSolution solution(cfg.geometry, cfg.nu, std::move(fw), std::move(stacks),
                        std::move(lambda));
  timings.assembly_ms = timer.lap_ms();

  return PipelineResult{std::move(solution), std::move(report), diag, mode_count, timings};
}

} // namespace

PipelineResult run_pipeline(const RunConfig& cfg, ModeBasis* basis) {
  return run_pipeline_source(cfg, cfg.waveform, basis);
}

namespace {

void write_profiles_csv(const std::filesystem::path& path, const FlowSolution& solution,
                        const RunConfig& cfg, double mean_speed) {
  std::ostringstream out;
  out << profile_header();
  for (const double phase : cfg.phases) {
    const double t = phase * solution.waveform().period();
    for (const Axis axis : {Axis::Major, Axis::Minor}) {
      for (const SemiAxisPoint& p :
           semi_axis_points(solution.geometry(), axis, cfg.profile_points)) {
        const double w = solution(t, p.eta, p.theta);
        out << axis_name(axis) << ',' << round_trip(phase) << ',' << round_trip(p.coordinate)
            << ',' << round_trip(w) << ',' << round_trip(w / mean_speed) << '\n';
      }
    }
  }
  write_text_file(path, out.str());
}

void write_lambda_csv(const std::filesystem::path& path, const PressureGradientSeries& lambda,
                      int points = 256) {
  std::ostringstream out;
  out << "t,lambda\n";
  for (int i = 0; i < points; ++i) {
    const double t = lambda.period() * i / static_cast<double>(points);
    out << round_trip(t) << ',' << round_trip(lambda(t)) << '\n';
  }
  write_text_file(path, out.str());
}

void write_timings_json(const std::filesystem::path& path, const StageTimings& t) {
  dump_json(json{{"ingest_ms", t.ingest_ms},
                 {"fit_ms", t.fit_ms},
                 {"truncation_ms", t.truncation_ms},
                 {"basis_ms", t.basis_ms},
                 {"lambda_ms", t.lambda_ms},
                 {"assembly_ms", t.assembly_ms},
                 {"basis_reused", t.basis_reused}},
            path);
}

} // namespace

void write_outputs(const PipelineResult& result, const RunConfig& cfg) {
  ensure_directory(cfg.output_dir);
  const FlowSolution& solution = result.solution;

  write_profiles_csv(cfg.output_dir / "profiles.csv", solution, cfg, result.diag.mean_speed);
  write_lambda_csv(cfg.output_dir / "lambda.csv", solution.pressure_gradient());
  dump_json(truncation_to_json(result.truncation, cfg.emit_contours),
            cfg.output_dir / "truncation.json");

  // max-over-period relative flux round-trip residual
  double residual = 0.0, scale = 0.0;
  constexpr int kFluxSamples = 64;
  for (int i = 0; i < kFluxSamples; ++i) {
    const double t = solution.waveform().period() * i / static_cast<double>(kFluxSamples);
    const double f = solution.waveform()(t);
    residual = std::max(residual, std::abs(solution.recovered_flux(t) - f));
    scale = std::max(scale, std::abs(f));
  }

  json summary{{"geometry", geometry_to_json(solution.geometry())},
               {"nu", solution.kinematic_viscosity()},
               {"period", solution.waveform().period()},
               {"mode_count", result.mode_count},
               {"max_temporal", result.truncation.max_temporal},
               {"nstar", result.truncation.nstar},
               {"nstar_mu", result.truncation.nstar_mu},
               {"nstar_s", result.truncation.nstar_s},
               {"grid_cells", result.truncation.grid_cells},
               {"diagnostics", diagnostics_to_json(result.diag)},
               {"flux_roundtrip_max_rel", residual / std::max(scale, 1e-300)},
               {"waveform_coeffs", series_to_json(solution.waveform())},
               {"lambda_coeffs", series_to_json(solution.pressure_gradient())}};
  dump_json(summary, cfg.output_dir / "summary.json");
  write_timings_json(cfg.output_dir / "timings.json", result.timings);
}

void write_stationary_outputs(const RunConfig& cfg) {
  ensure_directory(cfg.output_dir);
  const StationarySolution solution = stationary_solution(cfg.geometry, cfg.nu, cfg.flow_rate);
  const double mean_speed = cfg.flow_rate / area(cfg.geometry);

  std::ostringstream out;
  out << profile_header();
  if (is_elliptical(cfg.geometry)) {
    for (const Axis axis : {Axis::Major, Axis::Minor}) {
      for (const SemiAxisPoint& p :
           semi_axis_points(cfg.geometry, axis, cfg.profile_points)) {
        const double w = solution.at_elliptic(p.eta, p.theta);
        out << axis_name(axis) << ",0," << round_trip(p.coordinate) << ',' << round_trip(w)
            << ',' << round_trip(w / mean_speed) << '\n';
      }
    }
  } else {
    const bool annulus = std::holds_alternative<CircularAnnulus>(cfg.geometry);
    const double r_lo = annulus ? std::get<CircularAnnulus>(cfg.geometry).inner_radius : 0.0;
    const double r_hi = annulus ? std::get<CircularAnnulus>(cfg.geometry).outer_radius
                                : std::get<Circle>(cfg.geometry).radius;
    for (const Axis axis : {Axis::Major, Axis::Minor}) {
      for (int i = 0; i < cfg.profile_points; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (cfg.profile_points - 1.0);
        const double w = (axis == Axis::Major) ? solution(r, 0.0) : solution(0.0, r);
        out << axis_name(axis) << ",0," << round_trip(r) << ',' << round_trip(w) << ','
            << round_trip(w / mean_speed) << '\n';
      }
    }
  }
  write_text_file(cfg.output_dir / "profiles.csv", out.str());

  json summary{{"geometry", geometry_to_json(cfg.geometry)},
               {"nu", cfg.nu},
               {"flow_rate", cfg.flow_rate},
               {"lambda", solution.pressure_gradient()},
               {"area", area(cfg.geometry)},
               {"mean_speed", mean_speed},
               {"wall_shear_major", solution.wall_shear(0.0)},
               {"wall_shear_minor", solution.wall_shear(0.5 * pi)}};
  dump_json(summary, cfg.output_dir / "summary.json");
}

void write_circle_outputs(const RunConfig& cfg) {
  if (!std::holds_alternative<Circle>(cfg.geometry))
    throw ConfigError("circle-inverse: geometry must be a circle");
  ensure_directory(cfg.output_dir);
  const Circle circle = std::get<Circle>(cfg.geometry);

  const SampledWaveform samples = ingest_csv(cfg.waveform.csv, cfg.waveform.period);
  const int mode_count = cfg.waveform.mode_count
                             ? *cfg.waveform.mode_count
                             : smallest_mode_count(samples, cfg.waveform.pearson_gap);
  const FourierWaveform fw = fourier_fit(samples, mode_count);
  const CircleFlowSolution solution(circle.radius, cfg.nu, fw);
  const FlowDiagnostics diag = diagnostics(fw, cfg.geometry, cfg.nu);

  std::ostringstream out;
  out << profile_header();
  for (const double phase : cfg.phases) {
    const double t = phase * fw.period();
    for (int i = 0; i < cfg.profile_points; ++i) {
      const double r = circle.radius * i / (cfg.profile_points - 1.0);
      const double w = solution(t, r);
      out << "radius," << round_trip(phase) << ',' << round_trip(r) << ',' << round_trip(w)
          << ',' << round_trip(w / diag.mean_speed) << '\n';
    }
  }
  write_text_file(cfg.output_dir / "profiles.csv", out.str());
  write_lambda_csv(cfg.output_dir / "lambda.csv", solution.pressure_gradient());

  json summary{{"geometry", geometry_to_json(cfg.geometry)},
               {"nu", cfg.nu},
               {"period", fw.period()},
               {"mode_count", mode_count},
               {"diagnostics", diagnostics_to_json(diag)},
               {"waveform_coeffs", series_to_json(fw)},
               {"lambda_coeffs", series_to_json(solution.pressure_gradient())}};
  dump_json(summary, cfg.output_dir / "summary.json");
}

void write_oracle_outputs(const RunConfig& cfg) {
  ensure_directory(cfg.output_dir);
  PipelineResult result = run_pipeline(cfg);
  write_outputs(result, cfg);

  DirectOptions options = cfg.oracle;
  options.snapshot_phases = cfg.phases;
  const DirectRun run =
      direct_solve(cfg.geometry, cfg.nu, result.solution.pressure_gradient(), options);
  const ProfileComparison cmp = compare_profiles(run, result.solution, cfg.phases);

  // flux error against the fitted input waveform over the recorded period
  double acc = 0.0, scale = 0.0;
  std::ostringstream flux_csv;
  flux_csv << "t,flux_direct,flux_input\n";
  for (Eigen::Index i = 0; i < run.flux_times.size(); ++i) {
    const double f_in = result.solution.waveform()(run.flux_times(i));
    acc += std::pow(run.flux(i) - f_in, 2);
    scale = std::max(scale, std::abs(f_in));
    flux_csv << round_trip(run.flux_times(i)) << ',' << round_trip(run.flux(i)) << ','
             << round_trip(f_in) << '\n';
  }
  const double flux_rms_rel =
      std::sqrt(acc / static_cast<double>(run.flux_times.size())) / std::max(scale, 1e-300);
  write_text_file(cfg.output_dir / "oracle_flux.csv", flux_csv.str());

  json per_phase = json::array();
  for (const ProfileDeviation& d : cmp.per_phase)
    per_phase.push_back({{"phase", d.phase}, {"max_abs", d.max_abs}, {"rms", d.rms}});
  json changes = json::array();
  for (Eigen::Index i = 0; i < run.period_flux_change.size(); ++i)
    changes.push_back(run.period_flux_change(i));
  dump_json(json{{"flux_rms_rel", flux_rms_rel},
                 {"profile_max_rel", cmp.max_abs},
                 {"profile_rms_rel", cmp.rms},
                 {"profile_peak", cmp.peak},
                 {"periods_completed", run.periods_completed},
                 {"period_flux_change", changes},
                 {"per_phase", per_phase}},
            cfg.output_dir / "oracle_report.json");
}

void write_sweep_outputs(const RunConfig& cfg) {
  ensure_directory(cfg.output_dir);
  ModeBasis basis;
  std::vector<WaveformSource> sources;
  sources.push_back(cfg.waveform);
  sources.insert(sources.end(), cfg.extra_waveforms.begin(), cfg.extra_waveforms.end());
  for (size_t i = 0; i < sources.size(); ++i) {
    RunConfig sub = cfg;
    sub.waveform = sources[i];
    sub.extra_waveforms.clear();
    char name[24];
    std::snprintf(name, sizeof(name), "w%03d", static_cast<int>(i));
    sub.output_dir = cfg.output_dir / name;
    PipelineResult result = run_pipeline_source(sub, sub.waveform, &basis);
    write_outputs(result, sub);
  }
}

} // namespace pulseflow
