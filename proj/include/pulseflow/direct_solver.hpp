#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pulseflow/geometry.hpp"
#include "pulseflow/inverse.hpp"

namespace pulseflow {

/// Controls for the transient direct solve.
struct DirectOptions {
  int eta_cells = 128;
  int theta_cells = 128;
  int steps_per_period = 512;
  int max_periods = 8;
  /// Periodic state declared when the period-to-period RMS flux change drops
  /// below this fraction of the flux scale.
  double periodicity_tol = 1e-6;
  /// Phases t/T at which fields are recorded during the final period.
  std::vector<double> snapshot_phases = {0.0, 0.25, 0.5, 0.75};
};

/// Result of time-stepping the transformed problem
///   u_t J - nu (u_etaeta + u_thetatheta) = J lambda(t)
/// on the rectangle E' with Crank-Nicolson, zero initial data and Dirichlet
/// walls (plus the symmetry row at eta = 0 for the simply connected ellipse).
struct DirectRun {
  SectionGeometry geometry = Circle(1.0);
  double nu = 0.0;
  double period = 0.0;
  Eigen::ArrayXd eta;
  Eigen::ArrayXd theta;

  Eigen::ArrayXd flux_times; ///< final period
  Eigen::ArrayXd flux;

  std::vector<double> snapshot_phases; ///< actual recorded t/T (step-aligned)
  std::vector<Eigen::MatrixXd> snapshots; ///< (eta points) x (theta points)

  Eigen::ArrayXd period_flux_change; ///< RMS change between consecutive periods
  Eigen::ArrayXd period_energy;      ///< per-period mean of int u^2 J
  int periods_completed = 0;
  double min_value = 0.0;
  double max_value = 0.0;

  /// Bilinear interpolation of a recorded snapshot (theta wraps).
  double interpolate(int snapshot, double eta_q, double theta_q) const;
};

DirectRun direct_solve(const SectionGeometry& g, double nu,
                       const std::function<double(double)>& pressure_gradient, double period,
                       const DirectOptions& options = {});

DirectRun direct_solve(const SectionGeometry& g, double nu,
                       const PressureGradientSeries& pressure_gradient,
                       const DirectOptions& options = {});

/// Deviation summary of one phase, normalized by the peak |w| of the
/// reference solution over the compared points.
struct ProfileDeviation {
  double phase = 0.0;
  double max_abs = 0.0;
  double rms = 0.0;
};

struct ProfileComparison {
  double peak = 0.0; ///< normalization, max |w| of the reference solution
  double max_abs = 0.0;
  double rms = 0.0;
  std::vector<ProfileDeviation> per_phase;
};

/// Samples both semi-axes of the section at the requested phases and reports
/// the deviation between the transient run and the assembled solution. Grid
/// mismatches are handled by interpolation.
ProfileComparison compare_profiles(const DirectRun& run, const FlowSolution& solution,
                                   std::span<const double> phases, int points_per_axis = 64);

} // namespace pulseflow
