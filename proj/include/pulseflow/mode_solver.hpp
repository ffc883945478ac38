#pragma once

#include <vector>

#include <Eigen/Core>

#include "pulseflow/geometry.hpp"

namespace pulseflow {

/// Discrete solution of the coupled angular-mode boundary value problem for
/// one temporal index m under a unit pressure gradient. Column k holds the
/// complex radial profile of angular mode n = 2k on the uniform eta grid
/// ([0, b] for the ellipse, [b1, b2] for the confocal annulus).
struct ModeStack {
  int temporal_index = 0; ///< m
  int cutoff = 0;         ///< N; angular modes n = 0, 2, ..., 2N
  double semi_focal = 0.0;
  double nu = 0.0;
  double period = 0.0;
  bool annulus = false;
  Eigen::ArrayXd eta;      ///< grid, grid_cells()+1 points
  Eigen::MatrixXcd values; ///< (grid points) x (cutoff+1)

  int grid_cells() const { return static_cast<int>(eta.size()) - 1; }
  double grid_step() const { return eta(1) - eta(0); }

  /// Max-norm of angular mode n = 2k over the grid.
  double mode_max_abs(int k) const { return values.col(k).cwiseAbs().maxCoeff(); }
};

/// Solves the truncated tridiagonal system of two-point boundary value
/// problems for temporal index m and cut-off N on grid_cells uniform cells.
/// One Richardson refinement (a second solve on the doubled grid) is applied
/// by default, which lifts the plain second-order accuracy to fourth order on
/// the returned grid; pass refine = false for the raw discrete solution.
ModeStack solve_modes(const SectionGeometry& g, double nu, double period, int temporal_index,
                      int cutoff, int grid_cells, bool refine = true);

/// Relative magnitude of the last kept angular mode,
/// mu = |v_{m,2N}|_inf / |v_{m,0}|_inf.
double mu_metric(const ModeStack& stack);

/// Truncation sensitivity: max over the shared modes n = 0..2N-2 of the
/// max-norm difference between the cut-offs N and N+1, relative to
/// |v_{m,0}|_inf of the coarser stack.
double s_metric(const ModeStack& stack, const ModeStack& refined_stack);

struct TruncationSample {
  int temporal_index = 0;
  int cutoff = 0;
  double mu = 0.0;
  double s = 0.0;
};

/// Outcome of the cut-off sweep.
struct TruncationReport {
  double mu_threshold = 0.0;
  double s_threshold = 0.0;
  int max_temporal = 0;
  int grid_cells = 0;
  int nstar_mu = 0; ///< smallest N with mu(m,N) <= mu_threshold for all m
  int nstar_s = 0;  ///< smallest N with s(m,N) <= s_threshold for all m
  int nstar = 0;    ///< max of the two
  std::vector<TruncationSample> samples; ///< every (m, N) pair visited
};

/// Sweeps N = 2, 3, ... until both the accuracy metric mu and the sensitivity
/// metric s fall below their thresholds for every temporal index m <=
/// max_temporal. Throws NoConvergence when cutoff_cap is reached first.
/// The per-m solves of each sweep step run on `jobs` threads.
TruncationReport determine_nstar(const SectionGeometry& g, double nu, double period,
                                 int max_temporal, double mu_threshold, double s_threshold,
                                 int grid_cells, int cutoff_cap = 64, int jobs = 1);

/// Unit-pressure-gradient mode stacks for m = 0..max_temporal at a fixed
/// cut-off, the reusable basis of the inverse map.
std::vector<ModeStack> solve_basis(const SectionGeometry& g, double nu, double period,
                                   int max_temporal, int cutoff, int grid_cells,
                                   int jobs = 1, bool refine = true);

} // namespace pulseflow
