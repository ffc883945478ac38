#include "pulseflow/direct_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "pulseflow/quadrature.hpp"

namespace pulseflow {

using std::numbers::pi;

namespace {

struct TransientGrid {
  bool annulus = false;
  int eta_cells = 0, theta_cells = 0;
  double h_eta = 0.0, h_theta = 0.0;
  Eigen::ArrayXd eta, theta;
  Eigen::ArrayXXd weight; ///< Jacobian on the full grid, (eta points) x (theta points)
  int first_row = 0;      ///< first eta row carrying unknowns
  int last_row = 0;       ///< last eta row carrying unknowns (inclusive)

  int unknown_rows() const { return last_row - first_row + 1; }
  int index(int j, int k) const { return (j - first_row) * theta_cells + k; }
};

TransientGrid make_grid(const SectionGeometry& g, const DirectOptions& o) {
  if (o.eta_cells < 64 || o.theta_cells < 64)
    throw InvalidGrid("direct_solve: need at least a 64x64 grid");
  if (o.steps_per_period < 16) throw InvalidInput("direct_solve: too few steps per period");

  TransientGrid grid;
  grid.annulus = std::holds_alternative<EllipticalAnnulus>(g);
  if (!grid.annulus && !std::holds_alternative<Ellipse>(g))
    throw UnsupportedGeometry("direct_solve: circular sections are served by the closed forms");
  const Eigen::Vector2d range = eta_range(g);
  grid.eta_cells = o.eta_cells;
  grid.theta_cells = o.theta_cells;
  grid.eta = Eigen::ArrayXd::LinSpaced(o.eta_cells + 1, range(0), range(1));
  grid.h_eta = grid.eta(1) - grid.eta(0);
  grid.h_theta = 2.0 * pi / o.theta_cells;
  grid.theta = Eigen::ArrayXd::LinSpaced(o.theta_cells, 0.0, 2.0 * pi - grid.h_theta);
  grid.weight.resize(o.eta_cells + 1, o.theta_cells);
  for (int j = 0; j <= o.eta_cells; ++j)
    for (int k = 0; k < o.theta_cells; ++k)
      grid.weight(j, k) = jacobian(g, grid.eta(j), grid.theta(k));
  grid.first_row = grid.annulus ? 1 : 0;
  grid.last_row = o.eta_cells - 1;
  return grid;
}

double grid_integral(const TransientGrid& grid, const Eigen::ArrayXXd& field) {
  Eigen::ArrayXd per_theta(grid.theta_cells);
  for (int k = 0; k < grid.theta_cells; ++k)
    per_theta(k) = simpson_uniform((field.col(k) * grid.weight.col(k)).eval(), grid.h_eta);
  return per_theta.sum() * grid.h_theta;
}

// Five-point Laplacian of the full field (walls held at zero, theta wraps,
// ghost row u(-1,k) = u(1,k) below eta = 0 for the simply connected case).
void apply_laplacian(const TransientGrid& grid, const Eigen::ArrayXXd& u, Eigen::ArrayXXd& lap) {
  const double ie = 1.0 / (grid.h_eta * grid.h_eta);
  const double it = 1.0 / (grid.h_theta * grid.h_theta);
  const int kmax = grid.theta_cells;
  lap.setZero(u.rows(), u.cols());
  for (int j = grid.first_row; j <= grid.last_row; ++j) {
    for (int k = 0; k < kmax; ++k) {
      const double up = u(j + 1, k);
      const double down = (j == 0) ? u(1, k) : u(j - 1, k);
      const double left = u(j, (k + kmax - 1) % kmax);
      const double right = u(j, (k + 1) % kmax);
      lap(j, k) = ie * (up + down - 2.0 * u(j, k)) + it * (left + right - 2.0 * u(j, k));
    }
  }
}

} // namespace

double DirectRun::interpolate(int snapshot, double eta_q, double theta_q) const {
  const Eigen::MatrixXd& field = snapshots.at(snapshot);
  const double h_eta = eta(1) - eta(0);
  const int kmax = static_cast<int>(theta.size());
  const double h_theta = 2.0 * pi / kmax;

  double s = (eta_q - eta(0)) / h_eta;
  s = std::clamp(s, 0.0, static_cast<double>(eta.size() - 1));
  const int j = std::min(static_cast<int>(s), static_cast<int>(eta.size()) - 2);
  const double wj = s - j;

  double r = theta_q / h_theta;
  r -= std::floor(r / kmax) * kmax;
  const int k = static_cast<int>(r) % kmax;
  const double wk = r - std::floor(r);
  const int k1 = (k + 1) % kmax;

  return (1.0 - wj) * ((1.0 - wk) * field(j, k) + wk * field(j, k1)) +
         wj * ((1.0 - wk) * field(j + 1, k) + wk * field(j + 1, k1));
}

DirectRun direct_solve(const SectionGeometry& g, double nu,
                       const std::function<double(double)>& pressure_gradient, double period,
                       const DirectOptions& options) {
  if (!(nu > 0.0) || !(period > 0.0))
    throw InvalidInput("direct_solve: viscosity and period must be positive");
  const TransientGrid grid = make_grid(g, options);
  const double dt = period / options.steps_per_period;
  const int unknowns = grid.unknown_rows() * grid.theta_cells;
  const double ie = 1.0 / (grid.h_eta * grid.h_eta);
  const double it = 1.0 / (grid.h_theta * grid.h_theta);

  // Implicit operator J/dt - theta nu L; theta = 1/2 for the Crank-Nicolson
  // steps and 1 for the damped startup steps.
  const auto assemble = [&](double theta) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(unknowns) * 5);
    for (int j = grid.first_row; j <= grid.last_row; ++j) {
      for (int k = 0; k < grid.theta_cells; ++k) {
        const int p = grid.index(j, k);
        triplets.emplace_back(p, p, grid.weight(j, k) / dt + 2.0 * theta * nu * (ie + it));
        const int left = grid.index(j, (k + grid.theta_cells - 1) % grid.theta_cells);
        const int right = grid.index(j, (k + 1) % grid.theta_cells);
        triplets.emplace_back(p, left, -theta * nu * it);
        triplets.emplace_back(p, right, -theta * nu * it);
        if (j == 0) {
          triplets.emplace_back(p, grid.index(1, k), -2.0 * theta * nu * ie); // ghost row
        } else {
          if (j - 1 >= grid.first_row)
            triplets.emplace_back(p, grid.index(j - 1, k), -theta * nu * ie);
          if (j + 1 <= grid.last_row)
            triplets.emplace_back(p, grid.index(j + 1, k), -theta * nu * ie);
        }
      }
    }
    Eigen::SparseMatrix<double> lhs(unknowns, unknowns);
    lhs.setFromTriplets(triplets.begin(), triplets.end());
    return lhs;
  };

  Eigen::SparseLU<Eigen::SparseMatrix<double>> factor;
  factor.compute(assemble(0.5));
  if (factor.info() != Eigen::Success)
    throw SolverSingular("direct_solve: Crank-Nicolson operator factorization failed");
  // Rannacher startup: backward-Euler steps damp the stiff components kicked
  // by the impulsive start (Crank-Nicolson alone leaves them ringing near the
  // focal corner where the jacobian weight vanishes).
  constexpr int kStartupSteps = 4;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> startup_factor;
  startup_factor.compute(assemble(1.0));
  if (startup_factor.info() != Eigen::Success)
    throw SolverSingular("direct_solve: startup operator factorization failed");

  DirectRun run;
  run.geometry = g;
  run.nu = nu;
  run.period = period;
  run.eta = grid.eta;
  run.theta = grid.theta;

  Eigen::ArrayXXd u = Eigen::ArrayXXd::Zero(grid.eta_cells + 1, grid.theta_cells);
  Eigen::ArrayXXd lap(u.rows(), u.cols());
  Eigen::VectorXd rhs(unknowns), x(unknowns);
  Eigen::ArrayXd flux_prev(options.steps_per_period), flux_now(options.steps_per_period);
  std::vector<double> period_change, period_energy;

  // Snapshot step indices within a period (deduplicated, sorted).
  std::vector<std::pair<int, double>> snap_steps;
  for (double phase : options.snapshot_phases) {
    const double wrapped = phase - std::floor(phase);
    const int step = static_cast<int>(std::lround(wrapped * options.steps_per_period)) %
                     options.steps_per_period;
    snap_steps.emplace_back(step, static_cast<double>(step) / options.steps_per_period);
  }

  run.min_value = run.max_value = 0.0;
  int recording_period = -1; // set once periodicity is reached
  bool converged = false;

  for (int p = 0; p < options.max_periods; ++p) {
    const bool recording = (p == recording_period);
    double energy = 0.0;
    for (int n = 0; n < options.steps_per_period; ++n) {
      const double t = (static_cast<double>(p) * options.steps_per_period + n) * dt;
      if (recording) {
        for (size_t snap = 0; snap < snap_steps.size(); ++snap) {
          if (snap_steps[snap].first == n) {
            run.snapshot_phases.push_back(snap_steps[snap].second);
            run.snapshots.emplace_back(u.matrix());
          }
        }
      }
      const bool startup = (p == 0 && n < kStartupSteps);
      const double lambda_at = pressure_gradient(startup ? t + dt : t + 0.5 * dt);
      if (startup) {
        for (int j = grid.first_row; j <= grid.last_row; ++j)
          for (int k = 0; k < grid.theta_cells; ++k)
            rhs(grid.index(j, k)) = grid.weight(j, k) * (u(j, k) / dt + lambda_at);
        x = startup_factor.solve(rhs);
      } else {
        apply_laplacian(grid, u, lap);
        for (int j = grid.first_row; j <= grid.last_row; ++j)
          for (int k = 0; k < grid.theta_cells; ++k)
            rhs(grid.index(j, k)) = grid.weight(j, k) * (u(j, k) / dt + lambda_at) +
                                    0.5 * nu * lap(j, k);
        x = factor.solve(rhs);
      }
      for (int j = grid.first_row; j <= grid.last_row; ++j)
        for (int k = 0; k < grid.theta_cells; ++k) u(j, k) = x(grid.index(j, k));

      run.min_value = std::min(run.min_value, u.minCoeff());
      run.max_value = std::max(run.max_value, u.maxCoeff());
      flux_now(n) = grid_integral(grid, u);
      energy += grid_integral(grid, (u * u).eval());
    }
    period_energy.push_back(energy / options.steps_per_period);

    if (recording) {
      run.flux = flux_now;
      run.flux_times.resize(options.steps_per_period);
      for (int n = 0; n < options.steps_per_period; ++n)
        run.flux_times(n) = (n + 1) * dt; // flux recorded at the end of each step
      run.periods_completed = p + 1;
      converged = true;
      break;
    }

    if (p > 0) {
      const double scale = std::max(flux_now.abs().maxCoeff(), 1e-300);
      const double change =
          std::sqrt((flux_now - flux_prev).square().mean()) / scale;
      period_change.push_back(change);
      if (change <= options.periodicity_tol && recording_period < 0)
        recording_period = p + 1;
      if (recording_period >= options.max_periods)
        throw NotPeriodic(
            "direct_solve: periodic state reached only on the final allowed period; "
            "raise max_periods by one to record results");
    }
    flux_prev = flux_now;
  }

  if (!converged)
    throw NotPeriodic("direct_solve: no periodic state within " +
                      std::to_string(options.max_periods) + " periods");

  run.period_flux_change =
      Eigen::Map<Eigen::ArrayXd>(period_change.data(), period_change.size());
  run.period_energy = Eigen::Map<Eigen::ArrayXd>(period_energy.data(), period_energy.size());
  return run;
}

DirectRun direct_solve(const SectionGeometry& g, double nu,
                       const PressureGradientSeries& pressure_gradient,
                       const DirectOptions& options) {
  return direct_solve(
      g, nu, [&pressure_gradient](double t) { return pressure_gradient(t); },
      pressure_gradient.period(), options);
}

ProfileComparison compare_profiles(const DirectRun& run, const FlowSolution& solution,
                                   std::span<const double> phases, int points_per_axis) {
  ProfileComparison cmp;
  const auto minor_pts = semi_axis_points(run.geometry, Axis::Minor, points_per_axis);
  const auto major_pts = semi_axis_points(run.geometry, Axis::Major, points_per_axis);

  struct Sample {
    double reference, candidate;
  };
  std::vector<std::vector<Sample>> samples(phases.size());

  for (size_t ip = 0; ip < phases.size(); ++ip) {
    // nearest recorded snapshot
    int best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (size_t s = 0; s < run.snapshot_phases.size(); ++s) {
      const double gap = std::abs(run.snapshot_phases[s] - (phases[ip] - std::floor(phases[ip])));
      if (gap < best_gap) {
        best_gap = gap;
        best = static_cast<int>(s);
      }
    }
    const double t = run.snapshot_phases[best] * run.period;
    for (const auto* axis : {&minor_pts, &major_pts}) {
      for (const SemiAxisPoint& p : *axis) {
        const double reference = solution(t, p.eta, p.theta);
        const double candidate = run.interpolate(best, p.eta, p.theta);
        samples[ip].push_back({reference, candidate});
        cmp.peak = std::max(cmp.peak, std::abs(reference));
      }
    }
  }

  const double scale = std::max(cmp.peak, 1e-300);
  for (size_t ip = 0; ip < phases.size(); ++ip) {
    ProfileDeviation dev;
    dev.phase = phases[ip];
    double acc = 0.0;
    for (const Sample& s : samples[ip]) {
      const double d = std::abs(s.candidate - s.reference) / scale;
      dev.max_abs = std::max(dev.max_abs, d);
      acc += d * d;
    }
    dev.rms = std::sqrt(acc / samples[ip].size());
    cmp.max_abs = std::max(cmp.max_abs, dev.max_abs);
    cmp.rms = std::max(cmp.rms, dev.rms);
    cmp.per_phase.push_back(dev);
  }
  return cmp;
}

} // namespace pulseflow
