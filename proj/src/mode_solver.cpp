#include "pulseflow/mode_solver.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include <Eigen/Dense>

namespace pulseflow {

namespace {

using std::numbers::pi;

template <class Real>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

// Block-tridiagonal elimination over the eta grid. Each grid row carries one
// dense (N+1)x(N+1) block coupling the angular modes; the off-diagonal blocks
// are scalar multiples of the identity coming from the second derivative.
template <class Real>
ComplexMatrix<Real> solve_coupled(double eta_lo, double eta_hi, bool neumann_at_lo,
                                  double semi_focal, double nu, double omega, int cutoff,
                                  int cells) {
  using Complex = std::complex<Real>;
  const int nmodes = cutoff + 1;
  const int rows = cells + 1;
  const Real h = static_cast<Real>((eta_hi - eta_lo) / cells);
  const Real inv_h2 = Real(1) / (h * h);
  const Complex coupling =
      Complex(0, 1) * static_cast<Real>(semi_focal * semi_focal * omega / nu);
  const Real rhs0_scale = static_cast<Real>(semi_focal * semi_focal / (2.0 * nu));

  ComplexMatrix<Real> diag(nmodes, nmodes);
  ComplexMatrix<Real> panel(nmodes, nmodes); // S_j^{-1} U_j, kept for back-substitution
  ComplexVector<Real> partial(nmodes);       // S_j^{-1} adjusted rhs
  std::vector<ComplexMatrix<Real>> panels(rows);
  std::vector<ComplexVector<Real>> partials(rows);

  const auto dirichlet = [&](int j) {
    return !(j > 0 && j < cells) && !(j == 0 && neumann_at_lo);
  };

  for (int j = 0; j < rows; ++j) {
    const Real sub = (j == 0 || dirichlet(j)) ? Real(0) : inv_h2;
    Real super = 0;
    if (j < cells && !dirichlet(j)) super = (j == 0) ? Real(2) * inv_h2 : inv_h2;

    ComplexVector<Real> rhs = ComplexVector<Real>::Zero(nmodes);
    if (dirichlet(j)) {
      diag.setIdentity(nmodes, nmodes);
    } else {
      const Real eta = static_cast<Real>(eta_lo) + j * h;
      const Real ch = std::cosh(Real(2) * eta);
      diag.setZero(nmodes, nmodes);
      for (int k = 0; k < nmodes; ++k) {
        diag(k, k) = -Real(2) * inv_h2 - Real(4.0) * Real(k) * Real(k) -
                     Real(0.5) * coupling * ch;
        if (k == 0) {
          diag(0, 1) = Real(0.5) * coupling;
        } else {
          diag(k, k - 1) = Real(0.25) * coupling;
          if (k + 1 < nmodes) diag(k, k + 1) = Real(0.25) * coupling;
        }
      }
      rhs(0) = -rhs0_scale * ch;
      rhs(1) = Real(0.5) * rhs0_scale;
    }

    if (j > 0 && sub != Real(0)) {
      diag.noalias() -= sub * panels[j - 1];
      rhs.noalias() -= sub * partials[j - 1];
    }
    Eigen::PartialPivLU<ComplexMatrix<Real>> lu(diag);
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() < Real(1e-280))
      throw SolverSingular("solve_modes: singular block at grid row " + std::to_string(j));
    panel.setZero(nmodes, nmodes);
    if (super != Real(0)) panel = lu.solve((super * ComplexMatrix<Real>::Identity(nmodes, nmodes)).eval());
    partial = lu.solve(rhs);
    panels[j] = panel;
    partials[j] = partial;
  }

  ComplexMatrix<Real> solution(rows, nmodes);
  ComplexVector<Real> x = partials[cells];
  solution.row(cells) = x.transpose();
  for (int j = cells - 1; j >= 0; --j) {
    x = partials[j] - panels[j] * x;
    solution.row(j) = x.transpose();
  }
  return solution;
}

using SolverReal = long double;

Eigen::MatrixXcd to_double(const ComplexMatrix<SolverReal>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(i, j) = std::complex<double>(static_cast<double>(m(i, j).real()),
                                       static_cast<double>(m(i, j).imag()));
  return out;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  jobs = std::min(std::max(jobs, 1), count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

} // namespace

ModeStack solve_modes(const SectionGeometry& g, double nu, double period, int temporal_index,
                      int cutoff, int grid_cells, bool refine) {
  if (!is_elliptical(g))
    throw UnsupportedGeometry("solve_modes: circular sections have no coupled-mode system");
  if (!(nu > 0.0) || !(period > 0.0))
    throw InvalidInput("solve_modes: viscosity and period must be positive");
  if (cutoff < 2) throw InvalidInput("solve_modes: cut-off must be at least 2");
  if (grid_cells < 64) throw InvalidGrid("solve_modes: need at least 64 grid cells");

  const Eigen::Vector2d range = eta_range(g);
  const bool is_annulus = std::holds_alternative<EllipticalAnnulus>(g);
  const double a = semi_focal(g);
  const double omega = 2.0 * pi * temporal_index / period;

  auto raw = solve_coupled<SolverReal>(range(0), range(1), !is_annulus, a, nu, omega, cutoff,
                                       grid_cells);
  Eigen::MatrixXcd values;
  if (refine) {
    const auto fine = solve_coupled<SolverReal>(range(0), range(1), !is_annulus, a, nu, omega,
                                                cutoff, 2 * grid_cells);
    ComplexMatrix<SolverReal> extrapolated(raw.rows(), raw.cols());
    for (Eigen::Index j = 0; j < raw.rows(); ++j)
      extrapolated.row(j) =
          (SolverReal(4) * fine.row(2 * j) - raw.row(j)) / SolverReal(3);
    values = to_double(extrapolated);
  } else {
    values = to_double(raw);
  }

  ModeStack stack;
  stack.temporal_index = temporal_index;
  stack.cutoff = cutoff;
  stack.semi_focal = a;
  stack.nu = nu;
  stack.period = period;
  stack.annulus = is_annulus;
  stack.eta = Eigen::ArrayXd::LinSpaced(grid_cells + 1, range(0), range(1));
  stack.values = std::move(values);
  return stack;
}

double mu_metric(const ModeStack& stack) {
  const double reference = stack.mode_max_abs(0);
  if (reference == 0.0)
    throw DegenerateReference("mu_metric: vanishing n=0 reference mode");
  return stack.mode_max_abs(stack.cutoff) / reference;
}

double s_metric(const ModeStack& stack, const ModeStack& refined_stack) {
  if (refined_stack.cutoff != stack.cutoff + 1 ||
      refined_stack.temporal_index != stack.temporal_index ||
      refined_stack.eta.size() != stack.eta.size())
    throw InvalidInput("s_metric: stacks must share m and grid and differ by one in cut-off");
  const double reference = stack.mode_max_abs(0);
  if (reference == 0.0)
    throw DegenerateReference("s_metric: vanishing n=0 reference mode");
  double worst = 0.0;
  for (int k = 0; k <= stack.cutoff - 1; ++k) {
    const double diff =
        (stack.values.col(k) - refined_stack.values.col(k)).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
  }
  return worst / reference;
}

TruncationReport determine_nstar(const SectionGeometry& g, double nu, double period,
                                 int max_temporal, double mu_threshold, double s_threshold,
                                 int grid_cells, int cutoff_cap, int jobs) {
  if (max_temporal < 0) throw InvalidInput("determine_nstar: max_temporal must be >= 0");
  if (!(mu_threshold > 0.0) || !(s_threshold > 0.0))
    throw InvalidInput("determine_nstar: thresholds must be positive");

  TruncationReport report;
  report.mu_threshold = mu_threshold;
  report.s_threshold = s_threshold;
  report.max_temporal = max_temporal;
  report.grid_cells = grid_cells;
  report.nstar_mu = report.nstar_s = 0;

  const int count = max_temporal + 1;
  std::vector<ModeStack> current(count), next(count);
  parallel_for(count, jobs, [&](int m) {
    current[m] = solve_modes(g, nu, period, m, 2, grid_cells, false);
  });

  for (int n = 2; n <= cutoff_cap; ++n) {
    parallel_for(count, jobs, [&](int m) {
      next[m] = solve_modes(g, nu, period, m, n + 1, grid_cells, false);
    });
    double mu_worst = 0.0, s_worst = 0.0;
    for (int m = 0; m < count; ++m) {
      const double mu = mu_metric(current[m]);
      const double s = s_metric(current[m], next[m]);
      report.samples.push_back({m, n, mu, s});
      mu_worst = std::max(mu_worst, mu);
      s_worst = std::max(s_worst, s);
    }
    if (report.nstar_mu == 0 && mu_worst <= mu_threshold) report.nstar_mu = n;
    if (report.nstar_s == 0 && s_worst <= s_threshold) report.nstar_s = n;
    if (report.nstar_mu > 0 && report.nstar_s > 0) {
      report.nstar = std::max(report.nstar_mu, report.nstar_s);
      return report;
    }
    current.swap(next);
  }
  throw NoConvergence("determine_nstar: thresholds not met below the cut-off cap of " +
                      std::to_string(cutoff_cap));
}

std::vector<ModeStack> solve_basis(const SectionGeometry& g, double nu, double period,
                                   int max_temporal, int cutoff, int grid_cells, int jobs,
                                   bool refine) {
  std::vector<ModeStack> basis(max_temporal + 1);
  parallel_for(max_temporal + 1, jobs, [&](int m) {
    basis[m] = solve_modes(g, nu, period, m, cutoff, grid_cells, refine);
  });
  return basis;
}

} // namespace pulseflow
