#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pulseflow/mode_solver.hpp"
#include "pulseflow/waveform.hpp"

namespace pulseflow {

/// Flux carried by the unit-pressure-gradient mode solution,
///   F(m) = pi a^2 int (cosh(2 eta) v_{m,0}(eta) - v_{m,2}(eta)) d eta,
/// integrated over the stack's eta range by Simpson quadrature on the solver
/// grid. Converts flow-rate coefficients into pressure-gradient ones through
/// lambda_m = f_m / F(m).
std::complex<double> flux_functional(const ModeStack& stack);

/// Applies the flux functional mode by mode: lambda_m = f_m / F(m).
PressureGradientSeries lambda_from_flux(const FourierWaveform& fw,
                                        std::span<const ModeStack> basis);

/// Assembled space-time solution of the inverse problem,
///   u(t, eta, theta) = sum_m lambda_m phi_m(eta, theta) exp(i omega_m t),
/// with phi_m built from the unit-gradient mode stacks and the negative
/// indices filled in by conjugacy. Evaluation interpolates eta linearly on
/// the solver grid; immutable and safe to share across threads.
class FlowSolution {
public:
  FlowSolution(SectionGeometry geometry, double nu, FourierWaveform waveform,
               std::vector<ModeStack> basis, PressureGradientSeries lambda);

  const SectionGeometry& geometry() const { return geometry_; }
  double kinematic_viscosity() const { return nu_; }
  const FourierWaveform& waveform() const { return waveform_; }
  const PressureGradientSeries& pressure_gradient() const { return lambda_; }
  const std::vector<ModeStack>& basis() const { return basis_; }
  int cutoff() const { return basis_.front().cutoff; }

  /// Axial velocity at time t and elliptical coordinates (eta, theta).
  double operator()(double t, double eta, double theta) const;

  /// Axial velocity at a Cartesian point of the section.
  double at_cartesian(double t, double x1, double x2) const;

  /// Complex angular assembly phi_m at a point (eta interpolated).
  std::complex<double> mode_field(int m, double eta, double theta) const;

  /// Real field collapsed at time t: row j, column k holds the coefficient of
  /// cos(2k theta) (already including the factor 2 for k >= 1) on eta(j).
  Eigen::MatrixXd time_slice(double t) const;

  /// Numeric flux int u J d_eta d_theta at time t (Simpson along eta on the
  /// solver grid, uniform rule along theta).
  double recovered_flux(double t, int theta_points = 256) const;

  /// Wall shear stress magnitude nu |du/dn| from a one-sided second-order
  /// eta-derivative at the wall, with d/dn = J^{-1/2} d/d_eta.
  double wall_shear(double theta, double t, Wall wall = Wall::Outer) const;

private:
  Eigen::RowVectorXcd interpolated_row(int m, double eta) const;

  SectionGeometry geometry_;
  double nu_;
  FourierWaveform waveform_;
  std::vector<ModeStack> basis_;
  PressureGradientSeries lambda_;
};

/// Convenience builder running the lambda map and wiring the solution.
FlowSolution assemble(SectionGeometry geometry, double nu, FourierWaveform waveform,
                      std::vector<ModeStack> basis);

} // namespace pulseflow
