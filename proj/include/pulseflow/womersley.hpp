#pragma once

#include <complex>

#include "pulseflow/waveform.hpp"

namespace pulseflow {

/// Flux-to-pressure-gradient map for pulsatile flow in a circular pipe.
/// Oscillatory modes go through the hypergeometric transfer function
///   lambda_m = f_m i omega_m / (pi R^2 (1 - 0F1r(;2;z) / 0F1r(;1;z))),
///   z = i Wo_{R,m}^2 / 4,
/// and the mean goes through the steady Poiseuille map 8 nu f_0 / (pi R^4).
PressureGradientSeries lambda_from_flux_circle(double radius, double nu,
                                               const FourierWaveform& fw);

/// Radial velocity coefficient of one oscillatory mode (omega != 0):
///   w_m(r) = (1 - J0(e^{i 3 pi/4} Wo_{r,m}) / J0(e^{i 3 pi/4} Wo_{R,m}))
///            * lambda_m / (i omega).
std::complex<double> velocity_coeff_circle(double radius, double nu, double omega,
                                           std::complex<double> lambda_coeff, double r);

/// Assembled pulsatile solution in the circle for a prescribed flow rate.
class CircleFlowSolution {
public:
  CircleFlowSolution(double radius, double nu, FourierWaveform waveform);

  double radius() const { return radius_; }
  double kinematic_viscosity() const { return nu_; }
  const FourierWaveform& waveform() const { return waveform_; }
  const PressureGradientSeries& pressure_gradient() const { return lambda_; }

  /// Axial velocity at time t and radius r.
  double operator()(double t, double r) const;

  /// Complex velocity coefficient of mode m at radius r (mode 0 is the
  /// parabolic profile of the mean).
  std::complex<double> velocity_coeff(int m, double r) const;

  /// Numeric flux 2 pi int_0^R w r dr at time t.
  double recovered_flux(double t, int radial_cells = 1024) const;

private:
  double radius_;
  double nu_;
  FourierWaveform waveform_;
  PressureGradientSeries lambda_;
};

} // namespace pulseflow
