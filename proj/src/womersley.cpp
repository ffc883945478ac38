#include "pulseflow/womersley.hpp"

#include <cmath>
#include <numbers>

#include "pulseflow/quadrature.hpp"
#include "pulseflow/special_functions.hpp"

namespace pulseflow {

using std::numbers::pi;

namespace {

// e^{i 3 pi / 4}; J0 is even, so the opposite branch of (-1)^{3/4} gives the
// same velocity coefficients.
const std::complex<double> kQuarterTurn = std::polar(1.0, 3.0 * pi / 4.0);

} // namespace

PressureGradientSeries lambda_from_flux_circle(double radius, double nu,
                                               const FourierWaveform& fw) {
  if (!(radius > 0.0) || !(nu > 0.0))
    throw InvalidInput("lambda_from_flux_circle: radius and viscosity must be positive");
  Eigen::ArrayXcd lambda(fw.mode_count() + 1);
  lambda(0) = 8.0 * nu * fw.coeff(0).real() / (pi * std::pow(radius, 4));
  for (int m = 1; m <= fw.mode_count(); ++m) {
    const double omega = fw.angular_frequency(m);
    const double wo = womersley_number(radius, omega, nu);
    const std::complex<double> z(0.0, 0.25 * wo * wo);
    const std::complex<double> bracket =
        1.0 - hyp0f1_regularized(2, z) / hyp0f1_regularized(1, z);
    if (std::abs(bracket) < 1e-300)
      throw SingularTransferFunction("lambda_from_flux_circle: vanishing transfer factor at m=" +
                                     std::to_string(m));
    lambda(m) = fw.coeff(m) * std::complex<double>(0.0, omega) / (pi * radius * radius * bracket);
  }
  return PressureGradientSeries(fw.period(), std::move(lambda));
}

std::complex<double> velocity_coeff_circle(double radius, double nu, double omega,
                                           std::complex<double> lambda_coeff, double r) {
  if (!(radius > 0.0) || !(nu > 0.0))
    throw InvalidInput("velocity_coeff_circle: radius and viscosity must be positive");
  if (r < 0.0 || r > radius) throw InvalidInput("velocity_coeff_circle: need 0 <= r <= R");
  if (omega == 0.0)
    throw InvalidInput("velocity_coeff_circle: mode 0 follows the steady closed form");
  const std::complex<double> denom =
      bessel_j0(kQuarterTurn * womersley_number(radius, omega, nu));
  if (std::abs(denom) < 1e-300)
    throw SingularDenominator("velocity_coeff_circle: J0 vanished at the wall argument");
  const std::complex<double> numer = bessel_j0(kQuarterTurn * womersley_number(r, omega, nu));
  if (r == radius) return 0.0;
  return (1.0 - numer / denom) * lambda_coeff / std::complex<double>(0.0, omega);
}

CircleFlowSolution::CircleFlowSolution(double radius, double nu, FourierWaveform waveform)
    : radius_(radius),
      nu_(nu),
      waveform_(std::move(waveform)),
      lambda_(lambda_from_flux_circle(radius, nu, waveform_)) {}

std::complex<double> CircleFlowSolution::velocity_coeff(int m, double r) const {
  if (m == 0) {
    const double w0 = lambda_.coeff(0).real() * radius_ * radius_ / (4.0 * nu_) *
                      (1.0 - r * r / (radius_ * radius_));
    return {w0, 0.0};
  }
  return velocity_coeff_circle(radius_, nu_, lambda_.angular_frequency(m), lambda_.coeff(m), r);
}

double CircleFlowSolution::operator()(double t, double r) const {
  double w = velocity_coeff(0, r).real();
  for (int m = 1; m <= lambda_.mode_count(); ++m) {
    const double phase = lambda_.angular_frequency(m) * t;
    w += 2.0 * (velocity_coeff(m, r) *
                std::complex<double>(std::cos(phase), std::sin(phase)))
                   .real();
  }
  return w;
}

double CircleFlowSolution::recovered_flux(double t, int radial_cells) const {
  const auto integrand = [&](double r) { return (*this)(t, r) * r; };
  return 2.0 * pi * integrate_simpson(integrand, 0.0, radius_, radial_cells);
}

} // namespace pulseflow
