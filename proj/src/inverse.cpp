#include "pulseflow/inverse.hpp"

#include <cmath>
#include <numbers>

#include "pulseflow/quadrature.hpp"

namespace pulseflow {

using std::numbers::pi;

std::complex<double> flux_functional(const ModeStack& stack) {
  const Eigen::Index rows = stack.eta.size();
  Eigen::ArrayXcd integrand(rows);
  for (Eigen::Index j = 0; j < rows; ++j)
    integrand(j) =
        std::cosh(2.0 * stack.eta(j)) * stack.values(j, 0) - stack.values(j, 1);
  const double a2 = stack.semi_focal * stack.semi_focal;
  const std::complex<double> flux =
      pi * a2 * simpson_uniform(integrand, stack.grid_step());

  const double width = stack.eta(rows - 1) - stack.eta(0);
  const double floor = 1e-10 * pi * a2 * width * stack.mode_max_abs(0);
  if (std::abs(flux) < floor)
    throw VanishingDenominator("flux_functional: vanishing flux at m=" +
                               std::to_string(stack.temporal_index));
  return flux;
}

PressureGradientSeries lambda_from_flux(const FourierWaveform& fw,
                                        std::span<const ModeStack> basis) {
  if (basis.size() < static_cast<size_t>(fw.mode_count()) + 1)
    throw InvalidInput("lambda_from_flux: basis covers fewer modes than the waveform");
  Eigen::ArrayXcd lambda(fw.mode_count() + 1);
  for (int m = 0; m <= fw.mode_count(); ++m) {
    if (basis[m].temporal_index != m)
      throw InvalidInput("lambda_from_flux: basis must be ordered by temporal index");
    lambda(m) = fw.coeff(m) / flux_functional(basis[m]);
  }
  return PressureGradientSeries(fw.period(), std::move(lambda));
}

FlowSolution::FlowSolution(SectionGeometry geometry, double nu, FourierWaveform waveform,
                           std::vector<ModeStack> basis, PressureGradientSeries lambda)
    : geometry_(std::move(geometry)),
      nu_(nu),
      waveform_(std::move(waveform)),
      basis_(std::move(basis)),
      lambda_(std::move(lambda)) {
  if (basis_.empty()) throw InvalidInput("FlowSolution: empty mode basis");
  if (static_cast<int>(basis_.size()) < lambda_.mode_count() + 1)
    throw InvalidInput("FlowSolution: basis covers fewer modes than the gradient series");
  if (lambda_.mode_count() != waveform_.mode_count())
    throw InvalidInput("FlowSolution: waveform and gradient series disagree on mode count");
  for (int m = 0; m <= lambda_.mode_count(); ++m) {
    if (basis_[m].temporal_index != m)
      throw InvalidInput("FlowSolution: basis must be ordered by temporal index");
    if (basis_[m].eta.size() != basis_.front().eta.size() ||
        basis_[m].cutoff != basis_.front().cutoff)
      throw InvalidInput("FlowSolution: basis stacks must share grid and cut-off");
  }
}

FlowSolution assemble(SectionGeometry geometry, double nu, FourierWaveform waveform,
                      std::vector<ModeStack> basis) {
  PressureGradientSeries lambda = lambda_from_flux(waveform, basis);
  return FlowSolution(std::move(geometry), nu, std::move(waveform), std::move(basis),
                      std::move(lambda));
}

Eigen::RowVectorXcd FlowSolution::interpolated_row(int m, double eta) const {
  const ModeStack& stack = basis_[m];
  const Eigen::Index rows = stack.eta.size();
  const double lo = stack.eta(0);
  const double h = stack.grid_step();
  double s = (eta - lo) / h;
  if (s <= 0.0) return stack.values.row(0);
  if (s >= static_cast<double>(rows - 1)) return stack.values.row(rows - 1);
  const Eigen::Index j = static_cast<Eigen::Index>(s);
  const double w = s - static_cast<double>(j);
  return (1.0 - w) * stack.values.row(j) + w * stack.values.row(j + 1);
}

std::complex<double> FlowSolution::mode_field(int m, double eta, double theta) const {
  const Eigen::RowVectorXcd row = interpolated_row(m, eta);
  std::complex<double> phi = row(0);
  for (Eigen::Index k = 1; k < row.size(); ++k)
    phi += 2.0 * std::cos(2.0 * k * theta) * row(k);
  return phi;
}

double FlowSolution::operator()(double t, double eta, double theta) const {
  double u = (lambda_.coeff(0).real() * mode_field(0, eta, theta)).real();
  for (int m = 1; m <= lambda_.mode_count(); ++m) {
    const double phase = lambda_.angular_frequency(m) * t;
    const std::complex<double> rotor(std::cos(phase), std::sin(phase));
    u += 2.0 * (lambda_.coeff(m) * mode_field(m, eta, theta) * rotor).real();
  }
  return u;
}

double FlowSolution::at_cartesian(double t, double x1, double x2) const {
  const Eigen::Vector2d q = to_elliptic(geometry_, x1, x2);
  return (*this)(t, q(0), q(1));
}

Eigen::MatrixXd FlowSolution::time_slice(double t) const {
  const ModeStack& first = basis_.front();
  Eigen::MatrixXcd acc = lambda_.coeff(0).real() * first.values;
  for (int m = 1; m <= lambda_.mode_count(); ++m) {
    const double phase = lambda_.angular_frequency(m) * t;
    const std::complex<double> weight =
        2.0 * lambda_.coeff(m) * std::complex<double>(std::cos(phase), std::sin(phase));
    acc.noalias() += weight * basis_[m].values;
  }
  Eigen::MatrixXd slice = acc.real();
  slice.rightCols(slice.cols() - 1) *= 2.0; // cos(2k theta) carries both +-n modes
  return slice;
}

double FlowSolution::recovered_flux(double t, int theta_points) const {
  const ModeStack& first = basis_.front();
  const Eigen::MatrixXd slice = time_slice(t);
  const Eigen::Index rows = slice.rows();
  const int modes = static_cast<int>(slice.cols());
  const double a = first.semi_focal;

  double flux = 0.0;
  const double dtheta = 2.0 * pi / theta_points;
  Eigen::ArrayXd column(rows);
  for (int it = 0; it < theta_points; ++it) {
    const double theta = it * dtheta;
    for (Eigen::Index j = 0; j < rows; ++j) {
      double u = slice(j, 0);
      for (int k = 1; k < modes; ++k) u += slice(j, k) * std::cos(2.0 * k * theta);
      const double sh = std::sinh(first.eta(j));
      const double sn = std::sin(theta);
      column(j) = u * a * a * (sh * sh + sn * sn);
    }
    flux += simpson_uniform(column, first.grid_step()) * dtheta;
  }
  return flux;
}

double FlowSolution::wall_shear(double theta, double t, Wall wall) const {
  const ModeStack& first = basis_.front();
  if (wall == Wall::Inner && !first.annulus)
    throw UnsupportedGeometry("wall_shear: the ellipse has no inner wall");
  const Eigen::MatrixXd slice = time_slice(t);
  const Eigen::Index rows = slice.rows();
  const int modes = static_cast<int>(slice.cols());
  const double h = first.grid_step();

  const auto value_at = [&](Eigen::Index j) {
    double u = slice(j, 0);
    for (int k = 1; k < modes; ++k) u += slice(j, k) * std::cos(2.0 * k * theta);
    return u;
  };

  // one-sided 4-point stencil; the wall value itself is exactly zero
  double du_deta, eta_wall;
  if (wall == Wall::Outer) {
    du_deta = (-18.0 * value_at(rows - 2) + 9.0 * value_at(rows - 3) -
               2.0 * value_at(rows - 4)) /
              (6.0 * h);
    eta_wall = first.eta(rows - 1);
  } else {
    du_deta = (18.0 * value_at(1) - 9.0 * value_at(2) + 2.0 * value_at(3)) / (6.0 * h);
    eta_wall = first.eta(0);
  }
  return nu_ * std::abs(du_deta) / std::sqrt(jacobian(geometry_, eta_wall, theta));
}

} // namespace pulseflow
