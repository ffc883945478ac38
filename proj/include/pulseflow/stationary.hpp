#pragma once

#include "pulseflow/geometry.hpp"

namespace pulseflow {

/// Steady Poiseuille-type solution (w, lambda) for a prescribed flow rate:
/// -nu Laplacian(w) = lambda, w = 0 on the walls, integral of w = f.
/// Density is normalized to one, so lambda is the axial pressure gradient
/// divided by density (cm/s^2 per cm).
class StationarySolution {
public:
  StationarySolution(SectionGeometry geometry, double nu, double flow_rate,
                     double pressure_gradient);

  const SectionGeometry& geometry() const { return geometry_; }
  double kinematic_viscosity() const { return nu_; }
  double flow_rate() const { return flow_rate_; }
  double pressure_gradient() const { return pressure_gradient_; }

  /// Axial velocity at a Cartesian point (defined by the closed form; callers
  /// clip to the section).
  double operator()(double x1, double x2) const;

  /// Axial velocity in elliptical coordinates (elliptical variants only).
  double at_elliptic(double eta, double theta) const;

  /// Angular Fourier profiles of the elliptical solutions, scaled by lambda:
  /// u(eta, theta) = mode0(eta) + 2 mode2(eta) cos(2 theta).
  double mode0(double eta) const;
  double mode2(double eta) const;

  /// Wall shear stress magnitude (dyn/cm^2 with unit density).
  double wall_shear(double theta = 0.0, Wall wall = Wall::Outer) const;

private:
  SectionGeometry geometry_;
  double nu_;
  double flow_rate_;
  double pressure_gradient_;
};

StationarySolution poiseuille_circle(double radius, double nu, double flow_rate);
StationarySolution poiseuille_circular_annulus(double inner_radius, double outer_radius,
                                               double nu, double flow_rate);
StationarySolution poiseuille_ellipse(const Ellipse& g, double nu, double flow_rate);
StationarySolution poiseuille_elliptical_annulus(const EllipticalAnnulus& g, double nu,
                                                 double flow_rate);

/// Dispatch on the geometry variant.
StationarySolution stationary_solution(const SectionGeometry& g, double nu, double flow_rate);

} // namespace pulseflow
