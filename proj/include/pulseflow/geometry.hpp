#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "pulseflow/errors.hpp"

namespace pulseflow {

/// Circular cross-section of radius R (cm).
struct Circle {
  explicit Circle(double radius);
  double radius;
};

/// Annulus between two concentric circles, 0 < R1 < R2 (cm).
struct CircularAnnulus {
  CircularAnnulus(double inner_radius, double outer_radius);
  double inner_radius;
  double outer_radius;
};

/// Elliptical cross-section described in confocal elliptical coordinates
///   x1 = a cosh(eta) cos(theta),  x2 = a sinh(eta) sin(theta),
/// where `semi_focal` is a (half the inter-focal distance, cm) and `wall_eta`
/// is the elliptical radius b of the wall. The major axis lies along x1.
struct Ellipse {
  Ellipse(double semi_focal, double wall_eta);
  double semi_focal;
  double wall_eta;

  double major_semiaxis() const { return semi_focal * std::cosh(wall_eta); }
  double minor_semiaxis() const { return semi_focal * std::sinh(wall_eta); }
};

/// Annulus between two confocal ellipses eta = inner_eta and eta = outer_eta
/// sharing the same semi-focal distance.
struct EllipticalAnnulus {
  EllipticalAnnulus(double semi_focal, double inner_eta, double outer_eta);
  double semi_focal;
  double inner_eta;
  double outer_eta;

  double outer_major_semiaxis() const { return semi_focal * std::cosh(outer_eta); }
  double outer_minor_semiaxis() const { return semi_focal * std::sinh(outer_eta); }
  double inner_major_semiaxis() const { return semi_focal * std::cosh(inner_eta); }
  double inner_minor_semiaxis() const { return semi_focal * std::sinh(inner_eta); }
};

using SectionGeometry = std::variant<Circle, CircularAnnulus, Ellipse, EllipticalAnnulus>;

/// Wall selector for annular sections; simply connected sections only have
/// an outer wall.
enum class Wall { Inner, Outer };

/// Builds the ellipse with given semi-axes, major > minor > 0.
/// a = sqrt(major^2 - minor^2), b = log((major + minor) / a).
Ellipse ellipse_from_semiaxes(double major, double minor);

/// Builds the confocal annulus from the outer semi-axes and the inner minor
/// semi-axis; the inner major semi-axis follows from confocality.
EllipticalAnnulus confocal_annulus_from_semiaxes(double outer_major, double outer_minor,
                                                 double inner_minor);

/// Maps elliptical coordinates to Cartesian. Defined for the elliptical
/// variants only; circular sections carry no (eta, theta) chart.
Eigen::Vector2d to_cartesian(const SectionGeometry& g, double eta, double theta);

/// Inverse of to_cartesian: (eta, theta) with eta >= 0, theta in [0, 2*pi).
Eigen::Vector2d to_elliptic(const SectionGeometry& g, double x1, double x2);

/// Area scale of the elliptical chart, J = a^2 (sinh^2 eta + sin^2 theta).
double jacobian(const SectionGeometry& g, double eta, double theta);

/// Cross-section area.
double area(const SectionGeometry& g);

/// Semi-focal distance of the elliptical variants.
double semi_focal(const SectionGeometry& g);

/// Radial chart range [eta_min, eta_max]: [0, b] for the ellipse,
/// [b1, b2] for the confocal annulus.
Eigen::Vector2d eta_range(const SectionGeometry& g);

inline bool is_elliptical(const SectionGeometry& g) {
  return std::holds_alternative<Ellipse>(g) || std::holds_alternative<EllipticalAnnulus>(g);
}

enum class Axis { Major, Minor };

/// One sample point of a semi-axis traverse.
struct SemiAxisPoint {
  double coordinate = 0.0; ///< distance from the center along the axis
  double eta = 0.0;
  double theta = 0.0;
};

/// Uniformly spaced points along a semi-axis of an elliptical section, from
/// the center (ellipse) or inner wall (annulus) to the outer wall. The part
/// of the ellipse's major axis between the foci lies on eta = 0.
std::vector<SemiAxisPoint> semi_axis_points(const SectionGeometry& g, Axis axis, int count);

} // namespace pulseflow
