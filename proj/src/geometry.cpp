#include "pulseflow/geometry.hpp"

#include <complex>
#include <numbers>

namespace pulseflow {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidInput(what);
}

} // namespace

Circle::Circle(double radius_) : radius(radius_) {
  require(radius > 0.0, "Circle: radius must be positive");
}

CircularAnnulus::CircularAnnulus(double inner_radius_, double outer_radius_)
    : inner_radius(inner_radius_), outer_radius(outer_radius_) {
  require(inner_radius > 0.0 && outer_radius > inner_radius,
          "CircularAnnulus: need 0 < R1 < R2");
}

Ellipse::Ellipse(double semi_focal_, double wall_eta_)
    : semi_focal(semi_focal_), wall_eta(wall_eta_) {
  require(semi_focal > 0.0 && wall_eta > 0.0, "Ellipse: need a > 0 and b > 0");
}

EllipticalAnnulus::EllipticalAnnulus(double semi_focal_, double inner_eta_, double outer_eta_)
    : semi_focal(semi_focal_), inner_eta(inner_eta_), outer_eta(outer_eta_) {
  require(semi_focal > 0.0 && inner_eta > 0.0 && outer_eta > inner_eta,
          "EllipticalAnnulus: need a > 0 and 0 < b1 < b2");
}

Ellipse ellipse_from_semiaxes(double major, double minor) {
  if (!(major > 0.0) || !(minor > 0.0))
    throw InvalidInput("ellipse_from_semiaxes: semi-axes must be positive");
  if (!(major > minor))
    throw DegenerateGeometry(
        "ellipse_from_semiaxes: major semi-axis must exceed the minor one");
  const double a = std::sqrt((major - minor) * (major + minor));
  const double b = std::log((major + minor) / a);
  return Ellipse(a, b);
}

EllipticalAnnulus confocal_annulus_from_semiaxes(double outer_major, double outer_minor,
                                                 double inner_minor) {
  if (!(outer_major > 0.0) || !(outer_minor > 0.0) || !(inner_minor > 0.0))
    throw InvalidInput("confocal_annulus_from_semiaxes: semi-axes must be positive");
  if (!(outer_major > outer_minor))
    throw DegenerateGeometry(
        "confocal_annulus_from_semiaxes: outer major semi-axis must exceed the minor one");
  if (!(outer_minor > inner_minor))
    throw InvalidInput(
        "confocal_annulus_from_semiaxes: inner minor semi-axis must be below the outer one");
  const double a = std::sqrt((outer_major - outer_minor) * (outer_major + outer_minor));
  const double inner_major = std::hypot(a, inner_minor);
  const double b1 = std::log((inner_major + inner_minor) / a);
  const double b2 = std::log((outer_major + outer_minor) / a);
  return EllipticalAnnulus(a, b1, b2);
}

double semi_focal(const SectionGeometry& g) {
  if (const auto* e = std::get_if<Ellipse>(&g)) return e->semi_focal;
  if (const auto* n = std::get_if<EllipticalAnnulus>(&g)) return n->semi_focal;
  throw UnsupportedGeometry("semi_focal: circular sections have no focal distance");
}

Eigen::Vector2d eta_range(const SectionGeometry& g) {
  if (std::holds_alternative<Ellipse>(g))
    return {0.0, std::get<Ellipse>(g).wall_eta};
  if (std::holds_alternative<EllipticalAnnulus>(g)) {
    const auto& n = std::get<EllipticalAnnulus>(g);
    return {n.inner_eta, n.outer_eta};
  }
  throw UnsupportedGeometry("eta_range: circular sections have no elliptical chart");
}

Eigen::Vector2d to_cartesian(const SectionGeometry& g, double eta, double theta) {
  if (eta < 0.0) throw InvalidInput("to_cartesian: eta must be nonnegative");
  const double a = semi_focal(g);
  return {a * std::cosh(eta) * std::cos(theta), a * std::sinh(eta) * std::sin(theta)};
}

Eigen::Vector2d to_elliptic(const SectionGeometry& g, double x1, double x2) {
  const double a = semi_focal(g);
  const std::complex<double> zeta = std::acosh(std::complex<double>(x1, x2) / a);
  double eta = zeta.real();
  double theta = zeta.imag();
  if (eta < 0.0) {
    eta = -eta;
    theta = -theta;
  }
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  return {eta, theta};
}

double jacobian(const SectionGeometry& g, double eta, double theta) {
  if (eta < 0.0) throw InvalidInput("jacobian: eta must be nonnegative");
  const double a = semi_focal(g);
  const double sh = std::sinh(eta);
  const double sn = std::sin(theta);
  return a * a * (sh * sh + sn * sn);
}

std::vector<SemiAxisPoint> semi_axis_points(const SectionGeometry& g, Axis axis, int count) {
  if (count < 2) throw InvalidInput("semi_axis_points: need at least two points");
  std::vector<SemiAxisPoint> pts;
  pts.reserve(count);
  const Eigen::Vector2d range = eta_range(g);
  const bool annulus = std::holds_alternative<EllipticalAnnulus>(g);
  if (annulus || axis == Axis::Minor) {
    const double theta = (axis == Axis::Minor) ? 0.5 * std::numbers::pi : 0.0;
    for (int i = 0; i < count; ++i) {
      const double eta = range(0) + (range(1) - range(0)) * i / (count - 1.0);
      const Eigen::Vector2d x = to_cartesian(g, eta, theta);
      pts.push_back({axis == Axis::Minor ? x(1) : x(0), eta, theta});
    }
    return pts;
  }
  // Major semi-axis of the simply connected ellipse: the segment inside the
  // foci lives on eta = 0, the rest on theta = 0.
  const auto& e = std::get<Ellipse>(g);
  for (int i = 0; i < count; ++i) {
    const double x1 = e.major_semiaxis() * i / (count - 1.0);
    SemiAxisPoint p;
    p.coordinate = x1;
    if (x1 < e.semi_focal) {
      p.eta = 0.0;
      p.theta = std::acos(x1 / e.semi_focal);
    } else {
      p.eta = std::acosh(x1 / e.semi_focal);
      p.theta = 0.0;
    }
    pts.push_back(p);
  }
  return pts;
}

double area(const SectionGeometry& g) {
  using std::numbers::pi;
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return pi * s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, CircularAnnulus>) {
          return pi * (s.outer_radius * s.outer_radius - s.inner_radius * s.inner_radius);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return pi * s.major_semiaxis() * s.minor_semiaxis();
        } else {
          return pi * (s.outer_major_semiaxis() * s.outer_minor_semiaxis() -
                       s.inner_major_semiaxis() * s.inner_minor_semiaxis());
        }
      },
      g);
}

} // namespace pulseflow
