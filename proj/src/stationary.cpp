#include "pulseflow/stationary.hpp"

#include <cmath>
#include <numbers>

namespace pulseflow {

using std::numbers::pi;

namespace {

double annulus_profile_denominator(double r1, double r2) {
  const double q2 = (r1 * r1) / (r2 * r2);
  return (1.0 - q2 * q2) + (1.0 - q2) * (1.0 - q2) / std::log(r1 / r2);
}

// Bracketed factor of the confocal-annulus flux-to-gradient map; the flux of
// the unit-gradient solution is pi a^4 / (16 nu) times this.
double annulus_flux_bracket(double b1, double b2) {
  const double db = b2 - b1;
  return 0.25 * (std::sinh(4.0 * b2) - std::sinh(4.0 * b1)) -
         std::pow(std::cosh(2.0 * b2) - std::cosh(2.0 * b1), 2) / (2.0 * db) -
         (std::cosh(2.0 * db) - 1.0) / std::sinh(2.0 * db);
}

} // namespace

StationarySolution::StationarySolution(SectionGeometry geometry, double nu, double flow_rate,
                                       double pressure_gradient)
    : geometry_(std::move(geometry)),
      nu_(nu),
      flow_rate_(flow_rate),
      pressure_gradient_(pressure_gradient) {
  if (!(nu_ > 0.0)) throw InvalidInput("StationarySolution: viscosity must be positive");
}

StationarySolution poiseuille_circle(double radius, double nu, double flow_rate) {
  Circle g(radius);
  const double lambda = 8.0 * nu * flow_rate / (pi * std::pow(radius, 4));
  return StationarySolution(g, nu, flow_rate, lambda);
}

StationarySolution poiseuille_circular_annulus(double inner_radius, double outer_radius,
                                               double nu, double flow_rate) {
  CircularAnnulus g(inner_radius, outer_radius);
  const double lambda = 8.0 * nu * flow_rate /
                        (pi * std::pow(outer_radius, 4) *
                         annulus_profile_denominator(inner_radius, outer_radius));
  return StationarySolution(g, nu, flow_rate, lambda);
}

StationarySolution poiseuille_ellipse(const Ellipse& g, double nu, double flow_rate) {
  const double a = g.semi_focal, b = g.wall_eta;
  const double s2b = std::sinh(2.0 * b);
  const double lambda =
      flow_rate * 32.0 * nu / (pi * std::pow(a, 4) * s2b * s2b * std::tanh(2.0 * b));
  return StationarySolution(g, nu, flow_rate, lambda);
}

StationarySolution poiseuille_elliptical_annulus(const EllipticalAnnulus& g, double nu,
                                                 double flow_rate) {
  const double lambda = flow_rate * 16.0 * nu /
                        (pi * std::pow(g.semi_focal, 4) *
                         annulus_flux_bracket(g.inner_eta, g.outer_eta));
  return StationarySolution(g, nu, flow_rate, lambda);
}

StationarySolution stationary_solution(const SectionGeometry& g, double nu, double flow_rate) {
  return std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return poiseuille_circle(s.radius, nu, flow_rate);
        } else if constexpr (std::is_same_v<T, CircularAnnulus>) {
          return poiseuille_circular_annulus(s.inner_radius, s.outer_radius, nu, flow_rate);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return poiseuille_ellipse(s, nu, flow_rate);
        } else {
          return poiseuille_elliptical_annulus(s, nu, flow_rate);
        }
      },
      g);
}

double StationarySolution::operator()(double x1, double x2) const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          const double r2 = x1 * x1 + x2 * x2;
          const double R2 = s.radius * s.radius;
          return 2.0 * flow_rate_ / (pi * R2) * (1.0 - r2 / R2);
        } else if constexpr (std::is_same_v<T, CircularAnnulus>) {
          const double r = std::hypot(x1, x2);
          const double r1 = s.inner_radius, r2 = s.outer_radius;
          const double q2 = (r1 * r1) / (r2 * r2);
          const double numer = (1.0 - (r * r) / (r2 * r2)) -
                               (1.0 - q2) * std::log(r / r2) / std::log(r1 / r2);
          return 2.0 * flow_rate_ / (pi * r2 * r2) * numer /
                 annulus_profile_denominator(r1, r2);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          const double al = s.major_semiaxis(), be = s.minor_semiaxis();
          return 2.0 * flow_rate_ / (pi * al * be) *
                 (1.0 - x1 * x1 / (al * al) - x2 * x2 / (be * be));
        } else {
          const Eigen::Vector2d q = to_elliptic(geometry_, x1, x2);
          return at_elliptic(q(0), q(1));
        }
      },
      geometry_);
}

double StationarySolution::at_elliptic(double eta, double theta) const {
  return mode0(eta) + 2.0 * mode2(eta) * std::cos(2.0 * theta);
}

double StationarySolution::mode0(double eta) const {
  const double scale = pressure_gradient_;
  if (const auto* e = std::get_if<Ellipse>(&geometry_)) {
    const double a = e->semi_focal, b = e->wall_eta;
    return scale * a * a / (8.0 * nu_) * (std::cosh(2.0 * b) - std::cosh(2.0 * eta));
  }
  if (const auto* n = std::get_if<EllipticalAnnulus>(&geometry_)) {
    const double a = n->semi_focal, b1 = n->inner_eta, b2 = n->outer_eta;
    const double linear = ((eta - b1) * std::cosh(2.0 * b2) - (eta - b2) * std::cosh(2.0 * b1)) /
                          (b2 - b1);
    return scale * a * a / (8.0 * nu_) * (linear - std::cosh(2.0 * eta));
  }
  throw UnsupportedGeometry("StationarySolution::mode0: circular sections have no eta modes");
}

double StationarySolution::mode2(double eta) const {
  const double scale = pressure_gradient_;
  if (const auto* e = std::get_if<Ellipse>(&geometry_)) {
    const double a = e->semi_focal, b = e->wall_eta;
    return -scale * a * a / (16.0 * nu_) * (std::cosh(2.0 * b) - std::cosh(2.0 * eta)) /
           std::cosh(2.0 * b);
  }
  if (const auto* n = std::get_if<EllipticalAnnulus>(&geometry_)) {
    const double a = n->semi_focal, b1 = n->inner_eta, b2 = n->outer_eta;
    const double numer = std::sinh(2.0 * (eta - b1)) - std::sinh(2.0 * (eta - b2));
    return scale * a * a / (16.0 * nu_) *
           (numer / std::sinh(2.0 * (b2 - b1)) - 1.0);
  }
  throw UnsupportedGeometry("StationarySolution::mode2: circular sections have no eta modes");
}

double StationarySolution::wall_shear(double theta, Wall wall) const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return 4.0 * nu_ * std::abs(flow_rate_) / (pi * std::pow(s.radius, 3));
        } else if constexpr (std::is_same_v<T, CircularAnnulus>) {
          const double r1 = s.inner_radius, r2 = s.outer_radius;
          const double r = (wall == Wall::Inner) ? r1 : r2;
          const double q2 = (r1 * r1) / (r2 * r2);
          const double dprofile = -2.0 * r / (r2 * r2) - (1.0 - q2) / (r * std::log(r1 / r2));
          return nu_ * std::abs(2.0 * flow_rate_ / (pi * r2 * r2) * dprofile /
                                annulus_profile_denominator(r1, r2));
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          const double a = s.semi_focal, b = s.wall_eta;
          const double du_deta =
              pressure_gradient_ * a * a / (4.0 * nu_) * std::sinh(2.0 * b) *
              (-1.0 + std::cos(2.0 * theta) / std::cosh(2.0 * b));
          return nu_ * std::abs(du_deta) / std::sqrt(jacobian(geometry_, b, theta));
        } else {
          const double a = s.semi_focal, b1 = s.inner_eta, b2 = s.outer_eta;
          const double eta = (wall == Wall::Inner) ? b1 : b2;
          const double dmode0 =
              pressure_gradient_ * a * a / (8.0 * nu_) *
              ((std::cosh(2.0 * b2) - std::cosh(2.0 * b1)) / (b2 - b1) -
               2.0 * std::sinh(2.0 * eta));
          const double dmode2 =
              pressure_gradient_ * a * a / (8.0 * nu_) *
              (std::cosh(2.0 * (eta - b1)) - std::cosh(2.0 * (eta - b2))) /
              std::sinh(2.0 * (b2 - b1));
          const double du_deta = dmode0 + 2.0 * dmode2 * std::cos(2.0 * theta);
          return nu_ * std::abs(du_deta) / std::sqrt(jacobian(geometry_, eta, theta));
        }
      },
      geometry_);
}

} // namespace pulseflow
