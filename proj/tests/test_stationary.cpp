#include <doctest.h>

#include <numbers>
#include <random>

#include "pulseflow/quadrature.hpp"
#include "pulseflow/stationary.hpp"

using namespace pulseflow;
using std::numbers::pi;

namespace {

// Independent flux oracles.
double radial_flux(const StationarySolution& s, double r_lo, double r_hi, int cells = 4096) {
  return 2.0 * pi *
         integrate_simpson([&](double r) { return s(r, 0.0) * r; }, r_lo, r_hi, cells);
}

double chart_flux(const StationarySolution& s, int eta_cells = 512, int theta_points = 64) {
  const Eigen::Vector2d range = eta_range(s.geometry());
  const auto slice = [&](double eta) {
    return integrate_periodic(
        [&](double theta) {
          return s.at_elliptic(eta, theta) * jacobian(s.geometry(), eta, theta);
        },
        2.0 * pi, theta_points);
  };
  return integrate_simpson(slice, range(0), range(1), eta_cells);
}

} // namespace

TEST_SUITE_BEGIN("stationary");

TEST_CASE("parabolic profile in the circle") {
  const StationarySolution s = poiseuille_circle(1.0, 1.0, pi);
  CHECK(s(0.0, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.pressure_gradient() == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(s(1.0, 0.0) == doctest::Approx(0.0));

  const StationarySolution zero = poiseuille_circle(1.0, 1.0, 0.0);
  CHECK(zero.pressure_gradient() == 0.0);
  CHECK(zero(0.3, 0.1) == 0.0);

  const StationarySolution ica = poiseuille_circle(0.25, 0.035, 4.11);
  CHECK(ica.pressure_gradient() ==
        doctest::Approx(8.0 * 0.035 * 4.11 / (pi * std::pow(0.25, 4))).epsilon(1e-14));
  CHECK(ica.pressure_gradient() == doctest::Approx(93.77).epsilon(1e-3));
}

TEST_CASE("circle flux and wall shear") {
  const StationarySolution s = poiseuille_circle(0.25, 0.035, 4.11);
  CHECK(radial_flux(s, 0.0, 0.25) == doctest::Approx(4.11).epsilon(1e-10));
  CHECK(s.wall_shear() ==
        doctest::Approx(4.0 * 0.035 * 4.11 / (pi * std::pow(0.25, 3))).epsilon(1e-14));
}

TEST_CASE("circular annulus walls, flux and the thin-core limit") {
  const StationarySolution s = poiseuille_circular_annulus(0.4, 1.0, 0.01, 2.5);
  CHECK(std::abs(s(0.4, 0.0)) < 1e-14);
  CHECK(std::abs(s(1.0, 0.0)) < 1e-14);
  CHECK(radial_flux(s, 0.4, 1.0) == doctest::Approx(2.5).epsilon(1e-8));

  // As the core shrinks the profile approaches the full circle's; the core
  // influence fades only logarithmically, about 0.076/|log R1| at mid-radius.
  const StationarySolution full = poiseuille_circle(1.0, 0.01, 2.5);
  const StationarySolution thin = poiseuille_circular_annulus(1e-8, 1.0, 0.01, 2.5);
  CHECK(thin(0.5, 0.0) == doctest::Approx(full(0.5, 0.0)).epsilon(5e-3));
  const StationarySolution thinner = poiseuille_circular_annulus(1e-35, 1.0, 0.01, 2.5);
  CHECK(thinner(0.5, 0.0) == doctest::Approx(full(0.5, 0.0)).epsilon(1e-3));
  const double dev8 = std::abs(thin(0.5, 0.0) / full(0.5, 0.0) - 1.0);
  const double dev35 = std::abs(thinner(0.5, 0.0) / full(0.5, 0.0) - 1.0);
  CHECK(dev35 < dev8);
}

TEST_CASE("pde residual of the closed forms") {
  const double h = 1e-4;
  const auto residual_cartesian = [&](const StationarySolution& s, double x, double y,
                                      double scale) {
    const double lap = (s(x + h * scale, y) + s(x - h * scale, y) + s(x, y + h * scale) +
                        s(x, y - h * scale) - 4.0 * s(x, y)) /
                       (h * scale * h * scale);
    return -s.kinematic_viscosity() * lap - s.pressure_gradient();
  };

  const StationarySolution c = poiseuille_circle(0.25, 0.035, 4.11);
  CHECK(std::abs(residual_cartesian(c, 0.1, 0.05, 0.4)) < 1e-6 * c.pressure_gradient());

  const StationarySolution e =
      poiseuille_ellipse(ellipse_from_semiaxes(0.25, 0.15), 0.035, 4.11);
  CHECK(std::abs(residual_cartesian(e, 0.08, 0.04, 0.4)) < 1e-6 * e.pressure_gradient());

  const StationarySolution ca = poiseuille_circular_annulus(0.4, 1.0, 0.01, 2.5);
  CHECK(std::abs(residual_cartesian(ca, 0.6, 0.2, 1.4)) < 1e-6 * std::abs(ca.pressure_gradient()));

  // annulus in chart coordinates: -nu (u_ee + u_tt) = J lambda
  const StationarySolution n = poiseuille_elliptical_annulus(
      confocal_annulus_from_semiaxes(1.11, 0.93, 0.43), 0.01, -0.11);
  const double eta = 0.9, theta = 0.7;
  const auto u = [&](double a, double b) { return n.at_elliptic(a, b); };
  const double lap = (u(eta + h, theta) + u(eta - h, theta) + u(eta, theta + h) +
                      u(eta, theta - h) - 4.0 * u(eta, theta)) /
                     (h * h);
  const double res = -n.kinematic_viscosity() * lap -
                     jacobian(n.geometry(), eta, theta) * n.pressure_gradient();
  CHECK(std::abs(res) < 1e-6 * std::abs(n.pressure_gradient()));
}

TEST_CASE("ellipse center velocity and the gradient map identity") {
  const Ellipse g = ellipse_from_semiaxes(0.25, 0.15);
  const StationarySolution unit = poiseuille_ellipse(g, 1.0, pi * 0.25 * 0.15 / 2.0);
  CHECK(unit(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));

  const StationarySolution ica = poiseuille_ellipse(g, 0.035, 4.11);
  CHECK(ica(0.0, 0.0) == doctest::Approx(2.0 * 4.11 / (pi * 0.25 * 0.15)).epsilon(1e-13));
  CHECK(ica(0.0, 0.0) == doctest::Approx(69.77).epsilon(1e-3));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> axis(0.05, 4.0), squeeze(0.1, 0.95);
  for (int i = 0; i < 100; ++i) {
    const double alpha = axis(rng), beta = alpha * squeeze(rng);
    const Ellipse e = ellipse_from_semiaxes(alpha, beta);
    const double nu = 0.02;
    const double a4 = std::pow(e.semi_focal, 4);
    const double s2b = std::sinh(2.0 * e.wall_eta);
    const double chart_map = 32.0 * nu / (pi * a4 * s2b * s2b * std::tanh(2.0 * e.wall_eta));
    const double cartesian_map =
        4.0 * nu * (alpha * alpha + beta * beta) / (pi * std::pow(alpha * beta, 3));
    CHECK(chart_map == doctest::Approx(cartesian_map).epsilon(1e-12));
  }
}

TEST_CASE("both ellipse evaluators agree") {
  const Ellipse g = ellipse_from_semiaxes(0.25, 0.15);
  const StationarySolution s = poiseuille_ellipse(g, 0.035, 4.11);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> in_eta(0.0, g.wall_eta), in_theta(0.0, 2.0 * pi);
  for (int i = 0; i < 50; ++i) {
    const double eta = in_eta(rng), theta = in_theta(rng);
    const Eigen::Vector2d x = to_cartesian(s.geometry(), eta, theta);
    CHECK(s.at_elliptic(eta, theta) == doctest::Approx(s(x(0), x(1))).epsilon(1e-11));
  }
}

TEST_CASE("ellipse flux quadrature returns the prescribed flow rate") {
  const StationarySolution s =
      poiseuille_ellipse(ellipse_from_semiaxes(0.25, 0.15), 0.035, 4.11);
  CHECK(chart_flux(s) == doctest::Approx(4.11).epsilon(1e-8));
}

TEST_CASE("elliptical annulus walls, flux and sign") {
  const EllipticalAnnulus g = confocal_annulus_from_semiaxes(1.11, 0.93, 0.43);
  const StationarySolution s = poiseuille_elliptical_annulus(g, 0.01, -0.11);
  for (double theta : {0.0, 0.9, 2.2, 4.4}) {
    CHECK(std::abs(s.at_elliptic(g.inner_eta, theta)) < 1e-12 * std::abs(s(0.9, 0.0)));
    CHECK(std::abs(s.at_elliptic(g.outer_eta, theta)) < 1e-12 * std::abs(s(0.9, 0.0)));
  }
  CHECK(s.pressure_gradient() < 0.0);
  CHECK(std::isfinite(s.pressure_gradient()));
  CHECK(chart_flux(s) == doctest::Approx(-0.11).epsilon(1e-8));
}

TEST_CASE("solutions scale linearly in the flow rate") {
  const Ellipse g = ellipse_from_semiaxes(0.3, 0.2);
  const StationarySolution one = poiseuille_ellipse(g, 0.05, 1.3);
  const StationarySolution two = poiseuille_ellipse(g, 0.05, 2.6);
  CHECK(two.pressure_gradient() == doctest::Approx(2.0 * one.pressure_gradient()).epsilon(1e-14));
  CHECK(two(0.1, 0.05) == doctest::Approx(2.0 * one(0.1, 0.05)).epsilon(1e-14));

  const StationarySolution ann_one = poiseuille_elliptical_annulus(
      confocal_annulus_from_semiaxes(1.11, 0.93, 0.43), 0.01, -0.11);
  const StationarySolution ann_two = poiseuille_elliptical_annulus(
      confocal_annulus_from_semiaxes(1.11, 0.93, 0.43), 0.01, -0.22);
  CHECK(ann_two.at_elliptic(0.9, 1.0) ==
        doctest::Approx(2.0 * ann_one.at_elliptic(0.9, 1.0)).epsilon(1e-14));
}

TEST_CASE("near-circular ellipse approaches the circle centerline") {
  const double alpha = 0.25, f = 4.11, nu = 0.035;
  const double beta = alpha * (1.0 - 1e-8);
  const StationarySolution e = poiseuille_ellipse(ellipse_from_semiaxes(alpha, beta), nu, f);
  CHECK(e(0.0, 0.0) == doctest::Approx(2.0 * f / (pi * alpha * alpha)).epsilon(1e-6));
}

TEST_CASE("wall shear of circle and ellipse") {
  const StationarySolution c = poiseuille_circle(0.25, 0.035, 4.11);
  CHECK(c.wall_shear(1.2) ==
        doctest::Approx(4.0 * 0.035 * 4.11 / (pi * std::pow(0.25, 3))).epsilon(1e-14));

  const double alpha = 0.25, beta = 0.15, f = 4.11, nu = 0.035;
  const StationarySolution e = poiseuille_ellipse(ellipse_from_semiaxes(alpha, beta), nu, f);
  const double cartesian_major = nu * (4.0 * f / (pi * alpha * beta)) / alpha;
  CHECK(e.wall_shear(0.0) == doctest::Approx(cartesian_major).epsilon(1e-6));
  const double cartesian_minor = nu * (4.0 * f / (pi * alpha * beta)) / beta;
  CHECK(e.wall_shear(pi / 2.0) == doctest::Approx(cartesian_minor).epsilon(1e-6));
}

TEST_SUITE_END();
