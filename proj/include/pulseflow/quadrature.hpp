#pragma once

#include <type_traits>

#include <Eigen/Core>

#include "pulseflow/errors.hpp"

namespace pulseflow {

/// Composite Simpson rule over uniformly spaced samples (step h). Odd cell
/// counts are finished with the 3/8 rule so second samples are never wasted.
template <class Derived>
auto simpson_uniform(const Eigen::DenseBase<Derived>& values, double step) ->
    typename Derived::Scalar {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = values.size() - 1; // cells
  if (n < 1) throw InvalidInput("simpson_uniform: need at least two samples");
  if (n == 1) return static_cast<Scalar>(0.5 * step) * (values(0) + values(1));
  Scalar sum{};
  Eigen::Index even_cells = n;
  if (n % 2 != 0) even_cells = n - 3;
  if (even_cells > 0) {
    sum += values(0) + values(even_cells);
    for (Eigen::Index i = 1; i < even_cells; i += 2) sum += Scalar(4) * values(i);
    for (Eigen::Index i = 2; i < even_cells; i += 2) sum += Scalar(2) * values(i);
    sum *= static_cast<Scalar>(step / 3.0);
  }
  if (n % 2 != 0) {
    const Eigen::Index j = even_cells;
    sum += static_cast<Scalar>(3.0 * step / 8.0) *
           (values(j) + Scalar(3) * values(j + 1) + Scalar(3) * values(j + 2) + values(j + 3));
  }
  return sum;
}

/// Simpson integration of a callable over [a, b] with `cells` uniform cells.
template <class F>
auto integrate_simpson(F&& f, double a, double b, int cells) {
  using Scalar = std::invoke_result_t<F, double>;
  if (cells < 2) throw InvalidInput("integrate_simpson: need at least two cells");
  const double h = (b - a) / cells;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> values(cells + 1);
  for (int i = 0; i <= cells; ++i) values(i) = f(a + i * h);
  return simpson_uniform(values, h);
}

/// Integral of a periodic callable over one period by the uniform rectangle
/// rule, which is spectrally accurate (exact for trigonometric polynomials of
/// degree below `points`).
template <class F>
auto integrate_periodic(F&& f, double period, int points) {
  using Scalar = std::invoke_result_t<F, double>;
  if (points < 2) throw InvalidInput("integrate_periodic: need at least two points");
  const double h = period / points;
  Scalar sum{};
  for (int i = 0; i < points; ++i) sum += f(i * h);
  return sum * static_cast<Scalar>(h);
}

} // namespace pulseflow
