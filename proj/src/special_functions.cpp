#include "pulseflow/special_functions.hpp"

#include <cmath>

#include "pulseflow/errors.hpp"

namespace pulseflow {

namespace {

// Kahan-compensated complex accumulator; the series below alternate in sign
// (or phase) and partial sums can exceed the result by several orders.
struct CompensatedSum {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> carry{0.0, 0.0};
  void add(std::complex<double> term) {
    const std::complex<double> y = term - carry;
    const std::complex<double> t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Sums term_0 + term_0*r_1 + ... where the caller supplies the multiplicative
// ratio of consecutive terms. Stops once the geometric remainder bound drops
// below 1e-15 of the partial sum.
template <class Ratio>
std::complex<double> sum_series(std::complex<double> first, Ratio&& ratio, int max_terms) {
  CompensatedSum acc;
  std::complex<double> term = first;
  acc.add(term);
  for (int k = 0; k < max_terms; ++k) {
    term *= ratio(k);
    acc.add(term);
    const double q = std::abs(ratio(k + 1));
    if (q < 0.5) {
      const double remainder = std::abs(term) * q / (1.0 - q);
      if (remainder <= 1e-15 * std::abs(acc.sum) + 1e-300) return acc.sum;
    }
  }
  throw NumericError("sum_series: power series failed to converge");
}

} // namespace

std::complex<double> hyp0f1_regularized(int b, std::complex<double> z) {
  if (b != 1 && b != 2)
    throw InvalidInput("hyp0f1_regularized: only b = 1 and b = 2 are supported");
  if (std::abs(z) > 400.0)
    throw ArgumentTooLarge("hyp0f1_regularized: |z| above the series cap of 400");
  // term_k = z^k / (k! (b+k-1)!), term_0 = 1/Gamma(b) = 1 for b in {1,2}
  return sum_series(
      {1.0, 0.0},
      [b, z](int k) { return z / (static_cast<double>(k + 1) * static_cast<double>(b + k)); },
      400);
}

std::complex<double> bessel_j0(std::complex<double> z) {
  if (std::abs(z) > 40.0) throw ArgumentTooLarge("bessel_j0: |z| above the series cap of 40");
  const std::complex<double> w = -0.25 * z * z;
  return sum_series(
      {1.0, 0.0},
      [w](int k) {
        const double d = static_cast<double>(k + 1);
        return w / (d * d);
      },
      400);
}

double womersley_number(double r, double omega, double nu) {
  if (!(r >= 0.0) || !(nu > 0.0) || !(omega >= 0.0))
    throw InvalidInput("womersley_number: need r >= 0, omega >= 0, nu > 0");
  return r * std::sqrt(omega / nu);
}

} // namespace pulseflow
