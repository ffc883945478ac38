#pragma once

#include <complex>

namespace pulseflow {

/// Regularized confluent hypergeometric limit function 0F1(; b; z) / Gamma(b)
/// for integer b in {1, 2}, by direct power series with a certified remainder
/// below 1e-14 relative. Arguments are capped at |z| <= 400; larger moduli
/// would need asymptotic expansions and raise ArgumentTooLarge.
std::complex<double> hyp0f1_regularized(int b, std::complex<double> z);

/// Bessel function of the first kind of order zero, by its power series with
/// the same remainder policy. Capped at |z| <= 40.
std::complex<double> bessel_j0(std::complex<double> z);

/// Generalized Womersley number r sqrt(omega / nu).
double womersley_number(double r, double omega, double nu);

} // namespace pulseflow
