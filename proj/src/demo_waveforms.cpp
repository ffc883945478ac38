#include "pulseflow/demo_waveforms.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace pulseflow::demo {

namespace {

// Aligned-phase pulse: coefficients c_m = base * ratio^(m-1) * exp(-i omega_m t_peak),
// so the signal is mean + 2 sum_m A_m cos(omega_m (t - t_peak)).
FourierWaveform geometric_pulse(double period, double mean, double base, double ratio,
                                int modes, double peak_time) {
  Eigen::ArrayXcd coeffs(modes + 1);
  coeffs(0) = mean;
  double amplitude = base;
  for (int m = 1; m <= modes; ++m) {
    const double omega = 2.0 * std::numbers::pi * m / period;
    coeffs(m) = amplitude * std::exp(std::complex<double>(0.0, -omega * peak_time));
    amplitude *= ratio;
  }
  return FourierWaveform(period, std::move(coeffs));
}

} // namespace

FourierWaveform carotid_waveform() {
  return geometric_pulse(0.95, 4.11, 1.169, 0.1545, 18, 0.15 * 0.95);
}

FourierWaveform spinal_csf_waveform() {
  return geometric_pulse(0.95, -0.11, 1.6486, 0.0305, 8, 0.12 * 0.95);
}

SampledWaveform sample_uniform(const HarmonicSeries& series, int count) {
  const double T = series.period();
  Eigen::ArrayXd t(count), f(count);
  for (int i = 0; i < count; ++i) {
    t(i) = T * i / static_cast<double>(count);
    f(i) = series(t(i));
  }
  return SampledWaveform(std::move(t), std::move(f), T);
}

} // namespace pulseflow::demo
