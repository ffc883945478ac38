#pragma once

#include <complex>
#include <filesystem>
#include <optional>

#include <Eigen/Core>

#include "pulseflow/errors.hpp"
#include "pulseflow/geometry.hpp"

namespace pulseflow {

/// One period of a sampled T-periodic scalar signal. Times are strictly
/// increasing and live in [0, period).
struct SampledWaveform {
  SampledWaveform(Eigen::ArrayXd times, Eigen::ArrayXd values, double period);
  Eigen::ArrayXd times;
  Eigen::ArrayXd values;
  double period;
};

/// Reads a two-column CSV (time, flow rate). '#' starts a comment, a
/// non-numeric header row is skipped. When no period is supplied it is
/// inferred as max(t) + median(dt).
SampledWaveform ingest_csv(const std::filesystem::path& path,
                           std::optional<double> period = std::nullopt);

/// Real T-periodic signal stored through its one-sided complex Fourier
/// coefficients c_m, m = 0..M:
///   g(t) = c_0 + 2 sum_m Re(c_m exp(i omega_m t)),  omega_m = 2 pi m / T.
/// Negative-index coefficients are implied by conjugacy and never stored;
/// c_0 is kept real.
class HarmonicSeries {
public:
  HarmonicSeries(double period, Eigen::ArrayXcd coeffs);

  double period() const { return period_; }
  int mode_count() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Eigen::ArrayXcd& coeffs() const { return coeffs_; }
  std::complex<double> coeff(int m) const;
  double angular_frequency(int m) const;

  /// Value at time t (real by construction).
  double operator()(double t) const;

private:
  double period_;
  Eigen::ArrayXcd coeffs_;
};

/// Fourier representation of a periodic flow rate (cm^3/s).
class FourierWaveform : public HarmonicSeries {
public:
  using HarmonicSeries::HarmonicSeries;
};

/// Fourier representation of the periodic axial pressure gradient lambda(t)
/// (unit density; the pressure is p = -lambda z + p0(t)).
class PressureGradientSeries : public HarmonicSeries {
public:
  using HarmonicSeries::HarmonicSeries;
};

/// Discrete Fourier projection of the samples onto modes 0..mode_count.
/// Non-uniform samples are first resampled to a uniform grid by periodic
/// linear interpolation.
FourierWaveform fourier_fit(const SampledWaveform& w, int mode_count);

/// reconstruct(fw, t) == fw(t); kept as a named operation for readability.
inline double reconstruct(const FourierWaveform& fw, double t) { return fw(t); }

/// Sample pearson correlation of two equal-length series.
double pearson(Eigen::Ref<const Eigen::ArrayXd> a, Eigen::Ref<const Eigen::ArrayXd> b);

/// Smallest mode count whose fit correlates with the samples within the given
/// gap (1 - r <= max_gap). Throws NoConvergence when the Nyquist guard is hit
/// before reaching the gap.
int smallest_mode_count(const SampledWaveform& w, double max_gap);

/// Nondimensional labels of a waveform/section pairing.
struct FlowDiagnostics {
  double characteristic_frequency = 0.0; ///< amplitude-weighted mean of omega_m
  double characteristic_length = 0.0;    ///< alpha+beta (simply connected) or mean gap (annuli)
  double area = 0.0;
  double mean_speed = 0.0; ///< f0 / A
  double peak_speed = 0.0; ///< max_t f(t) / A
  double reynolds = 0.0;
  double womersley = 0.0;
  double ellipticity = 1.0;  ///< minor/major (1 for circular sections)
  double eccentricity = 0.0; ///< sqrt(1 - ellipticity^2)
};

FlowDiagnostics diagnostics(const FourierWaveform& fw, const SectionGeometry& g, double nu);

} // namespace pulseflow
