#include "pulseflow/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

namespace pulseflow {

using std::numbers::pi;

SampledWaveform::SampledWaveform(Eigen::ArrayXd times_, Eigen::ArrayXd values_, double period_)
    : times(std::move(times_)), values(std::move(values_)), period(period_) {
  if (times.size() != values.size())
    throw InvalidInput("SampledWaveform: time and value counts differ");
  if (times.size() < 4) throw InvalidInput("SampledWaveform: need at least 4 samples");
  for (Eigen::Index i = 1; i < times.size(); ++i)
    if (!(times(i) > times(i - 1)))
      throw NonMonotonicTime("SampledWaveform: times must be strictly increasing");
  if (!(period > 0.0)) throw InvalidInput("SampledWaveform: period must be positive");
  if (times(0) < 0.0 || times(times.size() - 1) >= period)
    throw InvalidInput("SampledWaveform: times must lie in [0, period)");
  if (!values.isFinite().all()) throw InvalidInput("SampledWaveform: values must be finite");
}

SampledWaveform ingest_csv(const std::filesystem::path& path, std::optional<double> period) {
  std::ifstream in(path);
  if (!in) throw IoError("ingest_csv: cannot open " + path.string());

  std::vector<double> t, f;
  std::string line;
  int lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    // strip whitespace-only lines
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double ti = 0.0, fi = 0.0;
    if (!(row >> ti >> fi)) {
      if (header_allowed) { // one leading header row
        header_allowed = false;
        continue;
      }
      throw CsvParseError("ingest_csv: bad row " + std::to_string(lineno) + " in " +
                          path.string());
    }
    header_allowed = false;
    t.push_back(ti);
    f.push_back(fi);
  }
  if (t.size() < 4)
    throw CsvParseError("ingest_csv: fewer than 4 data rows in " + path.string());

  Eigen::ArrayXd times = Eigen::Map<Eigen::ArrayXd>(t.data(), t.size());
  Eigen::ArrayXd values = Eigen::Map<Eigen::ArrayXd>(f.data(), f.size());

  double T;
  if (period) {
    T = *period;
  } else {
    Eigen::ArrayXd dt = times.tail(times.size() - 1) - times.head(times.size() - 1);
    std::vector<double> gaps(dt.data(), dt.data() + dt.size());
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    T = times(times.size() - 1) + gaps[gaps.size() / 2];
  }
  return SampledWaveform(std::move(times), std::move(values), T);
}

HarmonicSeries::HarmonicSeries(double period, Eigen::ArrayXcd coeffs)
    : period_(period), coeffs_(std::move(coeffs)) {
  if (!(period_ > 0.0)) throw InvalidInput("HarmonicSeries: period must be positive");
  if (coeffs_.size() < 1) throw InvalidInput("HarmonicSeries: need at least the mean");
  const double scale = std::max(coeffs_.abs().maxCoeff(), 1e-300);
  if (std::abs(coeffs_(0).imag()) > 1e-10 * scale)
    std::clog << "pulseflow: discarding non-negligible imaginary mean "
              << coeffs_(0).imag() << "\n";
  coeffs_(0) = coeffs_(0).real();
}

std::complex<double> HarmonicSeries::coeff(int m) const {
  if (m < 0 || m > mode_count()) throw InvalidInput("HarmonicSeries: mode out of range");
  return coeffs_(m);
}

double HarmonicSeries::angular_frequency(int m) const { return 2.0 * pi * m / period_; }

double HarmonicSeries::operator()(double t) const {
  double value = coeffs_(0).real();
  for (int m = 1; m <= mode_count(); ++m) {
    const double phase = angular_frequency(m) * t;
    value += 2.0 * (coeffs_(m) * std::complex<double>(std::cos(phase), std::sin(phase))).real();
  }
  return value;
}

namespace {

// Periodic linear interpolation of the samples at time t (wrapping the gap
// between the last sample and the first one of the next period).
double interp_periodic(const SampledWaveform& w, double t) {
  const Eigen::Index n = w.times.size();
  t = std::fmod(t, w.period);
  if (t < 0.0) t += w.period;
  if (t < w.times(0)) t += w.period; // falls in the wrap segment
  Eigen::Index lo = std::upper_bound(w.times.data(), w.times.data() + n, t) - w.times.data() - 1;
  if (lo >= n - 1 && t >= w.times(n - 1)) {
    const double t0 = w.times(n - 1), t1 = w.times(0) + w.period;
    const double s = (t - t0) / (t1 - t0);
    return (1.0 - s) * w.values(n - 1) + s * w.values(0);
  }
  const double t0 = w.times(lo), t1 = w.times(lo + 1);
  const double s = (t - t0) / (t1 - t0);
  return (1.0 - s) * w.values(lo) + s * w.values(lo + 1);
}

bool uniformly_spaced(const SampledWaveform& w) {
  const Eigen::Index n = w.times.size();
  const double dt = w.period / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(w.times(i) - (w.times(0) + i * dt)) > 1e-9 * w.period) return false;
  return true;
}

} // namespace

FourierWaveform fourier_fit(const SampledWaveform& w, int mode_count) {
  if (mode_count < 0) throw InvalidInput("fourier_fit: mode count must be nonnegative");
  const Eigen::Index n = w.times.size();
  if (2 * mode_count + 1 > n)
    throw InvalidInput("fourier_fit: mode count exceeds the Nyquist limit of the samples");

  Eigen::ArrayXd t, f;
  if (uniformly_spaced(w)) {
    t = w.times;
    f = w.values;
  } else {
    const Eigen::Index k = std::max<Eigen::Index>(n, 8 * (mode_count + 1));
    t = Eigen::ArrayXd::LinSpaced(k, 0.0, w.period * (1.0 - 1.0 / static_cast<double>(k)));
    f.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) f(i) = interp_periodic(w, t(i));
  }

  const Eigen::Index k = t.size();
  Eigen::ArrayXcd coeffs(mode_count + 1);
  for (int m = 0; m <= mode_count; ++m) {
    const double omega = 2.0 * pi * m / w.period;
    std::complex<double> acc = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
      acc += f(i) * std::complex<double>(std::cos(omega * t(i)), -std::sin(omega * t(i)));
    coeffs(m) = acc / static_cast<double>(k);
  }
  return FourierWaveform(w.period, std::move(coeffs));
}

double pearson(Eigen::Ref<const Eigen::ArrayXd> a, Eigen::Ref<const Eigen::ArrayXd> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw InvalidInput("pearson: need two equal-length series of at least 2 points");
  const double ma = a.mean(), mb = b.mean();
  const Eigen::ArrayXd da = a - ma, db = b - mb;
  const double va = (da * da).sum(), vb = (db * db).sum();
  if (va <= 0.0 || vb <= 0.0) throw DegenerateSeries("pearson: zero-variance series");
  return (da * db).sum() / std::sqrt(va * vb);
}

int smallest_mode_count(const SampledWaveform& w, double max_gap) {
  if (!(max_gap > 0.0)) throw InvalidInput("smallest_mode_count: gap must be positive");
  const int cap = static_cast<int>((w.times.size() - 1) / 2);
  for (int m = 0; m <= cap; ++m) {
    const FourierWaveform fit = fourier_fit(w, m);
    Eigen::ArrayXd rec(w.times.size());
    for (Eigen::Index i = 0; i < w.times.size(); ++i) rec(i) = fit(w.times(i));
    double r;
    try {
      r = pearson(w.values, rec);
    } catch (const DegenerateSeries&) {
      continue; // constant fit of a non-constant signal
    }
    if (1.0 - r <= max_gap) return m;
  }
  throw NoConvergence("smallest_mode_count: Nyquist limit reached before the target gap");
}

FlowDiagnostics diagnostics(const FourierWaveform& fw, const SectionGeometry& g, double nu) {
  if (!(nu > 0.0)) throw InvalidInput("diagnostics: viscosity must be positive");
  FlowDiagnostics d;
  d.area = area(g);

  std::visit(
      [&d](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          d.characteristic_length = 2.0 * s.radius;
        } else if constexpr (std::is_same_v<T, CircularAnnulus>) {
          d.characteristic_length = s.outer_radius - s.inner_radius;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          d.characteristic_length = s.major_semiaxis() + s.minor_semiaxis();
          d.ellipticity = s.minor_semiaxis() / s.major_semiaxis();
        } else {
          d.characteristic_length = 0.5 * ((s.outer_major_semiaxis() - s.inner_major_semiaxis()) +
                                           (s.outer_minor_semiaxis() - s.inner_minor_semiaxis()));
          d.ellipticity = s.outer_minor_semiaxis() / s.outer_major_semiaxis();
        }
      },
      g);
  d.eccentricity = std::sqrt(std::max(0.0, 1.0 - d.ellipticity * d.ellipticity));

  const Eigen::ArrayXd amplitude = fw.coeffs().abs();
  const double total = amplitude.sum();
  if (total <= 0.0) throw DegenerateWaveform("diagnostics: waveform has no content");
  double weighted = 0.0;
  for (int m = 0; m <= fw.mode_count(); ++m) weighted += amplitude(m) * fw.angular_frequency(m);
  d.characteristic_frequency = weighted / total;

  constexpr int kSamples = 4096;
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kSamples; ++i)
    peak = std::max(peak, fw(fw.period() * i / static_cast<double>(kSamples)));

  d.mean_speed = fw.coeff(0).real() / d.area;
  d.peak_speed = peak / d.area;
  d.reynolds = d.peak_speed * d.characteristic_length / nu;
  d.womersley = 0.5 * d.characteristic_length * std::sqrt(d.characteristic_frequency / nu);
  return d;
}

} // namespace pulseflow
