#pragma once

#include "pulseflow/waveform.hpp"

namespace pulseflow::demo {

/// Idealized internal-carotid-artery flow-rate pulse (cm^3/s): period 0.95 s,
/// mean 4.11, peak near 6.88, diastolic floor near 2.1. Harmonic amplitudes
/// decay geometrically, which gives a smooth single-bump systolic wave.
FourierWaveform carotid_waveform();

/// Idealized cervical cerebrospinal-fluid flow-rate oscillation (cm^3/s):
/// period 0.95 s, mean -0.11 (net caudal drift), almost sinusoidal swing of
/// amplitude ~3.4 dominated by the first cardiac harmonic.
FourierWaveform spinal_csf_waveform();

/// Uniform sampling helper: n samples at t_k = k T / n.
SampledWaveform sample_uniform(const HarmonicSeries& series, int count);

} // namespace pulseflow::demo
