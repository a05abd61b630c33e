#pragma once

#include <map>
#include <string>
#include <vector>

#include "spinbench/spinsys.hpp"

namespace spinbench {

enum class ShapeFamily { rectangular, gaussian, hermite_90, hermite_180, fourier_series };

std::string to_string(ShapeFamily f);
ShapeFamily shape_family_from_string(const std::string& s);

struct ShapeSpec {
  ShapeFamily family = ShapeFamily::rectangular;
  // Family coefficients. gaussian: "truncation" (profile support is
  // truncation sigmas each side, default 3). hermite_*: "c" (lobe
  // coefficient) and "truncation". fourier_series: "a0","a1","b1",...
  std::map<std::string, double> params;
  int n_slices = 256;
};

// Piecewise-constant profile sampled at slice midpoints, area-normalized so
// that sum_k 2 pi amp_k tau_k = nominal_angle on resonance. Negative shape
// lobes are emitted as positive amplitudes with the phase advanced by pi.
std::vector<PulseSegment> sample_shape(const ShapeSpec& spec, double t_pw_s,
                                       double nominal_angle_rad);

// Adds k * 2 pi * freq_shift * dt to the phase of slice k, emulating a
// transmitter shifted by freq_shift. Slices must share one duration.
std::vector<PulseSegment> phase_ramp(const std::vector<PulseSegment>& segments,
                                     double freq_shift_hz);

struct BlochSiegert {
  double shift_hz;
  bool validity_warning;  // |offset| <= amp violates the perturbative regime
};

// omega1^2 / (2 (omega0 - omega_rf)) expressed in Hz.
BlochSiegert bloch_siegert_shift(double amp_hz, double offset_hz);

struct ResponsePoint {
  double detuning_hz;
  double mx, my, mz;
  double mxy() const;
};

// Single-spin response: each detuning simulated with exact 2x2 slice
// propagators in the frame rotating at the (unshifted) transmitter.
std::vector<ResponsePoint> frequency_response(const std::vector<PulseSegment>& segments,
                                              const std::vector<double>& detunings_hz,
                                              const Eigen::Vector3d& initial = {0, 0, 1});

std::vector<ResponsePoint> frequency_response(const ShapeSpec& spec, double t_pw_s,
                                              double nominal_angle_rad,
                                              const std::vector<double>& detunings_hz,
                                              const Eigen::Vector3d& initial = {0, 0, 1});

// Two simultaneous shaped pulses at different carriers, combined by vector
// addition of slice fields; optional ramp-tracked correction of the mutual
// Bloch-Siegert shift (each pulse accumulates extra phase following the
// instantaneous shift computed from the other pulse's current amplitude).
struct TwoPulseResponse {
  std::vector<ResponsePoint> points;  // response of a spin at each detuning
};
TwoPulseResponse simultaneous_response(const std::vector<PulseSegment>& a, double carrier_a_hz,
                                       const std::vector<PulseSegment>& b, double carrier_b_hz,
                                       const std::vector<double>& detunings_hz,
                                       bool bs_correction);

struct UnwindResult {
  double tau_s;
  double fidelity;
};

// Finds tau maximizing the average gate fidelity of
// exp(+i H_J tau) U_pulse exp(+i H_J tau) against the ideal instantaneous
// rotation, by golden-section search. `one_sided` compensates only after the
// pulse (for comparison).
UnwindResult unwind_coupling(const std::vector<PulseSegment>& segments, const SpinSystem& sys,
                             bool one_sided = false);

}  // namespace spinbench
