#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinbench/spinsys.hpp"

namespace spinbench {

enum class KrausKind { phase_damping, amplitude_damping, custom };

struct KrausSet {
  std::vector<Mat> ops;  // single-spin 2x2 operators
  KrausKind kind = KrausKind::custom;

  bool trace_preserving(double tol = 1e-10) const;
};

// Ordered product of exponentials; later slices act on the left.
Mat propagate(const std::vector<std::pair<Mat, double>>& h_slices);

// Exact propagator of one RF segment in the common rotating frame:
// the segment drive is static in the frame rotating at the transmitter, so
//   U = exp(+i w_rf tau sum_k Iz_k) * exp(-i H_rot tau)
// with H_rot = -sum_i 2pi(offset_i - f_tx) Iz_i + couplings
//             - 2pi amp sum_{targets}(cos phi Ix + sin phi Iy).
// Segment phase is referenced to the segment start.
Mat segment_propagator(const SpinSystem& sys, const PulseSegment& seg);

// Per-spin phase/amplitude damping Kraus pairs for one interleave step dt.
// Phase damping uses the pure-dephasing rate 1/T2 - 1/(2 T1) so that, combined
// with amplitude damping, coherences decay exactly as e^{-dt/T2} and
// populations as e^{-dt/T1}:
//   phase:     A0 = diag(1, sqrt(g)), A1 = diag(0, sqrt(1-g)),  g = e^{-2 dt r_phi}
//   amplitude: A0 = diag(1, sqrt(g)), A1 = [[0, sqrt(1-g)],[0,0]], g = e^{-dt/T1}
std::vector<KrausSet> damping_channels(double t1_s, double t2_s, double dt_s);

// Applies a single-spin Kraus set to spin `spin` of an n-spin rho.
Mat apply_channel(const Mat& rho, const KrausSet& ch, int n, int spin);

struct TrajectorySample {
  double t_s;
  std::string observable;
  double value;
};

struct EvolveOptions {
  bool relaxation = false;
  double interleave_step_s = 0.0;  // 0: default min(slice, T2/100)
  double sample_dt_s = 0.0;        // 0: no trajectory recording
};

struct EvolveResult {
  Mat rho;
  std::vector<TrajectorySample> trajectory;
};

EvolveResult evolve_sequence(const SpinSystem& sys, const Sequence& seq, const Mat& rho0,
                             const EvolveOptions& opts = {});

// Net unitary of a sequence (no relaxation), including its global phase.
Mat sequence_unitary(const SpinSystem& sys, const Sequence& seq);

}  // namespace spinbench
