#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace spinbench {

// One piecewise-constant RF segment. Phase convention: phase pi drives an x
// rotation, -pi/2 a y rotation (phase 0 / +pi/2 give the inverses).
struct PulseSegment {
  double duration_s = 0.0;
  double amp_hz = 0.0;           // gamma B1 / 2 pi, >= 0
  double phase_rad = 0.0;
  double transmitter_hz = 0.0;   // carrier offset in the common frame
  std::vector<int> targets;      // spins addressed by this segment
};

// Instantaneous rotation about an in-plane axis at azimuth axis_phi
// (0 = x, pi/2 = y), by `angle` radians.
struct IdealRotation {
  int spin = 0;
  double axis_phi = 0.0;
  double angle = 0.0;
};

// Zero-duration reference-frame z rotation.
struct FrameZ {
  int spin = 0;
  double angle = 0.0;
};

struct Delay {
  double t_s = 0.0;
};

using SeqItem = std::variant<PulseSegment, IdealRotation, FrameZ, Delay>;

// Items are time ordered: items[0] acts first.
struct Sequence {
  std::vector<SeqItem> items;
  std::complex<double> global_phase{1.0, 0.0};

  void push(SeqItem it) { items.push_back(std::move(it)); }
  double duration_s() const;
};

inline IdealRotation rot_x(int spin, double angle) { return {spin, 0.0, angle}; }
inline IdealRotation rot_y(int spin, double angle) { return {spin, 1.5707963267948966, angle}; }

}  // namespace spinbench
