#pragma once

#include <string>
#include <vector>

#include "spinbench/linalg.hpp"

namespace spinbench {

// Single-qubit rotation R_n(theta) = exp(-i theta n.sigma/2). By default the
// axis lies in the xy plane at azimuth axis_phase; an explicit 3-vector axis
// may be given instead.
struct RotationSpec {
  double axis_phase = 0.0;
  double angle = 0.0;
  bool has_axis3 = false;
  Eigen::Vector3d axis3{1, 0, 0};

  Eigen::Vector3d axis() const;
};

enum class ErrorKind { amplitude_linear, phase_offset, resonance_offset };

struct ErrorModel {
  ErrorKind kind = ErrorKind::amplitude_linear;
  double epsilon = 0.0;  // relative amplitude error, phase offset (rad), or offset ratio
};

Mat ideal_rotation(const RotationSpec& rot);

// Exact 2x2 unitary of the perturbed rotation:
//   amplitude_linear:  angle -> theta (1 + eps)
//   phase_offset:      axis azimuth -> phase + eps
//   resonance_offset:  axis tilted out of plane by ratio r = eps, angle scaled
//                      by sqrt(1 + r^2) (generator theta (n + r z))
Mat apply_error(const RotationSpec& rot, const ErrorModel& err);

// Named sequences, ordered right to left (the last element acts first).
// theta only affects bb1. Degrees in the published sequences are converted
// here; phi_bb1 = arccos(-theta / 4 pi).
std::vector<RotationSpec> composite_library(const std::string& name, double theta = 0.0);

// Composes the erroneous sequence (rightmost first).
Mat compose_erroneous(const std::vector<RotationSpec>& seq, const ErrorModel& err);

struct SweepPoint {
  double epsilon;
  double avg_gate_fidelity;
};

std::vector<SweepPoint> fidelity_sweep(const std::vector<RotationSpec>& seq, const Mat& target,
                                       ErrorKind kind, const std::vector<double>& eps_grid);

}  // namespace spinbench
