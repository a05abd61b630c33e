#pragma once

#include <string>
#include <vector>

#include "spinbench/spinsys.hpp"

namespace spinbench {

struct MagnusResult {
  Mat h0;
  Mat h1;
  double cycle_time_s = 0;
};

// H = i log(U)/t_c with eigenphases in (-pi, pi]. Fails silently (branch
// wrap) when ||H|| t_c >= pi; callers keep cycles inside the branch.
Mat exact_average(const Mat& u, double t_c_s);

// Discrete Magnus terms of a piecewise-constant cycle:
//   H0 = (1/tc) sum_k H_k tau_k
//   H1 = (-i / 2 tc) sum_{k>l} [H_k tau_k, H_l tau_l]
MagnusResult magnus_terms(const std::vector<std::pair<Mat, double>>& slices);

// Toggling-frame Hamiltonians H_(k) = (U_k ... U_1)^-1 H0 (U_k ... U_1) for
// k = 0..n. Warns (flag) when the cycle does not close to identity up to a
// global phase.
struct TogglingResult {
  std::vector<Mat> frames;
  bool cycle_closed;
};
TogglingResult toggling_frame(const Mat& h0, const std::vector<Mat>& pulses);

enum class DecouplingCycle { wahuha4, echo3 };

struct DecouplingReport {
  MagnusResult magnus;
  double dipolar_residual;            // norm of the dipolar part of h0
  std::vector<Eigen::Vector3d> zeeman_axis;  // per-spin h0 Zeeman direction
  std::vector<double> zeeman_scale;   // per-spin |h0 Zeeman| / (2 pi |offset|)
};

// Canned cycles: WAHUHA-4 (tau X' tau Y 2tau Y' tau X tau, read right to
// left) and the three-component echo (X^2 tau Z^2 tau X^2 tau Z'^2 tau).
DecouplingReport decoupling_report(const SpinSystem& sys, DecouplingCycle cycle, double tau_s);

}  // namespace spinbench
