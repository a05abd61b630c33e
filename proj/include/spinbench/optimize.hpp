#pragma once

#include <functional>
#include <vector>

#include "spinbench/evolve.hpp"

namespace spinbench {

struct NelderMeadConfig {
  int max_evals = 20000;
  double spread_tol = 1e-10;
  double initial_step = 0.5;
  // Standard reflection/expansion/contraction/shrink coefficients.
  double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value;
  int evals;
  bool converged;                          // false when the eval cap was hit
  std::vector<double> trace;               // best value per iteration
};

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& x0, const NelderMeadConfig& cfg = {});

struct ParamBounds {
  double duration_min_s = 5e-5, duration_max_s = 5e-3;
  double amp_max_hz = 2000.0;
  double transmitter_min_hz = -2000.0, transmitter_max_hz = 2000.0;
};

struct Penalties {
  double power = 0.0;        // weight on mean squared amplitude (kHz^2)
  double excursion = 0.0;    // weight on transmitter excursion (kHz^2)
  double duration = 0.0;     // weight on total duration (ms)
};

struct PulseSearchSpec {
  int max_segments = 6;
  ParamBounds bounds;
  Penalties penalties;
  Mat target;
  double fidelity_goal = 0.99;
  int restarts = 8;
  int max_evals_per_start = 20000;
};

struct PulseSearchResult {
  std::vector<PulseSegment> segments;
  double fidelity;
  bool reached_goal;
  std::vector<double> trace;  // best objective per iteration of the winning start
};

// Iterative deepening over segment count; objective is
// 1 - avg_gate_fidelity(W(T) U_net, target) + penalties, where W(T) folds the
// common-frame propagator back into the multiply-rotating frame at time T.
PulseSearchResult find_pulse(const SpinSystem& sys, const PulseSearchSpec& spec,
                             unsigned long long seed);

}  // namespace spinbench
