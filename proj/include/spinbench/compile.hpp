#pragma once

#include <optional>
#include <utility>

#include "spinbench/evolve.hpp"
#include "spinbench/spinsys.hpp"

namespace spinbench {

enum class GateKind { cphase, cnot };

// Compiles the gate into ideal rotations, frame z rotations, and one J-coupling
// delay of 1/(2|J|); the sequence's global phase is set so sequence_unitary
// reproduces the canonical matrix exactly.
Sequence two_qubit_gate(const SpinSystem& sys, GateKind kind, int control, int target);

struct SimplifyOptions {
  bool drop_trailing_framez = false;  // valid when readout is diagonal
  int max_passes = 100;
};

// Rewrites to a fixed point: merge/cancel adjacent same-axis rotations and
// FrameZ items, migrate FrameZ toward the end of the sequence (adjusting the
// axis phases it crosses), drop identity items. Unitary equivalence is
// preserved up to the tracked global phase.
Sequence simplify(const Sequence& seq, const SimplifyOptions& opts = {});

struct RefocusScheme {
  Eigen::MatrixXi signs;             // n x m entries of +-1, first column +1
  std::vector<double> intervals_s;   // per-column durations
};

// Normalized Hadamard matrix of the smallest constructible order >= min_order
// (Sylvester for powers of two, Paley I for 12); throws beyond 16.
Eigen::MatrixXi hadamard_matrix(int min_order);

// Rows of a normalized Hadamard matrix of the smallest constructible order
// >= n (Sylvester for powers of two, Paley for 12). keep=(i,j) assigns spin j
// the same row as spin i so J_ij survives at full strength.
RefocusScheme hadamard_scheme(int n, std::optional<std::pair<int, int>> keep = std::nullopt,
                              double interval_s = 1e-3);

// Interval-doubling scheme with 2^(n-1) equal columns; spin k flips after
// intervals j with j = 2^(n-k) (mod 2^(n-k+1)), so no two spins flip at once.
RefocusScheme doubling_scheme(int n, double interval_s = 1e-3);

struct SchemeReport {
  Eigen::MatrixXd j_eff_hz;     // extracted effective couplings
  Eigen::MatrixXd j_target_hz;  // duration-weighted signed averages
  double max_dev_hz;            // max |extracted - target|
  Mat u;                        // ideal-pulse propagator over the scheme
};

// Propagates the scheme with ideal instantaneous 180s (including closure
// flips back to +1) and extracts effective J couplings from the generator.
SchemeReport verify_scheme(const RefocusScheme& scheme, const SpinSystem& sys);

}  // namespace spinbench
