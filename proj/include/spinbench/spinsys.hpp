#pragma once

#include <string>
#include <vector>

#include "spinbench/linalg.hpp"
#include "spinbench/sequence.hpp"

namespace spinbench {

enum class CouplingModel { weak_zz, isotropic, dipolar_secular };

std::string to_string(CouplingModel m);
CouplingModel coupling_model_from_string(const std::string& s);

// Secular dipolar couplings b_ij in Hz (geometry already folded in).
struct DipolarGeometry {
  Eigen::MatrixXd b_hz;
};

struct SpinSystem {
  int n = 0;
  std::vector<double> offsets_hz;          // rotating-frame offsets
  Eigen::MatrixXd j_hz;                    // symmetric, zero diagonal
  CouplingModel model = CouplingModel::weak_zz;
  DipolarGeometry geometry;                // used iff model == dipolar_secular
  std::vector<double> t1_s;                // empty or per spin; <=0 means infinite
  std::vector<double> t2_s;

  int dim() const { return 1 << n; }
  void validate() const;
};

// Angular-momentum operator I_axis on one spin, identity elsewhere.
// axis: 0=x, 1=y, 2=z. Normalization I = sigma/2.
Mat spin_op(int n, int spin, int axis);

// Tensor product of sigma_{a_k}/2 over all spins (a_k: 0=I,1=x,2=y,3=z).
// Tr(P_a P_b) = delta_ab * 2^-n with this normalization.
Mat pauli_product(int n, const std::vector<int>& which);

// Rotating-frame system Hamiltonian in angular frequency units (rad/s):
//   H = -sum_i 2 pi offset_i Iz_i + coupling terms per model.
Mat system_hamiltonian(const SpinSystem& sys);

// Control Hamiltonian of one segment in the multiply-rotating frame at time t
// (t measured from segment start):
//   H = -2 pi amp sum_{i in targets}
//         [cos((w_rf - w0_i) t + phi) Ix_i + sin((w_rf - w0_i) t + phi) Iy_i]
Mat control_hamiltonian(const SpinSystem& sys, const PulseSegment& seg, double t);

Mat thermal_state(const SpinSystem& sys);  // |0...0><0...0| (high-polarization limit)

// Single-spin rotation about an in-plane axis at azimuth phi (radians from x),
// embedded in the n-spin space: exp(-i theta (cos phi Ix + sin phi Iy)).
Mat rotation(int n, int spin, double axis_phi, double theta);
Mat rotation_z(int n, int spin, double theta);

}  // namespace spinbench
