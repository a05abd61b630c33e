#pragma once

#include <functional>
#include <random>
#include <vector>

#include "spinbench/sequence.hpp"
#include "spinbench/spinsys.hpp"

namespace spinbench {

// Pauli expansion rho = sum_a c_a P_a with P_a the pauli_product basis
// (I/2, sx/2, sy/2, sz/2 factors); c indexed base-4 (digit order: spin 0 is
// the most significant digit; 0=I,1=x,2=y,3=z). c_0 = 1 for unit trace.
struct PauliCoefficients {
  int n = 0;
  Eigen::VectorXd c;
};

Mat assemble_state(const PauliCoefficients& pc);
PauliCoefficients pauli_coefficients(const Mat& rho, int n);

enum class ObservableSet { computational, nmr_transverse };

struct ReadoutSetting {
  std::vector<IdealRotation> basis_change;  // single-qubit pre-measurement pulses
  ObservableSet observables = ObservableSet::computational;
};

// Exact expectations Tr((U rho U^dag) M) for the setting's observable list.
// computational: the 2^n basis-state probabilities. nmr_transverse: per spin,
// the complex multiplet amplitudes Tr(rho' (-i sx - sy)_i prod_{j!=i}(s0 +- s3)_j)
// flattened as (re, im) pairs. Optional additive Gaussian noise of width sigma.
std::vector<double> simulate_readout(const Mat& rho, const ReadoutSetting& setting, int n,
                                     double noise_sigma = 0.0, std::mt19937_64* rng = nullptr);

// Default informationally complete set: identity, X_i and Y_i per qubit, and
// all two-qubit combinations A_i B_j (A,B in {X,Y}, i<j), computational readout.
std::vector<ReadoutSetting> default_settings(int n);

struct StateTomoOptions {
  bool project_psd = false;
  double rank_tol = 1e-8;
};

Mat state_tomography(const std::vector<std::pair<ReadoutSetting, std::vector<double>>>& readouts,
                     int n, const StateTomoOptions& opts = {});

struct ChiMatrix {
  int n = 0;
  Mat chi;                   // 4^n x 4^n over the full Pauli-product basis
  double tp_residual = 0.0;  // ||sum chi_pq A_q^dag A_p - I||_max
};

// Basis element A_p: tensor of full Pauli matrices (A_0 = I), indexed base-4.
Mat chi_basis_element(int n, int p);

// Linearly independent product inputs {|0>,|1>,|+>,|+i>}^n as density matrices.
std::vector<Mat> standard_process_inputs(int n);

struct ProcessTomoOptions {
  bool project_psd = false;
};

ChiMatrix process_tomography(const std::vector<Mat>& inputs, const std::vector<Mat>& outputs,
                             const ProcessTomoOptions& opts = {});

ChiMatrix chi_of_unitary(const Mat& u);

// Applies a reconstructed process to a state.
Mat apply_chi(const ChiMatrix& chi, const Mat& rho);

}  // namespace spinbench
