#pragma once

#include "spinbench/evolve.hpp"
#include "spinbench/linalg.hpp"

namespace spinbench {

// A channel is either a unitary or a Kraus set acting on the full space.
struct Channel {
  bool unitary = true;
  Mat u;                  // when unitary
  std::vector<Mat> ops;   // Kraus operators otherwise (full dimension)

  static Channel from_unitary(Mat m) { return {true, std::move(m), {}}; }
  static Channel from_kraus(std::vector<Mat> k) { return {false, {}, std::move(k)}; }
  int dim() const { return unitary ? (int)u.rows() : (int)ops.at(0).rows(); }
  Mat apply(const Mat& rho) const;
};

// Uhlmann fidelity Tr sqrt(sqrt(a) b sqrt(a)); accepts pure states or
// density matrices (pure |psi> passed as column vector).
double state_fidelity(const Mat& a, const Mat& b);
double state_fidelity(const Vec& psi, const Vec& phi);
double state_fidelity(const Vec& psi, const Mat& rho);

// Haar-average of F(U|psi>, E(|psi><psi|))^2. Single-qubit inputs use the
// closed form 1/2 + (1/12) sum_k Tr(U sigma_k U^dag E(sigma_k)); multi-qubit
// unitary channels use the exact Haar integral (d + |Tr(U^dag V)|^2)/(d + d^2);
// multi-qubit Kraus channels fall back to seeded Monte-Carlo sampling.
double avg_gate_fidelity(const Channel& channel, const Mat& target,
                         int mc_samples = 10000, unsigned long long seed = 12345);

double avg_gate_fidelity_mc(const Channel& channel, const Mat& target, int samples,
                            unsigned long long seed);

struct MinFidelityResult {
  double value;
  Vec state;
};

// Multi-start gradient-free minimization over pure states; the result is an
// upper bound on the true minimum.
MinFidelityResult min_gate_fidelity(const Channel& channel, const Mat& target,
                                    int restarts = 8, unsigned long long seed = 12345);

}  // namespace spinbench
