#include "spinbench/metrics.hpp"

#include <cmath>

#include "spinbench/optimize.hpp"

namespace spinbench {

namespace {
Mat sqrtm_psd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  Eigen::VectorXd w = es.eigenvalues();
  for (int k = 0; k < w.size(); ++k) w(k) = std::sqrt(std::max(0.0, w(k)));
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

void check_density(const Mat& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  if (!is_hermitian(rho, 1e-8) || std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("invalid density matrix");
}
}  // namespace

Mat Channel::apply(const Mat& rho) const {
  if (unitary) return u * rho * u.adjoint();
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const Mat& a : ops) out += a * rho * a.adjoint();
  return out;
}

double state_fidelity(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("state_fidelity: dim mismatch");
  check_density(a);
  check_density(b);
  Mat sa = sqrtm_psd(a);
  Eigen::SelfAdjointEigenSolver<Mat> es(sa * b * sa);
  double f = 0;
  for (int k = 0; k < es.eigenvalues().size(); ++k)
    f += std::sqrt(std::max(0.0, es.eigenvalues()(k)));
  return std::min(1.0, f);
}

double state_fidelity(const Vec& psi, const Vec& phi) {
  return std::abs((cplx)(psi.adjoint() * phi));
}

double state_fidelity(const Vec& psi, const Mat& rho) {
  return std::sqrt(std::max(0.0, (psi.adjoint() * rho * psi)(0).real()));
}

double avg_gate_fidelity_mc(const Channel& channel, const Mat& target, int samples,
                            unsigned long long seed) {
  std::mt19937_64 rng(seed);
  const int d = channel.dim();
  double acc = 0;
  for (int s = 0; s < samples; ++s) {
    Vec psi = haar_random_state(d, rng);
    Vec ideal = target * psi;
    Mat out = channel.apply(psi * psi.adjoint());
    acc += (ideal.adjoint() * out * ideal)(0).real();  // F^2
  }
  return acc / samples;
}

double avg_gate_fidelity(const Channel& channel, const Mat& target, int mc_samples,
                         unsigned long long seed) {
  const int d = channel.dim();
  if (d != target.rows()) throw std::invalid_argument("avg_gate_fidelity: dim mismatch");
  if (d == 2) {
    // Closed form 1/2 + (1/12) sum_k Tr(U sigma_k U^dag E(sigma_k)).
    Mat sig[3];
    sig[0] = Mat::Zero(2, 2); sig[0](0, 1) = 1; sig[0](1, 0) = 1;
    sig[1] = Mat::Zero(2, 2); sig[1](0, 1) = cplx(0, -1); sig[1](1, 0) = cplx(0, 1);
    sig[2] = Mat::Zero(2, 2); sig[2](0, 0) = 1; sig[2](1, 1) = -1;
    double f = 0.5;
    for (int k = 0; k < 3; ++k)
      f += (target * sig[k] * target.adjoint() * channel.apply(sig[k])).trace().real() / 12.0;
    return f;
  }
  if (channel.unitary) {
    // Exact Haar integral for unitary channels: (d + |Tr(U^dag V)|^2)/(d + d^2).
    double tr2 = std::norm((cplx)(target.adjoint() * channel.u).trace());
    return (d + tr2) / (d + (double)d * d);
  }
  return avg_gate_fidelity_mc(channel, target, mc_samples, seed);
}

MinFidelityResult min_gate_fidelity(const Channel& channel, const Mat& target, int restarts,
                                    unsigned long long seed) {
  const int d = channel.dim();
  auto to_state = [d](const Eigen::VectorXd& x) {
    Vec psi(d);
    for (int k = 0; k < d; ++k) psi(k) = cplx(x(2 * k), x(2 * k + 1));
    double nrm = psi.norm();
    if (nrm < 1e-12) { psi.setZero(); psi(0) = 1; nrm = 1; }
    return Vec(psi / nrm);
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    Vec psi = to_state(x);
    Vec ideal = target * psi;
    Mat out = channel.apply(psi * psi.adjoint());
    // Same squared-fidelity convention as the Haar average, so min <= avg.
    return std::max(0.0, (ideal.adjoint() * out * ideal)(0).real());
  };
  std::mt19937_64 rng(seed);
  MinFidelityResult best{2.0, Vec()};
  NelderMeadConfig cfg;
  cfg.max_evals = 5000;
  cfg.initial_step = 0.3;
  for (int r = 0; r < restarts; ++r) {
    Vec psi0 = haar_random_state(d, rng);
    Eigen::VectorXd x0(2 * d);
    for (int k = 0; k < d; ++k) { x0(2 * k) = psi0(k).real(); x0(2 * k + 1) = psi0(k).imag(); }
    NelderMeadResult res = nelder_mead(objective, x0, cfg);
    if (res.value < best.value) best = {res.value, to_state(res.x)};
  }
  best.value = std::clamp(best.value, 0.0, 1.0);
  return best;
}

}  // namespace spinbench
