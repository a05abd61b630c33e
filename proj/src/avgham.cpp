#include "spinbench/avgham.hpp"

#include <cmath>
#include <numbers>

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;
}

Mat exact_average(const Mat& u, double t_c_s) {
  if (t_c_s <= 0) throw std::invalid_argument("exact_average: cycle time must be positive");
  return logm_unitary(u, t_c_s);
}

MagnusResult magnus_terms(const std::vector<std::pair<Mat, double>>& slices) {
  if (slices.empty()) throw std::invalid_argument("magnus_terms: no slices");
  const int d = (int)slices[0].first.rows();
  double tc = 0;
  for (const auto& [h, tau] : slices) tc += tau;
  MagnusResult res;
  res.cycle_time_s = tc;
  res.h0 = Mat::Zero(d, d);
  for (const auto& [h, tau] : slices) res.h0 += h * tau;
  res.h0 /= tc;
  res.h1 = Mat::Zero(d, d);
  for (size_t k = 0; k < slices.size(); ++k)
    for (size_t l = 0; l < k; ++l) {
      Mat a = slices[k].first * slices[k].second;
      Mat b = slices[l].first * slices[l].second;
      res.h1 += a * b - b * a;
    }
  res.h1 *= cplx(0, -1) / (2 * tc);
  res.h0 = 0.5 * (res.h0 + Mat(res.h0.adjoint()));
  res.h1 = 0.5 * (res.h1 + Mat(res.h1.adjoint()));
  return res;
}

TogglingResult toggling_frame(const Mat& h0, const std::vector<Mat>& pulses) {
  TogglingResult res;
  const int d = (int)h0.rows();
  Mat v = Mat::Identity(d, d);
  res.frames.push_back(h0);
  for (const Mat& u : pulses) {
    if (!is_unitary(u, 1e-9)) throw std::invalid_argument("toggling_frame: non-unitary pulse");
    v = u * v;
    res.frames.push_back(v.adjoint() * h0 * v);
  }
  // Cycle closure up to a global phase.
  cplx tr = v.trace();
  cplx ph = std::abs(tr) < 1e-12 ? cplx(1, 0) : tr / std::abs(tr);
  res.cycle_closed = (v - ph * Mat::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-8;
  return res;
}

namespace {
Mat collective_rotation(const SpinSystem& sys, int axis, double angle) {
  Mat u = Mat::Identity(sys.dim(), sys.dim());
  for (int i = 0; i < sys.n; ++i)
    u = expm_i_hermitian(spin_op(sys.n, i, axis), angle) * u;
  return u;
}
}  // namespace

DecouplingReport decoupling_report(const SpinSystem& sys, DecouplingCycle cycle, double tau_s) {
  sys.validate();
  if (cycle == DecouplingCycle::wahuha4 && sys.model != CouplingModel::dipolar_secular)
    throw std::invalid_argument("decoupling_report: wahuha4 needs dipolar_secular model");
  if (tau_s <= 0) throw std::invalid_argument("decoupling_report: tau must be positive");

  Mat h = system_hamiltonian(sys);
  std::vector<Mat> pulses;
  std::vector<double> durations;
  if (cycle == DecouplingCycle::wahuha4) {
    // tau X' tau Y 2tau Y' tau X tau, read right to left (X' = inverse of X).
    pulses = {collective_rotation(sys, 0, kPi / 2),   // X
              collective_rotation(sys, 1, -kPi / 2),  // Y'
              collective_rotation(sys, 1, kPi / 2),   // Y
              collective_rotation(sys, 0, -kPi / 2)}; // X'
    durations = {tau_s, tau_s, 2 * tau_s, tau_s, tau_s};
  } else {
    // X^2 tau Z^2 tau X^2 tau Z'^2 tau, read right to left.
    pulses = {collective_rotation(sys, 2, -kPi),  // Z'^2
              collective_rotation(sys, 0, kPi),   // X^2
              collective_rotation(sys, 2, kPi),   // Z^2
              collective_rotation(sys, 0, kPi)};  // X^2
    durations = {tau_s, tau_s, tau_s, tau_s, 0.0};
  }

  TogglingResult tog = toggling_frame(h, pulses);
  std::vector<std::pair<Mat, double>> slices;
  for (size_t k = 0; k < durations.size(); ++k)
    if (durations[k] > 0) slices.push_back({tog.frames[k], durations[k]});

  DecouplingReport rep;
  rep.magnus = magnus_terms(slices);

  // Split h0 into per-spin Zeeman components and the rest; for a pure
  // dipolar+Zeeman input the remainder is the residual dipolar part.
  const int d = sys.dim();
  Mat zeeman_part = Mat::Zero(d, d);
  const double op_norm2 = (double)d / 4.0;  // Tr(I_alpha^2)
  for (int i = 0; i < sys.n; ++i) {
    Eigen::Vector3d v;
    for (int ax = 0; ax < 3; ++ax) {
      Mat op = spin_op(sys.n, i, ax);
      v(ax) = (rep.magnus.h0 * op).trace().real() / op_norm2;
      zeeman_part += v(ax) * op;
    }
    double mag = v.norm();
    rep.zeeman_axis.push_back(mag > 0 ? Eigen::Vector3d(v / mag) : Eigen::Vector3d::Zero());
    double w0 = 2 * kPi * std::abs(sys.offsets_hz[i]);
    rep.zeeman_scale.push_back(w0 > 0 ? mag / w0 : 0.0);
  }
  rep.dipolar_residual = (rep.magnus.h0 - zeeman_part).norm();
  return rep;
}

}  // namespace spinbench
