#include "spinbench/composite.hpp"

#include <cmath>
#include <numbers>

#include "spinbench/metrics.hpp"

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

Mat axis_angle(const Eigen::Vector3d& f) {
  // exp(-i f.sigma/2)
  double w = f.norm();
  Mat u = Mat::Identity(2, 2);
  if (w < 1e-300) return u;
  Mat n_sigma(2, 2);
  n_sigma << f.z(), cplx(f.x(), -f.y()), cplx(f.x(), f.y()), -f.z();
  return std::cos(w / 2) * u - cplx(0, 1) * (std::sin(w / 2) / w) * n_sigma;
}
}  // namespace

Eigen::Vector3d RotationSpec::axis() const {
  if (has_axis3) return axis3.normalized();
  return {std::cos(axis_phase), std::sin(axis_phase), 0.0};
}

Mat ideal_rotation(const RotationSpec& rot) { return axis_angle(rot.angle * rot.axis()); }

Mat apply_error(const RotationSpec& rot, const ErrorModel& err) {
  switch (err.kind) {
    case ErrorKind::amplitude_linear:
      return axis_angle(rot.angle * (1.0 + err.epsilon) * rot.axis());
    case ErrorKind::phase_offset: {
      RotationSpec r = rot;
      if (r.has_axis3) throw std::invalid_argument("phase_offset needs an in-plane axis");
      r.axis_phase += err.epsilon;
      return axis_angle(r.angle * r.axis());
    }
    case ErrorKind::resonance_offset: {
      // Drive of nominal angle theta with offset ratio r rotates about the
      // tilted axis (n + r z)/sqrt(1+r^2) by theta sqrt(1+r^2).
      Eigen::Vector3d f = rot.angle * (rot.axis() + err.epsilon * Eigen::Vector3d(0, 0, 1));
      return axis_angle(f);
    }
  }
  throw std::invalid_argument("unknown error kind");
}

std::vector<RotationSpec> composite_library(const std::string& name, double theta) {
  if (name == "bb1") {
    double phi = std::acos(-theta / (4 * kPi));
    return {{phi, kPi}, {3 * phi, 2 * kPi}, {phi, kPi}, {0.0, theta}};
  }
  if (name == "sym_180")
    return {{0.0, kPi / 2}, {-kPi / 2, kPi}, {0.0, kPi / 2}};
  if (name == "length_comp_180")
    return {{60 * kDeg, kPi}, {300 * kDeg, kPi}, {60 * kDeg, kPi}};
  if (name == "offres_y")
    return {{kPi / 2, 385 * kDeg}, {kPi / 2, -320 * kDeg}, {kPi / 2, 25 * kDeg}};
  throw std::invalid_argument("unknown composite sequence: " + name);
}

Mat compose_erroneous(const std::vector<RotationSpec>& seq, const ErrorModel& err) {
  Mat u = Mat::Identity(2, 2);
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) u = apply_error(*it, err) * u;
  return u;
}

std::vector<SweepPoint> fidelity_sweep(const std::vector<RotationSpec>& seq, const Mat& target,
                                       ErrorKind kind, const std::vector<double>& eps_grid) {
  std::vector<SweepPoint> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    Mat u = compose_erroneous(seq, {kind, eps});
    out.push_back({eps, avg_gate_fidelity(Channel::from_unitary(u), target)});
  }
  return out;
}

}  // namespace spinbench
