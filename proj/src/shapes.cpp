#include "spinbench/shapes.hpp"

#include <cmath>
#include <numbers>

#include "spinbench/evolve.hpp"
#include "spinbench/metrics.hpp"

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;

double param(const ShapeSpec& s, const std::string& key, double fallback) {
  auto it = s.params.find(key);
  return it == s.params.end() ? fallback : it->second;
}

// Dimensionless profile on u in [0,1].
double profile(const ShapeSpec& spec, double u) {
  switch (spec.family) {
    case ShapeFamily::rectangular:
      return 1.0;
    case ShapeFamily::gaussian: {
      double trunc = param(spec, "truncation", 3.0);
      double x = (u - 0.5) * 2.0 * trunc;
      return std::exp(-0.5 * x * x);
    }
    case ShapeFamily::hermite_90:
    case ShapeFamily::hermite_180: {
      double trunc = param(spec, "truncation", 2.0);
      double c = param(spec, "c", spec.family == ShapeFamily::hermite_90 ? 0.7 : 1.4);
      double x = (u - 0.5) * 2.0 * trunc;
      return (1.0 - c * x * x) * std::exp(-x * x);
    }
    case ShapeFamily::fourier_series: {
      double v = param(spec, "a0", 0.0);
      for (int n = 1;; ++n) {
        auto ia = spec.params.find("a" + std::to_string(n));
        auto ib = spec.params.find("b" + std::to_string(n));
        if (ia == spec.params.end() && ib == spec.params.end()) break;
        if (ia != spec.params.end()) v += ia->second * std::cos(n * 2 * kPi * u);
        if (ib != spec.params.end()) v += ib->second * std::sin(n * 2 * kPi * u);
      }
      return v;
    }
  }
  throw std::invalid_argument("unknown shape family");
}
}  // namespace

std::string to_string(ShapeFamily f) {
  switch (f) {
    case ShapeFamily::rectangular: return "rectangular";
    case ShapeFamily::gaussian: return "gaussian";
    case ShapeFamily::hermite_90: return "hermite_90";
    case ShapeFamily::hermite_180: return "hermite_180";
    case ShapeFamily::fourier_series: return "fourier_series";
  }
  return "?";
}

ShapeFamily shape_family_from_string(const std::string& s) {
  for (ShapeFamily f : {ShapeFamily::rectangular, ShapeFamily::gaussian, ShapeFamily::hermite_90,
                        ShapeFamily::hermite_180, ShapeFamily::fourier_series})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown shape family: " + s);
}

std::vector<PulseSegment> sample_shape(const ShapeSpec& spec, double t_pw_s,
                                       double nominal_angle_rad) {
  if (t_pw_s <= 0) throw std::invalid_argument("sample_shape: t_pw must be positive");
  if (spec.n_slices < 1) throw std::invalid_argument("sample_shape: n_slices must be >= 1");
  const int n = spec.n_slices;
  const double dt = t_pw_s / n;
  std::vector<double> p(n);
  double area = 0;
  for (int k = 0; k < n; ++k) {
    p[k] = profile(spec, (k + 0.5) / n);
    area += p[k] * dt;
  }
  if (std::abs(area) < 1e-12 * t_pw_s)
    throw std::invalid_argument("sample_shape: profile has (near) zero net area");
  const double scale = nominal_angle_rad / (2 * kPi * area);
  std::vector<PulseSegment> out(n);
  for (int k = 0; k < n; ++k) {
    double amp = p[k] * scale;
    out[k].duration_s = dt;
    out[k].amp_hz = std::abs(amp);
    // Base phase pi drives +x per the PulseSegment convention.
    out[k].phase_rad = amp < 0 ? 0.0 : kPi;
    out[k].targets = {0};
  }
  return out;
}

std::vector<PulseSegment> phase_ramp(const std::vector<PulseSegment>& segments,
                                     double freq_shift_hz) {
  if (segments.empty()) return segments;
  const double dt = segments[0].duration_s;
  for (const PulseSegment& s : segments)
    if (std::abs(s.duration_s - dt) > 1e-12 * dt)
      throw std::invalid_argument("phase_ramp: slices must have uniform duration");
  std::vector<PulseSegment> out = segments;
  // With H = -2pi d Iz the drive phase must fall as -2pi f t to track a spin
  // at detuning +f; sample the ramp at each slice midpoint.
  for (size_t k = 0; k < out.size(); ++k)
    out[k].phase_rad -= (k + 0.5) * 2 * kPi * freq_shift_hz * dt;
  return out;
}

BlochSiegert bloch_siegert_shift(double amp_hz, double offset_hz) {
  if (amp_hz == 0) return {0.0, false};
  if (offset_hz == 0) throw std::invalid_argument("bloch_siegert_shift: zero offset");
  return {amp_hz * amp_hz / (2.0 * offset_hz), std::abs(offset_hz) <= amp_hz};
}

double ResponsePoint::mxy() const { return std::hypot(mx, my); }

namespace {
Eigen::Matrix2cd slice_u(double detuning_hz, double amp_hz, double phase_rad, double dt) {
  Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
  // H = -2pi detuning Iz - 2pi amp (cos phi Ix + sin phi Iy)
  h(0, 0) = -kPi * detuning_hz;
  h(1, 1) = kPi * detuning_hz;
  cplx off = -kPi * amp_hz * std::exp(cplx(0, -phase_rad));
  h(0, 1) += off;
  h(1, 0) += std::conj(off);
  double w = std::sqrt(std::norm(h(0, 1)) + h(0, 0).real() * h(0, 0).real());
  // exp(-i h dt) for traceless 2x2 Hermitian h: cos(w dt) I - i sin(w dt) h / w
  Eigen::Matrix2cd u = std::cos(w * dt) * Eigen::Matrix2cd::Identity();
  if (w > 0) u -= cplx(0, 1) * (std::sin(w * dt) / w) * h;
  return u;
}

ResponsePoint evolve_bloch(const std::vector<PulseSegment>& segments, double detuning_hz,
                           const Eigen::Vector3d& initial) {
  Eigen::Matrix2cd rho;
  rho << 0.5 * (1 + initial.z()), 0.5 * cplx(initial.x(), -initial.y()),
         0.5 * cplx(initial.x(), initial.y()), 0.5 * (1 - initial.z());
  for (const PulseSegment& s : segments) {
    Eigen::Matrix2cd u = slice_u(detuning_hz, s.amp_hz, s.phase_rad, s.duration_s);
    rho = u * rho * u.adjoint();
  }
  ResponsePoint p;
  p.detuning_hz = detuning_hz;
  p.mx = 2 * rho(0, 1).real();
  p.my = -2 * rho(0, 1).imag();
  p.mz = (rho(0, 0) - rho(1, 1)).real();
  return p;
}
}  // namespace

std::vector<ResponsePoint> frequency_response(const std::vector<PulseSegment>& segments,
                                              const std::vector<double>& detunings_hz,
                                              const Eigen::Vector3d& initial) {
  std::vector<ResponsePoint> out;
  out.reserve(detunings_hz.size());
  for (double d : detunings_hz) out.push_back(evolve_bloch(segments, d, initial));
  return out;
}

std::vector<ResponsePoint> frequency_response(const ShapeSpec& spec, double t_pw_s,
                                              double nominal_angle_rad,
                                              const std::vector<double>& detunings_hz,
                                              const Eigen::Vector3d& initial) {
  return frequency_response(sample_shape(spec, t_pw_s, nominal_angle_rad), detunings_hz, initial);
}

TwoPulseResponse simultaneous_response(const std::vector<PulseSegment>& a, double carrier_a_hz,
                                       const std::vector<PulseSegment>& b, double carrier_b_hz,
                                       const std::vector<double>& detunings_hz,
                                       bool bs_correction) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("simultaneous_response: slice counts must match");
  const int n = (int)a.size();
  const double dt = a[0].duration_s;
  if (std::abs(b[0].duration_s - dt) > 1e-12 * dt)
    throw std::invalid_argument("simultaneous_response: slice durations must match");

  // Ramp-tracked correction: each pulse follows the instantaneous shift of its
  // own spin caused by the other pulse's current amplitude.
  std::vector<double> corr_a(n, 0.0), corr_b(n, 0.0);
  if (bs_correction) {
    double acc_a = 0, acc_b = 0;
    for (int k = 0; k < n; ++k) {
      double shift_a = b[k].amp_hz * b[k].amp_hz / (2.0 * (carrier_a_hz - carrier_b_hz));
      double shift_b = a[k].amp_hz * a[k].amp_hz / (2.0 * (carrier_b_hz - carrier_a_hz));
      corr_a[k] = 2 * kPi * (acc_a + 0.5 * shift_a * dt);
      corr_b[k] = 2 * kPi * (acc_b + 0.5 * shift_b * dt);
      acc_a += shift_a * dt;
      acc_b += shift_b * dt;
    }
  }

  TwoPulseResponse res;
  for (double det : detunings_hz) {
    // Frame of the spin at `det`: each carrier beats at (carrier - det).
    Eigen::Matrix2cd rho;
    rho << 1, 0, 0, 0;
    const double dsq = (carrier_a_hz - carrier_b_hz) * (carrier_a_hz - carrier_b_hz);
    for (int k = 0; k < n; ++k) {
      double tmid = (k + 0.5) * dt;
      double pa = a[k].phase_rad + 2 * kPi * (carrier_a_hz - det) * tmid + corr_a[k];
      double pb = b[k].phase_rad + 2 * kPi * (carrier_b_hz - det) * tmid + corr_b[k];
      double amp_a = a[k].amp_hz, amp_b = b[k].amp_hz;
      if (bs_correction && dsq > 0) {
        // The other field's micromotion also renormalizes the effective drive
        // by the dressed-state projection 1 - amp^2/(4 d^2); pre-compensate.
        amp_a *= 1.0 + b[k].amp_hz * b[k].amp_hz / (4.0 * dsq);
        amp_b *= 1.0 + a[k].amp_hz * a[k].amp_hz / (4.0 * dsq);
      }
      double vx = amp_a * std::cos(pa) + amp_b * std::cos(pb);
      double vy = amp_a * std::sin(pa) + amp_b * std::sin(pb);
      double amp = std::hypot(vx, vy);
      double phase = std::atan2(vy, vx);
      Eigen::Matrix2cd u = slice_u(0.0, amp, phase, dt);
      rho = u * rho * u.adjoint();
    }
    ResponsePoint p;
    p.detuning_hz = det;
    p.mx = 2 * rho(0, 1).real();
    p.my = -2 * rho(0, 1).imag();
    p.mz = (rho(0, 0) - rho(1, 1)).real();
    res.points.push_back(p);
  }
  return res;
}

UnwindResult unwind_coupling(const std::vector<PulseSegment>& segments, const SpinSystem& sys,
                             bool one_sided) {
  sys.validate();
  if (sys.n < 2 || sys.model != CouplingModel::weak_zz)
    throw std::invalid_argument("unwind_coupling: needs a weak_zz system with >= 2 spins");
  SpinSystem bare = sys;
  std::fill(bare.offsets_hz.begin(), bare.offsets_hz.end(), 0.0);
  const int d = sys.dim();
  Mat hj = system_hamiltonian(bare);

  double t_pw = 0;
  Mat u_actual = Mat::Identity(d, d);
  Mat u_ideal = Mat::Identity(d, d);
  for (const PulseSegment& s : segments) {
    Mat hrf = Mat::Zero(d, d);
    for (int i : s.targets)
      hrf -= 2 * kPi * s.amp_hz *
             (std::cos(s.phase_rad) * spin_op(sys.n, i, 0) +
              std::sin(s.phase_rad) * spin_op(sys.n, i, 1));
    u_actual = expm_i_hermitian(hj + hrf, s.duration_s) * u_actual;
    u_ideal = expm_i_hermitian(hrf, s.duration_s) * u_ideal;
    t_pw += s.duration_s;
  }

  auto fid = [&](double tau) {
    Mat unwind = expm_i_hermitian(hj, -tau);  // exp(+i H_J tau)
    Mat v = one_sided ? Mat(expm_i_hermitian(hj, -2 * tau) * u_actual)
                      : Mat(unwind * u_actual * unwind);
    return avg_gate_fidelity(Channel::from_unitary(v), u_ideal);
  };

  if (hj.cwiseAbs().maxCoeff() < 1e-15) return {0.0, fid(0.0)};

  // Golden-section maximization on [0, t_pw].
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = t_pw;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = fid(x1), f2 = fid(x2);
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * t_pw; ++it) {
    if (f1 < f2) {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo); f2 = fid(x2);
    } else {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo); f1 = fid(x1);
    }
  }
  double tau = 0.5 * (lo + hi);
  return {tau, fid(tau)};
}

}  // namespace spinbench
