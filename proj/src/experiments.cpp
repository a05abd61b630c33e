#include "spinbench/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;

struct Spin {
  // Single-spin state and relaxation bookkeeping, 2x2 exact.
  Eigen::Matrix2cd rho;
  double t1, t2;

  explicit Spin(double t1_s, double t2_s) {
    rho << 1, 0, 0, 0;
    t1 = t1_s > 0 ? t1_s : std::numeric_limits<double>::infinity();
    t2 = t2_s > 0 ? t2_s : std::numeric_limits<double>::infinity();
  }

  void rotate(double axis_phi, double angle) {
    double c = std::cos(angle / 2), s = std::sin(angle / 2);
    Eigen::Matrix2cd u;
    u << c, -cplx(0, 1) * s * std::exp(cplx(0, -axis_phi)),
         -cplx(0, 1) * s * std::exp(cplx(0, axis_phi)), c;
    rho = u * rho * u.adjoint();
  }

  // Free precession at `detuning_hz` (H = -2pi d Iz) plus relaxation for dt.
  void free_evolve(double detuning_hz, double dt) {
    cplx ph = std::exp(cplx(0, 2 * kPi * detuning_hz * dt));  // rho01 phase
    rho(0, 1) *= ph;
    rho(1, 0) = std::conj(rho(0, 1));
    damp(dt);
  }

  // Constant drive (amp at axis phase phi) plus detuning, exact slice.
  void drive(double detuning_hz, double amp_hz, double phi, double dt) {
    Eigen::Matrix2cd h;
    h(0, 0) = -kPi * detuning_hz;
    h(1, 1) = kPi * detuning_hz;
    h(0, 1) = -kPi * amp_hz * std::exp(cplx(0, -phi));
    h(1, 0) = std::conj(h(0, 1));
    double w = std::sqrt(std::norm(h(0, 1)) + h(0, 0).real() * h(0, 0).real());
    Eigen::Matrix2cd u = std::cos(w * dt) * Eigen::Matrix2cd::Identity();
    if (w > 0) u -= cplx(0, 1) * (std::sin(w * dt) / w) * h;
    rho = u * rho * u.adjoint();
    damp(dt);
  }

  void damp(double dt) {
    if (std::isfinite(t2)) {
      double g = std::exp(-dt / t2);
      rho(0, 1) *= g;
      rho(1, 0) *= g;
    }
    if (std::isfinite(t1)) {
      double g = std::exp(-dt / t1);
      cplx p1 = rho(1, 1) * g;
      rho(1, 1) = p1;
      rho(0, 0) = 1.0 - p1;
    }
  }

  cplx mxy() const { return 2.0 * rho(1, 0); }  // mx + i my
  double mz() const { return (rho(0, 0) - rho(1, 1)).real(); }
  double p1() const { return rho(1, 1).real(); }
};

// Per-realization offset process (static or OU), piecewise constant.
struct NoisePath {
  const NoiseSpec& spec;
  double static_offset = 0;
  double ou_value = 0;
  std::mt19937_64 rng;

  NoisePath(const NoiseSpec& s, int realization) : spec(s), rng(s.seed + 1000003ULL * realization) {
    if (spec.kind == NoiseKind::static_lorentzian_inhomogeneity) {
      // Stratified inverse-CDF sample of the Cauchy distribution with scale
      // FWHM/2: deterministic quadrature of the ensemble average.
      double u = (realization + 0.5) / spec.realizations;
      static_offset = 0.5 * spec.width_hz * std::tan(kPi * (u - 0.5));
    } else if (spec.kind == NoiseKind::ou_process) {
      std::normal_distribution<double> g(0.0, spec.sigma_hz);
      ou_value = g(rng);
    }
  }

  double max_step(double span) const {
    if (spec.kind == NoiseKind::ou_process) return std::min(span, spec.corr_time_s / 10.0);
    return span;
  }

  double advance(double dt) {
    if (spec.kind == NoiseKind::static_lorentzian_inhomogeneity) return static_offset;
    if (spec.kind == NoiseKind::ou_process) {
      double v = ou_value;
      double a = std::exp(-dt / spec.corr_time_s);
      std::normal_distribution<double> g(0.0, spec.sigma_hz * std::sqrt(1.0 - a * a));
      ou_value = a * ou_value + g(rng);
      return v;
    }
    return 0.0;
  }
};

void free_span(Spin& spin, double base_offset, NoisePath& noise, double span) {
  if (span <= 0) return;
  double step = noise.max_step(span);
  int nsteps = std::max(1, (int)std::ceil(span / step - 1e-12));
  double dt = span / nsteps;
  for (int k = 0; k < nsteps; ++k) spin.free_evolve(base_offset + noise.advance(dt), dt);
}

void drive_span(Spin& spin, double base_offset, NoisePath& noise, double amp_hz, double phi,
                double span) {
  if (span <= 0) return;
  double step = noise.max_step(span);
  // Relaxation does not commute with a transverse drive; interleave at T2/100.
  double relax = std::min(spin.t2, 2 * spin.t1);
  if (std::isfinite(relax)) step = std::min(step, relax / 100.0);
  int nsteps = std::max(1, (int)std::ceil(span / step - 1e-12));
  double dt = span / nsteps;
  for (int k = 0; k < nsteps; ++k)
    spin.drive(base_offset + noise.advance(dt), amp_hz, phi, dt);
}
}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::rabi: return "rabi";
    case ExperimentKind::larmor: return "larmor";
    case ExperimentKind::ramsey: return "ramsey";
    case ExperimentKind::echo: return "echo";
    case ExperimentKind::carr_purcell: return "carr_purcell";
    case ExperimentKind::cpmg: return "cpmg";
    case ExperimentKind::inversion_recovery: return "inversion_recovery";
    case ExperimentKind::saturation_recovery: return "saturation_recovery";
    case ExperimentKind::spin_lock: return "spin_lock";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  for (ExperimentKind k : {ExperimentKind::rabi, ExperimentKind::larmor, ExperimentKind::ramsey,
                           ExperimentKind::echo, ExperimentKind::carr_purcell, ExperimentKind::cpmg,
                           ExperimentKind::inversion_recovery, ExperimentKind::saturation_recovery,
                           ExperimentKind::spin_lock})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown experiment kind: " + s);
}

ExperimentResult run_experiment(const SpinSystem& sys, ExperimentKind kind,
                                const ExperimentParams& params, const NoiseSpec& noise) {
  sys.validate();
  if (params.grid.empty()) throw std::invalid_argument("run_experiment: empty grid");
  if (noise.realizations < 1) throw std::invalid_argument("run_experiment: realizations >= 1");
  const double offset = sys.offsets_hz[0];
  const double t1 = sys.t1_s.empty() ? 0 : sys.t1_s[0];
  const double t2 = sys.t2_s.empty() ? 0 : sys.t2_s[0];
  const int reps = noise.kind == NoiseKind::none ? 1 : noise.realizations;

  ExperimentResult res;

  // Carr-Purcell / CPMG report per-echo amplitudes for one total duration.
  if (kind == ExperimentKind::carr_purcell || kind == ExperimentKind::cpmg) {
    const double total = params.grid[0];
    const int n = params.n_pulses;
    if (n < 1) throw std::invalid_argument("run_experiment: n_pulses >= 1");
    const double refocus_phi = kind == ExperimentKind::cpmg ? kPi / 2 : 0.0;
    std::vector<cplx> acc(n, 0.0);
    for (int r = 0; r < reps; ++r) {
      NoisePath path(noise, r);
      Spin spin(t1, t2);
      spin.rotate(0.0, kPi / 2);  // X
      // tau/2n [180] tau/n [180] ... ; echoes form at k tau/n.
      free_span(spin, offset, path, total / (2.0 * n));
      for (int k = 0; k < n; ++k) {
        spin.rotate(refocus_phi, kPi);
        free_span(spin, offset, path, total / (2.0 * n));
        acc[k] += spin.mxy();
        if (k + 1 < n) free_span(spin, offset, path, total / (2.0 * n));
      }
    }
    for (int k = 0; k < n; ++k) {
      res.abscissa.push_back((k + 1) * total / n);
      res.series["amp"].push_back(std::abs(acc[k]) / reps);
    }
    if (res.abscissa.size() >= 4)
      res.fits["amp"] = fit_decay(res.abscissa, res.series["amp"], DecayModel::exponential);
    return res;
  }

  for (double g : params.grid) {
    cplx mxy_acc = 0;
    double mz_acc = 0, p1_acc = 0;
    for (int r = 0; r < reps; ++r) {
      NoisePath path(noise, r);
      Spin spin(t1, t2);
      switch (kind) {
        case ExperimentKind::rabi:
          drive_span(spin, offset, path, params.amp_hz, kPi, g);  // phase pi -> x rotation
          break;
        case ExperimentKind::larmor:
          spin.rotate(0.0, kPi / 2);
          free_span(spin, offset, path, g);
          break;
        case ExperimentKind::ramsey:
          spin.rotate(0.0, kPi / 2);
          free_span(spin, offset, path, g);
          spin.rotate(0.0, kPi / 2);
          break;
        case ExperimentKind::echo:
          spin.rotate(0.0, kPi / 2);
          free_span(spin, offset, path, g / 2);
          spin.rotate(0.0, kPi);
          free_span(spin, offset, path, g / 2);
          break;
        case ExperimentKind::inversion_recovery:
          spin.rotate(0.0, kPi);
          free_span(spin, offset, path, g);
          break;
        case ExperimentKind::saturation_recovery:
          spin.rho << 0.5, 0, 0, 0.5;
          free_span(spin, offset, path, g);
          break;
        case ExperimentKind::spin_lock:
          spin.rotate(kPi / 2, kPi / 2);  // y 90 puts magnetization on x
          drive_span(spin, offset, path, params.amp_hz, kPi, g);
          break;
        default:
          throw std::invalid_argument("run_experiment: unhandled kind");
      }
      mxy_acc += spin.mxy();
      mz_acc += spin.mz();
      p1_acc += spin.p1();
    }
    res.abscissa.push_back(g);
    res.series["mxy"].push_back(std::abs(mxy_acc) / reps);
    res.series["mx"].push_back(mxy_acc.real() / reps);
    res.series["my"].push_back(mxy_acc.imag() / reps);
    res.series["mz"].push_back(mz_acc / reps);
    res.series["p1"].push_back(p1_acc / reps);
  }

  switch (kind) {
    case ExperimentKind::larmor:
    case ExperimentKind::echo:
    case ExperimentKind::spin_lock:
      res.fits["mxy"] = fit_decay(res.abscissa, res.series["mxy"], DecayModel::exponential);
      break;
    case ExperimentKind::inversion_recovery:
    case ExperimentKind::saturation_recovery:
      res.fits["mz"] =
          fit_decay(res.abscissa, res.series["mz"], DecayModel::exponential_with_offset);
      break;
    default:
      break;
  }
  return res;
}

FitResult fit_decay(const std::vector<double>& t, const std::vector<double>& y, DecayModel model) {
  if (t.size() != y.size() || t.size() < 4)
    throw std::invalid_argument("fit_decay: need >= 4 points");
  const int n = (int)t.size();
  const bool with_offset = model == DecayModel::exponential_with_offset;

  // Linear solve for (amp[, offset]) at fixed tau; golden-section over log tau.
  auto solve_at = [&](double log_tau, FitResult& fr) {
    double tau = std::exp(log_tau);
    Eigen::MatrixXd a(n, with_offset ? 2 : 1);
    Eigen::VectorXd b(n);
    for (int k = 0; k < n; ++k) {
      a(k, 0) = std::exp(-t[k] / tau);
      if (with_offset) a(k, 1) = 1.0;
      b(k) = y[k];
    }
    Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    fr.tau_s = tau;
    fr.amp = x(0);
    fr.offset = with_offset ? x(1) : 0.0;
    fr.residual = (a * x - b).norm();
    return fr.residual;
  };

  double tspan = *std::max_element(t.begin(), t.end());
  double lo = std::log(std::max(tspan * 1e-3, 1e-12));
  double hi = std::log(tspan * 1e3);
  // Coarse grid to bracket, then golden-section refinement.
  double best = lo;
  double best_f = std::numeric_limits<double>::infinity();
  FitResult fr;
  const int coarse = 200;
  for (int k = 0; k <= coarse; ++k) {
    double x = lo + (hi - lo) * k / coarse;
    double f = solve_at(x, fr);
    if (f < best_f) { best_f = f; best = x; }
  }
  double a1 = best - (hi - lo) / coarse, b1 = best + (hi - lo) / coarse;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b1 - gr * (b1 - a1), x2 = a1 + gr * (b1 - a1);
  double f1 = solve_at(x1, fr), f2 = solve_at(x2, fr);
  for (int it = 0; it < 200 && (b1 - a1) > 1e-13; ++it) {
    if (f1 < f2) { b1 = x2; x2 = x1; f2 = f1; x1 = b1 - gr * (b1 - a1); f1 = solve_at(x1, fr); }
    else { a1 = x1; x1 = x2; f1 = f2; x2 = a1 + gr * (b1 - a1); f2 = solve_at(x2, fr); }
  }
  solve_at(0.5 * (a1 + b1), fr);
  return fr;
}

SpectrumResult spectrum(const SpinSystem& sys, const Mat& rho0, double dwell_s, int points,
                        double line_broadening_hz) {
  sys.validate();
  if (sys.model != CouplingModel::weak_zz && sys.n > 1)
    throw std::invalid_argument("spectrum: weak_zz coupling required");
  if (dwell_s <= 0 || points < 2) throw std::invalid_argument("spectrum: bad acquisition");
  const int d = sys.dim();
  if (rho0.rows() != d) throw std::invalid_argument("spectrum: rho dimension mismatch");

  Mat obs = Mat::Zero(d, d);
  for (int i = 0; i < sys.n; ++i)
    obs += -2.0 * cplx(0, 1) * spin_op(sys.n, i, 0) - 2.0 * spin_op(sys.n, i, 1);

  Mat u = expm_i_hermitian(system_hamiltonian(sys), dwell_s);
  SpectrumResult res;
  Mat rho = rho0;
  for (int k = 0; k < points; ++k) {
    double t = k * dwell_s;
    res.t_s.push_back(t);
    cplx s = (rho * obs).trace();
    if (line_broadening_hz > 0) s *= std::exp(-kPi * line_broadening_hz * t);
    res.fid.push_back(s);
    rho = u * rho * u.adjoint();
  }
  for (int b = 0; b < points; ++b) {
    double f = (b - points / 2) / (dwell_s * points);
    res.freq_hz.push_back(f);
    cplx acc = 0;
    for (int k = 0; k < points; ++k)
      acc += res.fid[k] * std::exp(cplx(0, -2 * kPi * f * res.t_s[k]));
    res.spectrum.push_back(acc);
  }
  return res;
}

}  // namespace spinbench
