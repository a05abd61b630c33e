#include "spinbench/evolve.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;

double spin_t2(const SpinSystem& sys, int i) {
  if (sys.t2_s.empty() || sys.t2_s[i] <= 0) return std::numeric_limits<double>::infinity();
  return sys.t2_s[i];
}
double spin_t1(const SpinSystem& sys, int i) {
  if (sys.t1_s.empty() || sys.t1_s[i] <= 0) return std::numeric_limits<double>::infinity();
  return sys.t1_s[i];
}

bool has_relaxation(const SpinSystem& sys) {
  for (int i = 0; i < sys.n; ++i)
    if (std::isfinite(spin_t1(sys, i)) || std::isfinite(spin_t2(sys, i))) return true;
  return false;
}
}  // namespace

bool KrausSet::trace_preserving(double tol) const {
  if (ops.empty()) return false;
  Mat s = Mat::Zero(ops[0].rows(), ops[0].cols());
  for (const Mat& a : ops) s += a.adjoint() * a;
  s -= Mat::Identity(s.rows(), s.cols());
  return s.cwiseAbs().maxCoeff() <= tol;
}

Mat propagate(const std::vector<std::pair<Mat, double>>& h_slices) {
  if (h_slices.empty()) throw std::invalid_argument("propagate: no slices");
  Mat u = Mat::Identity(h_slices[0].first.rows(), h_slices[0].first.cols());
  for (const auto& [h, t] : h_slices) u = expm_i_hermitian(h, t) * u;
  return u;
}

Mat segment_propagator(const SpinSystem& sys, const PulseSegment& seg) {
  const int d = sys.dim();
  Mat hrot = system_hamiltonian(sys);
  Mat iz_total = Mat::Zero(d, d);
  for (int i = 0; i < sys.n; ++i) iz_total += spin_op(sys.n, i, 2);
  hrot += 2 * kPi * seg.transmitter_hz * iz_total;  // offsets relative to transmitter
  for (int i : seg.targets)
    hrot -= 2 * kPi * seg.amp_hz *
            (std::cos(seg.phase_rad) * spin_op(sys.n, i, 0) +
             std::sin(seg.phase_rad) * spin_op(sys.n, i, 1));
  Mat frame = expm_i_hermitian(iz_total, -2 * kPi * seg.transmitter_hz * seg.duration_s);
  return frame * expm_i_hermitian(hrot, seg.duration_s);
}

std::vector<KrausSet> damping_channels(double t1_s, double t2_s, double dt_s) {
  if (dt_s <= 0) throw std::invalid_argument("damping_channels: dt must be positive");
  double t1 = t1_s > 0 ? t1_s : std::numeric_limits<double>::infinity();
  double t2 = t2_s > 0 ? t2_s : std::numeric_limits<double>::infinity();
  if (t2 > 2 * t1 + 1e-12) throw std::invalid_argument("damping_channels: requires T2 <= 2 T1");

  std::vector<KrausSet> out;
  // Pure-dephasing rate: total coherence decay 1/T2 minus the 1/(2 T1) part
  // contributed by amplitude damping.
  double r_phi = (std::isfinite(t2) ? 1.0 / t2 : 0.0) - (std::isfinite(t1) ? 0.5 / t1 : 0.0);
  if (r_phi < 0 && r_phi > -1e-12) r_phi = 0;
  {
    double g = std::exp(-2.0 * dt_s * r_phi);
    KrausSet pd;
    pd.kind = KrausKind::phase_damping;
    Mat a0 = Mat::Zero(2, 2), a1 = Mat::Zero(2, 2);
    a0(0, 0) = 1.0;
    a0(1, 1) = std::sqrt(g);
    a1(1, 1) = std::sqrt(1.0 - g);
    pd.ops = {a0, a1};
    out.push_back(std::move(pd));
  }
  {
    double g = std::isfinite(t1) ? std::exp(-dt_s / t1) : 1.0;
    KrausSet ad;
    ad.kind = KrausKind::amplitude_damping;
    Mat a0 = Mat::Zero(2, 2), a1 = Mat::Zero(2, 2);
    a0(0, 0) = 1.0;
    a0(1, 1) = std::sqrt(g);
    a1(0, 1) = std::sqrt(1.0 - g);
    ad.ops = {a0, a1};
    out.push_back(std::move(ad));
  }
  return out;
}

namespace {
// Lift a 2x2 operator to spin `spin` of n spins.
Mat lift(const Mat& a, int n, int spin) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    const Mat& f = (k == spin) ? a : Mat(Mat::Identity(2, 2));
    Mat next(out.rows() * 2, out.cols() * 2);
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c)
        next.block(r * 2, c * 2, 2, 2) = out(r, c) * f;
    out = next;
  }
  return out;
}
}  // namespace

Mat apply_channel(const Mat& rho, const KrausSet& ch, int n, int spin) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const Mat& a : ch.ops) {
    Mat al = lift(a, n, spin);
    out += al * rho * al.adjoint();
  }
  return out;
}

double Sequence::duration_s() const {
  double t = 0;
  for (const SeqItem& it : items) {
    if (const auto* p = std::get_if<PulseSegment>(&it)) t += p->duration_s;
    else if (const auto* d = std::get_if<Delay>(&it)) t += d->t_s;
  }
  return t;
}

namespace {
struct Stepper {
  const SpinSystem& sys;
  const EvolveOptions& opts;
  bool relax;
  double min_t2;
  Mat rho;
  double t = 0;
  double next_sample = 0;
  std::vector<TrajectorySample>* traj;

  Stepper(const SpinSystem& s, const Mat& rho0, const EvolveOptions& o,
          std::vector<TrajectorySample>* tr)
      : sys(s), opts(o), rho(rho0), traj(tr) {
    relax = opts.relaxation && has_relaxation(sys);
    min_t2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sys.n; ++i) min_t2 = std::min(min_t2, std::min(spin_t2(sys, i), 2 * spin_t1(sys, i)));
    record();
  }

  void record() {
    if (!traj) return;
    for (int i = 0; i < sys.n; ++i) {
      const char* names[3] = {"Ix", "Iy", "Iz"};
      for (int ax = 0; ax < 3; ++ax)
        traj->push_back({t, names[ax] + std::to_string(i + 1),
                         (rho * spin_op(sys.n, i, ax)).trace().real()});
    }
    next_sample = t + opts.sample_dt_s;
  }

  void maybe_record() {
    if (traj && opts.sample_dt_s > 0 && t >= next_sample - 1e-15) record();
  }

  double step_limit(double span) const {
    double step = span;
    if (opts.interleave_step_s > 0) step = std::min(step, opts.interleave_step_s);
    else if (relax && std::isfinite(min_t2)) step = std::min(step, min_t2 / 100.0);
    if (traj && opts.sample_dt_s > 0) step = std::min(step, opts.sample_dt_s);
    return step;
  }

  void damp(double dt) {
    if (!relax) return;
    for (int i = 0; i < sys.n; ++i) {
      double t1 = spin_t1(sys, i), t2 = spin_t2(sys, i);
      if (!std::isfinite(t1) && !std::isfinite(t2)) continue;
      for (const KrausSet& ch : damping_channels(t1, t2, dt))
        rho = apply_channel(rho, ch, sys.n, i);
    }
  }

  // Evolve over `span` seconds where the propagator of a sub-interval
  // [t0, t0+dt) (relative to item start) is supplied by `u_ofent`.
  template <typename UFn>
  void timed(double span, UFn&& u_of) {
    if (span <= 0) return;
    double step = step_limit(span);
    int nsteps = std::max(1, (int)std::ceil(span / step - 1e-12));
    double dt = span / nsteps;
    double local = 0;
    for (int k = 0; k < nsteps; ++k) {
      Mat u = u_of(local, dt);
      rho = u * rho * u.adjoint();
      damp(dt);
      local += dt;
      t += dt;
      maybe_record();
    }
  }

  void instant(const Mat& u) {
    rho = u * rho * u.adjoint();
  }
};
}  // namespace

EvolveResult evolve_sequence(const SpinSystem& sys, const Sequence& seq, const Mat& rho0,
                             const EvolveOptions& opts) {
  sys.validate();
  if (rho0.rows() != sys.dim() || rho0.cols() != sys.dim())
    throw std::invalid_argument("evolve_sequence: rho dimension mismatch");
  EvolveResult res;
  std::vector<TrajectorySample>* traj = opts.sample_dt_s > 0 ? &res.trajectory : nullptr;
  Stepper st(sys, rho0, opts, traj);
  Mat hsys = system_hamiltonian(sys);
  for (const SeqItem& item : seq.items) {
    if (const auto* d = std::get_if<Delay>(&item)) {
      Mat u1;
      bool have = false;
      st.timed(d->t_s, [&](double, double dt) {
        if (!have) { u1 = expm_i_hermitian(hsys, dt); have = true; }
        return u1;
      });
    } else if (const auto* p = std::get_if<PulseSegment>(&item)) {
      st.timed(p->duration_s, [&](double local, double dt) {
        PulseSegment sub = *p;
        sub.duration_s = dt;
        sub.phase_rad = p->phase_rad + 2 * kPi * p->transmitter_hz * local;
        return segment_propagator(sys, sub);
      });
    } else if (const auto* r = std::get_if<IdealRotation>(&item)) {
      st.instant(rotation(sys.n, r->spin, r->axis_phi, r->angle));
    } else if (const auto* z = std::get_if<FrameZ>(&item)) {
      st.instant(rotation_z(sys.n, z->spin, z->angle));
    }
  }
  if (traj) st.record();
  res.rho = std::move(st.rho);
  return res;
}

Mat sequence_unitary(const SpinSystem& sys, const Sequence& seq) {
  sys.validate();
  const int d = sys.dim();
  Mat u = Mat::Identity(d, d);
  Mat hsys = system_hamiltonian(sys);
  for (const SeqItem& item : seq.items) {
    if (const auto* dl = std::get_if<Delay>(&item)) {
      u = expm_i_hermitian(hsys, dl->t_s) * u;
    } else if (const auto* p = std::get_if<PulseSegment>(&item)) {
      u = segment_propagator(sys, *p) * u;
    } else if (const auto* r = std::get_if<IdealRotation>(&item)) {
      u = rotation(sys.n, r->spin, r->axis_phi, r->angle) * u;
    } else if (const auto* z = std::get_if<FrameZ>(&item)) {
      u = rotation_z(sys.n, z->spin, z->angle) * u;
    }
  }
  return seq.global_phase * u;
}

}  // namespace spinbench
