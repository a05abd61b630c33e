#include "spinbench/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinbench/metrics.hpp"

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;
}

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& x0, const NelderMeadConfig& cfg) {
  const int n = (int)x0.size();
  std::vector<Eigen::VectorXd> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) { ++evals; return objective(x); };
  for (int k = 1; k <= n; ++k) xs[k](k - 1) += cfg.initial_step;
  for (int k = 0; k <= n; ++k) fs[k] = eval(xs[k]);

  NelderMeadResult res;
  std::vector<int> order(n + 1);
  while (true) {
    for (int k = 0; k <= n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    {
      std::vector<Eigen::VectorXd> xs2(n + 1);
      std::vector<double> fs2(n + 1);
      for (int k = 0; k <= n; ++k) { xs2[k] = xs[order[k]]; fs2[k] = fs[order[k]]; }
      xs.swap(xs2); fs.swap(fs2);
    }
    res.trace.push_back(fs[0]);

    double spread = 0;
    for (int k = 1; k <= n; ++k) spread = std::max(spread, (xs[k] - xs[0]).cwiseAbs().maxCoeff());
    spread = std::max(spread, std::abs(fs[n] - fs[0]));
    if (spread < cfg.spread_tol || evals >= cfg.max_evals) {
      res.x = xs[0]; res.value = fs[0]; res.evals = evals;
      res.converged = spread < cfg.spread_tol;
      return res;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) centroid += xs[k];
    centroid /= n;

    Eigen::VectorXd xr = centroid + cfg.alpha * (centroid - xs[n]);
    double fr = eval(xr);
    if (fr < fs[0]) {
      Eigen::VectorXd xe = centroid + cfg.gamma * (centroid - xs[n]);
      double fe = eval(xe);
      if (fe < fr) { xs[n] = xe; fs[n] = fe; }
      else { xs[n] = xr; fs[n] = fr; }
    } else if (fr < fs[n - 1]) {
      xs[n] = xr; fs[n] = fr;
    } else {
      Eigen::VectorXd xc = centroid + cfg.rho * (xs[n] - centroid);
      double fc = eval(xc);
      if (fc < fs[n]) { xs[n] = xc; fs[n] = fc; }
      else {
        for (int k = 1; k <= n; ++k) {
          xs[k] = xs[0] + cfg.sigma * (xs[k] - xs[0]);
          fs[k] = eval(xs[k]);
        }
      }
    }
  }
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct SegmentParams {
  double duration_s, amp_hz, transmitter_hz, phase_rad;
};

// Smooth bound transforms: log-scale interpolation for duration, sigmoid for
// amplitude and transmitter offset, phase unconstrained.
SegmentParams decode(const ParamBounds& b, const double* x) {
  SegmentParams p;
  p.duration_s = b.duration_min_s *
                 std::pow(b.duration_max_s / b.duration_min_s, sigmoid(x[0]));
  p.amp_hz = b.amp_max_hz * sigmoid(x[1]);
  p.transmitter_hz = b.transmitter_min_hz +
                     (b.transmitter_max_hz - b.transmitter_min_hz) * sigmoid(x[2]);
  p.phase_rad = x[3];
  return p;
}

struct FastSim {
  int n, d;
  Mat h_sys;
  std::vector<Mat> ix, iy, iz;
  Mat iz_total;

  explicit FastSim(const SpinSystem& sys) : n(sys.n), d(sys.dim()) {
    h_sys = system_hamiltonian(sys);
    iz_total = Mat::Zero(d, d);
    for (int i = 0; i < n; ++i) {
      ix.push_back(spin_op(n, i, 0));
      iy.push_back(spin_op(n, i, 1));
      iz.push_back(spin_op(n, i, 2));
      iz_total += iz.back();
    }
  }

  Mat segment_u(const SegmentParams& p) const {
    Mat hrot = h_sys + 2 * kPi * p.transmitter_hz * iz_total;
    for (int i = 0; i < n; ++i)
      hrot -= 2 * kPi * p.amp_hz *
              (std::cos(p.phase_rad) * ix[i] + std::sin(p.phase_rad) * iy[i]);
    Mat frame = expm_i_hermitian(iz_total, -2 * kPi * p.transmitter_hz * p.duration_s);
    return frame * expm_i_hermitian(hrot, p.duration_s);
  }
};

}  // namespace

PulseSearchResult find_pulse(const SpinSystem& sys, const PulseSearchSpec& spec,
                             unsigned long long seed) {
  sys.validate();
  if (spec.target.rows() != sys.dim())
    throw std::invalid_argument("find_pulse: target dimension mismatch");
  FastSim sim(sys);

  std::vector<int> all_targets(sys.n);
  for (int i = 0; i < sys.n; ++i) all_targets[i] = i;

  auto net_fidelity = [&](const Eigen::VectorXd& x, int nseg) {
    Mat u = Mat::Identity(sim.d, sim.d);
    double total_t = 0;
    for (int m = 0; m < nseg; ++m) {
      SegmentParams p = decode(spec.bounds, x.data() + 4 * m);
      u = sim.segment_u(p) * u;
      total_t += p.duration_s;
    }
    // Fold back into the multiply-rotating frame at the final time.
    Mat w = Mat::Identity(sim.d, sim.d);
    for (int i = 0; i < sys.n; ++i)
      w = expm_i_hermitian(sim.iz[i], 2 * kPi * sys.offsets_hz[i] * total_t) * w;
    double tr2 = std::norm((cplx)(spec.target.adjoint() * (w * u)).trace());
    double fid = (sim.d + tr2) / (sim.d + (double)sim.d * sim.d);
    return std::make_pair(fid, total_t);
  };

  auto objective_for = [&](int nseg) {
    return [&, nseg](const Eigen::VectorXd& x) {
      auto [fid, total_t] = net_fidelity(x, nseg);
      double pen = spec.penalties.duration * total_t * 1e3;
      for (int m = 0; m < nseg; ++m) {
        SegmentParams p = decode(spec.bounds, x.data() + 4 * m);
        pen += spec.penalties.power * (p.amp_hz * 1e-3) * (p.amp_hz * 1e-3) / nseg;
        pen += spec.penalties.excursion * (p.transmitter_hz * 1e-3) * (p.transmitter_hz * 1e-3) / nseg;
      }
      return 1.0 - fid + pen;
    };
  };

  PulseSearchResult best{{}, 0.0, false};
  Eigen::VectorXd best_x;
  int best_nseg = 0;

  NelderMeadConfig cfg;
  cfg.max_evals = spec.max_evals_per_start;
  cfg.initial_step = 0.4;

  for (int nseg = 1; nseg <= spec.max_segments; ++nseg) {
    const int dims = 4 * nseg;
    auto obj = objective_for(nseg);
    for (int r = 0; r < spec.restarts + (best_nseg > 0 ? 1 : 0); ++r) {
      Eigen::VectorXd x0(dims);
      if (best_nseg > 0 && r == spec.restarts) {
        // Warm start: extend the best shallower solution by a weak segment.
        x0.setZero();
        x0.head(4 * best_nseg) = best_x;
        for (int m = best_nseg; m < nseg; ++m) {
          x0(4 * m + 0) = -2.0;  // short
          x0(4 * m + 1) = -4.0;  // nearly zero amplitude
        }
      } else {
        std::mt19937_64 rng(seed * 1000003ULL + (unsigned long long)nseg * 101ULL + r);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        for (int k = 0; k < dims; ++k) x0(k) = u(rng);
      }
      NelderMeadResult res = nelder_mead(obj, x0, cfg);
      double fid = net_fidelity(res.x, nseg).first;
      if (fid > best.fidelity) {
        best.fidelity = fid;
        best.trace = res.trace;
        best_x = res.x;
        best_nseg = nseg;
      }
      if (best.fidelity >= spec.fidelity_goal) break;
    }
    if (best.fidelity >= spec.fidelity_goal) break;
  }

  for (int m = 0; m < best_nseg; ++m) {
    SegmentParams p = decode(spec.bounds, best_x.data() + 4 * m);
    PulseSegment seg;
    seg.duration_s = p.duration_s;
    seg.amp_hz = p.amp_hz;
    seg.phase_rad = p.phase_rad;
    seg.transmitter_hz = p.transmitter_hz;
    seg.targets = all_targets;
    best.segments.push_back(seg);
  }
  best.reached_goal = best.fidelity >= spec.fidelity_goal;
  if (best_nseg == 0 || !best.reached_goal) {
    if (best_nseg == 0) throw std::runtime_error("find_pulse: search produced no candidate");
  }
  return best;
}

}  // namespace spinbench
