#include "spinbench/compile.hpp"

#include <cmath>
#include <numbers>

#include "spinbench/avgham.hpp"

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;
}  // namespace

Sequence two_qubit_gate(const SpinSystem& sys, GateKind kind, int control, int target) {
  sys.validate();
  if (sys.model != CouplingModel::weak_zz)
    throw std::invalid_argument("two_qubit_gate: weak_zz coupling required");
  if (control == target || control < 0 || target < 0 || control >= sys.n || target >= sys.n)
    throw std::invalid_argument("two_qubit_gate: bad spin indices");
  const double j = sys.j_hz(control, target);
  if (j == 0) throw std::invalid_argument("two_qubit_gate: zero coupling");
  const double t_j = 1.0 / (2.0 * std::abs(j));

  Sequence s;
  if (kind == GateKind::cphase) {
    s.push(Delay{t_j});
    double zsign = j > 0 ? -1.0 : 1.0;
    s.push(FrameZ{control, zsign * kPi / 2});
    s.push(FrameZ{target, zsign * kPi / 2});
    s.global_phase = std::exp(cplx(0, zsign * kPi / 4));
    return s;
  }
  // cnot
  s.push(rot_y(target, kPi / 2));
  s.push(Delay{t_j});
  if (j < 0) {
    s.push(FrameZ{control, -kPi});
    s.push(FrameZ{target, -kPi});
  }
  s.push(rot_x(target, kPi / 2));
  s.push(FrameZ{target, -kPi / 2});
  s.push(FrameZ{control, kPi / 2});
  s.global_phase = j > 0 ? std::exp(cplx(0, kPi / 4)) : std::exp(cplx(0, 3 * kPi / 4));
  return s;
}

namespace {
double mod2pi(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a < -kPi) a += 2 * kPi;
  if (a > kPi) a -= 2 * kPi;
  return a;
}

// Reduce a rotation angle modulo 4pi (the period of SU(2)); multiples of 2pi
// contribute a -1 global phase.
bool angle_trivial(double angle, cplx& phase) {
  double a = std::fmod(angle, 4 * kPi);
  if (a < 0) a += 4 * kPi;
  if (a < kTol || a > 4 * kPi - kTol) return true;
  if (std::abs(a - 2 * kPi) < kTol) { phase = -phase; return true; }
  return false;
}
}  // namespace

Sequence simplify(const Sequence& seq, const SimplifyOptions& opts) {
  Sequence cur = seq;
  for (int pass = 0; pass < opts.max_passes; ++pass) {
    bool changed = false;
    std::vector<SeqItem> items;
    items.reserve(cur.items.size());

    // Drop identity items.
    for (const SeqItem& it : cur.items) {
      if (const auto* r = std::get_if<IdealRotation>(&it)) {
        if (angle_trivial(r->angle, cur.global_phase)) { changed = true; continue; }
      } else if (const auto* z = std::get_if<FrameZ>(&it)) {
        if (angle_trivial(z->angle, cur.global_phase)) { changed = true; continue; }
      } else if (const auto* d = std::get_if<Delay>(&it)) {
        if (d->t_s <= 0) { changed = true; continue; }
      }
      items.push_back(it);
    }

    // One left-to-right pass of pairwise rules, earliest match first.
    std::vector<SeqItem> out;
    size_t k = 0;
    while (k < items.size()) {
      if (k + 1 < items.size()) {
        SeqItem &a = items[k], &b = items[k + 1];
        auto *ra = std::get_if<IdealRotation>(&a), *rb = std::get_if<IdealRotation>(&b);
        auto *za = std::get_if<FrameZ>(&a), *zb = std::get_if<FrameZ>(&b);
        if (ra && rb && ra->spin == rb->spin) {
          double dphi = mod2pi(ra->axis_phi - rb->axis_phi);
          if (std::abs(dphi) < kTol || std::abs(std::abs(dphi) - kPi) < kTol) {
            IdealRotation merged = *ra;
            merged.angle += std::abs(dphi) < kTol ? rb->angle : -rb->angle;
            out.push_back(merged);
            k += 2;
            changed = true;
            continue;
          }
        }
        if (za && zb && za->spin == zb->spin) {
          out.push_back(FrameZ{za->spin, za->angle + zb->angle});
          k += 2;
          changed = true;
          continue;
        }
        if (za && !zb) {
          // Migrate FrameZ toward the end of the sequence.
          bool swap = false;
          SeqItem nb = b;
          if (std::get_if<Delay>(&b)) {
            swap = true;  // weak_zz delays are diagonal
          } else if (rb) {
            swap = true;
            if (rb->spin == za->spin) {
              IdealRotation adj = *rb;
              adj.axis_phi -= za->angle;
              nb = adj;
            }
          } else if (const auto* pb = std::get_if<PulseSegment>(&b)) {
            swap = true;
            PulseSegment adj = *pb;
            for (int t : pb->targets)
              if (t == za->spin) adj.phase_rad -= za->angle;
            nb = adj;
          }
          if (swap) {
            out.push_back(nb);
            items[k + 1] = a;  // FrameZ re-examined next to its new neighbour
            ++k;
            changed = true;
            continue;
          }
        }
      }
      out.push_back(items[k]);
      ++k;
    }
    cur.items = std::move(out);
    if (!changed) break;
  }
  if (opts.drop_trailing_framez) {
    while (!cur.items.empty() && std::get_if<FrameZ>(&cur.items.back())) cur.items.pop_back();
  }
  return cur;
}

namespace {
Eigen::MatrixXi sylvester(int order) {
  Eigen::MatrixXi h(1, 1);
  h(0, 0) = 1;
  while (h.rows() < order) {
    Eigen::MatrixXi g(2 * h.rows(), 2 * h.cols());
    g << h, h, h, -h;
    h = g;
  }
  return h;
}

// Paley construction I for order q+1 = 12 (q = 11): H = I + S with
// S = [[0, 1...1], [-1, Q]], Q the Jacobsthal matrix of GF(q).
Eigen::MatrixXi paley12() {
  const int q = 11;
  std::vector<int> chi(q, -1);
  chi[0] = 0;
  for (int a = 1; a < q; ++a) chi[(a * a) % q] = 1;
  Eigen::MatrixXi h = Eigen::MatrixXi::Zero(q + 1, q + 1);
  for (int j = 1; j <= q; ++j) h(0, j) = 1;
  for (int i = 1; i <= q; ++i) h(i, 0) = -1;
  for (int i = 1; i <= q; ++i)
    for (int j = 1; j <= q; ++j) h(i, j) = chi[((j - i) % q + q) % q];
  for (int k = 0; k <= q; ++k) h(k, k) += 1;
  // Normalize rows to start at +1.
  for (int i = 0; i <= q; ++i)
    if (h(i, 0) < 0) h.row(i) *= -1;
  return h;
}

}  // namespace

Eigen::MatrixXi hadamard_matrix(int min_order) {
  for (int order : {1, 2, 4, 8, 12, 16}) {
    if (order < min_order) continue;
    return order == 12 ? paley12() : sylvester(order);
  }
  throw std::invalid_argument("no constructible Hadamard order for n > 16");
}

RefocusScheme hadamard_scheme(int n, std::optional<std::pair<int, int>> keep, double interval_s) {
  if (n < 1 || n > 12) throw std::invalid_argument("hadamard_scheme: n must be 1..12");
  Eigen::MatrixXi h = hadamard_matrix(n);
  RefocusScheme s;
  s.signs = h.topRows(n);
  if (keep) {
    auto [i, j] = *keep;
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
      throw std::invalid_argument("hadamard_scheme: bad keep pair");
    s.signs.row(j) = s.signs.row(i);
  }
  s.intervals_s.assign(h.cols(), interval_s);
  return s;
}

RefocusScheme doubling_scheme(int n, double interval_s) {
  if (n < 1) throw std::invalid_argument("doubling_scheme: n must be >= 1");
  const int m = 1 << (n - 1);
  RefocusScheme s;
  s.signs = Eigen::MatrixXi::Ones(n, m);
  for (int k = 2; k <= n; ++k) {
    int period = 1 << (n - k + 1);  // spin k flips after j = period/2 (mod period)
    int sign = 1;
    for (int col = 0; col < m; ++col) {
      s.signs(k - 1, col) = sign;
      int j = col + 1;  // interval just completed
      if (j % period == period / 2) sign = -sign;
    }
  }
  s.intervals_s.assign(m, interval_s);
  return s;
}

SchemeReport verify_scheme(const RefocusScheme& scheme, const SpinSystem& sys) {
  sys.validate();
  if (sys.model != CouplingModel::weak_zz)
    throw std::invalid_argument("verify_scheme: weak_zz coupling required");
  const int n = sys.n;
  if (scheme.signs.rows() != n) throw std::invalid_argument("verify_scheme: row count mismatch");
  const int m = (int)scheme.signs.cols();
  if ((int)scheme.intervals_s.size() != m)
    throw std::invalid_argument("verify_scheme: interval count mismatch");

  Mat h = system_hamiltonian(sys);
  const int d = sys.dim();
  Mat u = Mat::Identity(d, d);
  Eigen::VectorXi state = Eigen::VectorXi::Ones(n);
  double total_t = 0;
  for (int col = 0; col < m; ++col) {
    for (int i = 0; i < n; ++i)
      if (scheme.signs(i, col) != state(i)) {
        u = rotation(n, i, 0.0, kPi) * u;  // ideal instantaneous 180
        state(i) = scheme.signs(i, col);
      }
    u = expm_i_hermitian(h, scheme.intervals_s[col]) * u;
    total_t += scheme.intervals_s[col];
  }
  for (int i = 0; i < n; ++i)  // closure flips back to +1
    if (state(i) != 1) u = rotation(n, i, 0.0, kPi) * u;

  // Remove the global phase before taking the log: it only shifts hbar by a
  // multiple of identity, and it keeps the eigenphases of a +-I propagator
  // away from the branch cut at +-pi.
  cplx ph = u(0, 0);
  Mat hbar = exact_average(std::abs(ph) > 0.5 ? Mat(u / (ph / std::abs(ph))) : u, total_t);
  SchemeReport rep;
  rep.u = u;
  rep.j_eff_hz = Eigen::MatrixXd::Zero(n, n);
  rep.j_target_hz = Eigen::MatrixXd::Zero(n, n);
  rep.max_dev_hz = 0;
  const double zz_norm2 = (double)d / 16.0;  // Tr((Iz_i Iz_j)^2)
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Mat zz = spin_op(n, i, 2) * spin_op(n, j, 2);
      double jeff = (hbar * zz).trace().real() / (2 * kPi * zz_norm2);
      double sum = 0;
      for (int col = 0; col < m; ++col)
        sum += scheme.signs(i, col) * scheme.signs(j, col) * scheme.intervals_s[col];
      double jtgt = sys.j_hz(i, j) * sum / total_t;
      rep.j_eff_hz(i, j) = rep.j_eff_hz(j, i) = jeff;
      rep.j_target_hz(i, j) = rep.j_target_hz(j, i) = jtgt;
      rep.max_dev_hz = std::max(rep.max_dev_hz, std::abs(jeff - jtgt));
    }
  }
  return rep;
}

}  // namespace spinbench
