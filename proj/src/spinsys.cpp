#include "spinbench/spinsys.hpp"

#include <cmath>
#include <numbers>

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd half_sigma(int axis) {
  Eigen::Matrix2cd s;
  switch (axis) {
    case 0: s << 0, 0.5, 0.5, 0; break;
    case 1: s << 0, cplx(0, -0.5), cplx(0, 0.5), 0; break;
    case 2: s << 0.5, 0, 0, -0.5; break;
    default: throw std::invalid_argument("axis must be 0..2");
  }
  return s;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}
}  // namespace

std::string to_string(CouplingModel m) {
  switch (m) {
    case CouplingModel::weak_zz: return "weak_zz";
    case CouplingModel::isotropic: return "isotropic";
    case CouplingModel::dipolar_secular: return "dipolar_secular";
  }
  return "?";
}

CouplingModel coupling_model_from_string(const std::string& s) {
  if (s == "weak_zz") return CouplingModel::weak_zz;
  if (s == "isotropic") return CouplingModel::isotropic;
  if (s == "dipolar_secular") return CouplingModel::dipolar_secular;
  throw std::invalid_argument("unknown coupling model: " + s);
}

void SpinSystem::validate() const {
  if (n < 1 || n > 7) throw std::invalid_argument("spin count must be 1..7");
  if ((int)offsets_hz.size() != n) throw std::invalid_argument("offsets_hz size mismatch");
  if (n > 1) {
    if (j_hz.rows() != n || j_hz.cols() != n)
      throw std::invalid_argument("j_hz must be n x n");
    if ((j_hz - j_hz.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("j_hz must be symmetric");
    for (int i = 0; i < n; ++i)
      if (std::abs(j_hz(i, i)) > 0) throw std::invalid_argument("j_hz diagonal must be zero");
  }
  if (model == CouplingModel::dipolar_secular &&
      (geometry.b_hz.rows() != n || geometry.b_hz.cols() != n))
    throw std::invalid_argument("dipolar_secular model needs an n x n geometry");
  if (!t1_s.empty() && (int)t1_s.size() != n) throw std::invalid_argument("t1_s size mismatch");
  if (!t2_s.empty() && (int)t2_s.size() != n) throw std::invalid_argument("t2_s size mismatch");
  for (int i = 0; i < n && !t1_s.empty() && !t2_s.empty(); ++i) {
    double t1 = t1_s[i] > 0 ? t1_s[i] : std::numeric_limits<double>::infinity();
    double t2 = t2_s[i] > 0 ? t2_s[i] : std::numeric_limits<double>::infinity();
    if (t2 > 2 * t1 + 1e-12) throw std::invalid_argument("requires T2 <= 2 T1");
  }
}

Mat spin_op(int n, int spin, int axis) {
  if (spin < 0 || spin >= n) throw std::invalid_argument("spin index out of range");
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    Mat f = (k == spin) ? Mat(half_sigma(axis)) : Mat(Mat::Identity(2, 2));
    out = kron(out, f);
  }
  return out;
}

Mat pauli_product(int n, const std::vector<int>& which) {
  if ((int)which.size() != n) throw std::invalid_argument("label size mismatch");
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    Mat f = which[k] == 0 ? Mat(0.5 * Mat::Identity(2, 2)) : Mat(half_sigma(which[k] - 1));
    out = kron(out, f);
  }
  return out;
}

Mat system_hamiltonian(const SpinSystem& sys) {
  sys.validate();
  const int d = sys.dim();
  Mat h = Mat::Zero(d, d);
  for (int i = 0; i < sys.n; ++i)
    h -= 2 * kPi * sys.offsets_hz[i] * spin_op(sys.n, i, 2);
  for (int i = 0; i < sys.n; ++i) {
    for (int j = i + 1; j < sys.n; ++j) {
      switch (sys.model) {
        case CouplingModel::weak_zz:
          h += 2 * kPi * sys.j_hz(i, j) * spin_op(sys.n, i, 2) * spin_op(sys.n, j, 2);
          break;
        case CouplingModel::isotropic:
          for (int ax = 0; ax < 3; ++ax)
            h += 2 * kPi * sys.j_hz(i, j) * spin_op(sys.n, i, ax) * spin_op(sys.n, j, ax);
          break;
        case CouplingModel::dipolar_secular: {
          Mat zz = spin_op(sys.n, i, 2) * spin_op(sys.n, j, 2);
          Mat dot = Mat::Zero(d, d);
          for (int ax = 0; ax < 3; ++ax)
            dot += spin_op(sys.n, i, ax) * spin_op(sys.n, j, ax);
          h += 2 * kPi * sys.geometry.b_hz(i, j) * (3.0 * zz - dot);
          break;
        }
      }
    }
  }
  return h;
}

Mat control_hamiltonian(const SpinSystem& sys, const PulseSegment& seg, double t) {
  const int d = sys.dim();
  Mat h = Mat::Zero(d, d);
  for (int i : seg.targets) {
    if (i < 0 || i >= sys.n) throw std::invalid_argument("target spin out of range");
    double beat = 2 * kPi * (seg.transmitter_hz - sys.offsets_hz[i]) * t + seg.phase_rad;
    h -= 2 * kPi * seg.amp_hz *
         (std::cos(beat) * spin_op(sys.n, i, 0) + std::sin(beat) * spin_op(sys.n, i, 1));
  }
  return h;
}

Mat thermal_state(const SpinSystem& sys) {
  Mat rho = Mat::Zero(sys.dim(), sys.dim());
  rho(0, 0) = 1.0;
  return rho;
}

Mat rotation(int n, int spin, double axis_phi, double theta) {
  Mat gen = std::cos(axis_phi) * spin_op(n, spin, 0) + std::sin(axis_phi) * spin_op(n, spin, 1);
  return expm_i_hermitian(gen, theta);
}

Mat rotation_z(int n, int spin, double theta) {
  return expm_i_hermitian(spin_op(n, spin, 2), theta);
}

}  // namespace spinbench
