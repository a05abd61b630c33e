#include "spinbench/tomo.hpp"

#include <cmath>
#include <numbers>

namespace spinbench {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<int> digits(int n, int index) {
  std::vector<int> d(n);
  for (int k = n - 1; k >= 0; --k) {
    d[k] = index & 3;
    index >>= 2;
  }
  return d;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

Mat full_sigma(int which) {
  Mat s(2, 2);
  switch (which) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad sigma index");
  }
  return s;
}

Mat setting_unitary(const ReadoutSetting& s, int n) {
  Mat u = Mat::Identity(1 << n, 1 << n);
  for (const IdealRotation& r : s.basis_change) u = rotation(n, r.spin, r.axis_phi, r.angle) * u;
  return u;
}

// Complex observables for the nmr_transverse set, in a fixed order.
std::vector<Mat> nmr_observables(int n) {
  std::vector<Mat> obs;
  Mat minus(2, 2);  // -i sx - sy
  minus << 0, cplx(0, -2), 0, 0;
  for (int i = 0; i < n; ++i) {
    for (int pat = 0; pat < (1 << (n - 1)); ++pat) {
      Mat o = Mat::Identity(1, 1);
      int bit = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) { o = kron(o, minus); continue; }
        double sign = ((pat >> bit) & 1) ? -1.0 : 1.0;
        o = kron(o, Mat(full_sigma(0) + sign * full_sigma(3)));
        ++bit;
      }
      obs.push_back(o);
    }
  }
  return obs;
}
}  // namespace

Mat assemble_state(const PauliCoefficients& pc) {
  const int total = 1 << (2 * pc.n);
  Mat rho = Mat::Zero(1 << pc.n, 1 << pc.n);
  for (int a = 0; a < total; ++a) rho += pc.c(a) * pauli_product(pc.n, digits(pc.n, a));
  return rho;
}

PauliCoefficients pauli_coefficients(const Mat& rho, int n) {
  PauliCoefficients pc;
  pc.n = n;
  const int total = 1 << (2 * n);
  pc.c.resize(total);
  // Tr(P_a P_b) = delta_ab / 2^n with the I/2, sigma/2 normalization.
  const double norm = std::pow(2.0, n);
  for (int a = 0; a < total; ++a)
    pc.c(a) = (rho * pauli_product(n, digits(n, a))).trace().real() * norm;
  return pc;
}

std::vector<double> simulate_readout(const Mat& rho, const ReadoutSetting& setting, int n,
                                     double noise_sigma, std::mt19937_64* rng) {
  const int d = 1 << n;
  if (rho.rows() != d) throw std::invalid_argument("simulate_readout: dimension mismatch");
  Mat u = setting_unitary(setting, n);
  Mat r = u * rho * u.adjoint();
  std::vector<double> vals;
  if (setting.observables == ObservableSet::computational) {
    for (int m = 0; m < d; ++m) vals.push_back(r(m, m).real());
  } else {
    for (const Mat& o : nmr_observables(n)) {
      cplx v = (r * o).trace();
      vals.push_back(v.real());
      vals.push_back(v.imag());
    }
  }
  if (noise_sigma > 0) {
    if (!rng) throw std::invalid_argument("simulate_readout: noise requires an RNG");
    std::normal_distribution<double> g(0.0, noise_sigma);
    for (double& v : vals) v += g(*rng);
  }
  return vals;
}

std::vector<ReadoutSetting> default_settings(int n) {
  std::vector<ReadoutSetting> out;
  out.push_back({});  // identity
  for (int i = 0; i < n; ++i) {
    out.push_back({{rot_x(i, kPi / 2)}, ObservableSet::computational});
    out.push_back({{rot_y(i, kPi / 2)}, ObservableSet::computational});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          ReadoutSetting s;
          s.basis_change = {a ? rot_y(i, kPi / 2) : rot_x(i, kPi / 2),
                            b ? rot_y(j, kPi / 2) : rot_x(j, kPi / 2)};
          out.push_back(s);
        }
  return out;
}

Mat state_tomography(const std::vector<std::pair<ReadoutSetting, std::vector<double>>>& readouts,
                     int n, const StateTomoOptions& opts) {
  const int d = 1 << n;
  const int unknowns = (1 << (2 * n)) - 1;
  std::vector<Mat> basis(unknowns + 1);
  for (int a = 0; a <= unknowns; ++a) basis[a] = pauli_product(n, digits(n, a));

  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (const auto& [setting, values] : readouts) {
    Mat u = setting_unitary(setting, n);
    std::vector<Mat> obs;
    bool complex_obs = setting.observables == ObservableSet::nmr_transverse;
    if (complex_obs) obs = nmr_observables(n);
    else for (int m = 0; m < d; ++m) { Mat o = Mat::Zero(d, d); o(m, m) = 1; obs.push_back(o); }
    size_t expected = complex_obs ? 2 * obs.size() : obs.size();
    if (values.size() != expected)
      throw std::invalid_argument("state_tomography: value count mismatch");
    for (size_t m = 0; m < obs.size(); ++m) {
      Mat eff = u.adjoint() * obs[m] * u;  // Tr(U rho U^dag M) = Tr(rho U^dag M U)
      Eigen::RowVectorXd re(unknowns), im(unknowns);
      for (int a = 1; a <= unknowns; ++a) {
        cplx t = (basis[a] * eff).trace();
        re(a - 1) = t.real();
        im(a - 1) = t.imag();
      }
      cplx off = (basis[0] * eff).trace();  // c_0 = 1 contribution
      if (complex_obs) {
        rows.push_back(re); rhs.push_back(values[2 * m] - off.real());
        rows.push_back(im); rhs.push_back(values[2 * m + 1] - off.imag());
      } else {
        rows.push_back(re); rhs.push_back(values[m] - off.real());
      }
    }
  }

  Eigen::MatrixXd A((int)rows.size(), unknowns);
  Eigen::VectorXd b((int)rows.size());
  for (size_t r = 0; r < rows.size(); ++r) { A.row((int)r) = rows[r]; b((int)r) = rhs[r]; }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > opts.rank_tol * sv(0)) ++rank;
  if (rank < unknowns)
    throw std::invalid_argument("state_tomography: settings do not span all coefficients");

  Eigen::VectorXd x = svd.solve(b);
  PauliCoefficients pc;
  pc.n = n;
  pc.c.resize(unknowns + 1);
  pc.c(0) = 1.0;
  pc.c.tail(unknowns) = x;
  Mat rho = assemble_state(pc);
  if (opts.project_psd) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
    rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    rho /= rho.trace().real();
  }
  return rho;
}

Mat chi_basis_element(int n, int p) {
  Mat out = Mat::Identity(1, 1);
  for (int w : digits(n, p)) out = kron(out, full_sigma(w));
  return out;
}

std::vector<Mat> standard_process_inputs(int n) {
  std::vector<Vec> kets(4, Vec(2));
  kets[0] << 1, 0;
  kets[1] << 0, 1;
  kets[2] << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  kets[3] << 1 / std::sqrt(2.0), cplx(0, 1) / std::sqrt(2.0);
  std::vector<Mat> out;
  const int total = 1 << (2 * n);
  for (int idx = 0; idx < total; ++idx) {
    Vec psi = Vec::Ones(1);
    int rem = idx;
    for (int k = 0; k < n; ++k) {
      const Vec& f = kets[(rem >> (2 * (n - 1 - k))) & 3];
      Vec next(psi.size() * 2);
      for (int r = 0; r < psi.size(); ++r) next.segment(2 * r, 2) = psi(r) * f;
      psi = next;
    }
    (void)rem;
    out.push_back(psi * psi.adjoint());
  }
  return out;
}

ChiMatrix process_tomography(const std::vector<Mat>& inputs, const std::vector<Mat>& outputs,
                             const ProcessTomoOptions& opts) {
  if (inputs.empty() || inputs.size() != outputs.size())
    throw std::invalid_argument("process_tomography: input/output count mismatch");
  const int d = (int)inputs[0].rows();
  int n = 0;
  while ((1 << n) < d) ++n;
  const int nb = d * d;  // 4^n basis elements

  // Check linear independence of the inputs.
  Eigen::MatrixXcd vecs(d * d, (int)inputs.size());
  for (size_t j = 0; j < inputs.size(); ++j)
    vecs.col((int)j) = Eigen::Map<const Eigen::VectorXcd>(inputs[j].data(), d * d);
  Eigen::JacobiSVD<Eigen::MatrixXcd> isvd(vecs);
  if (isvd.singularValues()(isvd.singularValues().size() - 1) <
      1e-10 * isvd.singularValues()(0))
    throw std::invalid_argument("process_tomography: inputs are linearly dependent");

  std::vector<Mat> basis(nb);
  for (int p = 0; p < nb; ++p) basis[p] = chi_basis_element(n, p);

  const int rows = (int)inputs.size() * d * d;
  Eigen::MatrixXcd m(rows, nb * nb);
  Eigen::VectorXcd b(rows);
  for (size_t j = 0; j < inputs.size(); ++j) {
    for (int p = 0; p < nb; ++p) {
      Mat left = basis[p] * inputs[j];
      for (int q = 0; q < nb; ++q) {
        Mat t = left * basis[q].adjoint();
        m.block((int)j * d * d, p * nb + q, d * d, 1) =
            Eigen::Map<const Eigen::VectorXcd>(t.data(), d * d);
      }
    }
    b.segment((int)j * d * d, d * d) =
        Eigen::Map<const Eigen::VectorXcd>(outputs[j].data(), d * d);
  }
  Eigen::VectorXcd x = m.colPivHouseholderQr().solve(b);

  ChiMatrix res;
  res.n = n;
  res.chi = Mat(nb, nb);
  for (int p = 0; p < nb; ++p)
    for (int q = 0; q < nb; ++q) res.chi(p, q) = x(p * nb + q);
  res.chi = 0.5 * (res.chi + Mat(res.chi.adjoint()));
  if (opts.project_psd) {
    Eigen::SelfAdjointEigenSolver<Mat> es(res.chi);
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
    res.chi = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  }
  Mat tp = Mat::Zero(d, d);
  for (int p = 0; p < nb; ++p)
    for (int q = 0; q < nb; ++q)
      tp += res.chi(p, q) * basis[q].adjoint() * basis[p];
  res.tp_residual = (tp - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
  return res;
}

ChiMatrix chi_of_unitary(const Mat& u) {
  if (!is_unitary(u, 1e-9)) throw std::invalid_argument("chi_of_unitary: not unitary");
  const int d = (int)u.rows();
  int n = 0;
  while ((1 << n) < d) ++n;
  const int nb = d * d;
  Vec coef(nb);
  for (int p = 0; p < nb; ++p)
    coef(p) = (chi_basis_element(n, p).adjoint() * u).trace() / (double)d;
  ChiMatrix res;
  res.n = n;
  res.chi = coef * coef.adjoint();
  res.tp_residual = 0.0;
  return res;
}

Mat apply_chi(const ChiMatrix& chi, const Mat& rho) {
  const int d = (int)rho.rows();
  const int nb = d * d;
  Mat out = Mat::Zero(d, d);
  for (int p = 0; p < nb; ++p) {
    Mat left = chi_basis_element(chi.n, p) * rho;
    for (int q = 0; q < nb; ++q)
      out += chi.chi(p, q) * left * chi_basis_element(chi.n, q).adjoint();
  }
  return out;
}

}  // namespace spinbench
