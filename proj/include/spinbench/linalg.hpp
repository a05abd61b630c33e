#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>

namespace spinbench {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-10;

inline bool is_hermitian(const Mat& a, double tol = kHermTol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Mat& a, double tol = kHermTol) {
  Mat g = a.adjoint() * a;
  g -= Mat::Identity(a.rows(), a.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

// exp(-i H t) for Hermitian H, via eigendecomposition.
inline Mat expm_i_hermitian(const Mat& h, double t) {
  if (!is_hermitian(h, 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff())))
    throw std::invalid_argument("expm_i_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vec ph(w.size());
  for (int k = 0; k < w.size(); ++k) ph(k) = std::exp(cplx(0.0, -w(k) * t));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Hermitian generator H with U = exp(-i H t), eigenphases taken in (-pi, pi].
// Uses a Schur decomposition so degenerate eigenvalues stay orthonormal.
inline Mat logm_unitary(const Mat& u, double t) {
  if (!is_unitary(u, 1e-8))
    throw std::invalid_argument("logm_unitary: matrix is not unitary");
  Eigen::ComplexSchur<Mat> schur(u);
  const Mat& q = schur.matrixU();
  const Mat& tt = schur.matrixT();
  Vec w(u.rows());
  for (int k = 0; k < u.rows(); ++k) {
    double phase = std::arg(tt(k, k));  // in (-pi, pi]
    w(k) = -phase / t;
  }
  Mat h = q * w.asDiagonal() * q.adjoint();
  return 0.5 * (h + Mat(h.adjoint()));
}

// Phase alpha maximizing |Tr(a^dag b e^{i alpha})| agreement, i.e. the
// global-phase-aligned distance between two unitaries.
inline double phase_aligned_distance(const Mat& a, const Mat& b) {
  cplx ov = (a.adjoint() * b).trace();
  cplx ph = (std::abs(ov) < 1e-300) ? cplx(1, 0) : ov / std::abs(ov);
  return (b - ph * a).cwiseAbs().maxCoeff();
}

inline Vec haar_random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(dim);
  for (int k = 0; k < dim; ++k) v(k) = cplx(g(rng), g(rng));
  return v / v.norm();
}

inline Mat haar_random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    cplx d = rmat(k, k);
    q.col(k) *= (std::abs(d) < 1e-300) ? cplx(1, 0) : d / std::abs(d);
  }
  return q;
}

inline Mat random_density_matrix(int dim, std::mt19937_64& rng, int rank = 0) {
  if (rank <= 0) rank = dim;
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(dim, rank);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < rank; ++c) a(r, c) = cplx(g(rng), g(rng));
  Mat rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace spinbench
