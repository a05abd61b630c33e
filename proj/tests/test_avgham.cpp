#include <doctest.h>

#include <numbers>
#include <random>

#include "spinbench/avgham.hpp"

using namespace spinbench;
namespace {
constexpr double kPi = std::numbers::pi;

Mat random_traceless_hermitian(int d, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Mat h(d, d);
  for (int r = 0; r < d; ++r) {
    h(r, r) = g(rng);
    for (int c = r + 1; c < d; ++c) {
      h(r, c) = cplx(g(rng), g(rng));
      h(c, r) = std::conj(h(r, c));
    }
  }
  h -= (h.trace() / (double)d) * Mat::Identity(d, d);
  return 0.5 * (h + Mat(h.adjoint()));
}

SpinSystem dipolar_pair(double v1, double v2, double b) {
  SpinSystem sys;
  sys.n = 2;
  sys.offsets_hz = {v1, v2};
  sys.j_hz = Eigen::MatrixXd::Zero(2, 2);
  sys.model = CouplingModel::dipolar_secular;
  sys.geometry.b_hz = Eigen::MatrixXd::Zero(2, 2);
  sys.geometry.b_hz(0, 1) = sys.geometry.b_hz(1, 0) = b;
  return sys;
}
}  // namespace

TEST_CASE("exact_average inverts the propagator inside the branch cut") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    Mat h = random_traceless_hermitian(4, rng, 0.3);
    double t = 1.0;  // ||H|| t well below pi
    Mat u = expm_i_hermitian(h, t);
    Mat hbar = exact_average(u, t);
    CHECK((hbar - h).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("magnus zeroth order is the duration-weighted mean") {
  std::mt19937_64 rng(42);
  Mat h1 = random_traceless_hermitian(2, rng, 1.0);
  Mat h2 = random_traceless_hermitian(2, rng, 1.0);
  MagnusResult m = magnus_terms({{h1, 0.25}, {h2, 0.75}});
  CHECK((m.h0 - (0.25 * h1 + 0.75 * h2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(m.cycle_time_s == doctest::Approx(1.0).epsilon(1e-15));
  // First order vanishes when the slices commute.
  MagnusResult c = magnus_terms({{h1, 0.3}, {Mat(2.0 * h1), 0.7}});
  CHECK(c.h1.cwiseAbs().maxCoeff() < 1e-12);
  // And is Hermitian in general.
  CHECK(is_hermitian(m.h1));
}

TEST_CASE("magnus h0 + h1 tracks the exact average for a fast cycle") {
  std::mt19937_64 rng(43);
  Mat a = random_traceless_hermitian(2, rng, 1.0);
  Mat b = random_traceless_hermitian(2, rng, 1.0);
  const double tau = 1e-2;
  Mat u = expm_i_hermitian(b, tau) * expm_i_hermitian(a, tau);
  Mat exact = exact_average(u, 2 * tau);
  MagnusResult m = magnus_terms({{a, tau}, {b, tau}});
  double err0 = (exact - m.h0).cwiseAbs().maxCoeff();
  double err1 = (exact - (m.h0 + m.h1)).cwiseAbs().maxCoeff();
  CHECK(err1 < err0);
  CHECK(err1 < 2e-4);
  // The residual after h0 + h1 is third order in the cycle duration, so the
  // average-Hamiltonian error scales as tau^2: halving tau shrinks it ~4x.
  Mat u2 = expm_i_hermitian(b, tau / 2) * expm_i_hermitian(a, tau / 2);
  Mat exact2 = exact_average(u2, tau);
  MagnusResult m2 = magnus_terms({{a, tau / 2}, {b, tau / 2}});
  double err1b = (exact2 - (m2.h0 + m2.h1)).cwiseAbs().maxCoeff();
  CHECK(err1b < err1 / 3.0);
}

TEST_CASE("toggling frames conjugate by the accumulated pulses") {
  Mat h = 2 * kPi * 100.0 * spin_op(1, 0, 2);
  Mat x90 = rotation(1, 0, 0.0, kPi / 2);
  TogglingResult t = toggling_frame(h, {x90, x90, x90, x90});
  REQUIRE(t.frames.size() == 5);
  CHECK((t.frames[0] - h).cwiseAbs().maxCoeff() < 1e-12);
  // After X90, Iz -> Iy in the toggling frame (V^dag Iz V).
  Mat expect = x90.adjoint() * h * x90;
  CHECK((t.frames[1] - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(t.cycle_closed);  // four X90s close the cycle

  TogglingResult open = toggling_frame(h, {x90});
  CHECK(!open.cycle_closed);
}

TEST_CASE("WAHUHA-4 averages the dipolar coupling away and scales Zeeman by 1/sqrt(3)") {
  SpinSystem sys = dipolar_pair(80.0, -150.0, 200.0);
  DecouplingReport rep = decoupling_report(sys, DecouplingCycle::wahuha4, 1e-5);
  CHECK(rep.dipolar_residual < 1e-10);
  for (int i = 0; i < 2; ++i) {
    CHECK(rep.zeeman_scale[i] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
    // Average Zeeman axis is the (1,1,1) diagonal (sign follows -offset).
    Eigen::Vector3d axis = rep.zeeman_axis[i].normalized();
    double s = sys.offsets_hz[i] > 0 ? -1.0 : 1.0;
    for (int ax = 0; ax < 3; ++ax)
      CHECK(axis(ax) == doctest::Approx(s / std::sqrt(3.0)).epsilon(1e-9));
  }
}

TEST_CASE("three-component echo zeroes the full average Hamiltonian") {
  std::mt19937_64 rng(44);
  Mat x180 = rotation(1, 0, 0.0, kPi);
  Mat z180 = rotation_z(1, 0, kPi);
  Mat z180m = rotation_z(1, 0, -kPi);
  for (int trial = 0; trial < 20; ++trial) {
    Mat h = random_traceless_hermitian(2, rng, 2 * kPi * 50.0);
    TogglingResult t = toggling_frame(h, {z180m, x180, z180, x180});
    CHECK(t.cycle_closed);
    std::vector<std::pair<Mat, double>> slices;
    for (int k = 0; k < 4; ++k) slices.push_back({t.frames[k], 1e-5});
    MagnusResult m = magnus_terms(slices);
    CHECK(m.h0.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("echo3 decoupling report sees no zeroth-order Hamiltonian") {
  SpinSystem sys;
  sys.n = 1;
  sys.offsets_hz = {120.0};
  sys.j_hz = Eigen::MatrixXd::Zero(1, 1);
  DecouplingReport rep = decoupling_report(sys, DecouplingCycle::echo3, 1e-5);
  CHECK(rep.magnus.h0.cwiseAbs().maxCoeff() < 1e-10);
}
