#include <doctest.h>

#include <numbers>
#include <random>

#include "spinbench/compile.hpp"

using namespace spinbench;
namespace {
constexpr double kPi = std::numbers::pi;

SpinSystem coupled(double j, double v1 = 0.0, double v2 = 0.0) {
  SpinSystem sys;
  sys.n = 2;
  sys.offsets_hz = {v1, v2};
  sys.j_hz = Eigen::MatrixXd::Zero(2, 2);
  sys.j_hz(0, 1) = sys.j_hz(1, 0) = j;
  return sys;
}

Mat canonical_cnot() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

Mat canonical_cphase() {
  Mat m = Mat::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

SpinSystem random_j_system(int n, std::mt19937_64& rng) {
  SpinSystem sys;
  sys.n = n;
  sys.offsets_hz.assign(n, 0.0);
  sys.j_hz = Eigen::MatrixXd::Zero(n, n);
  std::uniform_real_distribution<double> u(-80.0, 80.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) sys.j_hz(a, b) = sys.j_hz(b, a) = u(rng);
  return sys;
}
}  // namespace

TEST_CASE("compiled CNOT and CPHASE hit the canonical matrices exactly") {
  for (double j : {50.0, -50.0, 12.5}) {
    SpinSystem sys = coupled(j);
    Mat u = sequence_unitary(sys, two_qubit_gate(sys, GateKind::cnot, 0, 1));
    CHECK((u - canonical_cnot()).cwiseAbs().maxCoeff() < 1e-12);
    u = sequence_unitary(sys, two_qubit_gate(sys, GateKind::cphase, 0, 1));
    CHECK((u - canonical_cphase()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("CNOT maps the computational basis correctly") {
  SpinSystem sys = coupled(35.0);
  Mat u = sequence_unitary(sys, two_qubit_gate(sys, GateKind::cnot, 0, 1));
  Vec in = Vec::Zero(4), out;
  in(2) = 1;  // |10>: control set (spin 0 is the high bit)
  out = u * in;
  CHECK(std::abs(out(3) - 1.0) < 1e-12);
  in.setZero();
  in(1) = 1;  // |01>: control clear
  out = u * in;
  CHECK(std::abs(out(1) - 1.0) < 1e-12);
}

TEST_CASE("two_qubit_gate validates its inputs") {
  SpinSystem sys = coupled(0.0);
  CHECK_THROWS_AS(two_qubit_gate(sys, GateKind::cnot, 0, 1), std::invalid_argument);
  sys = coupled(50.0);
  CHECK_THROWS_AS(two_qubit_gate(sys, GateKind::cnot, 0, 0), std::invalid_argument);
  sys.model = CouplingModel::isotropic;
  CHECK_THROWS_AS(two_qubit_gate(sys, GateKind::cnot, 0, 1), std::invalid_argument);
}

TEST_CASE("simplify merges same-axis rotations and cancels inverses") {
  SpinSystem sys = coupled(50.0);
  Sequence seq;
  seq.push(rot_x(0, kPi / 4));
  seq.push(rot_x(0, kPi / 4));
  seq.push(rot_y(1, kPi / 2));
  seq.push(rot_y(1, -kPi / 2));
  Sequence simp = simplify(seq);
  REQUIRE(simp.items.size() == 1);
  const auto* r = std::get_if<IdealRotation>(&simp.items[0]);
  REQUIRE(r != nullptr);
  CHECK(r->angle == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK((sequence_unitary(sys, simp) - sequence_unitary(sys, seq)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("simplify migrates frame rotations to the end") {
  SpinSystem sys = coupled(50.0);
  Sequence seq;
  seq.push(FrameZ{0, kPi / 2});
  seq.push(rot_x(0, kPi / 2));
  seq.push(Delay{1e-3});
  seq.push(rot_y(1, kPi));
  Sequence simp = simplify(seq);
  // The FrameZ must now be the last item, with the crossed rotation re-phased.
  REQUIRE(!simp.items.empty());
  CHECK(std::get_if<FrameZ>(&simp.items.back()) != nullptr);
  CHECK((sequence_unitary(sys, simp) - sequence_unitary(sys, seq)).cwiseAbs().maxCoeff() < 1e-12);

  Sequence dropped = simplify(seq, {.drop_trailing_framez = true});
  for (const auto& it : dropped.items) CHECK(std::get_if<FrameZ>(&it) == nullptr);
}

TEST_CASE("simplify preserves the unitary on randomized sequences") {
  SpinSystem sys = coupled(42.0);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick(0, 3), spin(0, 1);
  std::uniform_real_distribution<double> ang(-2 * kPi, 2 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    Sequence seq;
    for (int k = 0; k < 12; ++k) {
      switch (pick(rng)) {
        case 0: seq.push(IdealRotation{spin(rng), ang(rng), ang(rng)}); break;
        case 1: seq.push(FrameZ{spin(rng), ang(rng)}); break;
        case 2: seq.push(Delay{2e-4}); break;
        default: seq.push(rot_x(spin(rng), kPi / 2)); break;
      }
    }
    Sequence simp = simplify(seq);
    CHECK((sequence_unitary(sys, simp) - sequence_unitary(sys, seq)).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK(simp.items.size() <= seq.items.size());
  }
}

TEST_CASE("identity rotations are dropped with the right phase bookkeeping") {
  SpinSystem sys = coupled(50.0);
  Sequence seq;
  seq.push(rot_x(0, 2 * kPi));  // SU(2): equals -1
  seq.push(rot_x(0, 4 * kPi));  // equals +1
  Sequence simp = simplify(seq);
  CHECK(simp.items.empty());
  CHECK(std::abs(simp.global_phase - cplx(-1, 0)) < 1e-12);
  CHECK((sequence_unitary(sys, simp) - sequence_unitary(sys, seq)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Hadamard matrix construction over the supported orders") {
  for (int order : {1, 2, 4, 8, 12, 16}) {
    Eigen::MatrixXi h = hadamard_matrix(order);
    REQUIRE(h.rows() == order);
    Eigen::MatrixXi g = h * h.transpose();
    CHECK((g - order * Eigen::MatrixXi::Identity(order, order)).cwiseAbs().maxCoeff() == 0);
    for (int i = 0; i < order; ++i) CHECK(h(i, 0) == 1);  // normalized rows
  }
  // Non-constructible orders round up to the next constructible one.
  CHECK(hadamard_matrix(3).rows() == 4);
  CHECK(hadamard_matrix(9).rows() == 12);
  CHECK_THROWS_AS(hadamard_matrix(17), std::invalid_argument);
}

TEST_CASE("doubling scheme reproduces the printed 4-spin sign pattern") {
  RefocusScheme s = doubling_scheme(4, 1e-3);
  REQUIRE(s.signs.rows() == 4);
  REQUIRE(s.signs.cols() == 8);
  const char* expect[4] = {"++++++++", "++++----", "++----++", "+--++--+"};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 8; ++k)
      CHECK(s.signs(i, k) == (expect[i][k] == '+' ? 1 : -1));
  for (double v : s.intervals_s) CHECK(v == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("no two spins flip simultaneously in the doubling scheme") {
  for (int n : {2, 3, 4, 5}) {
    RefocusScheme s = doubling_scheme(n, 1e-3);
    for (int k = 1; k < s.signs.cols(); ++k) {
      int flips = 0;
      for (int i = 0; i < n; ++i)
        if (s.signs(i, k) != s.signs(i, k - 1)) ++flips;
      CHECK(flips <= 1);
    }
  }
}

TEST_CASE("full Hadamard refocusing decouples everything") {
  std::mt19937_64 rng(31);
  for (int n : {2, 3, 4}) {
    SpinSystem sys = random_j_system(n, rng);
    RefocusScheme scheme = hadamard_scheme(n);
    SchemeReport rep = verify_scheme(scheme, sys);
    CHECK(rep.j_eff_hz.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(phase_aligned_distance(Mat::Identity(sys.dim(), sys.dim()), rep.u) < 1e-10);
  }
}

TEST_CASE("keep-pair scheme preserves exactly the chosen coupling") {
  std::mt19937_64 rng(77);
  SpinSystem sys = random_j_system(4, rng);
  RefocusScheme scheme = hadamard_scheme(4, std::make_pair(1, 2));
  SchemeReport rep = verify_scheme(scheme, sys);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      double expect = (a == 1 && b == 2) ? sys.j_hz(1, 2) : 0.0;
      CHECK(std::abs(rep.j_eff_hz(a, b) - expect) < 1e-10);
    }
  CHECK(rep.max_dev_hz < 1e-10);
}

TEST_CASE("a pair of 180s refocuses the J evolution") {
  // X1^2 U_J(t) X1^2 U_J(t) = I up to phase: build it as a scheme with two
  // intervals and opposite signs on spin 0.
  SpinSystem sys = coupled(60.0);
  RefocusScheme scheme;
  scheme.signs = Eigen::MatrixXi(2, 2);
  scheme.signs << 1, -1, 1, 1;
  scheme.intervals_s = {1e-3, 1e-3};
  SchemeReport rep = verify_scheme(scheme, sys);
  CHECK(rep.j_eff_hz.cwiseAbs().maxCoeff() < 1e-10);
  CHECK(phase_aligned_distance(Mat::Identity(4, 4), rep.u) < 1e-10);
}
