#include <doctest.h>

#include <numbers>

#include "spinbench/composite.hpp"
#include "spinbench/metrics.hpp"

using namespace spinbench;
namespace {
constexpr double kPi = std::numbers::pi;

Mat pauli(int a) {
  Mat m(2, 2);
  if (a == 1) m << 0, 1, 1, 0;
  if (a == 2) m << 0, cplx(0, -1), cplx(0, 1), 0;
  if (a == 3) m << 1, 0, 0, -1;
  return m;
}
}  // namespace

TEST_CASE("ideal rotations match the closed forms") {
  RotationSpec rx{0.0, kPi, false, {1, 0, 0}};
  CHECK((ideal_rotation(rx) + cplx(0, 1) * pauli(1)).norm() < 1e-14);

  RotationSpec ry{kPi / 2, kPi / 2, false, {1, 0, 0}};
  Mat expect(2, 2);
  double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
  expect << c, -s, s, c;
  CHECK((ideal_rotation(ry) - expect).norm() < 1e-14);

  // Explicit z axis.
  RotationSpec rz;
  rz.has_axis3 = true;
  rz.axis3 = {0, 0, 1};
  rz.angle = kPi / 2;
  Mat z = ideal_rotation(rz);
  CHECK(std::abs(z(0, 0) - std::exp(cplx(0, -kPi / 4))) < 1e-14);
  CHECK(std::abs(z(0, 1)) < 1e-14);
}

TEST_CASE("error models perturb the generator as documented") {
  RotationSpec rx{0.0, kPi / 2, false, {1, 0, 0}};

  // amplitude_linear: theta -> theta (1 + eps)
  Mat u = apply_error(rx, {ErrorKind::amplitude_linear, 0.2});
  RotationSpec scaled = rx;
  scaled.angle = kPi / 2 * 1.2;
  CHECK((u - ideal_rotation(scaled)).norm() < 1e-13);

  // phase_offset: axis azimuth shifted by eps
  u = apply_error(rx, {ErrorKind::phase_offset, 0.3});
  RotationSpec turned = rx;
  turned.axis_phase = 0.3;
  CHECK((u - ideal_rotation(turned)).norm() < 1e-13);

  // resonance_offset: generator theta (n + eps z): angle scales by sqrt(1+eps^2)
  const double eps = 0.5;
  u = apply_error(rx, {ErrorKind::resonance_offset, eps});
  Mat gen = 0.5 * (pauli(1) + eps * pauli(3));
  Mat expect = expm_i_hermitian(gen, kPi / 2);
  CHECK((u - expect).norm() < 1e-13);
  // Rotation angle factor sqrt(1 + eps^2) = sqrt(5)/2 at eps = 1/2.
  double half_angle = std::acos(std::min(1.0, std::abs(u.trace()) / 2.0));
  CHECK(2 * half_angle == doctest::Approx(kPi / 2 * std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("library sequences reduce to the ideal rotation at zero error") {
  struct Case { const char* name; double theta; RotationSpec target; };
  std::vector<Case> cases = {
      {"bb1", kPi / 2, {0.0, kPi / 2, false, {1, 0, 0}}},
      {"bb1", kPi, {0.0, kPi, false, {1, 0, 0}}},
      {"sym_180", 0.0, {kPi / 2, kPi, false, {1, 0, 0}}},
      {"length_comp_180", 0.0, {0.0, kPi, false, {1, 0, 0}}},
      {"offres_y", 0.0, {kPi / 2, kPi / 2, false, {1, 0, 0}}},
  };
  for (const auto& cs : cases) {
    auto seq = composite_library(cs.name, cs.theta);
    Mat u = compose_erroneous(seq, {ErrorKind::amplitude_linear, 0.0});
    CHECK(phase_aligned_distance(ideal_rotation(cs.target), u) < 1e-12);
  }
}

TEST_CASE("composition order is right to left") {
  // [Rz-ish..] use two non-commuting rotations to pin the order:
  // list {A, B} must compose to A * B (B acts first).
  RotationSpec a{0.0, kPi / 2, false, {1, 0, 0}};       // x90
  RotationSpec b{kPi / 2, kPi / 2, false, {1, 0, 0}};   // y90
  Mat u = compose_erroneous({a, b}, {ErrorKind::amplitude_linear, 0.0});
  CHECK((u - ideal_rotation(a) * ideal_rotation(b)).norm() < 1e-13);
}

TEST_CASE("BB1 flattens amplitude errors relative to a plain pulse") {
  const double theta = kPi / 2;
  auto bb1 = composite_library("bb1", theta);
  std::vector<RotationSpec> plain = {{0.0, theta, false, {1, 0, 0}}};
  Mat target = ideal_rotation(plain[0]);
  for (double eps : {0.02, 0.05, 0.1}) {
    ErrorModel err{ErrorKind::amplitude_linear, eps};
    double f_bb1 = avg_gate_fidelity(Channel::from_unitary(compose_erroneous(bb1, err)), target);
    double f_plain =
        avg_gate_fidelity(Channel::from_unitary(compose_erroneous(plain, err)), target);
    CHECK(f_bb1 > f_plain);
    CHECK(f_bb1 > 1 - 1e-5);
  }
}

TEST_CASE("fidelity sweep is symmetric for a plain pulse amplitude error") {
  std::vector<RotationSpec> plain = {{0.0, kPi, false, {1, 0, 0}}};
  Mat target = ideal_rotation(plain[0]);
  std::vector<double> grid = {-0.2, -0.1, 0.0, 0.1, 0.2};
  auto sweep = fidelity_sweep(plain, target, ErrorKind::amplitude_linear, grid);
  REQUIRE(sweep.size() == 5);
  CHECK(sweep[2].avg_gate_fidelity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sweep[0].avg_gate_fidelity == doctest::Approx(sweep[4].avg_gate_fidelity).epsilon(1e-12));
  CHECK(sweep[1].avg_gate_fidelity == doctest::Approx(sweep[3].avg_gate_fidelity).epsilon(1e-12));
  // Known law: F = (2 + cos(eps pi)) / 3 for a 180 with amplitude error.
  CHECK(sweep[4].avg_gate_fidelity ==
        doctest::Approx((2 + std::cos(0.2 * kPi)) / 3.0).epsilon(1e-12));
}

TEST_CASE("unknown library name throws") {
  CHECK_THROWS_AS(composite_library("nope"), std::invalid_argument);
}
