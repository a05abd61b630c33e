#include <doctest.h>

#include <numbers>

#include "spinbench/shapes.hpp"

using namespace spinbench;
namespace {
constexpr double kPi = std::numbers::pi;

double signed_area(const std::vector<PulseSegment>& segs) {
  double a = 0;
  for (const auto& s : segs)
    a += 2 * kPi * s.amp_hz * s.duration_s * std::cos(s.phase_rad - kPi);
  return a;
}
}  // namespace

TEST_CASE("rectangular shape is flat and area-normalized") {
  ShapeSpec spec;
  spec.family = ShapeFamily::rectangular;
  spec.n_slices = 64;
  auto segs = sample_shape(spec, 1e-3, kPi);
  REQUIRE(segs.size() == 64);
  for (const auto& s : segs) {
    CHECK(s.amp_hz == doctest::Approx(segs[0].amp_hz).epsilon(1e-14));
    CHECK(s.duration_s == doctest::Approx(1e-3 / 64).epsilon(1e-14));
    CHECK(s.phase_rad == doctest::Approx(kPi).epsilon(1e-14));
  }
  CHECK(signed_area(segs) == doctest::Approx(kPi).epsilon(1e-12));
  // 180 degrees in 1 ms needs 500 Hz.
  CHECK(segs[0].amp_hz == doctest::Approx(500.0).epsilon(1e-12));
}

TEST_CASE("gaussian shape is symmetric, peaked at the center, normalized") {
  ShapeSpec spec;
  spec.family = ShapeFamily::gaussian;
  spec.n_slices = 100;
  auto segs = sample_shape(spec, 2e-3, kPi / 2);
  CHECK(signed_area(segs) == doctest::Approx(kPi / 2).epsilon(1e-12));
  for (int k = 0; k < 50; ++k)
    CHECK(segs[k].amp_hz == doctest::Approx(segs[99 - k].amp_hz).epsilon(1e-12));
  double peak = 0;
  for (const auto& s : segs) peak = std::max(peak, s.amp_hz);
  CHECK(segs[49].amp_hz == doctest::Approx(peak).epsilon(1e-12));
  CHECK(segs[0].amp_hz < 0.05 * peak);  // 3-sigma truncation tail
}

TEST_CASE("hermite 180 has negative lobes emitted as pi phase flips") {
  ShapeSpec spec;
  spec.family = ShapeFamily::hermite_180;
  spec.n_slices = 128;
  auto segs = sample_shape(spec, 1e-3, kPi);
  CHECK(signed_area(segs) == doctest::Approx(kPi).epsilon(1e-12));
  bool has_flip = false;
  for (const auto& s : segs) {
    CHECK(s.amp_hz >= 0.0);
    if (std::abs(std::remainder(s.phase_rad - kPi, 2 * kPi)) > 1.0) has_flip = true;
  }
  CHECK(has_flip);  // (1 - 1.4 x^2) e^{-x^2} goes negative in the wings
}

TEST_CASE("fourier series shape evaluates its coefficients") {
  ShapeSpec spec;
  spec.family = ShapeFamily::fourier_series;
  spec.params = {{"a0", 1.0}, {"a1", 0.5}, {"b1", -0.25}};
  spec.n_slices = 4;
  auto segs = sample_shape(spec, 1e-3, kPi / 2);
  // Midpoint u values 1/8, 3/8, 5/8, 7/8 of 1 + 0.5 cos(2 pi u) - 0.25 sin(2 pi u).
  std::vector<double> expect;
  for (int k = 0; k < 4; ++k) {
    double u = (k + 0.5) / 4;
    expect.push_back(1 + 0.5 * std::cos(2 * kPi * u) - 0.25 * std::sin(2 * kPi * u));
  }
  double scale = segs[0].amp_hz / expect[0];
  for (int k = 0; k < 4; ++k)
    CHECK(segs[k].amp_hz == doctest::Approx(scale * expect[k]).epsilon(1e-10));
}

TEST_CASE("zero-area shape is rejected") {
  ShapeSpec spec;
  spec.family = ShapeFamily::fourier_series;
  spec.params = {{"a0", 0.0}, {"a1", 1.0}};  // integrates to ~0 over a period
  spec.n_slices = 64;
  CHECK_THROWS_AS(sample_shape(spec, 1e-3, kPi), std::invalid_argument);
}

TEST_CASE("rect pulse response: full inversion on resonance only") {
  ShapeSpec spec;
  spec.family = ShapeFamily::rectangular;
  spec.n_slices = 1;
  std::vector<double> grid;
  for (int k = -20; k <= 20; ++k) grid.push_back(100.0 * k);
  auto resp = frequency_response(spec, 1e-3, kPi, grid);
  REQUIRE(resp.size() == 41);
  for (const auto& p : resp) {
    if (p.detuning_hz == 0.0)
      CHECK(p.mz == doctest::Approx(-1.0).epsilon(1e-12));
    else
      CHECK(p.mz > -1.0 + 1e-6);
  }
}

TEST_CASE("off-resonance effective rotation angle scales as sqrt(1 + (d/a)^2)") {
  ShapeSpec spec;
  spec.family = ShapeFamily::rectangular;
  spec.n_slices = 1;
  const double amp = 250.0;                 // 90 deg in 1 ms
  auto resp = frequency_response(spec, 1e-3, kPi / 2, {0.0, 125.0});
  // Effective angle from the tipped cone: cos(theta_eff) relation is messy;
  // instead verify via mz of the on/off resonance points against the exact
  // Rodrigues formula for a tilted axis.
  double d = 125.0 / amp;                   // Delta/omega1 = 0.5
  double theta_eff = (kPi / 2) * std::sqrt(1 + d * d);
  // Axis n = (1, 0, d)/sqrt(1+d^2) acting on m0 = z:
  double nz = d / std::sqrt(1 + d * d);
  double mz_expect = nz * nz + (1 - nz * nz) * std::cos(theta_eff);
  CHECK(resp[1].mz == doctest::Approx(mz_expect).epsilon(1e-10));
  CHECK(resp[0].mz == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("phase ramping shifts the excitation profile by the ramp frequency") {
  ShapeSpec spec;
  spec.family = ShapeFamily::gaussian;
  spec.n_slices = 1024;
  const double shift = 400.0;
  auto base = sample_shape(spec, 2e-3, kPi);
  auto ramped = phase_ramp(base, shift);

  std::vector<double> grid{-300.0, 0.0, 150.0, 500.0};
  std::vector<double> shifted;
  for (double g : grid) shifted.push_back(g + shift);
  auto r0 = frequency_response(base, grid);
  auto r1 = frequency_response(ramped, shifted);
  // The equivalence is exact only in the continuous limit; with piecewise
  // constant phases the mismatch is second order in the slice width.
  for (size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(r1[k].mz - r0[k].mz) < 2e-5);
    CHECK(std::abs(r1[k].mxy() - r0[k].mxy()) < 2e-5);
  }
  spec.n_slices = 4096;
  auto base4 = sample_shape(spec, 2e-3, kPi);
  auto r0b = frequency_response(base4, grid);
  auto r1b = frequency_response(phase_ramp(base4, shift), shifted);
  for (size_t k = 0; k < grid.size(); ++k)
    CHECK(std::abs(r1b[k].mz - r0b[k].mz) < std::abs(r1[k].mz - r0[k].mz) / 4 + 1e-9);
}

TEST_CASE("phase ramp requires equal slice durations") {
  std::vector<PulseSegment> segs(2);
  segs[0].duration_s = 1e-5;
  segs[1].duration_s = 2e-5;
  CHECK_THROWS_AS(phase_ramp(segs, 100.0), std::invalid_argument);
}

TEST_CASE("Bloch-Siegert shift value and validity flag") {
  auto bs = bloch_siegert_shift(500.0, 3273.0);
  CHECK(bs.shift_hz == doctest::Approx(500.0 * 500.0 / (2 * 3273.0)).epsilon(1e-12));
  CHECK(bs.shift_hz == doctest::Approx(38.19).epsilon(1e-3));
  CHECK(!bs.validity_warning);
  CHECK(bloch_siegert_shift(500.0, 400.0).validity_warning);
  CHECK(bloch_siegert_shift(500.0, -3273.0).shift_hz < 0);
}

TEST_CASE("unwind_coupling returns zero delay when J vanishes") {
  SpinSystem sys;
  sys.n = 2;
  sys.offsets_hz = {0.0, 0.0};
  sys.j_hz = Eigen::MatrixXd::Zero(2, 2);
  ShapeSpec spec;
  spec.family = ShapeFamily::rectangular;
  spec.n_slices = 1;
  auto segs = sample_shape(spec, 1e-3, kPi / 2);
  for (auto& s : segs) s.targets = {0, 1};
  auto r = unwind_coupling(segs, sys);
  CHECK(r.tau_s == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unwind_coupling improves fidelity for a coupled soft pulse") {
  SpinSystem sys;
  sys.n = 2;
  sys.offsets_hz = {0.0, 0.0};
  sys.j_hz = Eigen::MatrixXd::Zero(2, 2);
  sys.j_hz(0, 1) = sys.j_hz(1, 0) = 100.0;
  ShapeSpec spec;
  spec.family = ShapeFamily::gaussian;
  spec.n_slices = 64;
  auto segs = sample_shape(spec, 4e-3, kPi / 2);
  for (auto& s : segs) s.targets = {0};
  auto sym = unwind_coupling(segs, sys);
  auto one = unwind_coupling(segs, sys, true);
  CHECK(sym.tau_s > 0);
  CHECK(sym.fidelity > one.fidelity - 1e-12);
  CHECK(sym.fidelity > 0.99);
}
