#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "clockdil/clock_model.hpp"
#include "clockdil/integral_engine.hpp"

using namespace clockdil;

namespace {
constexpr double pi = 3.14159265358979323846;

LatticeDerived mg() { return derive_lattice(atom_preset("mg24"), {300.0, 1.0}); }
} // namespace

TEST_CASE("fringe basics") {
  DilationReport r; // all-zero integrals
  FringeModel m = make_fringe(r, StateKind::Quantum, 4.11e15, 1.0);
  CHECK(m.contrast == 1.0);
  CHECK(fringe_probability(m.omega0_shifted, m) == doctest::Approx(1.0));
  m.contrast = 0.0;
  for (double w : {m.omega0_shifted, m.omega0_shifted + 1.0, m.omega0_shifted - 17.0}) {
    CHECK(fringe_probability(w, m) == doctest::Approx(0.5));
  }
}

TEST_CASE("fringe with a detectable dilation phase") {
  DilationReport r;
  r.I1_qtm = 1e-19;
  const double w0 = 4.11e15, T = 1.0;
  const FringeModel m = make_fringe(r, StateKind::Quantum, w0, T);
  CHECK(m.omega0_shifted * T == doctest::Approx(w0 * (T + 1e-19)).epsilon(1e-15));
  CHECK(fringe_probability(w0, m) ==
        doctest::Approx(0.5 * (1.0 + m.contrast * std::cos(4.11e-4))).epsilon(1e-12));
}

TEST_CASE("fringe symmetry about the shifted line") {
  const auto d = mg();
  const double a0 = displacement_to_alpha(10e-9, d);
  const DilationReport r = free_report(d, a0, pi / 4.0, pi, 1.0);
  const FringeModel m = make_fringe(r, StateKind::Quantum, 4.11e15, 1.0);
  for (double delta : {0.1, 1.0, 2.5}) {
    CHECK(fringe_probability(m.omega0_shifted + delta, m) ==
          doctest::Approx(fringe_probability(m.omega0_shifted - delta, m)).epsilon(1e-13));
  }
  CHECK(fringe_probability(m.omega0_shifted + 1e9, m) >= 0.0);
  CHECK(fringe_probability(m.omega0_shifted + 1e9, m) <= 1.0);
}

TEST_CASE("contrast difference equals the variance split") {
  const auto d = dimensionless_lattice(1.0, 0.3, 0.2, 0.25, 0.15);
  const double w0 = 1e-2; // keeps the second-order correction small
  for (const auto& ch : {NoiseChannel::free(), NoiseChannel::amplitude(0.03),
                         NoiseChannel::diffusion(0.03)}) {
    const DilationReport r = channel_report(ch, d, 0.7, pi / 4.0, pi, 10.0);
    const FringeModel q = make_fringe(r, StateKind::Quantum, w0, 10.0);
    const FringeModel c = make_fringe(r, StateKind::Classical, w0, 10.0);
    const double want = 0.5 * w0 * w0 * (r.Delta2_cls_sq - r.Delta2_qtm_sq);
    CHECK(q.contrast - c.contrast == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("contrast validity warning") {
  DilationReport r;
  r.I2_qtm = 1.0;
  const FringeModel m = make_fringe(r, StateKind::Quantum, 2.0, 1.0);
  CHECK(!m.warnings.empty());
}

TEST_CASE("detectability") {
  const auto d = mg();
  const double T = 1.0;
  const double w0 = atom_preset("mg24").clock_angular_frequency;
  const double a0 = displacement_to_alpha(10e-9, d);
  const DilationReport r = free_report(d, a0, pi / 4.0, pi, T);

  const DetectabilityResult base = detectability(r, w0, T);
  CHECK(base.ratio == doctest::Approx(3.0133806e-4).epsilon(1e-6));
  CHECK(!base.detectable);
  CHECK(base.discrepancy == doctest::Approx(r.Delta1_coh / T * w0).epsilon(1e-14));

  // kappa scales the noise floor linearly
  const DetectabilityResult tight = detectability(r, w0, T, 0.5);
  CHECK(tight.ratio == doctest::Approx(2.0 * base.ratio).epsilon(1e-12));

  DilationReport zero;
  const DetectabilityResult none = detectability(zero, w0, T);
  CHECK(none.ratio == 0.0);
  CHECK(!none.detectable);

  const auto sr = derive_lattice(atom_preset("sr87"), {300.0, 1.0});
  const double w0sr = atom_preset("sr87").clock_angular_frequency;
  const DilationReport rs =
      free_report(sr, displacement_to_alpha(10e-9, sr), pi / 4.0, pi, T);
  CHECK(!detectability(rs, w0sr, T).detectable);
}

TEST_CASE("idealized clock moments") {
  const ClockMoments none = idealized_clock_moments(0.0, 0.0, 0.0, 2.0, 0.3, 0.1, 5.0);
  CHECK(none.mean == 7.0);
  CHECK(none.variance == 0.3);

  const ClockMoments m =
      idealized_clock_moments(1e-3, cplx(5e-6, 2e-6), 1e-6, 0.0, 0.0, 0.5, 10.0);
  CHECK(m.mean == doctest::Approx(10.0 + 1e-3).epsilon(1e-15));
  CHECK(m.variance ==
        doctest::Approx(5e-6 - 1e-6 + (2e-6 + 2e-6) * 0.5).epsilon(1e-12));
}

TEST_CASE("mean discrepancy equals Delta1") {
  const auto d = mg();
  const double a0 = displacement_to_alpha(10e-9, d);
  const DilationReport r = free_report(d, a0, pi / 4.0, pi, 1.0);
  const ClockMoments q = idealized_clock_moments(r.I1_qtm, r.I2_qtm, 0.0, 0.0, 0.0, 0.0, 1.0);
  const ClockMoments c = idealized_clock_moments(r.I1_cls, r.I2_cls, 0.0, 0.0, 0.0, 0.0, 1.0);
  CHECK(q.mean - c.mean == doctest::Approx(r.Delta1_coh).epsilon(1e-12));
  CHECK(state_independent_sigma(r) ==
        std::sqrt(r.Delta2_qtm_sq + r.Delta2_cls_sq));
  CHECK(discrepancy_margin(r) ==
        std::abs(r.Delta1_coh) - state_independent_sigma(r));
}

TEST_CASE("classical dilation at the trap minimum") {
  const auto d = mg();
  const double T = 1.0;
  CHECK(classical_dilation_integral(0.0, 0.0, 0.0, d, T, false) ==
        doctest::Approx(-d.C_r * T).epsilon(1e-13));
  // variance augmentation with the ground-state momentum spread adds -C_k T
  const double sp2 = d.mass * d.consts.hbar * d.omega_z / 2.0;
  CHECK(classical_dilation_integral(0.0, 0.0, sp2, d, T, true) ==
        doctest::Approx(-d.C_r * T - d.C_k * T).epsilon(1e-13));
  CHECK(classical_proper_time(0.0, 0.0, 0.0, d, 2.5, false) ==
        doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("kinetic contribution scales as momentum squared") {
  const auto d = mg();
  const double T = 0.37;
  const double i0 = classical_dilation_integral(0.0, 0.0, 0.0, d, T, false);
  const double p = 1e-28;
  const double d1 = classical_dilation_integral(0.0, p, 0.0, d, T, false) - i0;
  const double d2 = classical_dilation_integral(0.0, 2.0 * p, 0.0, d, T, false) - i0;
  CHECK(d2 == doctest::Approx(4.0 * d1).epsilon(1e-10));
}

TEST_CASE("single coherent state recovers the quantum mean dilation") {
  const auto d = mg();
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a0 = 0.05 + 0.9 * u(rng);
    const double vp = 2.0 * pi * u(rng);
    const double T = 0.2 + u(rng);
    SuperposedCoherentState s{a0, vp, 0.0, 0.0, StateKind::Quantum};
    const cplx I1 = compute_I1(NoiseChannel::free(), d, s, T, true);

    const cplx alpha = s.alpha();
    const double zbar = std::sqrt(2.0) * d.z_s * alpha.real();
    const double pbar =
        std::sqrt(2.0 * d.mass * d.consts.hbar * d.omega_z) * alpha.imag();
    const double sp2 = d.mass * d.consts.hbar * d.omega_z / 2.0;
    const double i0 = classical_dilation_integral(zbar, pbar, sp2, d, T, true);
    CHECK(std::abs(i0 - I1.real()) < 1e-10 * std::abs(I1.real()));
  }
}
