#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "clockdil/dilation.hpp"
#include "clockdil/units.hpp"

using namespace clockdil;

namespace {
constexpr double pi = 3.14159265358979323846;

LatticeDerived toy() { return dimensionless_lattice(1.0, 0.3, 0.2, 0.25, 0.15); }
} // namespace

TEST_CASE("free report frozen values") {
  // K = 0.25, R = 0.2, alpha0 = 0.8, theta = pi/4, phi = pi, T = 20,
  // evaluated independently at extended precision.
  const DilationReport r = free_report(toy(), 0.8, pi / 4.0, pi, 20.0);
  CHECK(r.I1_qtm == doctest::Approx(-20.32944780670093).epsilon(1e-14));
  CHECK(r.I1_cls == doctest::Approx(-15.4).epsilon(1e-14));
  CHECK(r.I2_qtm == doctest::Approx(439.18453858762605).epsilon(1e-14));
  CHECK(r.I2_cls == doctest::Approx(301.16).epsilon(1e-14));
  CHECK(r.Delta1_coh == doctest::Approx(-4.9294478067009303).epsilon(1e-14));
  CHECK(r.Delta2_qtm_sq == doctest::Approx(25.898090462248783).epsilon(1e-14));
  CHECK(r.Delta2_cls_sq == doctest::Approx(64.0).epsilon(1e-14));
  CHECK(r.Delta2_cq_sq == r.Delta2_qtm_sq + r.Delta2_cls_sq);
  CHECK(r.relative_discrepancy == doctest::Approx(r.Delta1_coh / 20.0).epsilon(1e-15));
}

TEST_CASE("mg and sr baselines") {
  {
    const LatticeDerived d = derive_lattice(atom_preset("mg24"), {300.0, 1.0});
    const double a0 = displacement_to_alpha(10e-9, d);
    const DilationReport r = free_report(d, a0, pi / 4.0, pi, 1.0);
    CHECK(r.Delta1_coh == doctest::Approx(-1.0361768861887482e-19).epsilon(1e-13));
    CHECK(std::abs(r.relative_discrepancy) > 5e-20);
    CHECK(std::abs(r.relative_discrepancy) < 2e-19);
  }
  {
    const LatticeDerived d = derive_lattice(atom_preset("sr87"), {300.0, 1.0});
    const double a0 = displacement_to_alpha(10e-9, d);
    const DilationReport r = free_report(d, a0, pi / 4.0, pi, 1.0);
    CHECK(r.Delta1_coh == doctest::Approx(-2.910888087219149e-21).epsilon(1e-13));
  }
}

TEST_CASE("channel limits collapse to free evolution") {
  const auto d = toy();
  const DilationReport base = free_report(d, 0.6, pi / 3.0, 0.4, 15.0);
  const DilationReport amp = amplitude_report(d, 0.6, pi / 3.0, 0.4, 15.0, 0.0);
  const DilationReport dif = diffusion_report(d, 0.6, pi / 3.0, 0.4, 15.0, 0.0);
  CHECK(amp.I1_qtm == base.I1_qtm);
  CHECK(amp.I2_cls == base.I2_cls);
  CHECK(amp.Delta2_cq_sq == base.Delta2_cq_sq);
  CHECK(dif.I1_qtm == base.I1_qtm);
  CHECK(dif.I2_qtm == base.I2_qtm);
  CHECK(dif.Delta1_coh == base.Delta1_coh);
}

TEST_CASE("phase damping is neutral") {
  const auto d = toy();
  const DilationReport base = free_report(d, 0.7, pi / 4.0, pi, 10.0);
  for (double g : {0.0, 1.0, 1e3}) {
    const DilationReport r = phase_report(d, 0.7, pi / 4.0, pi, 10.0, g);
    CHECK(r.I1_qtm == base.I1_qtm);
    CHECK(r.I1_cls == base.I1_cls);
    CHECK(r.I2_qtm == base.I2_qtm);
    CHECK(r.I2_cls == base.I2_cls);
    CHECK(r.Delta1_coh == base.Delta1_coh);
    CHECK(r.Delta2_qtm_sq == base.Delta2_qtm_sq);
    CHECK(r.Delta2_cls_sq == base.Delta2_cls_sq);
  }
}

TEST_CASE("amplitude damping scaling identity") {
  const auto d = toy();
  const double T = 1.0;
  const DilationReport base = free_report(d, 0.5, pi / 4.0, pi, T);
  const DilationReport damped = amplitude_report(d, 0.5, pi / 4.0, pi, T, 1.0);
  CHECK(damped.Delta1_coh / base.Delta1_coh ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("diffusion adds variance") {
  const auto d = toy();
  const DilationReport base = free_report(d, 0.5, pi / 4.0, pi, 10.0);
  const DilationReport dif = diffusion_report(d, 0.5, pi / 4.0, pi, 10.0, 0.01);
  CHECK(dif.Delta1_coh == base.Delta1_coh); // discrepancy untouched
  CHECK(dif.Delta2_qtm_sq > base.Delta2_qtm_sq);
  CHECK(dif.Delta2_cls_sq > base.Delta2_cls_sq);
  CHECK(dif.I1_qtm < base.I1_qtm); // heating increases dilation
}

TEST_CASE("stable exponential factors") {
  CHECK(expm1_factor1(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(expm1_factor3(1.0) ==
        doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-14));
  // leading behaviour near zero
  for (double x : {9e-7, 1.1e-6}) {
    CHECK(expm1_factor1(x) == doctest::Approx(1.0 - x / 2.0 + x * x / 6.0).epsilon(1e-12));
    CHECK(expm1_factor3(x) == doctest::Approx(0.5 - x / 3.0 + x * x / 8.0).epsilon(1e-12));
  }
  // series and closed form agree at the crossover
  CHECK(expm1_factor3(0.49) ==
        doctest::Approx((1.0 - std::exp(-0.49) * 1.49) / (0.49 * 0.49)).epsilon(1e-13));
  CHECK(expm1_factor3(0.51) ==
        doctest::Approx((1.0 - std::exp(-0.51) * 1.51) / (0.51 * 0.51)).epsilon(1e-13));
  CHECK(expm1_factor1(0.0) == 1.0);
  CHECK(expm1_factor3(0.0) == 0.5);
}

TEST_CASE("discrepancy sign follows the interference weight") {
  const auto d = toy();
  const DilationReport neg = free_report(d, 0.5, pi / 4.0, pi, 5.0); // C < 0
  const DilationReport pos = free_report(d, 0.5, pi / 4.0, 0.0, 5.0); // C > 0
  CHECK(neg.Delta1_coh < 0.0);
  CHECK(pos.Delta1_coh > 0.0);
}

TEST_CASE("kinetic expectation") {
  const auto d = toy();
  const double a0 = 0.6, th = pi / 4.0, ph = pi, vp = 0.3;
  const double K = d.C_k;
  SuperposedCoherentState s{a0, vp, th, ph, StateKind::Quantum};
  const double C = coherence_factor(s);
  for (double t : {0.0, 0.4, 2.0}) {
    const double cls = kinetic_expectation(StateKind::Classical, d, a0, th, ph, vp, t);
    const double qtm = kinetic_expectation(StateKind::Quantum, d, a0, th, ph, vp, t);
    CHECK(cls == doctest::Approx(4.0 * K *
                                 (a0 * a0 * std::cos(2.0 * d.omega_z * t - 2.0 * vp) +
                                  a0 * a0 + 0.5))
                     .epsilon(1e-13));
    CHECK(qtm - cls ==
          doctest::Approx(-8.0 * a0 * a0 * K * C / (1.0 + C)).epsilon(1e-12));
    CHECK(qtm > 0.0);
  }
  // period pi/omega_z
  CHECK(kinetic_expectation(StateKind::Classical, d, a0, th, ph, vp, 0.2) ==
        doctest::Approx(kinetic_expectation(StateKind::Classical, d, a0, th, ph, vp,
                                            0.2 + pi / d.omega_z))
            .epsilon(1e-12));
}

TEST_CASE("oscillating correction and bound") {
  const LatticeDerived d = derive_lattice(atom_preset("mg24"), {300.0, 1.0});
  const double a0 = displacement_to_alpha(10e-9, d);
  const OscillatingDelta1 o = oscillating_delta1(d, a0, pi / 8.0, pi / 2.0, 1.0);
  CHECK(o.correction == doctest::Approx(-1.784111288e-32).epsilon(1e-8));
  CHECK(o.bound == doctest::Approx(1.366986969e-31).epsilon(1e-8));
  CHECK(std::abs(o.correction) <= o.bound);

  // bound dominates the correction across random parameters
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double th = u(rng) * pi / 2.0, ph = u(rng) * 2.0 * pi, T = 0.1 + u(rng);
    const double a = 0.1 + 0.7 * u(rng);
    SuperposedCoherentState s{a, 0.0, th, ph, StateKind::Quantum};
    if (1.0 + coherence_factor(s) < 1e-3) continue;
    const OscillatingDelta1 r = oscillating_delta1(d, a, th, ph, T);
    CHECK(std::abs(r.correction) <= r.bound * (1.0 + 1e-12));
    CHECK(r.full == doctest::Approx(4.0 * d.C_k * coherence_factor(s) /
                                        (1.0 + coherence_factor(s)) * a * a * T +
                                    r.correction)
                        .epsilon(1e-12));
  }
}

TEST_CASE("validation and warnings") {
  const auto d = toy();
  CHECK_THROWS_AS((void)free_report(d, 0.5, pi / 4.0, pi, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)amplitude_report(d, 0.5, pi / 4.0, pi, 1.0, -0.1),
                  std::domain_error);
  const DilationReport fast = amplitude_report(d, 0.5, pi / 4.0, pi, 1.0, 0.5);
  CHECK(!fast.warnings.empty()); // rate within 100x of omega_z = 1
  const LatticeDerived lab = derive_lattice(atom_preset("mg24"), {300.0, 1.0});
  const DilationReport slow = amplitude_report(lab, 0.5, pi / 4.0, pi, 1.0, 1.0);
  CHECK(slow.warnings.empty());
}

TEST_CASE("channel dispatch") {
  const auto d = toy();
  const DilationReport a = channel_report(NoiseChannel::amplitude(0.1), d, 0.5, pi / 4.0,
                                          pi, 5.0);
  const DilationReport b = amplitude_report(d, 0.5, pi / 4.0, pi, 5.0, 0.1);
  CHECK(a.I1_qtm == b.I1_qtm);
  CHECK(a.Delta2_cq_sq == b.Delta2_cq_sq);
}
