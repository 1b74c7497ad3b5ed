#ifndef CLOCKDIL_CLOCK_MODEL_HPP
#define CLOCKDIL_CLOCK_MODEL_HPP

#include <complex>
#include <string>
#include <vector>

#include "clockdil/dilation.hpp"
#include "clockdil/units.hpp"

namespace clockdil {

// Ramsey fringe with the trap-induced replacements: the effective transition
// frequency picks up I1 and the contrast is reduced by the accumulated
// dilation variance.
struct FringeModel {
  double omega0 = 0.0;         // bare transition, rad/s
  double T = 0.0;              // s
  double omega0_shifted = 0.0; // rad/s, omega0_shifted * T = omega0 * (T + I1)
  double contrast = 1.0;       // p~
  DilationReport report;
  std::vector<std::string> warnings;
};

FringeModel make_fringe(const DilationReport& report, StateKind kind, double omega0,
                        double T);

// 1/2 (1 + p~ cos((omega0_shifted - omega) T)), clamped to [0, 1].
double fringe_probability(double omega, const FringeModel& model);

struct DetectabilityResult {
  double discrepancy = 0.0; // signed quantum/classical frequency discrepancy, rad/s
  double sigma = 0.0;       // kappa * sqrt(2/T^2 + omega0^2 Delta2_cq^2 / T^2), rad/s
  double ratio = 0.0;
  bool detectable = false;
};

DetectabilityResult detectability(const DilationReport& report, double omega0, double T,
                                  double kappa = 1.0);

struct ClockMoments {
  double mean = 0.0;     // s
  double variance = 0.0; // s^2
};

// Idealized-clock readout moments: mean(t) = mean(0) + t + I1 and
// var(t) = var(0) + Re I2 - I1^2 + (Im I2 + 2 I2') * mixed0, where mixed0 is
// the initial symmetrized clock-energy cross moment.
ClockMoments idealized_clock_moments(double I1, std::complex<double> I2, double I2p,
                                     double mean0, double var0, double mixed0, double t);

// Clock-state-independent part of the quantum/classical mean spread,
// sqrt of Delta2_qtm^2 + Delta2_cls^2 (seconds).
double state_independent_sigma(const DilationReport& report);

// |Delta1_coh| - state_independent_sigma; positive means the discrepancy
// stands above the intrinsic spread.
double discrepancy_margin(const DilationReport& report);

// I0: accumulated dilation of a classical point particle on the harmonic
// trajectory with initial displacement zbar0 (from the gravity-shifted
// minimum) and momentum pbar0. augment_variance adds the
// -sigma_p^2/(2 m^2 c^2) quantum-variance correction to the kinetic term.
double classical_dilation_integral(double zbar0, double pbar0, double sigma_p_sq,
                                   const LatticeDerived& derived, double T,
                                   bool augment_variance);

// tau = T + I0. At laboratory scale I0/T ~ 1e-19 underflows the sum; use
// classical_dilation_integral when the offset itself is the observable.
double classical_proper_time(double zbar0, double pbar0, double sigma_p_sq,
                             const LatticeDerived& derived, double T,
                             bool augment_variance);

} // namespace clockdil

#endif
