#ifndef CLOCKDIL_DILATION_HPP
#define CLOCKDIL_DILATION_HPP

#include <string>
#include <vector>

#include "clockdil/operator_algebra.hpp"
#include "clockdil/units.hpp"

namespace clockdil {

// Closed-form (non-oscillating approximation) results for one channel.
struct DilationReport {
  double I1_qtm = 0.0;          // s
  double I1_cls = 0.0;          // s
  double I2_qtm = 0.0;          // s^2
  double I2_cls = 0.0;          // s^2
  double Delta1_coh = 0.0;      // s
  double Delta2_qtm_sq = 0.0;   // s^2
  double Delta2_cls_sq = 0.0;   // s^2
  double Delta2_cq_sq = 0.0;    // s^2 (= qtm + cls)
  double relative_discrepancy = 0.0; // Delta1_coh / T
  NoiseChannel channel{};
  std::vector<std::string> warnings;
};

DilationReport free_report(const LatticeDerived& derived, double alpha0, double theta,
                           double phi, double T);
DilationReport amplitude_report(const LatticeDerived& derived, double alpha0, double theta,
                                double phi, double T, double gamma_a);
DilationReport phase_report(const LatticeDerived& derived, double alpha0, double theta,
                            double phi, double T, double gamma_p);
DilationReport diffusion_report(const LatticeDerived& derived, double alpha0, double theta,
                                double phi, double T, double gamma_d);
DilationReport channel_report(const NoiseChannel& channel, const LatticeDerived& derived,
                              double alpha0, double theta, double phi, double T);

// <p_z^2(t)/(m^2 c^2)>: classical-mixture value, or the quantum value which
// differs by the interference shift -8 alpha0^2 C_k C_i/(1+C_i).
double kinetic_expectation(StateKind kind, const LatticeDerived& derived, double alpha0,
                           double theta, double phi, double varphi, double t);

// Free-evolution Delta1 with the oscillating terms restored (real α).
struct OscillatingDelta1 {
  double full = 0.0;       // Delta1_coh including oscillating terms, s
  double correction = 0.0; // oscillating-only part δ1, s
  double bound = 0.0;      // analytic upper bound on |correction|, s
};

OscillatingDelta1 oscillating_delta1(const LatticeDerived& derived, double alpha0,
                                     double theta, double phi, double T);

// Stable (1-e^{-x})/x style factors, series-evaluated near x = 0.
double expm1_factor1(double x); // (1 - e^{-x}) / x
double expm1_factor3(double x); // (1 - e^{-x} - x e^{-x}) / x^2

} // namespace clockdil

#endif
