#include "clockdil/clock_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clockdil {

FringeModel make_fringe(const DilationReport& report, StateKind kind, double omega0,
                        double T) {
  if (!(T > 0.0)) throw std::domain_error("interrogation time must be positive");
  const double I1 = kind == StateKind::Quantum ? report.I1_qtm : report.I1_cls;
  const double I2 = kind == StateKind::Quantum ? report.I2_qtm : report.I2_cls;
  FringeModel m;
  m.omega0 = omega0;
  m.T = T;
  m.report = report;
  m.omega0_shifted = omega0 * (T + I1) / T;
  const double loss = 0.5 * omega0 * omega0 * (I2 - I1 * I1);
  m.contrast = 1.0 - loss;
  if (loss > 0.5) {
    m.warnings.push_back("contrast correction exceeds 0.5; outside second-order validity");
  }
  return m;
}

double fringe_probability(double omega, const FringeModel& model) {
  const double p =
      0.5 * (1.0 + model.contrast * std::cos((model.omega0_shifted - omega) * model.T));
  return std::clamp(p, 0.0, 1.0);
}

DetectabilityResult detectability(const DilationReport& report, double omega0, double T,
                                  double kappa) {
  if (!(T > 0.0)) throw std::domain_error("interrogation time must be positive");
  if (!(kappa > 0.0)) throw std::domain_error("kappa must be positive");
  DetectabilityResult out;
  out.discrepancy = report.Delta1_coh / T * omega0;
  out.sigma =
      kappa * std::sqrt(2.0 / (T * T) + omega0 * omega0 * report.Delta2_cq_sq / (T * T));
  out.ratio = std::abs(out.discrepancy) / out.sigma;
  out.detectable = out.ratio >= 1.0;
  return out;
}

ClockMoments idealized_clock_moments(double I1, std::complex<double> I2, double I2p,
                                     double mean0, double var0, double mixed0, double t) {
  ClockMoments m;
  m.mean = mean0 + t + I1;
  m.variance = var0 + I2.real() - I1 * I1 + (I2.imag() + 2.0 * I2p) * mixed0;
  return m;
}

double state_independent_sigma(const DilationReport& report) {
  return std::sqrt(report.Delta2_qtm_sq + report.Delta2_cls_sq);
}

double discrepancy_margin(const DilationReport& report) {
  return std::abs(report.Delta1_coh) - state_independent_sigma(report);
}

double classical_dilation_integral(double zbar0, double pbar0, double sigma_p_sq,
                                   const LatticeDerived& derived, double T,
                                   bool augment_variance) {
  if (T < 0.0) throw std::domain_error("T must be non-negative");
  const double w = derived.omega_z;
  const double m = derived.mass;
  const double c2 = derived.consts.c * derived.consts.c;
  const double g = derived.consts.g;

  // z(t) = A cos wt + B sin wt about the gravity-shifted minimum,
  // p(t) = m w (-A sin wt + B cos wt).
  const double A = zbar0;
  const double B = pbar0 / (m * w);
  const double sT = std::sin(w * T), cT = std::cos(w * T);
  const double s2T = std::sin(2.0 * w * T), c2T = std::cos(2.0 * w * T);

  const double grav = g / c2 * (A * sT / w - B * (cT - 1.0) / w) - derived.C_r * T;
  const double p_sq_int =
      m * m * w * w *
      (A * A * (T / 2.0 - s2T / (4.0 * w)) + B * B * (T / 2.0 + s2T / (4.0 * w)) +
       A * B * (c2T - 1.0) / (2.0 * w));
  double I0 = grav - p_sq_int / (2.0 * m * m * c2);
  if (augment_variance) I0 -= sigma_p_sq * T / (2.0 * m * m * c2);
  return I0;
}

double classical_proper_time(double zbar0, double pbar0, double sigma_p_sq,
                             const LatticeDerived& derived, double T,
                             bool augment_variance) {
  return T + classical_dilation_integral(zbar0, pbar0, sigma_p_sq, derived, T,
                                         augment_variance);
}

} // namespace clockdil
