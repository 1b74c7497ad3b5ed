#include "clockdil/dilation.hpp"

#include <cmath>
#include <stdexcept>

namespace clockdil {

namespace {

struct StateMoments {
  double n_qtm, n_cls;   // <a†a>
  double q_qtm, q_cls;   // <a†²a²>
  double C;              // C_i
};

StateMoments moments(double alpha0, double theta, double phi) {
  SuperposedCoherentState s{alpha0, 0.0, theta, phi, StateKind::Quantum};
  validate_state(s);
  const double C = coherence_factor(s);
  const double a2 = alpha0 * alpha0;
  StateMoments m;
  m.C = C;
  m.n_cls = a2;
  m.n_qtm = (1.0 - C) / (1.0 + C) * a2;
  m.q_cls = a2 * a2;
  m.q_qtm = a2 * a2;
  return m;
}

void regime_warning(DilationReport& r, const LatticeDerived& d, double gamma) {
  if (gamma > 0.0 && d.omega_z / gamma < 100.0) {
    r.warnings.push_back("channel rate within 100x of omega_z; the non-oscillating "
                         "approximation is degraded");
  }
}

// Shared assembly from the exponential factors E1 = ∫e^{-Γt}, E2 = E1²,
// E3 = ∫∫e^{-Γ t2}, which cover free (Γ=0), phase (same as free) and amplitude.
DilationReport assemble(const LatticeDerived& d, const StateMoments& sm, double T,
                        double E1, double E2, double E3, const NoiseChannel& ch) {
  const double K = d.C_k, R = d.C_r;
  const double T2 = T * T;
  DilationReport r;
  r.channel = ch;
  r.I1_qtm = -(R + K) * T - 2.0 * K * sm.n_qtm * E1;
  r.I1_cls = -(R + K) * T - 2.0 * K * sm.n_cls * E1;
  r.I2_qtm = 4.0 * K * K * sm.q_qtm * E2 + 4.0 * K * (R + K) * sm.n_qtm * T * E1 +
             8.0 * K * K * sm.n_qtm * E3 + (R + K) * (R + K) * T2;
  r.I2_cls = 4.0 * K * K * sm.q_cls * E2 + 4.0 * K * (R + K) * sm.n_cls * T * E1 +
             8.0 * K * K * sm.n_cls * E3 + (R + K) * (R + K) * T2;
  const double a2 = sm.n_cls;
  const double Cn = sm.C / (1.0 + sm.C);
  r.Delta1_coh = 4.0 * K * Cn * a2 * E1;
  r.Delta2_qtm_sq = 16.0 * K * K * sm.C / ((1.0 + sm.C) * (1.0 + sm.C)) * a2 * a2 * E2 +
                    8.0 * K * K * (1.0 - sm.C) / (1.0 + sm.C) * a2 * E3;
  r.Delta2_cls_sq = 8.0 * K * K * a2 * E3;
  r.Delta2_cq_sq = r.Delta2_qtm_sq + r.Delta2_cls_sq;
  r.relative_discrepancy = r.Delta1_coh / T;
  return r;
}

} // namespace

double expm1_factor1(double x) {
  if (std::abs(x) < 1e-6) {
    return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0;
  }
  return -std::expm1(-x) / x;
}

double expm1_factor3(double x) {
  // The closed form cancels catastrophically below |x| ~ 0.5; sum
  // Σ (-x)^n (n+1)/(n+2)! there instead.
  if (std::abs(x) < 0.5) {
    double sum = 0.0, pw = 1.0, fact = 2.0;
    for (int n = 0; n < 24; ++n) {
      const double term = pw * (n + 1) / fact;
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      pw *= -x;
      fact *= n + 3;
    }
    return sum;
  }
  return (1.0 - std::exp(-x) * (1.0 + x)) / (x * x);
}

DilationReport free_report(const LatticeDerived& derived, double alpha0, double theta,
                           double phi, double T) {
  if (!(T > 0.0)) throw std::domain_error("interrogation time must be positive");
  const auto sm = moments(alpha0, theta, phi);
  return assemble(derived, sm, T, T, T * T, T * T / 2.0, NoiseChannel::free());
}

DilationReport amplitude_report(const LatticeDerived& derived, double alpha0, double theta,
                                double phi, double T, double gamma_a) {
  if (!(T > 0.0)) throw std::domain_error("interrogation time must be positive");
  if (gamma_a < 0.0) throw std::domain_error("gamma_a must be non-negative");
  const auto sm = moments(alpha0, theta, phi);
  const double x = gamma_a * T;
  const double E1 = T * expm1_factor1(x);
  const double E3 = T * T * expm1_factor3(x);
  auto r = assemble(derived, sm, T, E1, E1 * E1, E3, NoiseChannel::amplitude(gamma_a));
  regime_warning(r, derived, gamma_a);
  return r;
}

DilationReport phase_report(const LatticeDerived& derived, double alpha0, double theta,
                            double phi, double T, double gamma_p) {
  if (gamma_p < 0.0) throw std::domain_error("gamma_p must be non-negative");
  // Identical to the free forms: only m = n monomials survive the
  // non-oscillating split and those are untouched by phase damping.
  auto r = free_report(derived, alpha0, theta, phi, T);
  r.channel = NoiseChannel::phase(gamma_p);
  regime_warning(r, derived, gamma_p);
  return r;
}

DilationReport diffusion_report(const LatticeDerived& derived, double alpha0, double theta,
                                double phi, double T, double gamma_d) {
  if (!(T > 0.0)) throw std::domain_error("interrogation time must be positive");
  if (gamma_d < 0.0) throw std::domain_error("gamma_d must be non-negative");
  const auto sm = moments(alpha0, theta, phi);
  auto r = assemble(derived, sm, T, T, T * T, T * T / 2.0, NoiseChannel::diffusion(gamma_d));

  const double K = derived.C_k, R = derived.C_r;
  const double G = gamma_d;
  const double T2 = T * T, T3 = T2 * T, T4 = T2 * T2;
  const double a2 = alpha0 * alpha0;

  r.I1_qtm += -K * G * T2;
  r.I1_cls += -K * G * T2;
  const double i2_common = 2.0 * K * R * G * T3 + (10.0 / 3.0) * K * K * G * T3 +
                           (5.0 / 3.0) * K * K * G * G * T4;
  r.I2_qtm += i2_common + (20.0 / 3.0) * K * K * sm.n_qtm * G * T3;
  r.I2_cls += i2_common + (20.0 / 3.0) * K * K * sm.n_cls * G * T3;

  const double heat = (4.0 / 3.0) * K * K * G * T3 + (2.0 / 3.0) * K * K * G * G * T4;
  r.Delta2_qtm_sq +=
      (8.0 / 3.0) * K * K * (1.0 - sm.C) / (1.0 + sm.C) * a2 * G * T3 + heat;
  r.Delta2_cls_sq += (8.0 / 3.0) * K * K * a2 * G * T3 + heat;
  r.Delta2_cq_sq = r.Delta2_qtm_sq + r.Delta2_cls_sq;
  regime_warning(r, derived, gamma_d);
  return r;
}

DilationReport channel_report(const NoiseChannel& channel, const LatticeDerived& derived,
                              double alpha0, double theta, double phi, double T) {
  switch (channel.kind) {
    case ChannelKind::Free:
      return free_report(derived, alpha0, theta, phi, T);
    case ChannelKind::AmplitudeDamping:
      return amplitude_report(derived, alpha0, theta, phi, T, channel.rate);
    case ChannelKind::PhaseDamping:
      return phase_report(derived, alpha0, theta, phi, T, channel.rate);
    case ChannelKind::Diffusion:
      return diffusion_report(derived, alpha0, theta, phi, T, channel.rate);
  }
  throw std::logic_error("unreachable");
}

double kinetic_expectation(StateKind kind, const LatticeDerived& derived, double alpha0,
                           double theta, double phi, double varphi, double t) {
  const double K = derived.C_k;
  const double a2 = alpha0 * alpha0;
  const double cls =
      4.0 * K * (a2 * std::cos(2.0 * derived.omega_z * t - 2.0 * varphi) + a2 + 0.5);
  if (kind == StateKind::Classical) return cls;
  SuperposedCoherentState s{alpha0, varphi, theta, phi, StateKind::Quantum};
  validate_state(s);
  const double C = coherence_factor(s);
  return cls - 8.0 * a2 * K * C / (1.0 + C);
}

OscillatingDelta1 oscillating_delta1(const LatticeDerived& derived, double alpha0,
                                     double theta, double phi, double T) {
  SuperposedCoherentState s{alpha0, 0.0, theta, phi, StateKind::Quantum};
  validate_state(s);
  const double C = coherence_factor(s);
  // C_i tanφ stays finite at φ = π/2: e^{-2α²} sin2θ sinφ.
  const double Ctan = std::exp(-2.0 * alpha0 * alpha0) * std::sin(2.0 * theta) *
                      std::sin(phi);
  const double wT = derived.omega_z * T;
  const double pref = 2.0 * derived.C_g * alpha0 / ((1.0 + C) * derived.omega_z);
  const double c2t = std::cos(2.0 * theta);

  OscillatingDelta1 out;
  out.correction = pref * (Ctan * (std::cos(wT) - 1.0) - C * c2t * std::sin(wT));
  out.bound = pref * (2.0 * std::abs(Ctan) + std::abs(C * c2t));
  const double nonosc = 4.0 * derived.C_k * C / (1.0 + C) * alpha0 * alpha0 * T;
  out.full = nonosc + out.correction;
  return out;
}

} // namespace clockdil
