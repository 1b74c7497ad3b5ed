#include "clockdil/integral_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace clockdil {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}

// ∫_0^x u^p e^{ν u} du as a list of (power, coeff) pairs attached to e^{νx}
// plus a constant, valid when the recurrence is stable (|ν|x >= 1/2).
struct IndefiniteExp {
  std::vector<cplx> exp_coeffs; // coefficient of x^q e^{νx}, q = 0..p
  cplx constant{};
};

IndefiniteExp indefinite_exp_integral(int p, cplx nu) {
  IndefiniteExp g;
  g.exp_coeffs.assign(std::size_t(p) + 1, cplx{});
  // G_0 = (e^{νx} - 1)/ν;  G_p = (x^p e^{νx} - p G_{p-1})/ν
  g.exp_coeffs[0] = 1.0 / nu;
  g.constant = -1.0 / nu;
  for (int q = 1; q <= p; ++q) {
    for (auto& c : g.exp_coeffs) c *= -double(q) / nu;
    g.constant *= -double(q) / nu;
    g.exp_coeffs[std::size_t(q)] += 1.0 / nu;
  }
  return g;
}

} // namespace

cplx exact_exp_poly_integral(int k, cplx lambda, double T) {
  if (k < 0) throw std::invalid_argument("power must be non-negative");
  if (T < 0.0) throw std::domain_error("T must be non-negative");
  if (T == 0.0) return 0.0;
  const cplx x = lambda * T;
  const double Tk1 = std::pow(T, k + 1);
  if (std::abs(x) < 0.5) {
    // T^{k+1} Σ_p x^p / (p! (k+p+1))
    cplx sum{};
    cplx term = 1.0;
    for (int p = 0; p < 64; ++p) {
      const cplx contrib = term / double(k + p + 1);
      sum += contrib;
      if (std::abs(contrib) < 1e-20 * std::abs(sum)) break;
      term *= x / double(p + 1);
    }
    return Tk1 * sum;
  }
  const cplx eT = std::exp(x);
  cplx F = (eT - 1.0) / lambda;
  double Tp = 1.0;
  for (int q = 1; q <= k; ++q) {
    Tp *= T;
    F = (Tp * eT - double(q) * F) / lambda;
  }
  return F;
}

cplx exact_triangle_integral(int k, cplx lambda, int j, cplx mu, double T) {
  if (T == 0.0) return 0.0;
  const cplx nu = mu - lambda;
  cplx result{};
  for (int i = 0; i <= k; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const double bin = binomial(k, i) * sign;
    const int outer_pow = k - i;
    const int inner_pow = i + j;
    if (std::abs(nu) * T < 0.5) {
      // Series form of the inner integral keeps everything in powers of t2.
      cplx term = 1.0;
      for (int s = 0; s < 64; ++s) {
        const cplx coeff = term / double(inner_pow + s + 1);
        const cplx contrib =
            bin * coeff * exact_exp_poly_integral(outer_pow + inner_pow + s + 1, lambda, T);
        result += contrib;
        if (std::abs(term) * std::pow(T, s) < 1e-20) break;
        term *= nu / double(s + 1);
      }
    } else {
      const auto g = indefinite_exp_integral(inner_pow, nu);
      for (std::size_t q = 0; q < g.exp_coeffs.size(); ++q) {
        result += bin * g.exp_coeffs[q] *
                  exact_exp_poly_integral(outer_pow + int(q), mu, T);
      }
      result += bin * g.constant * exact_exp_poly_integral(outer_pow, lambda, T);
    }
  }
  return result;
}

VkOperator make_vk(const LatticeDerived& d) {
  VkOperator op;
  op.v.add_term(0, 1, d.C_g);
  op.v.add_term(1, 0, d.C_g);
  op.v.add_term(0, 0, -d.C_r - d.C_k);
  op.v.add_term(0, 2, d.C_k);
  op.v.add_term(2, 0, d.C_k);
  op.v.add_term(1, 1, -2.0 * d.C_k);

  const double w = -d.w_k_coefficient;
  op.w.add_term(0, 2, w);
  op.w.add_term(2, 0, w);
  op.w.add_term(1, 1, -2.0 * w);
  op.w.add_term(0, 0, -w);
  return op;
}

namespace {

IntegralPart single_time_integral(const NormalOrderedPoly& poly, const NoiseChannel& channel,
                                  const LatticeDerived& derived,
                                  const SuperposedCoherentState& state, double T) {
  IntegralPart out;
  const EvolvedPoly ev = evolve(poly, channel, derived.omega_z);
  for (const auto& term : ev.terms) {
    const cplx coeff =
        term.prefactor * expectation(NormalOrderedPoly::monomial(term.m, term.n), state);
    const cplx value = coeff * exact_exp_poly_integral(term.k, term.lambda, T);
    (term.lambda.imag() != 0.0 ? out.oscillating : out.non_oscillating) += value;
  }
  return out;
}

} // namespace

IntegralResult compute_integrals(const NoiseChannel& channel, const LatticeDerived& derived,
                                 const SuperposedCoherentState& state, double T) {
  validate_channel(channel);
  validate_state(state);
  if (T < 0.0) throw std::domain_error("T must be non-negative");

  const VkOperator vk = make_vk(derived);
  IntegralResult res;
  if (T == 0.0) return res;

  res.I1 = single_time_integral(vk.v, channel, derived, state, T);

  // I2 = 2 ∫_0^T dt2 ∫_0^{t2} dt1 <(V[t2-t1] V)[t1]>
  const EvolvedPoly outer = evolve(vk.v, channel, derived.omega_z);
  for (const auto& os : outer.terms) {
    const NormalOrderedPoly prod =
        multiply_normal_order(NormalOrderedPoly::monomial(os.m, os.n), vk.v);
    const EvolvedPoly inner = evolve(prod, channel, derived.omega_z);
    for (const auto& it : inner.terms) {
      const cplx coeff = os.prefactor * it.prefactor *
                         expectation(NormalOrderedPoly::monomial(it.m, it.n), state);
      if (coeff == cplx{}) continue;
      const cplx value =
          2.0 * coeff * exact_triangle_integral(os.k, os.lambda, it.k, it.lambda, T);
      const bool osc = os.lambda.imag() != 0.0 || it.lambda.imag() != 0.0;
      (osc ? res.I2.oscillating : res.I2.non_oscillating) += value;
    }
  }
  return res;
}

cplx compute_I1(const NoiseChannel& channel, const LatticeDerived& derived,
                const SuperposedCoherentState& state, double T, bool include_oscillating) {
  const auto res = compute_integrals(channel, derived, state, T);
  return include_oscillating ? res.I1.total() : res.I1.non_oscillating;
}

cplx compute_I2(const NoiseChannel& channel, const LatticeDerived& derived,
                const SuperposedCoherentState& state, double T, bool include_oscillating) {
  const auto res = compute_integrals(channel, derived, state, T);
  return include_oscillating ? res.I2.total() : res.I2.non_oscillating;
}

cplx compute_I2prime(const NoiseChannel& channel, const LatticeDerived& derived,
                     const SuperposedCoherentState& state, double T,
                     bool include_oscillating) {
  validate_channel(channel);
  validate_state(state);
  if (T < 0.0) throw std::domain_error("T must be non-negative");
  if (T == 0.0) return 0.0;
  const VkOperator vk = make_vk(derived);
  const IntegralPart part = single_time_integral(vk.w, channel, derived, state, T);
  return include_oscillating ? part.total() : part.non_oscillating;
}

} // namespace clockdil
