#ifndef CLOCKDIL_INTEGRAL_ENGINE_HPP
#define CLOCKDIL_INTEGRAL_ENGINE_HPP

#include "clockdil/operator_algebra.hpp"
#include "clockdil/units.hpp"

namespace clockdil {

// V_k/(mc²) and W_k/(m²c⁴) as normal-ordered polynomials.
struct VkOperator {
  NormalOrderedPoly v;
  NormalOrderedPoly w;
};

VkOperator make_vk(const LatticeDerived& derived);

struct IntegralPart {
  cplx non_oscillating{};
  cplx oscillating{};
  cplx total() const { return non_oscillating + oscillating; }
};

struct IntegralResult {
  IntegralPart I1; // s
  IntegralPart I2; // s^2
};

// Term-wise exact integration of the channel-evolved V_k expectation.
// A term is "oscillating" iff its evolution exponent has a nonzero imaginary
// part in either time variable.
IntegralResult compute_integrals(const NoiseChannel& channel, const LatticeDerived& derived,
                                 const SuperposedCoherentState& state, double T);

cplx compute_I1(const NoiseChannel& channel, const LatticeDerived& derived,
                const SuperposedCoherentState& state, double T, bool include_oscillating);
cplx compute_I2(const NoiseChannel& channel, const LatticeDerived& derived,
                const SuperposedCoherentState& state, double T, bool include_oscillating);

// I2' = ∫_0^T <W_k/(m²c⁴)[t]> dt  (s²)
cplx compute_I2prime(const NoiseChannel& channel, const LatticeDerived& derived,
                     const SuperposedCoherentState& state, double T,
                     bool include_oscillating);

// ∫_0^T t^k e^{λt} dt; λ = 0 returns T^{k+1}/(k+1), small |λT| uses a series.
cplx exact_exp_poly_integral(int k, cplx lambda, double T);

// ∫_0^T dt2 ∫_0^{t2} dt1 (t2-t1)^k e^{λ(t2-t1)} t1^j e^{μ t1}, evaluated exactly.
cplx exact_triangle_integral(int k, cplx lambda, int j, cplx mu, double T);

} // namespace clockdil

#endif
