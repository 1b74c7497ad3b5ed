#ifndef CLOCKDIL_OPERATOR_ALGEBRA_HPP
#define CLOCKDIL_OPERATOR_ALGEBRA_HPP

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "clockdil/units.hpp"

namespace clockdil {

using cplx = std::complex<double>;

// Linear combination of normal-ordered monomials a†^m a^n.
class NormalOrderedPoly {
 public:
  using Key = std::pair<int, int>; // (m, n)
  using TermMap = std::map<Key, cplx>;

  NormalOrderedPoly() = default;

  static NormalOrderedPoly monomial(int m, int n, cplx coeff = 1.0);
  static NormalOrderedPoly identity(cplx coeff = 1.0);

  void add_term(int m, int n, cplx coeff);
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  NormalOrderedPoly adjoint() const; // (m,n) -> (n,m), conjugated coefficients

  NormalOrderedPoly& operator+=(const NormalOrderedPoly& other);
  NormalOrderedPoly& operator*=(cplx scalar);
  friend NormalOrderedPoly operator+(NormalOrderedPoly a, const NormalOrderedPoly& b) {
    a += b;
    return a;
  }
  friend NormalOrderedPoly operator*(cplx s, NormalOrderedPoly p) {
    p *= s;
    return p;
  }

  // Drop coefficients below tol * max|coeff|.
  void prune(double rel_tol = 1e-15);

 private:
  TermMap terms_;
};

// Exact normal-ordered product using [a, a†] = 1.
NormalOrderedPoly multiply_normal_order(const NormalOrderedPoly& p,
                                        const NormalOrderedPoly& q);

enum class ChannelKind { Free, AmplitudeDamping, PhaseDamping, Diffusion };

struct NoiseChannel {
  ChannelKind kind = ChannelKind::Free;
  double rate = 0.0; // Γ, 1/s (ignored for Free)

  static NoiseChannel free() { return {ChannelKind::Free, 0.0}; }
  static NoiseChannel amplitude(double gamma) { return {ChannelKind::AmplitudeDamping, gamma}; }
  static NoiseChannel phase(double gamma) { return {ChannelKind::PhaseDamping, gamma}; }
  static NoiseChannel diffusion(double gamma) { return {ChannelKind::Diffusion, gamma}; }
};

const char* channel_name(const NoiseChannel& ch);
void validate_channel(const NoiseChannel& ch); // throws on negative rate

// prefactor * t^k * e^{lambda t} * a†^m a^n
struct EvolvedTerm {
  int m = 0;
  int n = 0;
  int k = 0;
  cplx prefactor{};
  cplx lambda{};
};

struct EvolvedPoly {
  std::vector<EvolvedTerm> terms;

  // Collapse back to a NormalOrderedPoly at a fixed time.
  NormalOrderedPoly at_time(double t) const;
};

// Heisenberg-picture monomial evolution rules:
//   Free:      e^{i(m-n)ω t}
//   Amplitude: e^{i(m-n)ω t - (m+n)Γt/2}
//   Phase:     e^{i(m-n)ω t - (m-n)²Γt/2}
//   Diffusion: Σ_k m!n!/(k!(m-k)!(n-k)!) Γ^k t^k a†^{m-k}a^{n-k} e^{i(m-n)ω t}
EvolvedPoly evolve(const NormalOrderedPoly& p, const NoiseChannel& channel, double omega_z);

// <β|α> = exp(-|α|²/2 - |β|²/2 + conj(β)α)
cplx coherent_overlap(cplx beta, cplx alpha);

// <β|a†^m a^n|α> = conj(β)^m α^n <β|α>
cplx coherent_matrix_element(int m, int n, cplx beta, cplx alpha);

cplx expectation(const NormalOrderedPoly& p, const SuperposedCoherentState& state);

} // namespace clockdil

#endif
