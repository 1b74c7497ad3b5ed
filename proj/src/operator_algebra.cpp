#include "clockdil/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clockdil {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}

double falling_factorial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= double(n - i);
  return r;
}

cplx ipow(cplx base, int exp) {
  cplx r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

} // namespace

NormalOrderedPoly NormalOrderedPoly::monomial(int m, int n, cplx coeff) {
  NormalOrderedPoly p;
  p.add_term(m, n, coeff);
  return p;
}

NormalOrderedPoly NormalOrderedPoly::identity(cplx coeff) { return monomial(0, 0, coeff); }

void NormalOrderedPoly::add_term(int m, int n, cplx coeff) {
  if (m < 0 || n < 0) throw std::invalid_argument("monomial powers must be non-negative");
  auto [it, inserted] = terms_.try_emplace({m, n}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cplx{}) terms_.erase(it);
  } else if (coeff == cplx{}) {
    terms_.erase(it);
  }
}

NormalOrderedPoly NormalOrderedPoly::adjoint() const {
  NormalOrderedPoly out;
  for (const auto& [key, c] : terms_) out.add_term(key.second, key.first, std::conj(c));
  return out;
}

NormalOrderedPoly& NormalOrderedPoly::operator+=(const NormalOrderedPoly& other) {
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, c);
  return *this;
}

NormalOrderedPoly& NormalOrderedPoly::operator*=(cplx scalar) {
  if (scalar == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= scalar;
  return *this;
}

void NormalOrderedPoly::prune(double rel_tol) {
  double max_abs = 0.0;
  for (const auto& [key, c] : terms_) max_abs = std::max(max_abs, std::abs(c));
  const double cut = rel_tol * max_abs;
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = std::abs(it->second) <= cut ? terms_.erase(it) : std::next(it);
  }
}

// a^p a†^q = Σ_k C(p,k) C(q,k) k! a†^{q-k} a^{p-k}
NormalOrderedPoly multiply_normal_order(const NormalOrderedPoly& p,
                                        const NormalOrderedPoly& q) {
  NormalOrderedPoly out;
  for (const auto& [kp, cp] : p.terms()) {
    for (const auto& [kq, cq] : q.terms()) {
      const int m1 = kp.first, n1 = kp.second;
      const int m2 = kq.first, n2 = kq.second;
      const cplx c = cp * cq;
      const int kmax = std::min(n1, m2);
      double fact_k = 1.0;
      for (int k = 0; k <= kmax; ++k) {
        if (k > 0) fact_k *= double(k);
        const double coeff = binomial(n1, k) * binomial(m2, k) * fact_k;
        out.add_term(m1 + m2 - k, n1 + n2 - k, c * coeff);
      }
    }
  }
  out.prune();
  return out;
}

const char* channel_name(const NoiseChannel& ch) {
  switch (ch.kind) {
    case ChannelKind::Free: return "free";
    case ChannelKind::AmplitudeDamping: return "amplitude";
    case ChannelKind::PhaseDamping: return "phase";
    case ChannelKind::Diffusion: return "diffusion";
  }
  return "?";
}

void validate_channel(const NoiseChannel& ch) {
  if (ch.kind != ChannelKind::Free && ch.rate < 0.0) {
    throw std::domain_error("channel rate must be non-negative");
  }
}

NormalOrderedPoly EvolvedPoly::at_time(double t) const {
  NormalOrderedPoly out;
  for (const auto& term : terms) {
    out.add_term(term.m, term.n,
                 term.prefactor * std::pow(t, term.k) * std::exp(term.lambda * t));
  }
  return out;
}

EvolvedPoly evolve(const NormalOrderedPoly& p, const NoiseChannel& channel, double omega_z) {
  validate_channel(channel);
  EvolvedPoly out;
  const double gamma = channel.kind == ChannelKind::Free ? 0.0 : channel.rate;
  for (const auto& [key, c] : p.terms()) {
    const int m = key.first, n = key.second;
    const cplx rot(0.0, double(m - n) * omega_z);
    switch (channel.kind) {
      case ChannelKind::Free:
        out.terms.push_back({m, n, 0, c, rot});
        break;
      case ChannelKind::AmplitudeDamping:
        out.terms.push_back({m, n, 0, c, rot - 0.5 * double(m + n) * gamma});
        break;
      case ChannelKind::PhaseDamping: {
        const double d = double(m - n);
        out.terms.push_back({m, n, 0, c, rot - 0.5 * d * d * gamma});
        break;
      }
      case ChannelKind::Diffusion: {
        // a†^m a^n -> Σ_k [m!n!/(k!(m-k)!(n-k)!)] Γ^k t^k a†^{m-k} a^{n-k}
        double fact_k = 1.0;
        double gamma_k = 1.0;
        for (int k = 0; k <= std::min(m, n); ++k) {
          if (k > 0) {
            fact_k *= double(k);
            gamma_k *= gamma;
          }
          const double coeff =
              falling_factorial(m, k) * falling_factorial(n, k) / fact_k * gamma_k;
          out.terms.push_back({m - k, n - k, k, c * coeff, rot});
        }
        break;
      }
    }
  }
  return out;
}

cplx coherent_overlap(cplx beta, cplx alpha) {
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + std::conj(beta) * alpha);
}

cplx coherent_matrix_element(int m, int n, cplx beta, cplx alpha) {
  return ipow(std::conj(beta), m) * ipow(alpha, n) * coherent_overlap(beta, alpha);
}

cplx expectation(const NormalOrderedPoly& p, const SuperposedCoherentState& state) {
  validate_state(state);
  const cplx alpha = state.alpha();
  const double ct = std::cos(state.theta), st = std::sin(state.theta);

  struct Branch {
    cplx weight;
    cplx amp;
  };
  std::vector<Branch> branches;
  if (state.kind == StateKind::Quantum) {
    branches = {{ct, alpha}, {std::polar(1.0, state.phi) * st, -alpha}};
  }

  cplx total{};
  for (const auto& [key, c] : p.terms()) {
    const int m = key.first, n = key.second;
    cplx val{};
    if (state.kind == StateKind::Quantum) {
      for (const auto& bi : branches) {
        for (const auto& bj : branches) {
          val += std::conj(bi.weight) * bj.weight *
                 coherent_matrix_element(m, n, bi.amp, bj.amp);
        }
      }
      val /= 1.0 + coherence_factor(state);
    } else {
      val = ct * ct * coherent_matrix_element(m, n, alpha, alpha) +
            st * st * coherent_matrix_element(m, n, -alpha, -alpha);
    }
    total += c * val;
  }
  return total;
}

} // namespace clockdil
