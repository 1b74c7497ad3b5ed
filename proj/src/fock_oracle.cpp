#include "clockdil/fock_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace clockdil {

namespace {

constexpr double pi = 3.14159265358979323846;

// Entrywise application of the channel generators, using the band structure
// of a, a† and the diagonality of the number operator (O(N²) per call).
struct ChannelOps {
  int N;
  double omega;
  std::vector<std::pair<ChannelKind, double>> dissipators;
  std::vector<double> nd;  // diag of a†a
  std::vector<double> qd;  // diag of a a† within the truncation

  ChannelOps(const std::vector<NoiseChannel>& chans, double omega_z, int dim)
      : N(dim), omega(omega_z) {
    for (const auto& ch : chans) {
      if (ch.kind != ChannelKind::Free && ch.rate > 0.0) {
        dissipators.emplace_back(ch.kind, ch.rate);
      }
    }
    nd.resize(std::size_t(N));
    qd.resize(std::size_t(N));
    for (int j = 0; j < N; ++j) {
      nd[std::size_t(j)] = double(j);
      qd[std::size_t(j)] = j + 1 < N ? double(j + 1) : 0.0;
    }
  }

  // dρ/dt = -iω[n,ρ] + Σ_i (L_i ρ L_i† - ½{L_i†L_i, ρ})
  void density_rhs(const Matrix& rho, Matrix& out) const { apply(rho, out, false); }

  // dA/dt = +iω[n,A] + Σ_i (L_i† A L_i - ½{L_i†L_i, A})
  void adjoint_rhs(const Matrix& A, Matrix& out) const { apply(A, out, true); }

 private:
  void apply(const Matrix& X, Matrix& out, bool adjoint) const {
    out.setZero(N, N);
    const double rot_sign = adjoint ? 1.0 : -1.0;
    for (int j = 0; j < N; ++j) {
      for (int k = 0; k < N; ++k) {
        const double dn = nd[std::size_t(j)] - nd[std::size_t(k)];
        cplx v = cplx(0.0, rot_sign * omega * dn) * X(j, k);
        for (const auto& [kind, gamma] : dissipators) {
          switch (kind) {
            case ChannelKind::Free:
              break;
            case ChannelKind::AmplitudeDamping:
              v += gamma * (adjoint ? shift_down(X, j, k) : shift_up(X, j, k));
              v -= 0.5 * gamma * (nd[std::size_t(j)] + nd[std::size_t(k)]) * X(j, k);
              break;
            case ChannelKind::PhaseDamping:
              v -= 0.5 * gamma * dn * dn * X(j, k);
              break;
            case ChannelKind::Diffusion:
              v += gamma * (shift_down(X, j, k) + shift_up(X, j, k));
              v -= 0.5 * gamma *
                   (nd[std::size_t(j)] + nd[std::size_t(k)] + qd[std::size_t(j)] +
                    qd[std::size_t(k)]) *
                   X(j, k);
              break;
          }
        }
        out(j, k) = v;
      }
    }
  }

  // a† X a: √j √k X_{j-1,k-1}
  static cplx shift_down(const Matrix& X, int j, int k) {
    if (j == 0 || k == 0) return {};
    return std::sqrt(double(j)) * std::sqrt(double(k)) * X(j - 1, k - 1);
  }
  // a X a†: √(j+1) √(k+1) X_{j+1,k+1}
  cplx shift_up(const Matrix& X, int j, int k) const {
    if (j + 1 >= N || k + 1 >= N) return {};
    return std::sqrt(double(j + 1)) * std::sqrt(double(k + 1)) * X(j + 1, k + 1);
  }
};

template <typename Rhs>
void rk4_advance(Matrix& X, double h, int steps, const Rhs& rhs) {
  const int N = int(X.rows());
  Matrix k1(N, N), k2(N, N), k3(N, N), k4(N, N), tmp(N, N);
  for (int s = 0; s < steps; ++s) {
    rhs(X, k1);
    tmp = X + 0.5 * h * k1;
    rhs(tmp, k2);
    tmp = X + 0.5 * h * k2;
    rhs(tmp, k3);
    tmp = X + h * k3;
    rhs(tmp, k4);
    X += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

double max_rate(const std::vector<NoiseChannel>& chans) {
  double g = 0.0;
  for (const auto& ch : chans) {
    if (ch.kind != ChannelKind::Free) g = std::max(g, ch.rate);
  }
  return g;
}

int default_steps(const std::vector<NoiseChannel>& chans, double omega_z, double t) {
  const double scale = std::max({std::abs(omega_z), max_rate(chans), 1e-12});
  return std::max(1, int(std::ceil(std::abs(t) * scale * 20.0)));
}

// Composite Simpson; odd interval counts close with a 3/8 segment.
cplx integrate_samples(const std::vector<cplx>& f, double h) {
  const std::size_t n = f.size() - 1; // intervals
  if (n == 0) return {};
  if (n == 1) return 0.5 * h * (f[0] + f[1]);
  cplx sum{};
  std::size_t simpson_end = n % 2 == 0 ? n : n - 3;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    sum += (h / 3.0) * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  }
  if (n % 2 != 0) {
    if (n == 3) sum = {};
    const std::size_t b = simpson_end;
    sum += (3.0 * h / 8.0) * (f[b] + 3.0 * f[b + 1] + 3.0 * f[b + 2] + f[b + 3]);
  }
  return sum;
}

} // namespace

FockSpace::FockSpace(int dim) : N(dim) {
  if (dim < 2) throw std::invalid_argument("Fock dimension must be at least 2");
  a = Matrix::Zero(N, N);
  for (int n = 1; n < N; ++n) a(n - 1, n) = std::sqrt(double(n));
  adag = a.adjoint();
  number = adag * a;
}

Vector coherent_vector(cplx alpha, int N) {
  if (std::norm(alpha) > double(N) / 4.0) {
    throw std::domain_error("coherent amplitude too large for Fock truncation; increase N");
  }
  Vector v = Vector::Zero(N);
  cplx amp = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < N; ++n) {
    v(n) = amp;
    amp *= alpha / std::sqrt(double(n + 1));
  }
  v.normalize();
  return v;
}

Matrix state_density(const SuperposedCoherentState& state, int N) {
  validate_state(state);
  const cplx alpha = state.alpha();
  const Vector vp = coherent_vector(alpha, N);
  const Vector vm = coherent_vector(-alpha, N);
  const double ct = std::cos(state.theta), st = std::sin(state.theta);
  if (state.kind == StateKind::Quantum) {
    Vector psi = ct * vp + std::polar(1.0, state.phi) * st * vm;
    psi.normalize();
    return psi * psi.adjoint();
  }
  return ct * ct * (vp * vp.adjoint()) + st * st * (vm * vm.adjoint());
}

Matrix poly_matrix(const NormalOrderedPoly& poly, const FockSpace& fock) {
  Matrix out = Matrix::Zero(fock.N, fock.N);
  for (const auto& [key, c] : poly.terms()) {
    Matrix term = Matrix::Identity(fock.N, fock.N);
    for (int i = 0; i < key.first; ++i) term = fock.adag * term;
    Matrix right = Matrix::Identity(fock.N, fock.N);
    for (int i = 0; i < key.second; ++i) right = fock.a * right;
    out += c * (term * right);
  }
  return out;
}

Matrix adjoint_evolve_operator(const Matrix& op, const NoiseChannel& channel, double omega_z,
                               double t, int steps, const FockSpace& fock) {
  validate_channel(channel);
  if (steps <= 0) steps = default_steps({channel}, omega_z, t);
  const ChannelOps ops({channel}, omega_z, fock.N);
  Matrix X = op;
  rk4_advance(X, t / steps, steps,
              [&](const Matrix& m, Matrix& out) { ops.adjoint_rhs(m, out); });
  return X;
}

Matrix evolve_density(const Matrix& rho, const NoiseChannel& channel, double omega_z,
                      double t, int steps, const FockSpace& fock) {
  validate_channel(channel);
  if (steps <= 0) steps = default_steps({channel}, omega_z, t);
  const ChannelOps ops({channel}, omega_z, fock.N);
  Matrix X = rho;
  rk4_advance(X, t / steps, steps,
              [&](const Matrix& m, Matrix& out) { ops.density_rhs(m, out); });
  return X;
}

std::pair<cplx, cplx> oracle_I1_I2(const NoiseChannel& channel, const LatticeDerived& derived,
                                   const SuperposedCoherentState& state, double T,
                                   const OracleGrid& grid) {
  return oracle_I1_I2_multi({channel}, derived, state, T, grid);
}

std::pair<cplx, cplx> oracle_I1_I2_multi(const std::vector<NoiseChannel>& channels,
                                         const LatticeDerived& derived,
                                         const SuperposedCoherentState& state, double T,
                                         const OracleGrid& grid) {
  for (const auto& ch : channels) validate_channel(ch);
  validate_state(state);
  if (T < 0.0) throw std::domain_error("T must be non-negative");
  if (T == 0.0) return {cplx{}, cplx{}};
  const double omega = derived.omega_z;
  if (omega * T > 2000.0) {
    throw std::domain_error("omega_z*T too large for quadrature; use the integral engine");
  }

  int G = grid.points;
  if (G <= 0) {
    const double h_max = std::min(2.0 * pi / (48.0 * omega), T / 40.0);
    G = int(std::ceil(T / h_max));
  }
  if (G % 2 != 0) ++G;
  const double h = T / G;

  const double gamma = max_rate(channels);
  int sub = grid.substeps;
  if (sub <= 0) sub = std::max(1, int(std::ceil(h * std::max(omega, gamma) * 20.0)));

  const FockSpace fock(grid.fock_dim);
  const ChannelOps ops(channels, omega, fock.N);
  const Matrix V = poly_matrix(make_vk(derived).v, fock);

  // ρ[t_j] forward in time, V[s_i] in the Heisenberg picture; then
  // Tr(V e^{F(t2-t1)}(V ρ[t1])) = Tr(V[t2-t1] · V·ρ[t1]).
  std::vector<Matrix> M(std::size_t(G) + 1);  // (V ρ[t_j])ᵀ
  {
    Matrix rho = state_density(state, fock.N);
    for (int j = 0; j <= G; ++j) {
      M[std::size_t(j)] = (V * rho).transpose();
      if (j < G) {
        rk4_advance(rho, h / sub, sub,
                    [&](const Matrix& m, Matrix& out) { ops.density_rhs(m, out); });
      }
    }
  }
  std::vector<Matrix> Vs(std::size_t(G) + 1);
  {
    Matrix A = V;
    for (int i = 0; i <= G; ++i) {
      Vs[std::size_t(i)] = A;
      if (i < G) {
        rk4_advance(A, h / sub, sub,
                    [&](const Matrix& m, Matrix& out) { ops.adjoint_rhs(m, out); });
      }
    }
  }

  std::vector<cplx> f1(std::size_t(G) + 1);
  for (int j = 0; j <= G; ++j) f1[std::size_t(j)] = M[std::size_t(j)].trace();
  const cplx I1 = integrate_samples(f1, h);

  std::vector<cplx> outer(std::size_t(G) + 1);
  std::vector<cplx> inner;
  inner.reserve(std::size_t(G) + 1);
  for (int i = 0; i <= G; ++i) {
    inner.clear();
    for (int j = 0; j <= i; ++j) {
      inner.push_back(Vs[std::size_t(i - j)].cwiseProduct(M[std::size_t(j)]).sum());
    }
    outer[std::size_t(i)] = integrate_samples(inner, h);
  }
  const cplx I2 = 2.0 * integrate_samples(outer, h);
  return {I1, I2};
}

Eigen::Matrix2cd perturbative_clock_state(double I1, cplx I2, double I2p,
                                          const Eigen::Matrix2cd& rho_c0, double omega0,
                                          double t) {
  Eigen::Matrix2cd H = Eigen::Matrix2cd::Zero();
  H(0, 0) = -0.5 * omega0;
  H(1, 1) = 0.5 * omega0;

  Eigen::Matrix2cd U = Eigen::Matrix2cd::Zero();
  U(0, 0) = std::exp(cplx(0.0, 0.5 * omega0 * t));
  U(1, 1) = std::exp(cplx(0.0, -0.5 * omega0 * t));
  const Eigen::Matrix2cd rho0 = U * rho_c0 * U.adjoint();

  const Eigen::Matrix2cd H2 = H * H;
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd rho = rho0;
  rho += -i * I1 * (H * rho0 - rho0 * H);
  rho += 0.5 * I2 * (H * rho0 * H - H2 * rho0) +
         0.5 * std::conj(I2) * (H * rho0 * H - rho0 * H2);
  rho += -i * I2p * (H2 * rho0 - rho0 * H2);
  return rho;
}

} // namespace clockdil
