#ifndef CLOCKDIL_FOCK_ORACLE_HPP
#define CLOCKDIL_FOCK_ORACLE_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "clockdil/integral_engine.hpp"
#include "clockdil/operator_algebra.hpp"
#include "clockdil/units.hpp"

namespace clockdil {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct FockSpace {
  int N;
  Matrix a, adag, number;

  explicit FockSpace(int dim = 40);
};

// Truncated e^{-|α|²/2} Σ αⁿ/√n! |n>; throws if |α|² > N/4.
Vector coherent_vector(cplx alpha, int N);

Matrix state_density(const SuperposedCoherentState& state, int N);

Matrix poly_matrix(const NormalOrderedPoly& poly, const FockSpace& fock);

// Heisenberg-picture operator at time t via fixed-step RK4 of the adjoint
// Lindblad equation. steps <= 0 picks a step no larger than (20 max(ω,Γ))⁻¹.
Matrix adjoint_evolve_operator(const Matrix& op, const NoiseChannel& channel, double omega_z,
                               double t, int steps, const FockSpace& fock);

// Schrodinger-picture density-matrix evolution under the same channel.
Matrix evolve_density(const Matrix& rho, const NoiseChannel& channel, double omega_z,
                      double t, int steps, const FockSpace& fock);

struct OracleGrid {
  int points = 0;   // outer grid intervals; <= 0 picks from ω_z T
  int substeps = 0; // RK4 substeps per grid interval; <= 0 picks automatically
  int fock_dim = 40;
};

// Quadrature evaluation of I1 and I2 (all oscillating contributions included).
// Guarded to ω_z T <= ~1e3; larger products belong to the analytic engine.
std::pair<cplx, cplx> oracle_I1_I2(const NoiseChannel& channel,
                                   const LatticeDerived& derived,
                                   const SuperposedCoherentState& state, double T,
                                   const OracleGrid& grid = {});

// Same quadrature with several dissipators acting at once (the trap rotation
// is applied once). Used to probe how well independent closed-form channel
// modifications compose.
std::pair<cplx, cplx> oracle_I1_I2_multi(const std::vector<NoiseChannel>& channels,
                                         const LatticeDerived& derived,
                                         const SuperposedCoherentState& state, double T,
                                         const OracleGrid& grid = {});

// ρ_c through second perturbative order: e^{-iHt} ρ0 e^{iHt} with
// H = (ω0/2)σ_z, plus the I1/I2/I2' corrections.
Eigen::Matrix2cd perturbative_clock_state(double I1, cplx I2, double I2p,
                                          const Eigen::Matrix2cd& rho_c0, double omega0,
                                          double t);

} // namespace clockdil

#endif
