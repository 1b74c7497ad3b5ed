#ifndef CLOCKDIL_UNITS_HPP
#define CLOCKDIL_UNITS_HPP

#include <complex>
#include <string>
#include <vector>

namespace clockdil {

// CODATA 2018 defaults; overridable for scaled/dimensionless regimes.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s
  double c = 299792458.0;         // m/s
  double g = 9.80665;             // m/s^2
  double amu = 1.66053906660e-27; // kg
};

struct AtomSpec {
  std::string name;
  double mass = 0.0;                    // kg
  double magic_wavelength = 0.0;        // m
  double clock_angular_frequency = 0.0; // rad/s
};

// Built-in presets: "mg24", "sr87". The clock transition frequency is not a
// lattice property; presets use the standard clock-transition wavelengths
// (Mg 458 nm, Sr 698 nm) and can be overridden via config files.
AtomSpec atom_preset(const std::string& name, const PhysicalConstants& pc = {});
const std::vector<std::string>& atom_preset_names();

// Key-value config file (one `key = value` per line, '#' comments):
//   name, mass_amu, magic_wavelength_nm, clock_frequency_THz
AtomSpec load_atom_spec(const std::string& path, const PhysicalConstants& pc = {});

struct LatticeSpec {
  double trap_depth_recoil = 300.0; // multiple of E_r
  double interrogation_time = 1.0;  // s
};

struct LatticeDerived {
  double mass = 0.0;      // kg
  double k = 0.0;         // 1/m
  double E_r = 0.0;       // J
  double U_max = 0.0;     // J
  double omega_z = 0.0;   // rad/s
  double z_s = 0.0;       // m
  double C_g = 0.0;
  double C_r = 0.0;
  double C_k = 0.0;
  // Coefficient of -(a^2 + a†^2 - 2a†a - 1) in W_k/(m^2 c^4) with the clock
  // Hamiltonian in angular-frequency units: C_k * hbar/(m c^2), in seconds.
  double w_k_coefficient = 0.0;
  PhysicalConstants consts{};
};

LatticeDerived derive_lattice(const AtomSpec& atom, const LatticeSpec& lattice,
                              const PhysicalConstants& pc = {});

// Dimensionless verification regime: caller supplies the trap coefficients
// directly (typically omega_z = 1 and order-unity C's).
LatticeDerived dimensionless_lattice(double omega_z, double c_g, double c_r, double c_k,
                                     double w_k_coefficient = 0.0);

double displacement_to_alpha(double d, const LatticeDerived& derived);

enum class StateKind { Quantum, Classical };

// cosθ|α> + e^{iφ} sinθ|-α> (Quantum) or the matching mixture (Classical),
// with α = alpha0 * e^{i varphi}.
struct SuperposedCoherentState {
  double alpha0 = 0.0;
  double varphi = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  StateKind kind = StateKind::Quantum;

  std::complex<double> alpha() const;
};

// C_i = e^{-2 alpha0^2} sin(2θ) cos(φ)
double coherence_factor(const SuperposedCoherentState& state);

// Throws std::domain_error if a Quantum state is unnormalizable (1 + C_i <= 0).
void validate_state(const SuperposedCoherentState& state);

} // namespace clockdil

#endif
