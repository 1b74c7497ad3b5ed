#include "clockdil/units.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace clockdil {

namespace {

constexpr double pi = 3.14159265358979323846;

void require_positive(double value, const char* field) {
  if (!(value > 0.0)) {
    throw std::domain_error(std::string(field) + " must be positive");
  }
}

AtomSpec make_atom(const PhysicalConstants& pc, const char* name, double mass_amu,
                   double lattice_nm, double clock_nm) {
  AtomSpec a;
  a.name = name;
  a.mass = mass_amu * pc.amu;
  a.magic_wavelength = lattice_nm * 1e-9;
  a.clock_angular_frequency = 2.0 * pi * pc.c / (clock_nm * 1e-9);
  return a;
}

} // namespace

AtomSpec atom_preset(const std::string& name, const PhysicalConstants& pc) {
  if (name == "mg24") return make_atom(pc, "mg24", 24.0, 468.0, 458.0);
  if (name == "sr87") return make_atom(pc, "sr87", 87.0, 813.0, 698.0);
  std::string msg = "unknown atom preset '" + name + "'; available:";
  for (const auto& p : atom_preset_names()) msg += " " + p;
  throw std::invalid_argument(msg);
}

const std::vector<std::string>& atom_preset_names() {
  static const std::vector<std::string> names = {"mg24", "sr87"};
  return names;
}

AtomSpec load_atom_spec(const std::string& path, const PhysicalConstants& pc) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open atom config: " + path);

  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto get = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("atom config missing key '" + std::string(key) + "'");
    }
    return it->second;
  };
  auto get_num = [&](const char* key) {
    std::string s = get(key);
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad numeric value for '" + std::string(key) + "'");
    return v;
  };

  AtomSpec a;
  a.name = get("name");
  a.mass = get_num("mass_amu") * pc.amu;
  a.magic_wavelength = get_num("magic_wavelength_nm") * 1e-9;
  a.clock_angular_frequency = 2.0 * pi * get_num("clock_frequency_THz") * 1e12;
  require_positive(a.mass, "mass_amu");
  require_positive(a.magic_wavelength, "magic_wavelength_nm");
  require_positive(a.clock_angular_frequency, "clock_frequency_THz");
  return a;
}

LatticeDerived derive_lattice(const AtomSpec& atom, const LatticeSpec& lattice,
                              const PhysicalConstants& pc) {
  require_positive(atom.mass, "mass");
  require_positive(atom.magic_wavelength, "magic_wavelength");
  require_positive(lattice.trap_depth_recoil, "trap_depth_recoil");
  require_positive(lattice.interrogation_time, "interrogation_time");
  require_positive(pc.hbar, "hbar");
  require_positive(pc.c, "c");
  require_positive(pc.g, "g");

  const double m = atom.mass;
  const double lambda = atom.magic_wavelength;

  LatticeDerived d;
  d.mass = m;
  d.consts = pc;
  d.k = 2.0 * pi / lambda;
  d.E_r = 2.0 * pi * pi * pc.hbar * pc.hbar / (m * lambda * lambda);
  d.U_max = lattice.trap_depth_recoil * d.E_r;
  d.omega_z = std::sqrt(2.0 * d.U_max / m) * d.k;
  d.z_s = std::sqrt(pc.hbar / (m * d.omega_z));
  d.C_g = pc.g * d.z_s / (std::sqrt(2.0) * pc.c * pc.c);
  d.C_r = pc.g * pc.g / (d.omega_z * d.omega_z * pc.c * pc.c);
  d.C_k = pc.hbar * d.omega_z / (4.0 * m * pc.c * pc.c);
  d.w_k_coefficient = d.C_k * pc.hbar / (m * pc.c * pc.c);
  return d;
}

LatticeDerived dimensionless_lattice(double omega_z, double c_g, double c_r, double c_k,
                                     double w_k_coefficient) {
  require_positive(omega_z, "omega_z");
  LatticeDerived d;
  d.omega_z = omega_z;
  d.C_g = c_g;
  d.C_r = c_r;
  d.C_k = c_k;
  d.w_k_coefficient = w_k_coefficient;
  return d;
}

double displacement_to_alpha(double d, const LatticeDerived& derived) {
  if (d < 0.0) throw std::domain_error("displacement must be non-negative");
  return d / (std::sqrt(2.0) * derived.z_s);
}

std::complex<double> SuperposedCoherentState::alpha() const {
  return std::polar(alpha0, varphi);
}

double coherence_factor(const SuperposedCoherentState& state) {
  return std::exp(-2.0 * state.alpha0 * state.alpha0) * std::sin(2.0 * state.theta) *
         std::cos(state.phi);
}

void validate_state(const SuperposedCoherentState& state) {
  if (state.alpha0 < 0.0) throw std::domain_error("alpha0 must be non-negative");
  if (state.kind == StateKind::Quantum && 1.0 + coherence_factor(state) <= 0.0) {
    throw std::domain_error("unnormalizable superposition: 1 + C_i <= 0");
  }
}

} // namespace clockdil
