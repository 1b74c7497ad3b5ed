#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clockdil/clock_model.hpp"
#include "clockdil/dilation.hpp"
#include "clockdil/sweep.hpp"
#include "clockdil/units.hpp"

namespace {

constexpr double pi = 3.14159265358979323846;

// "10nm", "0.2um", "1e-8m", "12pm"; bare numbers are meters.
double parse_length(const std::string& text) {
  size_t pos = 0;
  double value;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw CLI::ValidationError("length", "cannot parse '" + text + "'");
  }
  std::string unit = text.substr(pos);
  if (unit.empty() || unit == "m") return value;
  if (unit == "pm") return value * 1e-12;
  if (unit == "nm") return value * 1e-9;
  if (unit == "um") return value * 1e-6;
  if (unit == "mm") return value * 1e-3;
  throw CLI::ValidationError("length", "unknown unit '" + unit + "'");
}

struct AtomOptions {
  std::string preset = "mg24";
  std::string file;
};

void add_atom_options(CLI::App* cmd, AtomOptions& opts) {
  cmd->add_option("--atom", opts.preset, "atom preset (see --atom list on error)");
  cmd->add_option("--atom-file", opts.file, "key-value atom spec file (overrides --atom)");
}

clockdil::AtomSpec resolve_atom(const AtomOptions& opts) {
  if (!opts.file.empty()) return clockdil::load_atom_spec(opts.file);
  return clockdil::atom_preset(opts.preset);
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw CLI::ValidationError("grid", "need at least one point");
  if (points == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[size_t(i)] = lo + (hi - lo) * i / (points - 1);
  return g;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo)) throw CLI::ValidationError("grid", "need 0 < min < max");
  if (points < 2) throw CLI::ValidationError("grid", "need at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    g[size_t(i)] = std::pow(10.0, llo + (lhi - llo) * i / (points - 1));
  }
  return g;
}

void emit_table(const clockdil::SweepTable& table, const std::string& format,
                const std::string& output) {
  if (format != "csv" && format != "json") {
    throw CLI::ValidationError("--format", "must be csv or json");
  }
  if (output.empty()) {
    std::cout << (format == "csv" ? clockdil::to_csv(table) : clockdil::to_json(table));
    return;
  }
  if (format == "csv") {
    clockdil::write_table_csv(table, output);
  } else {
    clockdil::write_table_json(table, output);
  }
}

int cmd_params(const AtomOptions& atom_opts, double depth, double T,
               const std::string& d_text) {
  clockdil::AtomSpec atom = resolve_atom(atom_opts);
  clockdil::LatticeSpec lattice{depth, T};
  const auto derived = clockdil::derive_lattice(atom, lattice);
  std::printf("atom                 %s\n", atom.name.c_str());
  std::printf("mass                 %.10e kg\n", derived.mass);
  std::printf("magic_wavelength     %.10e m\n", atom.magic_wavelength);
  std::printf("clock_frequency      %.10e rad/s\n", atom.clock_angular_frequency);
  std::printf("lattice_k            %.10e 1/m\n", derived.k);
  std::printf("recoil_energy        %.10e J\n", derived.E_r);
  std::printf("trap_depth           %.10e J (%g E_r)\n", derived.U_max, depth);
  std::printf("omega_z              %.10e rad/s\n", derived.omega_z);
  std::printf("ground_length        %.10e m\n", derived.z_s);
  std::printf("C_g                  %.10e\n", derived.C_g);
  std::printf("C_r                  %.10e\n", derived.C_r);
  std::printf("C_k                  %.10e\n", derived.C_k);
  if (!d_text.empty()) {
    const double d = parse_length(d_text);
    std::printf("alpha(d=%.6g m)      %.6f\n", d, clockdil::displacement_to_alpha(d, derived));
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-clock time-dilation prediction tool"};
  app.require_subcommand(1);
  app.set_config("--config");

  AtomOptions params_atom, disp_atom, noise_atom;
  double depth = 300.0, T = 1.0;
  double theta = pi / 4.0, phi = pi;
  std::string d_text;
  std::string format = "csv", output;

  auto* params = app.add_subcommand("params", "print derived trap parameters");
  add_atom_options(params, params_atom);
  params->add_option("--depth", depth, "trap depth in recoil energies")->capture_default_str();
  params->add_option("--T", T, "interrogation time, s")->capture_default_str();
  params->add_option("--d", d_text, "wave-packet displacement (length with unit suffix)");

  int d_points = 61;
  auto* disp = app.add_subcommand("sweep-displacement",
                                  "quantum/classical discrepancy vs displacement");
  add_atom_options(disp, disp_atom);
  disp->add_option("--depth", depth, "trap depth in recoil energies")->capture_default_str();
  disp->add_option("--T", T, "interrogation time, s")->capture_default_str();
  disp->add_option("--theta", theta, "superposition angle, rad")->capture_default_str();
  disp->add_option("--phi", phi, "superposition phase, rad")->capture_default_str();
  std::string d_min_text = "0m", d_max_text = "30nm";
  disp->add_option("--d-min", d_min_text, "grid start (length)")->capture_default_str();
  disp->add_option("--d-max", d_max_text, "grid end (length)")->capture_default_str();
  disp->add_option("--points", d_points, "grid size")->capture_default_str();
  disp->add_option("--format", format, "csv or json")->capture_default_str();
  disp->add_option("--output", output, "output path (default stdout)");

  double ga_min = 1e-2, ga_max = 1e2, gd_min = 1e-2, gd_max = 1e2;
  int ga_points = 9, gd_points = 9;
  std::string noise_d_text = "10nm";
  auto* noise = app.add_subcommand("sweep-noise",
                                   "discrepancy and variance vs damping/diffusion rates");
  add_atom_options(noise, noise_atom);
  noise->add_option("--depth", depth, "trap depth in recoil energies")->capture_default_str();
  noise->add_option("--T", T, "interrogation time, s")->capture_default_str();
  noise->add_option("--theta", theta, "superposition angle, rad")->capture_default_str();
  noise->add_option("--phi", phi, "superposition phase, rad")->capture_default_str();
  noise->add_option("--d", noise_d_text, "displacement (length)")->capture_default_str();
  noise->add_option("--ga-min", ga_min, "amplitude rate grid start, Hz")->capture_default_str();
  noise->add_option("--ga-max", ga_max, "amplitude rate grid end, Hz")->capture_default_str();
  noise->add_option("--ga-points", ga_points, "amplitude grid size (log-spaced)")
      ->capture_default_str();
  noise->add_option("--gd-min", gd_min, "diffusion rate grid start, Hz")->capture_default_str();
  noise->add_option("--gd-max", gd_max, "diffusion rate grid end, Hz")->capture_default_str();
  noise->add_option("--gd-points", gd_points, "diffusion grid size (log-spaced)")
      ->capture_default_str();
  noise->add_option("--format", format, "csv or json")->capture_default_str();
  noise->add_option("--output", output, "output path (default stdout)");

  clockdil::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify",
                                    "dimensionless-regime oracle vs analytic checks");
  verify->add_option("--threads", verify_opts.threads, "worker threads (0 = auto)")
      ->capture_default_str();
  verify->add_option("--fock-dim", verify_opts.fock_dim, "Fock-space truncation")
      ->capture_default_str();
  verify->add_flag("--corrupt-diffusion", verify_opts.corrupt_diffusion_rule,
                   "negative control: skew the analytic diffusion rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (params->parsed()) return cmd_params(params_atom, depth, T, d_text);

    if (disp->parsed()) {
      clockdil::SweepConfig cfg;
      cfg.atom = resolve_atom(disp_atom);
      cfg.lattice = {depth, T};
      cfg.theta = theta;
      cfg.phi = phi;
      cfg.displacements = linear_grid(parse_length(d_min_text), parse_length(d_max_text),
                                      d_points);
      emit_table(clockdil::sweep_displacement(cfg), format, output);
      return 0;
    }

    if (noise->parsed()) {
      clockdil::SweepConfig cfg;
      cfg.atom = resolve_atom(noise_atom);
      cfg.lattice = {depth, T};
      cfg.theta = theta;
      cfg.phi = phi;
      cfg.displacements = {parse_length(noise_d_text)};
      cfg.gamma_a = log_grid(ga_min, ga_max, ga_points);
      cfg.gamma_d = log_grid(gd_min, gd_max, gd_points);
      emit_table(clockdil::sweep_noise(cfg), format, output);
      return 0;
    }

    if (verify->parsed()) {
      const auto checks = clockdil::run_verification(verify_opts);
      int failed = 0;
      for (const auto& c : checks) {
        std::printf("[%s] %-60s rel_err %.3e (threshold %.0e)\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.error, c.threshold);
        if (!c.pass) ++failed;
      }
      std::printf("%zu checks, %d failed\n", checks.size(), failed);
      return failed == 0 ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
