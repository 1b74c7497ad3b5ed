#ifndef CLOCKDIL_SWEEP_HPP
#define CLOCKDIL_SWEEP_HPP

#include <string>
#include <vector>

#include "clockdil/dilation.hpp"
#include "clockdil/units.hpp"

namespace clockdil {

struct SweepConfig {
  AtomSpec atom;
  LatticeSpec lattice;
  double theta = 0.0;
  double phi = 0.0;
  std::vector<double> displacements; // m
  std::vector<double> gamma_a;       // Hz
  std::vector<double> gamma_d;       // Hz
  double kappa = 1.0;
};

struct SweepTable {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Rows (d, alpha0, |Delta1_coh|, Delta2_cq_sq, relative_discrepancy) over the
// displacement grid. Grids must be non-empty and strictly increasing.
SweepTable sweep_displacement(const SweepConfig& config);

// Rows (gamma_a, gamma_d, |Delta1_coh|, Delta2_cq_sq, delta) over the rate
// grids. Delta1 follows the amplitude-damping form; the variance adds the
// amplitude and diffusion modifications independently (documented
// approximation, probed by run_verification's composition check).
SweepTable sweep_noise(const SweepConfig& config);

// Fixed column order, header row, %.16e cells.
std::string to_csv(const SweepTable& table);
void write_table_csv(const SweepTable& table, const std::string& path);

// {"schema": 1, "kind": ..., "columns": [...], "rows": [[...], ...]}
std::string to_json(const SweepTable& table);
SweepTable table_from_json(const std::string& text);
void write_table_json(const SweepTable& table, const std::string& path);

struct VerifyCheck {
  std::string name;
  double error = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  int threads = 0;   // <= 0: hardware concurrency
  int fock_dim = 32;
  // Negative-control hook: skews the diffusion rate fed to the analytic side
  // so the diffusion comparisons must fail.
  bool corrupt_diffusion_rule = false;
};

// Dimensionless-regime verification: quadrature oracle vs analytic engine,
// engine (non-oscillating) vs closed forms, per-monomial channel rules, and
// the amplitude+diffusion composition probe.
std::vector<VerifyCheck> run_verification(const VerifyOptions& options = {});

} // namespace clockdil

#endif
