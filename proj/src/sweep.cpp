#include "clockdil/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "clockdil/fock_oracle.hpp"
#include "clockdil/integral_engine.hpp"

namespace clockdil {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) {
      throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
    }
  }
}

std::string format_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

// Independent composition of the amplitude and diffusion modifications on top
// of the free baseline.
struct ComposedNoise {
  double Delta1 = 0.0;
  double Delta2_qtm_sq = 0.0;
  double Delta2_cls_sq = 0.0;
  double Delta2_cq_sq = 0.0;
};

ComposedNoise compose_noise(const DilationReport& amp, const DilationReport& dif,
                            const DilationReport& base) {
  ComposedNoise c;
  c.Delta1 = amp.Delta1_coh;
  c.Delta2_qtm_sq = amp.Delta2_qtm_sq + (dif.Delta2_qtm_sq - base.Delta2_qtm_sq);
  c.Delta2_cls_sq = amp.Delta2_cls_sq + (dif.Delta2_cls_sq - base.Delta2_cls_sq);
  c.Delta2_cq_sq = c.Delta2_qtm_sq + c.Delta2_cls_sq;
  return c;
}

} // namespace

SweepTable sweep_displacement(const SweepConfig& config) {
  check_grid(config.displacements, "displacement");
  const LatticeDerived derived = derive_lattice(config.atom, config.lattice);
  const double T = config.lattice.interrogation_time;

  SweepTable table;
  table.kind = "displacement";
  table.columns = {"d_m", "alpha0", "abs_delta1_coh_s", "delta2_cq_sq_s2",
                   "relative_discrepancy"};
  for (double d : config.displacements) {
    const double alpha0 = displacement_to_alpha(d, derived);
    if (alpha0 == 0.0) {
      // Both branches collapse onto the motional ground state; the quantum
      // and classical descriptions coincide and every discrepancy vanishes.
      table.rows.push_back({d, 0.0, 0.0, 0.0, 0.0});
      continue;
    }
    const DilationReport r = free_report(derived, alpha0, config.theta, config.phi, T);
    table.rows.push_back({d, alpha0, std::abs(r.Delta1_coh), r.Delta2_cq_sq,
                          std::abs(r.relative_discrepancy)});
  }
  return table;
}

SweepTable sweep_noise(const SweepConfig& config) {
  check_grid(config.gamma_a, "gamma_a");
  check_grid(config.gamma_d, "gamma_d");
  if (config.displacements.size() != 1) {
    throw std::invalid_argument("noise sweep needs exactly one displacement");
  }
  const LatticeDerived derived = derive_lattice(config.atom, config.lattice);
  const double T = config.lattice.interrogation_time;
  const double alpha0 = displacement_to_alpha(config.displacements.front(), derived);

  SweepTable table;
  table.kind = "noise";
  table.columns = {"gamma_a_hz", "gamma_d_hz", "abs_delta1_coh_s", "delta2_cq_sq_s2",
                   "delta_margin_s"};
  const DilationReport base = free_report(derived, alpha0, config.theta, config.phi, T);
  for (double ga : config.gamma_a) {
    const DilationReport amp =
        amplitude_report(derived, alpha0, config.theta, config.phi, T, ga);
    for (double gd : config.gamma_d) {
      const DilationReport dif =
          diffusion_report(derived, alpha0, config.theta, config.phi, T, gd);
      const ComposedNoise c = compose_noise(amp, dif, base);
      const double delta = std::abs(c.Delta1) - std::sqrt(c.Delta2_cq_sq);
      table.rows.push_back({ga, gd, std::abs(c.Delta1), c.Delta2_cq_sq, delta});
    }
  }
  return table;
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const SweepTable& table) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = table.kind;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  return j.dump(2) + "\n";
}

SweepTable table_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("schema") || j["schema"].get<int>() != 1) {
    throw std::runtime_error("unsupported table schema");
  }
  SweepTable table;
  table.kind = j["kind"].get<std::string>();
  table.columns = j["columns"].get<std::vector<std::string>>();
  table.rows = j["rows"].get<std::vector<std::vector<double>>>();
  return table;
}

namespace {

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace

void write_table_csv(const SweepTable& table, const std::string& path) {
  write_text(to_csv(table), path);
}

void write_table_json(const SweepTable& table, const std::string& path) {
  write_text(to_json(table), path);
}

namespace {

double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

double rel_err(cplx got, cplx want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

struct VerifyCase {
  NoiseChannel channel;
  double T;
  SuperposedCoherentState state;
  std::string name;
};

std::vector<VerifyCase> verification_grid() {
  std::vector<VerifyCase> cases;
  const std::vector<NoiseChannel> channels = {
      NoiseChannel::free(), NoiseChannel::amplitude(0.02), NoiseChannel::phase(0.02),
      NoiseChannel::diffusion(0.02)};
  for (const auto& ch : channels) {
    for (double T : {20.0, 50.0}) {
      for (double a0 : {0.3, 0.8}) {
        for (double th : {pi / 4.0, pi / 8.0}) {
          for (double ph : {pi, pi / 2.0}) {
            VerifyCase c;
            c.channel = ch;
            c.T = T;
            c.state = {a0, 0.0, th, ph, StateKind::Quantum};
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%s T=%g a0=%g theta=%.3f phi=%.3f",
                          channel_name(ch), T, a0, th, ph);
            c.name = buf;
            cases.push_back(std::move(c));
          }
        }
      }
    }
  }
  return cases;
}

NoiseChannel analytic_side_channel(const NoiseChannel& ch, const VerifyOptions& opts) {
  if (opts.corrupt_diffusion_rule && ch.kind == ChannelKind::Diffusion) {
    return NoiseChannel::diffusion(ch.rate * 1.05);
  }
  return ch;
}

} // namespace

std::vector<VerifyCheck> run_verification(const VerifyOptions& options) {
  const LatticeDerived derived = dimensionless_lattice(1.0, 0.3, 0.2, 0.25, 0.15);
  const std::vector<VerifyCase> cases = verification_grid();

  std::vector<VerifyCheck> checks;

  // Closed forms vs the analytic engine with oscillating terms excluded.
  for (const auto& c : cases) {
    const NoiseChannel ch = analytic_side_channel(c.channel, options);
    const DilationReport rep = channel_report(ch, derived, c.state.alpha0, c.state.theta,
                                              c.state.phi, c.T);
    SuperposedCoherentState qtm = c.state, cls = c.state;
    cls.kind = StateKind::Classical;
    const IntegralResult rq = compute_integrals(c.channel, derived, qtm, c.T);
    const IntegralResult rc = compute_integrals(c.channel, derived, cls, c.T);
    double err = rel_err(cplx(rep.I1_qtm), rq.I1.non_oscillating);
    err = std::max(err, rel_err(cplx(rep.I1_cls), rc.I1.non_oscillating));
    err = std::max(err, rel_err(cplx(rep.I2_qtm), rq.I2.non_oscillating));
    err = std::max(err, rel_err(cplx(rep.I2_cls), rc.I2.non_oscillating));
    VerifyCheck chk;
    chk.name = "closedform/" + c.name;
    chk.error = err;
    chk.threshold = 1e-12;
    chk.pass = err < chk.threshold;
    checks.push_back(std::move(chk));
  }

  // Quadrature oracle vs the analytic engine with oscillating terms included.
  std::vector<VerifyCheck> oracle_checks(cases.size());
  {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cases.size()) return;
        const VerifyCase& c = cases[i];
        VerifyCheck chk;
        chk.name = "oracle/" + c.name;
        chk.threshold = 1e-4;
        try {
          OracleGrid grid;
          grid.fock_dim = options.fock_dim;
          const auto [oi1, oi2] = oracle_I1_I2(c.channel, derived, c.state, c.T, grid);
          const NoiseChannel ch = analytic_side_channel(c.channel, options);
          const IntegralResult res = compute_integrals(ch, derived, c.state, c.T);
          chk.error = std::max(rel_err(oi1, res.I1.total()), rel_err(oi2, res.I2.total()));
          chk.pass = chk.error < chk.threshold;
        } catch (const std::exception& e) {
          chk.name += std::string(" [") + e.what() + "]";
          chk.error = 1.0;
          chk.pass = false;
        }
        oracle_checks[i] = std::move(chk);
      }
    };
    int n = options.threads > 0 ? options.threads
                                : int(std::thread::hardware_concurrency());
    n = std::max(1, std::min<int>(n, int(cases.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }
  for (auto& chk : oracle_checks) checks.push_back(std::move(chk));

  // Per-monomial channel rules, adjoint ODE vs the rule table.
  {
    const int N = 24;
    const FockSpace fock(N);
    const double t = 0.7;
    for (const NoiseChannel ch : {NoiseChannel::free(), NoiseChannel::amplitude(0.05),
                                  NoiseChannel::phase(0.05), NoiseChannel::diffusion(0.05)}) {
      const NoiseChannel rule_ch = analytic_side_channel(ch, options);
      double err = 0.0;
      for (int m = 0; m + 0 <= 6; ++m) {
        for (int n = 0; m + n <= 6; ++n) {
          const Matrix op = poly_matrix(NormalOrderedPoly::monomial(m, n), fock);
          // High-order monomials rotate at |m-n| omega; step well below the
          // degree-2 default to hold the RK4 phase error under the threshold.
          const Matrix num = adjoint_evolve_operator(op, ch, derived.omega_z, t, 400, fock);
          const Matrix ana =
              poly_matrix(evolve(NormalOrderedPoly::monomial(m, n), rule_ch,
                                 derived.omega_z)
                              .at_time(t),
                          fock);
          // Truncation contaminates the top of the ladder; compare the block
          // that exact and truncated generators agree on.
          const int B = N / 2;
          const double scale = std::max(ana.topLeftCorner(B, B).norm(), 1e-300);
          err = std::max(err, (num.topLeftCorner(B, B) - ana.topLeftCorner(B, B)).norm() /
                                  scale);
        }
      }
      VerifyCheck chk;
      chk.name = std::string("channel-rules/") + channel_name(ch);
      chk.error = err;
      chk.threshold = 1e-6;
      chk.pass = err < chk.threshold;
      checks.push_back(std::move(chk));
    }
  }

  // Composition probe: simultaneous amplitude + diffusion dissipators against
  // the independent composition. The cross terms are O(Gamma_a Gamma_d T^2),
  // a few percent here, so this guards against gross errors only.
  {
    const double T = 20.0, ga = 0.02, gd = 0.02;
    const SuperposedCoherentState state{0.8, 0.0, pi / 4.0, pi, StateKind::Quantum};
    VerifyCheck chk;
    chk.name = "composition/amplitude+diffusion";
    chk.threshold = 1e-1;
    try {
      OracleGrid grid;
      grid.fock_dim = options.fock_dim;
      const auto [ji1, ji2] = oracle_I1_I2_multi(
          {NoiseChannel::amplitude(ga), NoiseChannel::diffusion(gd)}, derived, state, T,
          grid);
      const IntegralResult ra = compute_integrals(NoiseChannel::amplitude(ga), derived,
                                                  state, T);
      const IntegralResult rd = compute_integrals(
          analytic_side_channel(NoiseChannel::diffusion(gd), options), derived, state, T);
      const IntegralResult rf = compute_integrals(NoiseChannel::free(), derived, state, T);
      const cplx ci1 = ra.I1.total() + rd.I1.total() - rf.I1.total();
      const cplx ci2 = ra.I2.total() + rd.I2.total() - rf.I2.total();
      chk.error = std::max(rel_err(ci1, ji1), rel_err(ci2, ji2));
      chk.pass = chk.error < chk.threshold;
    } catch (const std::exception& e) {
      chk.name += std::string(" [") + e.what() + "]";
      chk.error = 1.0;
      chk.pass = false;
    }
    checks.push_back(std::move(chk));
  }

  return checks;
}

} // namespace clockdil
