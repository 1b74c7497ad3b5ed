#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "clockdil/sweep.hpp"
#include "clockdil/units.hpp"

namespace {

std::string g_cli;

int run(const std::string& args, std::string* output = nullptr) {
  const std::string out_path = "cli_test_out.tmp";
  const std::string cmd = g_cli + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(out_path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  std::remove(out_path.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("params output") {
  std::string out;
  CHECK(run("params --atom mg24 --depth 300 --d 10nm", &out) == 0);
  CHECK(out.find("omega_z") != std::string::npos);
  CHECK(out.find("0.395093") != std::string::npos);
  CHECK(run("params --atom sr87 --d 10nm", &out) == 0);
  CHECK(out.find("0.227434") != std::string::npos);
}

TEST_CASE("usage and validation errors exit 2") {
  std::string out;
  CHECK(run("", &out) == 2);
  CHECK(run("params --atom unobtainium", &out) == 2);
  CHECK(out.find("mg24") != std::string::npos); // lists available presets
  CHECK(run("params --atom mg24 --depth 0", &out) == 2);
  CHECK(run("params --d 10parsec", &out) == 2);
  CHECK(run("no-such-command", &out) == 2);
}

TEST_CASE("displacement sweep CSV is deterministic") {
  const std::string args =
      "sweep-displacement --atom mg24 --points 7 --d-max 21nm --format csv --output ";
  CHECK(run(args + "cli_a.tmp") == 0);
  CHECK(run(args + "cli_b.tmp") == 0);
  const std::string a = slurp("cli_a.tmp"), b = slurp("cli_b.tmp");
  CHECK(!a.empty());
  CHECK(a == b);
  CHECK(a.substr(0, a.find('\n')) ==
        "d_m,alpha0,abs_delta1_coh_s,delta2_cq_sq_s2,relative_discrepancy");
  // zero-displacement row is all zeros after the abscissa
  const auto line2 = a.substr(a.find('\n') + 1, a.find('\n', a.find('\n') + 1) - a.find('\n') - 1);
  CHECK(line2.find("0.0000000000000000e+00,0.0000000000000000e+00,"
                   "0.0000000000000000e+00,0.0000000000000000e+00") != std::string::npos);
  std::remove("cli_a.tmp");
  std::remove("cli_b.tmp");
}

TEST_CASE("json output round-trips") {
  CHECK(run("sweep-displacement --atom sr87 --points 5 --d-min 2nm --d-max 10nm "
            "--format json --output cli_j.tmp") == 0);
  const clockdil::SweepTable table = clockdil::table_from_json(slurp("cli_j.tmp"));
  std::remove("cli_j.tmp");
  CHECK(table.kind == "displacement");
  REQUIRE(table.rows.size() == 5);

  clockdil::SweepConfig cfg;
  cfg.atom = clockdil::atom_preset("sr87");
  cfg.lattice = {300.0, 1.0};
  cfg.theta = 3.14159265358979323846 / 4.0;
  cfg.phi = 3.14159265358979323846;
  for (int i = 0; i < 5; ++i) cfg.displacements.push_back(2e-9 + 2e-9 * i);
  const clockdil::SweepTable direct = clockdil::sweep_displacement(cfg);
  REQUIRE(direct.rows.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    for (size_t c = 0; c < direct.columns.size(); ++c) {
      CHECK(table.rows[i][c] == doctest::Approx(direct.rows[i][c]).epsilon(1e-14));
    }
  }
}

TEST_CASE("noise sweep") {
  std::string out;
  CHECK(run("sweep-noise --atom mg24 --d 10nm --ga-points 3 --gd-points 3 "
            "--ga-min 0.1 --ga-max 10 --gd-min 0.1 --gd-max 10",
            &out) == 0);
  CHECK(out.substr(0, out.find('\n')) ==
        "gamma_a_hz,gamma_d_hz,abs_delta1_coh_s,delta2_cq_sq_s2,delta_margin_s");
  int lines = 0;
  for (char ch : out) lines += ch == '\n';
  CHECK(lines == 10); // header + 3x3 grid
}

TEST_CASE("library-level sweep validation") {
  clockdil::SweepConfig cfg;
  cfg.atom = clockdil::atom_preset("mg24");
  cfg.lattice = {300.0, 1.0};
  CHECK_THROWS_AS((void)clockdil::sweep_displacement(cfg), std::invalid_argument);
  cfg.displacements = {2e-9, 1e-9}; // not increasing
  CHECK_THROWS_AS((void)clockdil::sweep_displacement(cfg), std::invalid_argument);
}

int main(int argc, char** argv) {
  doctest::Context context;
  int doctest_argc = argc;
  if (argc > 1 && argv[argc - 1][0] != '-') {
    g_cli = argv[argc - 1];
    --doctest_argc;
  } else {
    g_cli = "./clockdil";
  }
  context.applyCommandLine(doctest_argc, argv);
  return context.run();
}
