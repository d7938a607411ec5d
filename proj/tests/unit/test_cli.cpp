#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "eitsim/spectroscopy.hpp"
#include "runner.hpp"

using namespace eitsim;
using namespace eitsim::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("eitsim_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

int run_sim(const std::string& args, const fs::path& err, const std::string& env = {}) {
  const std::string cmd =
      env + " \"" EITSIM_SIM_EXE "\" " + args + " > /dev/null 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

template <class F>
std::size_t parse_error_line(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

constexpr const char* kTinyPropagate = R"(scenario = propagate
[probe]
g0 = 0
[control]
kind = super_gaussian
G0 = 2
tau2 = 300
sigma_p = 80
[grid]
tau_max = 600
n_tau = 1201
zeta_max = 10
n_zeta = 20
snapshots = 5, 10
)";

}  // namespace

TEST_CASE("minimal config takes the documented defaults") {
  const RunConfig c = parse_config("scenario = propagate\n");
  CHECK(c.kind == ScenarioKind::propagate);
  CHECK(c.kind_declared);
  CHECK(c.probe.kind == ProbeKind::gaussian);
  CHECK(c.probe.g0 == 0.1);
  CHECK(c.probe.tau0 == 200);
  CHECK(c.probe.sigma == 90);
  CHECK(c.control.kind == ControlKind::cw);
  CHECK(c.control.G0 == 3.16);
  CHECK(c.grid.tau_min == 0);
  CHECK(c.grid.tau_max == 1000);
  CHECK(c.grid.n_tau == 10001);
  CHECK(c.grid.zeta_max == 3200);
  CHECK(c.grid.n_zeta == 8000);
  CHECK(c.grid.snapshots == std::vector<double>{800, 1600, 2400, 3200});
  CHECK(c.scan.n_points == 1601);
  CHECK(c.output_dir == "out");
  CHECK(!c.physical);
  CHECK(c.g0_values() == std::vector<double>{0.1});
  CHECK(!parse_config("# nothing\n\n").kind_declared);
}

TEST_CASE("odd switching exponent is a validation error") {
  try {
    (void)parse_config("[control]\nkind = super_gaussian\nalpha = 3\n");
    FAIL("accepted alpha = 3");
  } catch (const ValidationError& e) {
    CHECK(e.fields() == std::vector<std::string>{"control.alpha"});
  }
}

TEST_CASE("shipped intense-probe config") {
  const RunConfig c = load_config(fs::path(EITSIM_CONFIG_DIR) / "adiabaton_intense.cfg");
  CHECK(c.kind == ScenarioKind::adiabaton_compare);
  CHECK(c.probe.g0 == 1.14);
  CHECK(c.control.G0 == 3.16);
  CHECK(c.probe.tau0 == 200);
  CHECK(c.probe.sigma == 90);
  CHECK(c.control.kind == ControlKind::cw);
  CHECK(c.scenario().oracle_compare);
}

TEST_CASE("every shipped config parses") {
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(EITSIM_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path()).grid.build());
    ++n;
  }
  CHECK(n >= 6);
}

TEST_CASE("parse errors carry the line number") {
  CHECK(parse_error_line([] { parse_config("scenario = propagate\n[grid]\nn_tua = 5\n"); }) == 3);
  CHECK(parse_error_line([] { parse_config("\n[gird]\n"); }) == 2);
  CHECK(parse_error_line([] { parse_config("[probe]\ng0 = abc\n"); }) == 2);
  CHECK(parse_error_line([] { parse_config("[probe]\ng0 = 1\n\ng0 = 2\n"); }) == 4);
  CHECK(parse_error_line([] { parse_config("[probe]\ng0 1\n"); }) == 2);
  CHECK(parse_error_line([] { parse_config("scenario = fly\n"); }) == 1);
  CHECK(parse_error_line([] { parse_config("g0 = 1\n"); }) == 1);
  CHECK(parse_error_line([] { parse_config("[probe\n"); }) == 1);
  CHECK(parse_error_line([] { parse_config("[grid]\nn_tau = -3\n"); }) == 2);
  CHECK(parse_error_line([] { parse_config("[medium]\nfreeze_control = maybe\n"); }) == 2);
}

TEST_CASE("values, comments and lists") {
  const RunConfig c = parse_config(R"(
# leading comment
scenario = susceptibility   # trailing comment
[probe]
kind = double_sech
g0 = 0.4
sigma = 20
tau0 = 150
[control]
kind = super_gaussian
alpha = 100
hold = 50
[medium]
detuning = 0.25
ground_decay = 0.001
freeze_control = true
[scan]
g0_list = 0.1, 0.5 ,1.0
n_points = 11
[output]
dir = results/run 1
[physical]
lambda = 795e-9
density = 1e17
gamma = 3.8e7
)");
  CHECK(c.kind == ScenarioKind::susceptibility);
  CHECK(c.probe.kind == ProbeKind::double_sech);
  CHECK(c.probe.tau1 == 150 + 4 * 20);
  CHECK(c.control.alpha == 100);
  CHECK(c.control.hold == 50);
  CHECK(c.medium.bloch.detuning == 0.25);
  CHECK(c.medium.bloch.ground_decay == 0.001);
  CHECK(c.medium.freeze_control);
  CHECK(c.scan.g0_list == std::vector<double>{0.1, 0.5, 1.0});
  CHECK(c.output_dir == "results/run 1");
  REQUIRE(c.physical);
  CHECK(c.physical->wavelength == 795e-9);

  CHECK(parse_config("[probe]\nkind = double_sech\ntau1 = 999\n").probe.tau1 == 999);
  CHECK_THROWS_AS(parse_config("[physical]\nlambda = -1\ndensity = 1\ngamma = 1\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config("[grid]\ntau_max = -1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[scan]\nn_points = 2\n"), ValidationError);
}

TEST_CASE("scenario names round-trip") {
  for (auto k : {ScenarioKind::propagate, ScenarioKind::store_retrieve,
                 ScenarioKind::susceptibility, ScenarioKind::adiabaton_compare,
                 ScenarioKind::intensity_curve}) {
    CHECK(scenario_from_string(to_string(k)) == k);
  }
  CHECK(!scenario_from_string("storage"));
}

TEST_CASE("envelope csv round-trip keeps twelve significant digits") {
  const TauAxis axis{-3, 7, 41};
  std::vector<cplx> g(axis.size), G(axis.size), r(axis.size);
  for (std::size_t i = 0; i < axis.size; ++i) {
    const double t = axis.at(i);
    g[i] = {std::sin(t) / 3.0, 1e-17 * t};
    G[i] = {M_PI * std::exp(-t), -2.0 / 7.0};
    r[i] = {-1.0 / (1.0 + t * t), std::cos(t) * 1e-5};
  }
  const fs::path dir = scratch("roundtrip");
  fs::create_directories(dir);
  const fs::path file = dir / envelope_file_name(12.5);
  CHECK(file.filename() == "envelope_zeta_12.5.csv");
  write_envelope_csv(file, Envelope(axis, g), Envelope(axis, G), r);
  const EnvelopeTable t = read_envelope_csv(file);
  REQUIRE(t.tau.size() == axis.size);
  auto close = [](cplx a, cplx b) {
    return std::abs(a.real() - b.real()) <= 5e-12 * std::abs(b.real()) &&
           std::abs(a.imag() - b.imag()) <= 5e-12 * std::abs(b.imag());
  };
  for (std::size_t i = 0; i < axis.size; ++i) {
    CHECK(t.tau[i] == doctest::Approx(axis.at(i)).epsilon(1e-12));
    CHECK(close(t.probe[i], g[i]));
    CHECK(close(t.control[i], G[i]));
    CHECK(close(t.rho32[i], r[i]));
  }
  fs::remove_all(dir);
}

TEST_CASE("zero probe run writes the boundary at every depth") {
  const RunConfig c = parse_config(kTinyPropagate);
  const fs::path dir = scratch("zero");
  std::ostringstream log;
  const auto files = run(c, {dir, 1}, log);
  CHECK(fs::exists(dir / "metrics.csv"));
  const std::string boundary = slurp(dir / "envelope_zeta_0.csv");
  std::string header;
  CHECK(read_csv(dir / "envelope_zeta_0.csv", &header).size() == 1201);
  CHECK(header == "gamma_tau,probe_re,probe_im,control_re,control_im,rho32_re,rho32_im");
  CHECK(slurp(dir / "envelope_zeta_5.csv") == boundary);
  CHECK(slurp(dir / "envelope_zeta_10.csv") == boundary);
  CHECK(log.str().find("zeta=10 probe=none") != std::string::npos);
  CHECK(files.size() == 4);
  fs::remove_all(dir);
}

TEST_CASE("identical runs produce identical bytes") {
  RunConfig c = parse_config(kTinyPropagate);
  c.probe.g0 = 0.8;
  c.probe.tau0 = 150;
  c.probe.sigma = 20;
  const fs::path dir = scratch("determinism");
  std::ostringstream log1, log2;
  (void)run(c, {dir, 1}, log1);
  const std::string first = slurp(dir / "envelope_zeta_10.csv");
  const std::string metrics = slurp(dir / "metrics.csv");
  (void)run(c, {dir, 1}, log2);
  CHECK(slurp(dir / "envelope_zeta_10.csv") == first);
  CHECK(slurp(dir / "metrics.csv") == metrics);
  CHECK(log1.str() == log2.str());
  fs::remove_all(dir);
}

TEST_CASE("susceptibility run writes one scan per probe amplitude") {
  const fs::path dir = scratch("susceptibility");
  const RunConfig c = load_config(fs::path(EITSIM_CONFIG_DIR) / "susceptibility.cfg");
  std::ostringstream log;
  (void)run(c, {dir, 2}, log);
  CHECK(log.str().find("eta=") != std::string::npos);
  double prev = INFINITY;
  for (const char* name : {"0.1", "0.5", "1"}) {
    const auto rows = read_csv(dir / ("susceptibility_g0_" + std::string(name) + ".csv"));
    SusceptibilityScan scan;
    for (const auto& r : rows) {
      scan.detunings.push_back(r[0]);
      scan.absorption.push_back(r[1]);
    }
    const double w = transparency_width(scan);
    CHECK(w < prev);
    prev = w;
  }
  CHECK(read_csv(dir / "metrics.csv").size() == 3);
  fs::remove_all(dir);
}

TEST_CASE("adiabaton comparison on the quarter-depth config") {
  const fs::path dir = scratch("adiabaton");
  const RunConfig c = load_config(fs::path(EITSIM_CONFIG_DIR) / "adiabaton_quarter.cfg");
  std::ostringstream log;
  (void)run(c, {dir, 1}, log);
  std::string header;
  const auto rows = read_csv(dir / "oracle_residual.csv", &header);
  CHECK(header.rfind("zeta,probe_residual,control_residual", 0) == 0);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r[1] <= 0.05 * 1.14);
    CHECK(r[2] <= 0.05 * 3.16);
  }
  CHECK(fs::exists(dir / "oracle_zeta_600.csv"));
  CHECK(log.str().find("v_conservation_error=") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("output directory precedence") {
  const RunConfig c = parse_config("[output]\ndir = from_config\n");
  ::unsetenv(kOutputDirEnv);
  CHECK(resolve_output_dir(std::nullopt, c) == "from_config");
  ::setenv(kOutputDirEnv, "from_env", 1);
  CHECK(resolve_output_dir(std::nullopt, c) == "from_env");
  CHECK(resolve_output_dir(std::string("from_flag"), c) == "from_flag");
  ::unsetenv(kOutputDirEnv);
}

TEST_CASE("sim executable") {
  const fs::path dir = scratch("exe");
  fs::create_directories(dir);
  const fs::path err = dir / "stderr.txt";

  SUBCASE("success honours the environment override") {
    const fs::path cfg = dir / "ok.cfg";
    std::ofstream(cfg) << kTinyPropagate;
    const fs::path out = dir / "env_out";
    CHECK(run_sim("propagate --config \"" + cfg.string() + "\"", err,
                  "EITSIM_OUTPUT_DIR=\"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "envelope_zeta_10.csv"));
  }

  SUBCASE("validation failures produce a machine-readable line") {
    const fs::path cfg = dir / "bad.cfg";
    std::ofstream(cfg) << "[control]\nkind = super_gaussian\nalpha = 3\n";
    CHECK(run_sim("propagate --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"",
                  err) != 0);
    const std::string text = slurp(err);
    CHECK(text.rfind("error kind=validation fields=control.alpha message=\"", 0) == 0);
  }

  SUBCASE("parse failures name the line") {
    const fs::path cfg = dir / "typo.cfg";
    std::ofstream(cfg) << "scenario = propagate\n[probe]\nsigam = 3\n";
    CHECK(run_sim("propagate --config \"" + cfg.string() + "\"", err) != 0);
    CHECK(slurp(err).rfind("error kind=parse line=3 ", 0) == 0);
  }

  SUBCASE("subcommand must match a declared scenario") {
    const fs::path cfg = dir / "mismatch.cfg";
    std::ofstream(cfg) << "scenario = susceptibility\n";
    CHECK(run_sim("propagate --config \"" + cfg.string() + "\"", err) != 0);
    CHECK(slurp(err).find("fields=scenario") != std::string::npos);
  }

  SUBCASE("instability flushes the depths already recorded") {
    const fs::path cfg = dir / "unstable.cfg";
    std::ofstream(cfg) << "[probe]\ng0 = 1.14\ntau0 = 200\nsigma = 60\n"
                          "[grid]\ntau_max = 600\nn_tau = 6001\nzeta_max = 1e12\nn_zeta = 2\n"
                          "snapshots = 1e12\n";
    const fs::path out = dir / "partial";
    CHECK(run_sim("propagate --config \"" + cfg.string() + "\" --out \"" + out.string() + "\"",
                  err) != 0);
    CHECK(slurp(err).rfind("error kind=marching-instability ", 0) == 0);
    CHECK(fs::exists(out / "envelope_zeta_0.csv"));
  }

  SUBCASE("usage errors") {
    CHECK(run_sim("propagate", err) != 0);
    CHECK(slurp(err).rfind("error kind=usage", 0) == 0);
    CHECK(run_sim("teleport --config x", err) != 0);
  }
  fs::remove_all(dir);
}
