#include "config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "eitsim/core.hpp"

namespace eitsim::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view text, std::size_t line, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "'" + std::string(key) + "' expects a number, got '" +
                               std::string(text) + "'");
  }
  return v;
}

std::size_t to_count(std::string_view text, std::size_t line, std::string_view key) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "'" + std::string(key) + "' expects a non-negative integer, got '" +
                               std::string(text) + "'");
  }
  return v;
}

int to_int(std::string_view text, std::size_t line, std::string_view key) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "'" + std::string(key) + "' expects an integer, got '" +
                               std::string(text) + "'");
  }
  return v;
}

bool to_bool(std::string_view text, std::size_t line, std::string_view key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError(line, "'" + std::string(key) + "' expects true or false");
}

std::vector<double> to_list(std::string_view text, std::size_t line, std::string_view key) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos
                                                                               : comma - start));
    out.push_back(to_double(item, line, key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void require_valid(bool ok, const char* field, const std::string& why,
                   std::vector<std::string>& bad, std::ostringstream& msg) {
  if (!ok) {
    bad.emplace_back(field);
    msg << ' ' << field << " (" << why << ')';
  }
}

}  // namespace

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::propagate: return "propagate";
    case ScenarioKind::store_retrieve: return "store-retrieve";
    case ScenarioKind::susceptibility: return "susceptibility";
    case ScenarioKind::adiabaton_compare: return "adiabaton-compare";
    case ScenarioKind::intensity_curve: return "intensity-curve";
  }
  return "unknown";
}

std::optional<ScenarioKind> scenario_from_string(std::string_view name) noexcept {
  for (auto k : {ScenarioKind::propagate, ScenarioKind::store_retrieve, ScenarioKind::susceptibility,
                 ScenarioKind::adiabaton_compare, ScenarioKind::intensity_curve}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Grid GridSettings::build() const {
  return Grid::make(tau_min, tau_max, n_tau, zeta_max, n_zeta, snapshots);
}

ScenarioSpec RunConfig::scenario() const {
  return ScenarioSpec{probe, control, grid.build(), medium,
                      kind == ScenarioKind::adiabaton_compare};
}

std::vector<double> RunConfig::g0_values() const {
  if (scan.g0_list.empty()) return {probe.g0};
  return scan.g0_list;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::set<std::string> seen;
  bool tau1_given = false;
  std::size_t line_no = 0;
  std::size_t physical_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const std::set<std::string> known{"grid",  "probe",  "control", "medium",
                                               "scan",  "output", "physical"};
      if (!known.contains(section)) throw ParseError(line_no, "unknown section [" + section + "]");
      if (section == "physical") {
        cfg.physical.emplace();
        physical_line = line_no;
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key before '='");
    const std::string path = section.empty() ? key : section + "." + key;
    if (!seen.insert(path).second) throw ParseError(line_no, "duplicate key '" + path + "'");

    auto unknown = [&] { throw ParseError(line_no, "unknown key '" + path + "'"); };

    if (section.empty()) {
      if (key != "scenario") unknown();
      const auto kind = scenario_from_string(value);
      if (!kind) throw ParseError(line_no, "unknown scenario '" + std::string(value) + "'");
      cfg.kind = *kind;
      cfg.kind_declared = true;
    } else if (section == "grid") {
      if (key == "tau_min") cfg.grid.tau_min = to_double(value, line_no, path);
      else if (key == "tau_max") cfg.grid.tau_max = to_double(value, line_no, path);
      else if (key == "n_tau") cfg.grid.n_tau = to_count(value, line_no, path);
      else if (key == "zeta_max") cfg.grid.zeta_max = to_double(value, line_no, path);
      else if (key == "n_zeta") cfg.grid.n_zeta = to_count(value, line_no, path);
      else if (key == "snapshots") cfg.grid.snapshots = to_list(value, line_no, path);
      else unknown();
    } else if (section == "probe") {
      if (key == "kind") {
        if (value == "gaussian") cfg.probe.kind = ProbeKind::gaussian;
        else if (value == "double_sech") cfg.probe.kind = ProbeKind::double_sech;
        else throw ParseError(line_no, "probe.kind must be gaussian or double_sech");
      } else if (key == "g0") cfg.probe.g0 = to_double(value, line_no, path);
      else if (key == "tau0") cfg.probe.tau0 = to_double(value, line_no, path);
      else if (key == "sigma") cfg.probe.sigma = to_double(value, line_no, path);
      else if (key == "f") cfg.probe.f = to_double(value, line_no, path);
      else if (key == "tau1") {
        cfg.probe.tau1 = to_double(value, line_no, path);
        tau1_given = true;
      } else unknown();
    } else if (section == "control") {
      if (key == "kind") {
        if (value == "cw") cfg.control.kind = ControlKind::cw;
        else if (value == "super_gaussian") cfg.control.kind = ControlKind::super_gaussian;
        else throw ParseError(line_no, "control.kind must be cw or super_gaussian");
      } else if (key == "G0") cfg.control.G0 = to_double(value, line_no, path);
      else if (key == "tau2") cfg.control.tau2 = to_double(value, line_no, path);
      else if (key == "sigma_p") cfg.control.sigma_p = to_double(value, line_no, path);
      else if (key == "alpha") cfg.control.alpha = to_int(value, line_no, path);
      else if (key == "hold") cfg.control.hold = to_double(value, line_no, path);
      else unknown();
    } else if (section == "medium") {
      if (key == "detuning") cfg.medium.bloch.detuning = to_double(value, line_no, path);
      else if (key == "ground_decay") cfg.medium.bloch.ground_decay = to_double(value, line_no, path);
      else if (key == "freeze_control") cfg.medium.freeze_control = to_bool(value, line_no, path);
      else unknown();
    } else if (section == "scan") {
      if (key == "detuning_min") cfg.scan.detuning_min = to_double(value, line_no, path);
      else if (key == "detuning_max") cfg.scan.detuning_max = to_double(value, line_no, path);
      else if (key == "n_points") cfg.scan.n_points = to_count(value, line_no, path);
      else if (key == "g0_list") cfg.scan.g0_list = to_list(value, line_no, path);
      else unknown();
    } else if (section == "output") {
      if (key == "dir") cfg.output_dir = std::string(value);
      else unknown();
    } else if (section == "physical") {
      if (key == "lambda") cfg.physical->wavelength = to_double(value, line_no, path);
      else if (key == "density") cfg.physical->density = to_double(value, line_no, path);
      else if (key == "gamma") cfg.physical->gamma = to_double(value, line_no, path);
      else unknown();
    }
  }

  if (cfg.probe.kind == ProbeKind::double_sech && !tau1_given) {
    cfg.probe.tau1 = cfg.probe.tau0 + 4.0 * cfg.probe.sigma;
  }

  cfg.probe.validate();
  cfg.control.validate();
  (void)cfg.grid.build();

  std::vector<std::string> bad;
  std::ostringstream msg;
  msg << "invalid configuration:";
  require_valid(cfg.scan.n_points >= 3, "scan.n_points", "must be at least 3", bad, msg);
  require_valid(cfg.scan.detuning_max > cfg.scan.detuning_min, "scan.detuning_max",
                "must exceed detuning_min", bad, msg);
  for (double g : cfg.scan.g0_list) {
    if (!(g >= 0.0)) {
      require_valid(false, "scan.g0_list", "amplitudes must be >= 0", bad, msg);
      break;
    }
  }
  require_valid(cfg.medium.bloch.ground_decay >= 0.0, "medium.ground_decay", "must be >= 0", bad,
                msg);
  require_valid(!cfg.output_dir.empty(), "output.dir", "must not be empty", bad, msg);
  if (cfg.physical) {
    const auto& p = *cfg.physical;
    require_valid(p.wavelength > 0.0, "physical.lambda", "must be > 0", bad, msg);
    require_valid(p.density > 0.0, "physical.density", "must be > 0", bad, msg);
    require_valid(p.gamma > 0.0, "physical.gamma", "must be > 0", bad, msg);
    (void)physical_line;
  }
  if (!bad.empty()) throw ValidationError(std::move(bad), msg.str());
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace eitsim::cli
