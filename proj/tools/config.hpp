#pragma once

// Scenario files for the `sim` tool.
//
// Line-oriented `key = value` pairs grouped under `[section]` headers; `#`
// starts a comment. Keys before the first header belong to the top level.
// Lists are comma separated. Every number is nondimensional (γτ, ηζ/γ,
// Rabi/γ). Unknown sections or keys are errors. See docs/config.md.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eitsim/errors.hpp"
#include "eitsim/propagation.hpp"
#include "eitsim/pulses.hpp"

namespace eitsim::cli {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  std::string_view kind() const noexcept override { return "parse"; }

 private:
  std::size_t line_;
};

enum class ScenarioKind { propagate, store_retrieve, susceptibility, adiabaton_compare, intensity_curve };

std::string_view to_string(ScenarioKind kind) noexcept;
std::optional<ScenarioKind> scenario_from_string(std::string_view name) noexcept;

struct GridSettings {
  double tau_min = 0.0;
  double tau_max = 1000.0;
  std::size_t n_tau = 10001;
  double zeta_max = 3200.0;
  std::size_t n_zeta = 8000;
  std::vector<double> snapshots{800.0, 1600.0, 2400.0, 3200.0};

  Grid build() const;
};

struct ScanSettings {
  double detuning_min = -8.0;
  double detuning_max = 8.0;
  std::size_t n_points = 1601;
  /// Probe amplitudes for susceptibility and intensity-curve runs; empty
  /// means "just probe.g0".
  std::vector<double> g0_list;
};

struct PhysicalSettings {
  double wavelength = 0.0;
  double density = 0.0;
  double gamma = 0.0;
};

struct RunConfig {
  ScenarioKind kind = ScenarioKind::propagate;
  /// Set when the file has a top-level `scenario` key.
  bool kind_declared = false;
  ProbeShape probe;
  ControlShape control;
  GridSettings grid;
  PropagationOptions medium;
  ScanSettings scan;
  std::string output_dir = "out";
  std::optional<PhysicalSettings> physical;

  ScenarioSpec scenario() const;
  std::vector<double> g0_values() const;
};

/// Throws ParseError (with line number) or ValidationError (with field path).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace eitsim::cli
