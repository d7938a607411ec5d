#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "eitsim/core.hpp"

namespace eitsim::cli {

/// Environment variable that overrides the configured output directory.
inline constexpr const char* kOutputDirEnv = "EITSIM_OUTPUT_DIR";

/// --out, then $EITSIM_OUTPUT_DIR, then the config's [output] dir.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& cli_out,
                                         const RunConfig& config);

struct RunOptions {
  std::filesystem::path output_dir;
  unsigned threads = 1;
};

/// Executes the scenario and writes its CSV files into options.output_dir,
/// printing one summary line per depth (or sweep point) to `log`. On a
/// propagation failure the depths recorded so far are written before the
/// error is rethrown. Returns the paths written, in order.
std::vector<std::filesystem::path> run(const RunConfig& config, const RunOptions& options,
                                       std::ostream& log);

/// Envelope CSV for one depth. Numbers use 12 significant digits.
void write_envelope_csv(const std::filesystem::path& path, const Envelope& probe,
                        const Envelope& control, const std::vector<cplx>& rho32);

struct EnvelopeTable {
  std::vector<double> tau;
  std::vector<cplx> probe;
  std::vector<cplx> control;
  std::vector<cplx> rho32;
};

/// Reads a file written by write_envelope_csv. Throws Error on a bad header
/// or malformed row.
EnvelopeTable read_envelope_csv(const std::filesystem::path& path);

/// "envelope_zeta_<depth>.csv" with the depth in shortest %g form.
std::string envelope_file_name(double depth);

}  // namespace eitsim::cli
