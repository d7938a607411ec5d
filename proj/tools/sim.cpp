#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "config.hpp"
#include "runner.hpp"

namespace {

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

void report(std::string_view kind, std::string_view message, std::string_view extra = {}) {
  std::cerr << "error kind=" << kind;
  if (!extra.empty()) std::cerr << ' ' << extra;
  std::cerr << " message=" << quoted(message) << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eitsim::cli;

  CLI::App app{"Maxwell-Bloch pulse propagation in a three-level lambda medium"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  unsigned threads = 1;

  for (auto kind : {ScenarioKind::propagate, ScenarioKind::store_retrieve,
                    ScenarioKind::susceptibility, ScenarioKind::adiabaton_compare,
                    ScenarioKind::intensity_curve}) {
    auto* sub = app.add_subcommand(std::string(to_string(kind)));
    sub->add_option("--config", config_path, "scenario file")->required()->check(
        CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides $EITSIM_OUTPUT_DIR)");
    sub->add_option("--threads", threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("usage", e.what());
    return 2;
  }

  const auto kind = scenario_from_string(app.get_subcommands().front()->get_name());
  try {
    RunConfig config = load_config(config_path);
    if (config.kind_declared && config.kind != *kind) {
      throw eitsim::ValidationError(
          {"scenario"}, "config declares scenario '" + std::string(to_string(config.kind)) +
                            "' but the subcommand is '" + std::string(to_string(*kind)) + "'");
    }
    config.kind = *kind;
    const RunOptions options{resolve_output_dir(out_dir, config), threads};
    run(config, options, std::cout);
  } catch (const ParseError& e) {
    report(e.kind(), e.what(), "line=" + std::to_string(e.line()));
    return 1;
  } catch (const eitsim::ValidationError& e) {
    std::string fields;
    for (const auto& f : e.fields()) fields += (fields.empty() ? "" : ";") + f;
    report(e.kind(), e.what(), "fields=" + fields);
    return 1;
  } catch (const eitsim::Error& e) {
    report(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    report("internal", e.what());
    return 1;
  }
  return 0;
}
