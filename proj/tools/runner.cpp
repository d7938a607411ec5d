#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "eitsim/eitsim.hpp"

namespace eitsim::cli {
namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class CsvFile {
 public:
  CsvFile(const fs::path& path, std::initializer_list<const char*> header)
      : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
    if (!out_) throw Error("cannot write " + path.string());
    bool first = true;
    for (const char* h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) out_ << ',';
      out_ << num(v);
      first = false;
    }
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw Error("error while writing " + path_.string());
  }

 private:
  std::ofstream out_;
  fs::path path_;
};

std::optional<PulseMetrics> try_metrics(const Envelope& e, TauWindow w) {
  try {
    return pulse_metrics(e, w);
  } catch (const MetricError&) {
    return std::nullopt;
  }
}

double max_abs_span(std::span<const cplx> v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

double min_abs_span(std::span<const cplx> v) {
  double m = std::numeric_limits<double>::infinity();
  for (const cplx& x : v) m = std::min(m, std::abs(x));
  return m;
}

struct Writer {
  fs::path dir;
  std::vector<fs::path> written;

  fs::path file(const std::string& name) {
    written.push_back(dir / name);
    return written.back();
  }
};

void write_history(Writer& w, const FieldHistory& h) {
  for (std::size_t k = 0; k < h.size(); ++k) {
    write_envelope_csv(w.file(envelope_file_name(h.depths[k])), h.probe[k], h.control[k],
                       h.coherence32[k]);
  }
}

void print_warnings(const FieldHistory& h, std::ostream& log) {
  for (const auto& msg : h.warnings) log << "warning: " << msg << '\n';
}

FieldHistory propagate_or_flush(const ScenarioSpec& spec, Writer& w) {
  try {
    return propagate(spec);
  } catch (const PropagationError& e) {
    write_history(w, e.partial());
    throw;
  }
}

void write_depth_metrics(Writer& w, const FieldHistory& h, TauWindow window,
                         std::ostream& log) {
  CsvFile csv(w.file("metrics.csv"),
              {"zeta", "peak_time", "peak_intensity", "fwhm", "energy", "energy_ratio", "delay",
               "control_min", "control_max"});
  const auto input = try_metrics(h.boundary_probe, TauWindow::whole(h.boundary_probe.axis()));
  for (std::size_t k = 0; k < h.size(); ++k) {
    const auto m = try_metrics(h.probe[k], window);
    const double energy_ratio = m && input ? m->energy / input->energy : kNaN;
    const double delay = m && input ? m->peak_time - input->peak_time : kNaN;
    const double gmin = min_abs_span(h.control[k].values());
    const double gmax = max_abs_span(h.control[k].values());
    csv.row({h.depths[k], m ? m->peak_time : kNaN, m ? m->peak_intensity : kNaN,
             m ? m->fwhm : kNaN, m ? m->energy : kNaN, energy_ratio, delay, gmin, gmax});

    char line[256];
    if (m) {
      std::snprintf(line, sizeof line,
                    "zeta=%g peak_time=%.4f peak_intensity=%.6g fwhm=%.4f energy_ratio=%.6f "
                    "control_min=%.6g control_max=%.6g",
                    h.depths[k], m->peak_time, m->peak_intensity, m->fwhm, energy_ratio, gmin,
                    gmax);
    } else {
      std::snprintf(line, sizeof line,
                    "zeta=%g probe=none control_min=%.6g control_max=%.6g", h.depths[k], gmin,
                    gmax);
    }
    log << line << '\n';
  }
  csv.close();
}

void run_propagate(const RunConfig& cfg, Writer& w, std::ostream& log) {
  const FieldHistory h = propagate_or_flush(cfg.scenario(), w);
  print_warnings(h, log);
  write_history(w, h);
  write_depth_metrics(w, h, TauWindow::whole(h.boundary_probe.axis()), log);
}

void run_adiabaton_compare(const RunConfig& cfg, Writer& w, std::ostream& log) {
  const FieldHistory h = propagate_or_flush(cfg.scenario(), w);
  print_warnings(h, log);
  write_history(w, h);

  const AdiabatonSolution oracle =
      analytic_fields_general(h.boundary_probe, h.boundary_control, h.depths);
  const auto residuals = oracle_residuals(h, oracle);
  const double g0 = h.boundary_probe.max_abs();
  const double G0 = h.boundary_control.max_abs();

  for (std::size_t k = 0; k < h.size(); ++k) {
    const std::string name = "oracle_zeta_" + short_num(h.depths[k]) + ".csv";
    CsvFile csv(w.file(name), {"gamma_tau", "probe_re", "probe_im", "control_re", "control_im"});
    const Envelope& g = oracle.probe[k];
    const Envelope& G = oracle.control[k];
    for (std::size_t i = 0; i < g.size(); ++i) {
      csv.row({g.tau(i), g[i].real(), g[i].imag(), G[i].real(), G[i].imag()});
    }
    csv.close();
  }

  CsvFile csv(w.file("oracle_residual.csv"),
              {"zeta", "probe_residual", "control_residual", "probe_residual_rel",
               "control_residual_rel", "rho32_deviation"});
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    const Envelope& g = h.probe[k];
    const Envelope& G = h.control[k];
    double dev = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double v2 = std::norm(g[i]) + std::norm(G[i]);
      if (v2 > 0.0) dev = std::max(dev, std::abs(h.coherence32[k][i] + g[i] * G[i] / v2));
    }
    const auto& r = residuals[k];
    const double prel = g0 > 0.0 ? r.probe / g0 : kNaN;
    const double crel = G0 > 0.0 ? r.control / G0 : kNaN;
    csv.row({r.depth, r.probe, r.control, prel, crel, dev});

    char line[256];
    std::snprintf(line, sizeof line,
                  "zeta=%g probe_residual=%.3e (%.4f g0) control_residual=%.3e (%.4f G0) "
                  "rho32_deviation=%.3e",
                  r.depth, r.probe, prel, r.control, crel, dev);
    log << line << '\n';
  }
  csv.close();

  char line[128];
  std::snprintf(line, sizeof line, "v_conservation_error=%.3e", v_conservation_error(h));
  log << line << '\n';
}

void run_store_retrieve(const RunConfig& cfg, Writer& w, std::ostream& log) {
  const ScenarioSpec spec = cfg.scenario();
  const StorageRun run = [&] {
    try {
      return run_storage_retrieval(spec);
    } catch (const PropagationError& e) {
      write_history(w, e.partial());
      throw;
    }
  }();
  print_warnings(run.history, log);
  write_history(w, run.history);
  write_depth_metrics(w, run.history, TauWindow::whole(spec.grid.tau()), log);

  const StorageReport& r = run.report;
  CsvFile csv(w.file("storage_report.csv"),
              {"g0", "retrieval_depth", "stored_peak_depth", "window_begin", "window_end",
               "input_peak_time", "input_peak_intensity", "input_fwhm", "input_energy",
               "output_peak_time", "output_peak_intensity", "output_fwhm", "output_energy",
               "energy_ratio", "peak_intensity_ratio", "fwhm_ratio", "fidelity"});
  csv.row({spec.probe.g0, r.retrieval_depth, r.stored_peak_depth, r.retrieval_window.begin,
           r.retrieval_window.end, r.input.peak_time, r.input.peak_intensity, r.input.fwhm,
           r.input.energy, r.retrieved.peak_time, r.retrieved.peak_intensity, r.retrieved.fwhm,
           r.retrieved.energy, r.energy_ratio, r.peak_intensity_ratio, r.fwhm_ratio,
           r.fidelity});
  csv.close();

  char line[256];
  std::snprintf(line, sizeof line,
                "retrieved at zeta=%g: peak_time=%.4f energy_ratio=%.4f "
                "peak_intensity_ratio=%.4f fwhm_ratio=%.4f fidelity=%.5f",
                r.retrieval_depth, r.retrieved.peak_time, r.energy_ratio,
                r.peak_intensity_ratio, r.fwhm_ratio, r.fidelity);
  log << line << '\n';
}

void run_susceptibility(const RunConfig& cfg, Writer& w, unsigned threads, std::ostream& log) {
  struct Row {
    double g0, width, centre, left_peak, right_peak;
  };
  std::vector<Row> rows;
  for (double g0 : cfg.g0_values()) {
    const SusceptibilityScan scan =
        scan_susceptibility(g0, cfg.control.G0, cfg.scan.detuning_min, cfg.scan.detuning_max,
                            cfg.scan.n_points, threads);
    CsvFile csv(w.file("susceptibility_g0_" + short_num(g0) + ".csv"),
                {"detuning", "absorption"});
    for (std::size_t i = 0; i < scan.detunings.size(); ++i) {
      csv.row({scan.detunings[i], scan.absorption[i]});
    }
    csv.close();

    double width = kNaN;
    try {
      width = transparency_width(scan);
    } catch (const ShapeError& e) {
      log << "warning: g0=" << short_num(g0) << ": " << e.what() << '\n';
    }
    const auto& d = scan.detunings;
    const auto& a = scan.absorption;
    std::size_t centre = 0;
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (std::abs(d[i]) < std::abs(d[centre])) centre = i;
    }
    const auto split = a.begin() + static_cast<std::ptrdiff_t>(centre);
    const auto lp = static_cast<std::size_t>(std::max_element(a.begin(), split + 1) - a.begin());
    const auto rp = static_cast<std::size_t>(std::max_element(split, a.end()) - a.begin());
    rows.push_back({g0, width, a[centre], d[lp], d[rp]});

    char line[256];
    std::snprintf(line, sizeof line,
                  "g0=%g width=%.5f absorption_at_zero=%.3e peaks_at=%.4f,%.4f", g0, width,
                  a[centre], d[lp], d[rp]);
    log << line << '\n';
  }

  CsvFile csv(w.file("metrics.csv"), {"g0", "G0", "transparency_width", "absorption_at_zero",
                                      "left_peak_detuning", "right_peak_detuning"});
  for (const Row& r : rows) {
    csv.row({r.g0, cfg.control.G0, r.width, r.centre, r.left_peak, r.right_peak});
  }
  csv.close();
}

void run_intensity_curve(const RunConfig& cfg, Writer& w, unsigned threads, std::ostream& log) {
  const std::vector<double> g0s = cfg.g0_values();
  const auto points = intensity_ratio_curve(g0s, cfg.scenario(), threads);
  CsvFile csv(w.file("intensity_curve.csv"),
              {"g0", "input_peak_intensity", "output_peak_intensity", "intensity_ratio",
               "energy_ratio"});
  for (const auto& p : points) {
    csv.row({p.g0, p.input_peak_intensity, p.output_peak_intensity, p.intensity_ratio,
             p.energy_ratio});
    char line[192];
    std::snprintf(line, sizeof line, "g0=%g intensity_ratio=%.5f energy_ratio=%.5f", p.g0,
                  p.intensity_ratio, p.energy_ratio);
    log << line << '\n';
  }
  csv.close();
}

std::vector<double> parse_row(const std::string& line, std::size_t expected) {
  std::vector<double> out;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') throw Error("malformed CSV cell '" + cell + "'");
    out.push_back(v);
  }
  if (out.size() != expected) throw Error("CSV row has the wrong number of columns");
  return out;
}

}  // namespace

fs::path resolve_output_dir(const std::optional<std::string>& cli_out, const RunConfig& config) {
  if (cli_out && !cli_out->empty()) return *cli_out;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return config.output_dir;
}

std::string envelope_file_name(double depth) {
  return "envelope_zeta_" + short_num(depth) + ".csv";
}

void write_envelope_csv(const fs::path& path, const Envelope& probe, const Envelope& control,
                        const std::vector<cplx>& rho32) {
  if (control.size() != probe.size() || rho32.size() != probe.size()) {
    throw Error("write_envelope_csv: column lengths differ");
  }
  CsvFile csv(path, {"gamma_tau", "probe_re", "probe_im", "control_re", "control_im", "rho32_re",
                     "rho32_im"});
  for (std::size_t i = 0; i < probe.size(); ++i) {
    csv.row({probe.tau(i), probe[i].real(), probe[i].imag(), control[i].real(),
             control[i].imag(), rho32[i].real(), rho32[i].imag()});
  }
  csv.close();
}

EnvelopeTable read_envelope_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      line != "gamma_tau,probe_re,probe_im,control_re,control_im,rho32_re,rho32_im") {
    throw Error(path.string() + ": unexpected header");
  }
  EnvelopeTable t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto r = parse_row(line, 7);
    t.tau.push_back(r[0]);
    t.probe.emplace_back(r[1], r[2]);
    t.control.emplace_back(r[3], r[4]);
    t.rho32.emplace_back(r[5], r[6]);
  }
  return t;
}

std::vector<fs::path> run(const RunConfig& config, const RunOptions& options, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(options.output_dir, ec);
  if (ec || !fs::is_directory(options.output_dir)) {
    throw ValidationError({"output.dir"},
                          "output directory " + options.output_dir.string() + " is not writable");
  }

  if (config.physical) {
    const auto& p = *config.physical;
    char line[160];
    std::snprintf(line, sizeof line, "eta=%.6g (lambda=%g, density=%g, gamma=%g)",
                  eta_from_physical(p.wavelength, p.density, p.gamma), p.wavelength, p.density,
                  p.gamma);
    log << line << '\n';
  }

  Writer w{options.output_dir, {}};
  const unsigned threads = std::max(1u, options.threads);
  switch (config.kind) {
    case ScenarioKind::propagate: run_propagate(config, w, log); break;
    case ScenarioKind::adiabaton_compare: run_adiabaton_compare(config, w, log); break;
    case ScenarioKind::store_retrieve: run_store_retrieve(config, w, log); break;
    case ScenarioKind::susceptibility: run_susceptibility(config, w, threads, log); break;
    case ScenarioKind::intensity_curve: run_intensity_curve(config, w, threads, log); break;
  }
  return w.written;
}

}  // namespace eitsim::cli
