#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lambdafwm/config.hpp"
#include "lambdafwm/figures.hpp"
#include "lambdafwm/limits.hpp"
#include "lambdafwm/oracle.hpp"
#include "lambdafwm/output.hpp"
#include "lambdafwm/propagator.hpp"
#include "lambdafwm/validate.hpp"
#include "lambdafwm/version.hpp"

namespace {

using namespace lambdafwm;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitValidation = 4;

struct OutputOverrides {
  std::string out_dir = "out";
  std::string format;                 // empty: keep config
  std::vector<std::string> solvers;   // empty: keep config
  bool stamp = false;
};

void apply_overrides(RunConfig& config, const OutputOverrides& ov) {
  if (!ov.format.empty()) config.output_format = ov.format;
  if (!ov.solvers.empty()) config.solvers = ov.solvers;
  config.validate();
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return v;
}

Complex sample_linear(const EnvelopeTrace& trace, double t, bool channel30) {
  if (trace.times.empty() || t <= trace.times.front() || t >= trace.times.back()) {
    return {0.0, 0.0};
  }
  const auto it = std::upper_bound(trace.times.begin(), trace.times.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - trace.times.begin()) - 1;
  const double span = trace.times[j + 1] - trace.times[j];
  const double f = span > 0.0 ? (t - trace.times[j]) / span : 0.0;
  const auto& w = channel30 ? trace.omega30 : trace.omega20;
  return w[j] * (1.0 - f) + w[j + 1] * f;
}

EnvelopeTrace resample(const EnvelopeTrace& trace, const std::vector<double>& times) {
  EnvelopeTrace out;
  out.z = trace.z;
  out.times = times;
  out.omega20.resize(times.size());
  out.omega30.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    out.omega20[k] = sample_linear(trace, times[k], false);
    out.omega30[k] = sample_linear(trace, times[k], true);
  }
  return out;
}

EnvelopeTrace analytic_trace(const MediumParams& params, const ProbePulse& pulse,
                             double z, const std::vector<double>& times) {
  if (check_detuned_strong(params).satisfied()) {
    return detuned_fields(params, pulse, z, times);
  }
  return on_resonance_fields(params, pulse, z, times);
}

RunDataset execute_run(const RunConfig& config, bool stamp) {
  const double z = config.z_auto ? optimal_distance(config.medium) : config.z;
  const std::vector<double> times =
      config.time_grid.automatic
          ? default_time_grid(config.medium, z)
          : linspace(config.time_grid.min, config.time_grid.max, config.time_grid.n);

  if (!weak_probe_ok(config.medium, config.pulse)) {
    std::cerr << "warning: probe amplitude " << std::abs(config.pulse.amplitude)
              << " is not small against |omega12|/10 = "
              << std::abs(config.medium.omega12) / 10.0
              << "; the weak-probe model may not apply\n";
  }

  RunDataset dataset;
  dataset.config = config;
  dataset.z = z;
  dataset.stamp = stamp;
  for (const std::string& solver : config.solvers) {
    SolverResult result;
    result.solver = solver;
    if (solver == "spectral") {
      SpectralSolveOptions options;
      options.grid = config.spectral_grid;
      result.trace = solve_spectral(config.medium, config.pulse, z, times, options);
      result.efficiency = efficiency_trace(result.trace, config.medium, config.pulse);
    } else if (solver == "analytic") {
      result.trace = analytic_trace(config.medium, config.pulse, z, times);
      result.efficiency = efficiency_analytic(config.medium, z, times);
    } else {
      const EnvelopeTrace raw =
          oracle_solve(config.medium, config.pulse, z, suggest_grid(config.medium, z));
      result.trace = resample(raw, times);
      result.efficiency = efficiency_trace(result.trace, config.medium, config.pulse);
    }
    dataset.results.push_back(std::move(result));
  }
  return dataset;
}

std::string dataset_path(const std::string& out_dir, const std::string& stem,
                         const std::string& format) {
  std::string path;
  if (!out_dir.empty()) path = out_dir + "/";
  path += stem + "." + format;
  return path;
}

std::string write_dataset(const RunDataset& dataset, const std::string& out_dir,
                          const std::string& stem) {
  const std::string content = dataset.config.output_format == "json"
                                  ? render_json(dataset)
                                  : render_csv(dataset);
  const std::string path = dataset_path(out_dir, stem, dataset.config.output_format);
  write_file_atomic(path, content);
  return path;
}

int run_single(const RunConfig& config_in, const OutputOverrides& ov) {
  RunConfig config = config_in;
  apply_overrides(config, ov);
  const RunDataset dataset = execute_run(config, ov.stamp);
  const std::string path = write_dataset(dataset, ov.out_dir, config.output_path);
  std::cout << "wrote " << path << "\n";
  for (const SolverResult& r : dataset.results) {
    std::cout << "  " << r.solver << " peak efficiency "
              << format_double(r.efficiency.peak) << " at t/tau = "
              << format_double(r.efficiency.peak_time) << "\n";
  }
  return kExitOk;
}

unsigned sweep_concurrency(std::size_t points) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LAMBDA_FWM_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v < 1) throw ConfigError("LAMBDA_FWM_THREADS", "must be a positive integer");
      n = static_cast<unsigned>(v);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("LAMBDA_FWM_THREADS", "must be a positive integer");
    }
  }
  return std::min<unsigned>(n, static_cast<unsigned>(points));
}

std::string value_stem(const std::string& base, const std::string& param, double value) {
  std::ostringstream s;
  s << base << "_" << param << "_" << value;
  return s.str();
}

int run_sweep(const SweepSpec& spec_in, const OutputOverrides& ov) {
  SweepSpec spec = spec_in;
  apply_overrides(spec.base, ov);
  spec.validate();
  const std::string param = sweep_parameter_name(spec.parameter);
  const std::size_t n = spec.values.size();

  std::vector<RunDataset> datasets(n);
  std::vector<std::string> paths(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= n) return;
      try {
        RunConfig config = apply_sweep_value(spec, spec.values[k]);
        config.output_path = value_stem(spec.base.output_path, param, spec.values[k]);
        datasets[k] = execute_run(config, ov.stamp);
        paths[k] = write_dataset(datasets[k], ov.out_dir, config.output_path);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const unsigned threads = sweep_concurrency(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // Aggregate index, written last so readers never see a partial sweep.
  std::ostringstream index;
  const bool json_format = spec.base.output_format == "json";
  if (json_format) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["sweep_parameter"] = param;
    j["config"] = run_config_to_json(spec.base);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < n; ++k) {
      for (const SolverResult& r : datasets[k].results) {
        rows.push_back({{"value", spec.values[k]},
                        {"z_over_c_tau", datasets[k].z},
                        {"solver", r.solver},
                        {"peak_efficiency", r.efficiency.peak},
                        {"peak_time_over_tau", r.efficiency.peak_time},
                        {"file", paths[k]}});
      }
    }
    j["points"] = std::move(rows);
    index << j.dump(2) << "\n";
  } else {
    index << "# lambdafwm sweep index\n";
    index << "# version = " << kVersion << "\n";
    index << "# sweep_parameter = " << param << "\n";
    index << "# config = " << run_config_to_json(spec.base).dump() << "\n";
    index << "value,z_over_c_tau,solver,peak_efficiency,peak_time_over_tau,file\n";
    for (std::size_t k = 0; k < n; ++k) {
      for (const SolverResult& r : datasets[k].results) {
        index << format_double(spec.values[k]) << "," << format_double(datasets[k].z)
              << "," << r.solver << "," << format_double(r.efficiency.peak) << ","
              << format_double(r.efficiency.peak_time) << "," << paths[k] << "\n";
      }
    }
  }
  const std::string index_path = dataset_path(
      ov.out_dir, spec.base.output_path + "_index", json_format ? "json" : "csv");
  write_file_atomic(index_path, index.str());

  std::cout << "wrote " << n << " sweep points and " << index_path << "\n";
  for (std::size_t k = 0; k < n; ++k) {
    std::cout << "  " << param << " = " << spec.values[k];
    for (const SolverResult& r : datasets[k].results) {
      std::cout << "  " << r.solver << " peak " << format_double(r.efficiency.peak);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int run_figure(const std::string& name, const OutputOverrides& ov) {
  std::vector<figures::Id> ids;
  if (name == "all") {
    ids = figures::all_ids();
  } else {
    const auto id = figures::id_from_string(name);
    if (!id) {
      throw ConfigError("figure",
                        "unknown figure \"" + name +
                            "\" (expected fig2a, fig2b, fig3a, fig3b, fig4, all)");
    }
    ids.push_back(*id);
  }
  for (const figures::Id id : ids) {
    const auto sweep = figures::figure_sweep(id);
    int rc;
    if (sweep) {
      rc = run_sweep(*sweep, ov);
    } else {
      rc = run_single(figures::figure_run(id), ov);
    }
    if (rc != kExitOk) return rc;
  }
  return kExitOk;
}

int run_validate(int draws, std::uint64_t seed, bool with_oracle) {
  ValidationOptions options;
  options.draws = draws;
  options.seed = seed;
  options.with_oracle = with_oracle;
  const std::vector<CheckResult> results = run_validation(options);
  for (const CheckResult& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail
              << "\n";
  }
  if (!all_passed(results)) {
    std::cout << "validation FAILED\n";
    return kExitValidation;
  }
  std::cout << "validation passed (" << results.size() << " checks)\n";
  return kExitOk;
}

int run_optimal_z(const std::string& config_path, const std::string& figure_name) {
  MediumParams medium;
  double c_tau_cm = 1.0;
  if (!figure_name.empty()) {
    const auto id = figures::id_from_string(figure_name);
    if (!id) {
      throw ConfigError("figure", "unknown figure \"" + figure_name + "\"");
    }
    medium = figures::figure_run(*id).medium;
  } else if (!config_path.empty()) {
    const RunConfig config = load_run_config(config_path);
    medium = config.medium;
    c_tau_cm = config.c_tau_cm;
  } else {
    throw ConfigError("optimal-z", "provide --config PATH or --figure NAME");
  }
  const double z = optimal_distance(medium);
  std::cout << "z_over_c_tau = " << format_double(z) << "\n";
  std::cout << "z_cm = " << format_double(z * c_tau_cm) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"four-level double-lambda pulse conversion toolkit"};
  app.set_version_flag("--version", std::string("lambdafwm ") + kVersion);
  app.require_subcommand(1);

  OutputOverrides ov;
  std::string config_path;
  std::string figure_name;
  std::string solvers_csv;

  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--out", ov.out_dir, "output directory (default: out)");
    cmd->add_option("--format", ov.format, "override output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--solvers", solvers_csv,
                    "override solver list, comma separated "
                    "(spectral,analytic,oracle)");
    cmd->add_flag("--stamp", ov.stamp,
                  "append a wall-clock line to the output header");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "execute one configured run");
  run_cmd->add_option("--config", config_path, "JSON run configuration")->required();
  add_output_flags(run_cmd);

  CLI::App* figure_cmd =
      app.add_subcommand("figure", "reproduce a named reference dataset");
  figure_cmd->add_option("name", figure_name,
                         "fig2a, fig2b, fig3a, fig3b, fig4, or all")
      ->required();
  add_output_flags(figure_cmd);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "execute a one-parameter sweep");
  sweep_cmd->add_option("--config", config_path, "JSON sweep configuration")
      ->required();
  add_output_flags(sweep_cmd);

  int draws = 20;
  std::uint64_t seed = 20260822;
  bool no_oracle = false;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "run the solver invariant suite");
  validate_cmd->add_option("--draws", draws, "randomized parameter draws")
      ->check(CLI::PositiveNumber);
  validate_cmd->add_option("--seed", seed, "random seed");
  validate_cmd->add_flag("--no-oracle", no_oracle,
                         "skip the time-domain cross-check");

  std::string oz_config, oz_figure;
  CLI::App* oz_cmd = app.add_subcommand(
      "optimal-z", "print the first constructive-recombination distance");
  oz_cmd->add_option("--config", oz_config, "JSON run configuration");
  oz_cmd->add_option("--figure", oz_figure, "figure name instead of a config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (!solvers_csv.empty()) {
    std::stringstream ss(solvers_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) ov.solvers.push_back(item);
    }
  }

  try {
    if (run_cmd->parsed()) {
      return run_single(load_run_config(config_path), ov);
    }
    if (figure_cmd->parsed()) {
      return run_figure(figure_name, ov);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(load_sweep_spec(config_path), ov);
    }
    if (validate_cmd->parsed()) {
      return run_validate(draws, seed, !no_oracle);
    }
    if (oz_cmd->parsed()) {
      return run_optimal_z(oz_config, oz_figure);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitConfig;
}
