#include "lambdafwm/output.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lambdafwm/version.hpp"

namespace lambdafwm {

namespace {

using nlohmann::json;

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check_alignment(const RunDataset& dataset) {
  if (dataset.results.empty()) {
    throw Error("dataset has no solver results");
  }
  const std::size_t n = dataset.results.front().trace.times.size();
  for (const SolverResult& r : dataset.results) {
    if (r.trace.times.size() != n || r.trace.omega20.size() != n ||
        r.trace.omega30.size() != n || r.efficiency.efficiency.size() != n) {
      throw Error("solver results are not aligned on a shared time axis");
    }
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_csv(const RunDataset& dataset) {
  check_alignment(dataset);
  std::ostringstream out;
  out << "# lambdafwm dataset\n";
  out << "# version = " << kVersion << "\n";
  out << "# z_over_c_tau = " << format_double(dataset.z) << "\n";
  out << "# z_cm = " << format_double(dataset.z * dataset.config.c_tau_cm) << "\n";
  for (const SolverResult& r : dataset.results) {
    out << "# " << r.solver
        << "_peak_efficiency = " << format_double(r.efficiency.peak) << "\n";
    out << "# " << r.solver
        << "_peak_time_over_tau = " << format_double(r.efficiency.peak_time) << "\n";
  }
  out << "# config = " << run_config_to_json(dataset.config).dump() << "\n";
  if (dataset.stamp) {
    out << "# generated = " << timestamp_utc() << "\n";
  }

  out << "t_over_tau,t_minus_zc_over_tau";
  for (const SolverResult& r : dataset.results) {
    out << "," << r.solver << "_re_omega20," << r.solver << "_im_omega20,"
        << r.solver << "_re_omega30," << r.solver << "_im_omega30," << r.solver
        << "_efficiency";
  }
  out << "\n";

  const auto& times = dataset.results.front().trace.times;
  for (std::size_t k = 0; k < times.size(); ++k) {
    out << format_double(times[k]) << "," << format_double(times[k] - dataset.z);
    for (const SolverResult& r : dataset.results) {
      out << "," << format_double(r.trace.omega20[k].real()) << ","
          << format_double(r.trace.omega20[k].imag()) << ","
          << format_double(r.trace.omega30[k].real()) << ","
          << format_double(r.trace.omega30[k].imag()) << ","
          << format_double(r.efficiency.efficiency[k]);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_json(const RunDataset& dataset) {
  check_alignment(dataset);
  json j;
  j["version"] = kVersion;
  j["z_over_c_tau"] = dataset.z;
  j["z_cm"] = dataset.z * dataset.config.c_tau_cm;
  j["config"] = run_config_to_json(dataset.config);
  if (dataset.stamp) {
    j["generated"] = timestamp_utc();
  }
  j["times"] = dataset.results.front().trace.times;

  json solvers = json::object();
  for (const SolverResult& r : dataset.results) {
    json s;
    const std::size_t n = r.trace.times.size();
    std::vector<double> re20(n), im20(n), re30(n), im30(n);
    for (std::size_t k = 0; k < n; ++k) {
      re20[k] = r.trace.omega20[k].real();
      im20[k] = r.trace.omega20[k].imag();
      re30[k] = r.trace.omega30[k].real();
      im30[k] = r.trace.omega30[k].imag();
    }
    s["re_omega20"] = re20;
    s["im_omega20"] = im20;
    s["re_omega30"] = re30;
    s["im_omega30"] = im30;
    s["efficiency"] = r.efficiency.efficiency;
    s["peak_efficiency"] = r.efficiency.peak;
    s["peak_time_over_tau"] = r.efficiency.peak_time;
    solvers[r.solver] = std::move(s);
  }
  j["solvers"] = std::move(solvers);
  return j.dump(2) + "\n";
}

RunConfig config_from_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  const std::string marker = "# config = ";
  while (std::getline(in, line)) {
    if (line.rfind(marker, 0) == 0) {
      try {
        return run_config_from_json(json::parse(line.substr(marker.size())));
      } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("embedded config is invalid: ") +
                                        e.what());
      }
    }
    if (!line.empty() && line[0] != '#') break;
  }
  throw ConfigError("config", "no embedded config line found");
}

RunConfig config_from_json_output(const std::string& content) {
  json j;
  try {
    j = json::parse(content);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("config")) {
    throw ConfigError("config", "no embedded config object found");
  }
  return run_config_from_json(j.at("config"));
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace lambdafwm
