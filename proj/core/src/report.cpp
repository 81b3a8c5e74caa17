#include "lattrace/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lattrace/error.hpp"

namespace lattrace {

bool VerificationReport::overall() const {
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

nlohmann::json VerificationReport::to_json(bool timings) const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json entry{
        {"name", c.name}, {"status", c.passed() ? "pass" : "fail"}, {"tolerance", c.tolerance}};
    // JSON has no NaN; a check that could not run reports null.
    entry["max_error"] = std::isfinite(c.max_error) ? nlohmann::json(c.max_error) : nlohmann::json(nullptr);
    if (!c.detail.empty()) entry["detail"] = c.detail;
    if (timings) entry["runtime_ms"] = c.runtime_ms;
    checks_json.push_back(std::move(entry));
  }
  return {{"schema", kReportSchema},
          {"suite", suite},
          {"overall", overall() ? "pass" : "fail"},
          {"checks", std::move(checks_json)},
          {"context", context}};
}

std::string VerificationReport::human_summary() const {
  std::ostringstream os;
  os.precision(3);
  for (const auto& c : checks) {
    os << (c.passed() ? "PASS " : "FAIL ") << c.name << "  max_error=" << c.max_error
       << " tol=" << c.tolerance;
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
  }
  os << suite << ": " << (overall() ? "pass" : "fail") << '\n';
  return os.str();
}

long RunConfig::cutoff(const std::string& name, long fallback) const {
  auto it = cutoffs.find(name);
  return it == cutoffs.end() ? fallback : it->second;
}

double RunConfig::tolerance(const std::string& suite, double fallback) const {
  auto it = tolerances.find(suite);
  return it == tolerances.end() ? fallback : it->second;
}

RunConfig parse_run_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if ((key == "tolerances" || key == "cutoffs") && !value.is_object()) {
        throw Error(ErrorCode::ConfigError, key + " must be an object");
      }
      if (key == "lattice_file") {
        cfg.lattice_file = value.get<std::string>();
      } else if (key == "tolerances") {
        for (const auto& [suite, tol] : value.items()) {
          const double t = tol.get<double>();
          if (!(t > 0.0)) throw Error(ErrorCode::ConfigError, "tolerance for " + suite + " must be positive");
          cfg.tolerances[suite] = t;
        }
      } else if (key == "cutoffs") {
        for (const auto& [name, n] : value.items()) {
          if (!n.is_number_integer() || n.get<long>() <= 0) {
            throw Error(ErrorCode::ConfigError, "cutoff " + name + " must be a positive integer");
          }
          cfg.cutoffs[name] = n.get<long>();
        }
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "im_tau_floor") {
        cfg.im_tau_floor = value.get<double>();
        if (!(cfg.im_tau_floor > 0.0)) throw Error(ErrorCode::ConfigError, "im_tau_floor must be positive");
      } else {
        throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config " + path.string());
  try {
    return parse_run_config(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
}

nlohmann::json complex_to_json(double re, double im) { return nlohmann::json::array({re, im}); }

}  // namespace lattrace
