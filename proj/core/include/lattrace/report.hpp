#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace lattrace {

inline constexpr int kReportSchema = 1;

struct CheckResult {
  std::string name;
  double max_error = 0.0;  // NaN when the check could not run
  double tolerance = 0.0;
  double runtime_ms = 0.0;
  std::string detail;

  [[nodiscard]] bool passed() const { return max_error <= tolerance; }
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;
  nlohmann::json context = nlohmann::json::object();

  [[nodiscard]] bool overall() const;
  // runtime_ms is emitted only with timings = true so that default reports are
  // byte-identical across runs.
  [[nodiscard]] nlohmann::json to_json(bool timings = false) const;
  [[nodiscard]] std::string human_summary() const;
};

struct RunConfig {
  std::optional<std::filesystem::path> lattice_file;
  std::map<std::string, double> tolerances;  // suite -> tolerance override
  std::map<std::string, long> cutoffs;
  std::uint64_t seed = 0;
  double im_tau_floor = 0.25;

  [[nodiscard]] long cutoff(const std::string& name, long fallback) const;
  [[nodiscard]] double tolerance(const std::string& suite, double fallback) const;
};

// Throws ConfigError on unknown keys, wrong types, or non-positive tolerances.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

// Complex numbers travel as [re, im].
nlohmann::json complex_to_json(double re, double im);

}  // namespace lattrace
