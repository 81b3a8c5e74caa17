// lattrace: verification and expansion front end.
//
//   lattrace verify <suite> [--lattice f] [--config f] [--seed n] [--jobs n] [--out f] [--human]
//   lattrace fit --alpha a,b,f,d [--lattice f] [--config f] [--seed n] [--out f] [--human]
//   lattrace expand --what eta|g2|theta-series --order n [--lattice f] [--coset c] [--out f]
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "lattrace/error.hpp"
#include "lattrace/verify.hpp"

namespace {

using namespace lattrace;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string lattice;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool human = false;
};

RunConfig make_config(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_run_config(c.config);
  if (!c.lattice.empty()) cfg.lattice_file = c.lattice;
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

void emit(const json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw Error(ErrorCode::ConfigError, "cannot write " + out);
  file << text;
}

// Integral real coefficients print as integers so counting series stay exact.
json number(double x) {
  if (std::abs(x) < 9e15 && x == std::round(x)) return static_cast<long long>(x);
  return x;
}

json series_to_json(const TruncatedSeries& s) {
  json terms = json::array();
  for (const auto& [k, c] : s.terms()) {
    if (c == Complex{}) continue;
    terms.push_back({k, number(c.real()), number(c.imag())});
  }
  return {{"denom", s.denom()}, {"guaranteed_order", s.guaranteed_order()}, {"terms", terms}};
}

json rational_vector_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

CosetLabel parse_coset(const EvenLattice& L, const std::string& text) {
  const auto reps = dual_coset_reps(L);
  if (text.find_first_of("/,") == std::string::npos) {
    std::size_t used = 0;
    long idx = -1;
    try {
      idx = std::stol(text, &used);
    } catch (const std::logic_error&) {
    }
    if (used != text.size() || idx < 0 || static_cast<std::size_t>(idx) >= reps.size()) {
      throw Error(ErrorCode::ConfigError, "coset index must be in [0, " + std::to_string(reps.size()) + ")");
    }
    return reps[static_cast<std::size_t>(idx)];
  }
  RationalVector beta;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) beta.push_back(parse_rational(item));
    return CosetLabel::make(L, beta);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IllConditioned:
    case ErrorCode::PredictionMismatch:
    case ErrorCode::TailBoundViolated:
      return kExitFail;
    default:
      return kExitUsage;
  }
}

int cmd_verify(const std::string& suite, const Common& common, int jobs, bool timings) {
  const RunConfig cfg = make_config(common);
  if (cfg.lattice_file) (void)load_lattice_file(*cfg.lattice_file);  // surface file errors as exit 2
  const VerificationReport report = run_suite(suite, cfg, jobs);
  emit(report.to_json(timings), common.out);
  if (common.human) std::cerr << report.human_summary();
  return report.overall() ? kExitPass : kExitFail;
}

int cmd_fit(const std::string& alpha_text, const Common& common) {
  const RunConfig cfg = make_config(common);
  const UnimodularMatrix alpha = parse_unimodular(alpha_text);
  const EvenLattice L = resolve_lattice(cfg);
  const auto m = dual_coset_reps(L).size();
  const auto samples = static_cast<std::size_t>(cfg.cutoff("samples", static_cast<long>(3 * m)));
  const auto holdout = static_cast<std::size_t>(cfg.cutoff("points", 20));
  const double tol = cfg.tolerance("fit", 1e-7);

  const TransitionMatrix A = fit_transition(L, alpha, sample_points(L.rank(), alpha, samples, cfg.seed));
  const MainTheoremReport check =
      verify_main_theorem(L, alpha, sample_points(L.rank(), alpha, holdout, cfg.seed + 1), A);

  json entries = json::array();
  for (const auto& row : A.entries) {
    json r = json::array();
    for (const auto& e : row) r.push_back(complex_to_json(e.real(), e.imag()));
    entries.push_back(r);
  }
  json cosets = json::array();
  for (const auto& c : A.cosets) cosets.push_back(rational_vector_json(c.beta()));
  const bool pass = A.fit_residual <= tol && check.max_residual <= tol;
  json doc{{"schema", kReportSchema},
           {"command", "fit"},
           {"lattice", L.name()},
           {"alpha", {alpha.a(), alpha.b(), alpha.f(), alpha.d()}},
           {"seed", cfg.seed},
           {"cosets", cosets},
           {"entries", entries},
           {"fit_residual", A.fit_residual},
           {"holdout_residual", check.max_residual},
           {"tolerance", tol},
           {"overall", pass ? "pass" : "fail"}};
  emit(doc, common.out);
  if (common.human) {
    std::cerr << "fit " << alpha.to_string() << " on " << L.name() << ": residual " << A.fit_residual
              << ", holdout " << check.max_residual << (pass ? " (pass)\n" : " (fail)\n");
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_expand(const std::string& what, int order, const std::string& coset_text, const Common& common) {
  if (order < 0 || order > 2000) throw Error(ErrorCode::ConfigError, "--order must be in [0, 2000]");
  json doc{{"schema", kReportSchema}, {"command", "expand"}, {"what", what}, {"order", order}};
  TruncatedSeries s;
  if (what == "eta") {
    s = dedekind_eta(std::max(order, 1)).truncated(24L * order + 1);
  } else if (what == "g2") {
    s = eisenstein_g2(order);
  } else if (what == "theta-series") {
    const RunConfig cfg = make_config(common);
    const EvenLattice L = resolve_lattice(cfg);
    const CosetLabel c = coset_text.empty() ? CosetLabel::zero(L.rank()) : parse_coset(L, coset_text);
    s = theta_series(L, c, order);
    doc["lattice"] = L.name();
    doc["coset"] = rational_vector_json(c.beta());
  } else {
    throw Error(ErrorCode::ConfigError, "--what must be eta, g2 or theta-series");
  }
  doc.update(series_to_json(s));
  emit(doc, common.out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta-trace functions of lattice VOA modules and checks of their modular behaviour"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lattice", common.lattice, "Lattice JSON file {\"name\", \"gram\"}");
    sub->add_option("--config", common.config, "Run configuration JSON");
    sub->add_option("--seed", common.seed, "Seed for sample points (default 0)");
    sub->add_option("--out", common.out, "Write the JSON report here instead of stdout");
    sub->add_flag("--human", common.human, "Print a readable summary to stderr");
  };

  std::string suite;
  int jobs = 1;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(kSuites));
  verify->add_option("--jobs", jobs, "Run independent checks concurrently")->check(CLI::Range(1, 256));
  verify->add_flag("--timings", timings, "Include runtime_ms per check (breaks byte-identical output)");
  add_common(verify);

  std::string alpha;
  auto* fit = app.add_subcommand("fit", "Fit the transition matrix of an SL2(Z) element");
  fit->add_option("--alpha", alpha, "Matrix entries a,b,f,d")->required();
  add_common(fit);

  std::string what;
  int order = 0;
  std::string coset;
  auto* expand = app.add_subcommand("expand", "Print a q-expansion");
  expand->add_option("--what", what, "eta, g2 or theta-series")->required();
  expand->add_option("--order", order, "Highest integer q-power")->required();
  expand->add_option("--coset", coset, "Coset index, or rational coordinates like 1/4 or 1/3,2/3");
  add_common(expand);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(suite, common, jobs, timings);
    if (*fit) return cmd_fit(alpha, common);
    if (*expand) return cmd_expand(what, order, coset, common);
  } catch (const Error& e) {
    std::cerr << "lattrace: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUsage;
}
