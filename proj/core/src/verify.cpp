#include "lattrace/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <tuple>

#include "lattrace/error.hpp"
#include "lattrace/involutions.hpp"

namespace lattrace {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Group = std::function<std::vector<CheckResult>()>;

Group single(std::function<CheckResult()> fn) {
  return [fn = std::move(fn)] { return std::vector<CheckResult>{fn()}; };
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(rng_); }
  // Uniform in the closed disc of the given radius.
  Complex disc(double radius) {
    const double r = radius * std::sqrt(unit_(rng_));
    const double t = uniform(0.0, 2.0 * kPi);
    return std::polar(r, t);
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

double distance_to_lattice(Complex z, Complex tau) {
  const double m = std::round(z.imag() / tau.imag());
  double best = std::numeric_limits<double>::infinity();
  for (double dm = -1; dm <= 1; ++dm) {
    const Complex w = z - (m + dm) * tau;
    for (double dn = -1; dn <= 1; ++dn) best = std::min(best, std::abs(w - std::round(w.real()) - dn));
  }
  return best;
}

std::string letters_to_string(const std::vector<Generator>& word) {
  std::string out;
  for (Generator g : word) out += (out.empty() ? "" : " ") + to_string(g);
  return out;
}

VerificationReport run_groups(const std::string& suite, const std::vector<Group>& groups, int jobs) {
  VerificationReport report;
  report.suite = suite;
  std::vector<std::vector<CheckResult>> results(groups.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < groups.size(); ++i) results[i] = groups[i]();
  } else {
    for (std::size_t start = 0; start < groups.size(); start += static_cast<std::size_t>(jobs)) {
      std::vector<std::future<std::vector<CheckResult>>> running;
      const std::size_t end = std::min(groups.size(), start + static_cast<std::size_t>(jobs));
      for (std::size_t i = start; i < end; ++i) running.push_back(std::async(std::launch::async, groups[i]));
      for (std::size_t i = start; i < end; ++i) results[i] = running[i - start].get();
    }
  }
  for (auto& r : results) {
    for (auto& c : r) report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace

EvenLattice z2x_lattice() { return EvenLattice::validate({{4}}, "z2x"); }
EvenLattice a2_lattice() { return EvenLattice::validate({{2, -1}, {-1, 2}}, "a2"); }

EvenLattice resolve_lattice(const RunConfig& cfg) {
  return cfg.lattice_file ? load_lattice_file(*cfg.lattice_file) : z2x_lattice();
}

CheckResult run_check(const std::string& name, double tolerance, const std::function<double()>& fn) {
  CheckResult res;
  res.name = name;
  res.tolerance = tolerance;
  const auto start = std::chrono::steady_clock::now();
  try {
    res.max_error = fn();
  } catch (const Error& e) {
    res.max_error = kNaN;
    res.detail = e.what();
  }
  res.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

namespace checks {

CheckResult g2_fixed_point(double tolerance) {
  return run_check("g2_at_i_equals_pi", tolerance, [] { return std::abs(g2_eval(kI) - kPi); });
}

std::vector<CheckResult> quasimodular_laws(std::uint64_t seed, int points, double tolerance) {
  const std::vector<std::pair<std::string, UnimodularMatrix>> alphas = {
      {"S", UnimodularMatrix::S()},
      {"T", UnimodularMatrix::T()},
      {"TST", UnimodularMatrix::T() * UnimodularMatrix::S() * UnimodularMatrix::T()}};
  std::vector<CheckResult> out;
  for (const auto& [label, alpha] : alphas) {
    // z is kept clear of the annulus edge and of poles on both sides of each law.
    Sampler rng(seed);
    const auto taus = sample_points(1, alpha, static_cast<std::size_t>(points), seed);
    std::vector<std::pair<Complex, Complex>> pts;
    for (const auto& p : taus) {
      const Complex j = static_cast<double>(alpha.f()) * p.tau + static_cast<double>(alpha.d());
      const Complex atau = act_tau(alpha, p.tau);
      while (true) {
        const Complex z(rng.uniform(0.1, 0.9), rng.uniform(-0.6, 0.6) * p.tau.imag());
        const Complex zz = z / j;
        if (std::abs(zz.imag()) > 0.6 * atau.imag()) continue;
        if (distance_to_lattice(z, p.tau) < 0.1 || std::abs(zz - std::round(zz.real())) < 0.1) continue;
        pts.emplace_back(z, p.tau);
        break;
      }
    }
    out.push_back(run_check("g2_law_" + label, tolerance, [&, alpha = alpha] {
      double err = 0.0;
      for (const auto& [z, tau] : pts) {
        const Complex j = static_cast<double>(alpha.f()) * tau + static_cast<double>(alpha.d());
        const Complex rhs = j * j * g2_eval(tau) - kTwoPiI * static_cast<double>(alpha.f()) * j;
        err = std::max(err, scaled_error(g2_eval(act_tau(alpha, tau)), rhs));
      }
      return err;
    }));
    out.push_back(run_check("p2_law_" + label, tolerance, [&, alpha = alpha] {
      double err = 0.0;
      for (const auto& [z, tau] : pts) {
        const Complex j = static_cast<double>(alpha.f()) * tau + static_cast<double>(alpha.d());
        const Complex rhs = j * j * p2_eval(z, tau) - kTwoPiI * static_cast<double>(alpha.f()) * j;
        err = std::max(err, scaled_error(p2_eval(z / j, act_tau(alpha, tau)), rhs));
      }
      return err;
    }));
    out.push_back(run_check("wp_law_" + label, tolerance, [&, alpha = alpha] {
      double err = 0.0;
      for (const auto& [z, tau] : pts) {
        const Complex j = static_cast<double>(alpha.f()) * tau + static_cast<double>(alpha.d());
        err = std::max(
            err, scaled_error(weierstrass_p(z / j, act_tau(alpha, tau)), j * j * weierstrass_p(z, tau)));
      }
      return err;
    }));
  }
  return out;
}

std::vector<CheckResult> theta_table(std::uint64_t seed, int points, double tolerance) {
  // -1/τ can dip to Im ≈ 0.12 here; the Gaussian sums still converge quickly.
  const EvalConfig eval{0.05, 1e-8};
  Sampler rng(seed);
  std::vector<std::pair<Complex, Complex>> pts;
  for (int i = 0; i < points; ++i) {
    const Complex tau(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0));
    pts.emplace_back(rng.disc(0.4), tau);
  }
  const std::vector<std::pair<std::string, HalfCharacteristic>> rows = {{"theta_s_row_00", kTheta00},
                                                                        {"theta_s_row_0h", kTheta0Half},
                                                                        {"theta_s_row_h0", kThetaHalf0},
                                                                        {"theta_s_row_hh", kThetaHalfHalf}};
  std::vector<CheckResult> out;
  for (const auto& [name, c] : rows) {
    out.push_back(run_check(name, tolerance, [&, c = c] {
      const ThetaSRow row = theta_s_row(c);
      double err = 0.0;
      for (const auto& [z, tau] : pts) {
        const Complex lhs = jacobi_theta(c, z / tau, -1.0 / tau, eval);
        const Complex rhs = row.multiplier * std::sqrt(-kI * tau) * std::exp(kPi * kI * z * z / tau) *
                            jacobi_theta(row.image, z, tau, eval);
        err = std::max(err, scaled_error(lhs, rhs));
      }
      return err;
    }));
  }
  return out;
}

std::vector<CheckResult> theta_dictionary(std::uint64_t seed, int points, double tolerance) {
  const EvenLattice L = z2x_lattice();
  const auto cosets = dual_coset_reps(L);  // 0, 1/4, 1/2, 3/4
  Sampler rng(seed);
  std::vector<std::pair<Complex, Complex>> pts;
  for (int i = 0; i < points; ++i) {
    const Complex tau(rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0));
    pts.emplace_back(rng.disc(0.4), tau);
  }
  // zx(-1)1 has lattice coordinate z/2 in the basis e = 2x.
  auto thetas = [&](Complex z, Complex tau) {
    ComplexVector t;
    for (const auto& c : cosets) t.push_back(theta_w({L, c}, {z / 2.0}, tau));
    return t;
  };
  struct Row {
    std::string name;
    HalfCharacteristic c;
    std::array<Complex, 4> coeffs;
  };
  const std::vector<Row> rows = {{"dictionary_theta_00", kTheta00, {1.0, 0.0, 1.0, 0.0}},
                                 {"dictionary_theta_0h", kTheta0Half, {1.0, 0.0, -1.0, 0.0}},
                                 {"dictionary_theta_h0", kThetaHalf0, {0.0, 1.0, 0.0, 1.0}},
                                 {"dictionary_theta_hh", kThetaHalfHalf, {0.0, kI, 0.0, -kI}}};
  std::vector<CheckResult> out;
  for (const auto& row : rows) {
    out.push_back(run_check(row.name, tolerance, [&] {
      double err = 0.0;
      for (const auto& [z, tau] : pts) {
        const ComplexVector t = thetas(z, tau);
        Complex combo{};
        for (std::size_t i = 0; i < 4; ++i) combo += row.coeffs[i] * t[i];
        err = std::max(err, scaled_error(combo, jacobi_theta(row.c, z, tau)));
      }
      return err;
    }));
  }
  return out;
}

std::vector<CheckResult> combinatorics(int sign_lemma_n, int count_n, int multinomial_max,
                                       int regroup_degree) {
  std::vector<CheckResult> out;
  out.push_back(run_check("involution_count_recurrence", 0.0, [&] {
    int bad = 0;
    for (int n = 1; n <= count_n; ++n) {
      if (BigInt(list_involutions(n).size()) != involution_count_recurrence(n)) ++bad;
    }
    return static_cast<double>(bad);
  }));
  out.push_back(run_check("fixed_point_count_closed_form", 0.0, [&] {
    int bad = 0;
    for (int n = 1; n <= count_n; ++n) {
      for (int r = n % 2; r <= n; r += 2) {
        if (!closed_form_check((n - r) / 2, r).holds()) ++bad;
      }
    }
    return static_cast<double>(bad);
  }));
  out.push_back(run_check("sign_lemma", 0.0, [&] {
    int bad = 0;
    for (int n = 2; n <= sign_lemma_n; ++n) {
      for (const auto& s : list_involutions(n)) {
        if (!s.is_identity() && !verify_sign_lemma(s).holds()) ++bad;
      }
    }
    return static_cast<double>(bad);
  }));
  out.push_back(run_check("multinomial_identity", 0.0, [&] {
    int bad = 0;
    for (int p = 0; p <= multinomial_max; ++p) {
      for (int r = 0; r <= multinomial_max; ++r) bad += verify_multinomial_identity(p, r) ? 0 : 1;
    }
    return static_cast<double>(bad);
  }));
  out.push_back(run_check("exponential_regroup", 0.0, [&] {
    return static_cast<double>(exponential_regroup_check(regroup_degree, regroup_degree).mismatches);
  }));
  return out;
}

CheckResult trace_recursion(const std::string& name, const ModuleRef& module,
                            const std::vector<ComplexVector>& vs, int x_span, const Rational& q_order,
                            double tolerance) {
  return run_check(name, tolerance,
                   [&] { return verify_trace_recursion(module, vs, x_span, q_order).max_discrepancy; });
}

std::vector<CheckResult> fock_cross_oracle(const ModuleRef& module, const RationalVector& a,
                                           const Rational& max_grade, double tolerance) {
  const std::string suffix = "_" + std::to_string(coset_index(module.lattice, module.coset));
  std::vector<CheckResult> out;
  out.push_back(run_check("fock_phase_counts" + suffix, 0.0, [&] {
    const PhaseCounts fock = fock_phase_counts(module, a, max_grade);
    const PhaseCounts closed = graded_phase_counts(module, a, max_grade);
    // Count the (grade, phase) cells where the two disagree.
    std::map<std::pair<Rational, Rational>, BigInt> diff;
    for (const auto& [g, phases] : fock) {
      for (const auto& [ph, n] : phases) diff[{g, ph}] += n;
    }
    for (const auto& [g, phases] : closed) {
      for (const auto& [ph, n] : phases) diff[{g, ph}] -= n;
    }
    int bad = 0;
    for (const auto& [key, n] : diff) bad += n != 0 ? 1 : 0;
    return static_cast<double>(bad);
  }));
  out.push_back(run_check("fock_vs_closed_form" + suffix, tolerance, [&] {
    const ComplexVector ac = to_complex(a);
    const TruncatedSeries fock = fock_zero_mode_trace(module, ac, max_grade);
    const long q = static_cast<long>(to_double(floor(max_grade))) + 1;
    const TruncatedSeries closed = z_trace_series(module, ac, q);
    return max_abs_difference(BiSeries::from_x0(fock, 0), BiSeries::from_x0(closed, 0));
  }));
  return out;
}

CheckResult t_case(const EvenLattice& lattice, std::uint64_t seed, int points, double tolerance) {
  return run_check("t_case_phase", tolerance, [&] {
    const auto pts =
        sample_points(lattice.rank(), UnimodularMatrix::T(), static_cast<std::size_t>(points), seed);
    double err = 0.0;
    for (const auto& c : dual_coset_reps(lattice)) {
      const ModuleRef W{lattice, c};
      const Complex phase = predicted_t_phase(W);
      for (const auto& p : pts) {
        ComplexVector ab(p.a.size());
        for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = p.a[i] + p.b[i];
        const Complex lhs = z_trace(W, {p.a, p.b, p.tau + 1.0});
        const Complex rhs = z_trace(W, {ab, p.b, p.tau});
        err = std::max(err, scaled_error(phase * rhs, lhs));
      }
    }
    return err;
  });
}

CheckResult t_fit(const EvenLattice& lattice, std::uint64_t seed, double tolerance) {
  return run_check("t_fit_matches_phases", tolerance, [&] {
    const auto m = dual_coset_reps(lattice).size();
    const auto A = fit_transition(lattice, UnimodularMatrix::T(),
                                  sample_points(lattice.rank(), UnimodularMatrix::T(), 3 * m, seed));
    return max_abs_difference(A.entries, predicted_t_matrix(lattice, A.cosets));
  });
}

SCaseResult s_case(const EvenLattice& lattice, std::uint64_t seed, int samples, int holdout,
                   double tolerance) {
  SCaseResult res;
  const UnimodularMatrix S = UnimodularMatrix::S();
  res.checks.push_back(run_check("s_holdout_residual", tolerance, [&] {
    res.A =
        fit_transition(lattice, S, sample_points(lattice.rank(), S, static_cast<std::size_t>(samples), seed));
    const auto pts = sample_points(lattice.rank(), S, static_cast<std::size_t>(holdout), seed + 1);
    return verify_main_theorem(lattice, S, pts, res.A).max_residual;
  }));
  res.checks.push_back(run_check("s_entry_moduli", tolerance, [&] {
    if (res.A.entries.empty()) throw Error(ErrorCode::IllConditioned, "S fit unavailable");
    const double expected = 1.0 / std::sqrt(static_cast<double>(res.A.entries.size()));
    double err = 0.0;
    for (const auto& row : res.A.entries) {
      for (const auto& e : row) err = std::max(err, std::abs(std::abs(e) - expected));
    }
    return err;
  }));
  return res;
}

std::vector<CheckResult> general_words(const EvenLattice& lattice, std::uint64_t seed, int words, int max_len,
                                       int holdout, double tolerance) {
  const auto m = dual_coset_reps(lattice).size();
  std::vector<CheckResult> out;
  std::uint64_t salt = 0;
  for (const auto& word :
       sample_words(static_cast<std::size_t>(words), static_cast<std::size_t>(max_len), seed)) {
    const UnimodularMatrix alpha = word_product(word);
    const std::uint64_t s = seed + 100 * (++salt);
    out.push_back(run_check("word_" + letters_to_string(word) + "_" + alpha.to_string(), tolerance, [&] {
      const auto A = fit_transition(lattice, alpha, sample_points(lattice.rank(), alpha, 3 * m, s));
      const auto pts = sample_points(lattice.rank(), alpha, static_cast<std::size_t>(holdout), s + 1);
      return verify_main_theorem(lattice, alpha, pts, A).max_residual;
    }));
  }
  return out;
}

std::vector<CheckResult> cocycles(const EvenLattice& lattice, std::uint64_t seed, double tolerance) {
  const auto m = dual_coset_reps(lattice).size();
  auto fit = [&](const UnimodularMatrix& alpha, std::uint64_t s) {
    return fit_transition(lattice, alpha, sample_points(lattice.rank(), alpha, 3 * m, s));
  };
  const UnimodularMatrix S = UnimodularMatrix::S();
  const UnimodularMatrix T = UnimodularMatrix::T();
  const std::vector<std::tuple<std::string, UnimodularMatrix, UnimodularMatrix>> pairs = {
      {"cocycle_S_T", S, T}, {"cocycle_T_S", T, S}, {"cocycle_S_S", S, S}};
  std::vector<CheckResult> out;
  std::uint64_t salt = 0;
  for (const auto& [name, x, y] : pairs) {
    const std::uint64_t s = seed + 1000 * (++salt);
    out.push_back(run_check(name, tolerance, [&, x = x, y = y] {
      return verify_cocycle(fit(x, s), fit(y, s + 1), fit(x * y, s + 2)).max_difference;
    }));
  }
  return out;
}

}  // namespace checks

VerificationReport run_suite(const std::string& suite, const RunConfig& cfg, int jobs) {
  const std::uint64_t seed = cfg.seed;
  std::vector<Group> groups;
  auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) {
    throw Error(ErrorCode::ConfigError, "unknown suite '" + suite + "'");
  }
  const int points = static_cast<int>(cfg.cutoff("points", 20));

  if (want("special-functions")) {
    const double tol = cfg.tolerance("special-functions", 1e-9);
    groups.push_back(single([] { return checks::g2_fixed_point(); }));
    groups.push_back([=] { return checks::quasimodular_laws(seed, points, tol); });
  }
  if (want("theta-classical")) {
    const double tol = cfg.tolerance("theta-classical", 1e-10);
    groups.push_back([=] { return checks::theta_table(seed, points, tol); });
    groups.push_back([=] { return checks::theta_dictionary(seed + 1, points, tol); });
  }
  if (want("combinatorics")) {
    groups.push_back([&cfg] {
      return checks::combinatorics(static_cast<int>(cfg.cutoff("sign_lemma_n", 8)),
                                   static_cast<int>(cfg.cutoff("count_n", 12)),
                                   static_cast<int>(cfg.cutoff("multinomial_max", 30)),
                                   static_cast<int>(cfg.cutoff("regroup_degree", 12)));
    });
  }
  if (want("npoint")) {
    const double tol = cfg.tolerance("npoint", 1e-9);
    const int x_span = static_cast<int>(cfg.cutoff("x_span", 4));
    const Rational q_order(cfg.cutoff("q_order", 6));
    const Rational fock_grade(cfg.cutoff("fock_grade", 6));
    const EvenLattice L = z2x_lattice();
    const auto cosets = dual_coset_reps(L);
    const ComplexVector x{Complex(0.5, 0.0)};
    groups.push_back(single([=] {
      return checks::trace_recursion("recursion_n1_W0", {L, cosets[0]}, {{Complex(0.3, -0.2)}}, x_span,
                                     q_order, tol);
    }));
    for (std::size_t h : {std::size_t{0}, std::size_t{2}}) {
      groups.push_back(single([=] {
        return checks::trace_recursion("recursion_n2_W" + std::to_string(h), {L, cosets[h]}, {x, x}, x_span,
                                       q_order, tol);
      }));
    }
    groups.push_back(single([=] {
      return checks::trace_recursion("recursion_n2_W1_complex", {L, cosets[1]},
                                     {{Complex(0.3, 0.1)}, {Complex(-0.2, 0.4)}}, x_span, q_order, tol);
    }));
    for (const auto& c : cosets) {
      groups.push_back([=] {
        return checks::fock_cross_oracle({L, c}, {Rational(1, 3)}, fock_grade, std::min(tol, 1e-12));
      });
    }
  }
  if (want("main-theorem")) {
    const double tol = cfg.tolerance("main-theorem", 1e-7);
    const EvenLattice L = resolve_lattice(cfg);
    const int m = static_cast<int>(dual_coset_reps(L).size());
    groups.push_back(single([=] { return checks::t_case(L, seed, points, std::min(tol, 1e-12)); }));
    groups.push_back(single([=] { return checks::t_fit(L, seed, std::min(tol, 1e-10)); }));
    groups.push_back([=] { return checks::s_case(L, seed, 2 * m, points, std::min(tol, 1e-8)).checks; });
    groups.push_back([=] { return checks::general_words(L, seed, 5, 6, points, tol); });
    groups.push_back([=] { return checks::cocycles(L, seed, tol); });
  }

  VerificationReport report = run_groups(suite, groups, jobs);
  report.context = {{"seed", seed}, {"points", points}};
  if (want("main-theorem")) report.context["lattice"] = resolve_lattice(cfg).name();
  return report;
}

}  // namespace lattrace
