#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lattrace/fock.hpp"
#include "lattrace/modular.hpp"
#include "lattrace/report.hpp"

namespace lattrace {

inline const std::vector<std::string> kSuites = {
    "special-functions", "theta-classical", "combinatorics", "npoint", "main-theorem", "all"};

// L = 2ℤx with <x,x> = 1, i.e. Gram [[4]] in the basis e = 2x.
EvenLattice z2x_lattice();
// [[2,-1],[-1,2]].
EvenLattice a2_lattice();

// lattice_file from the config if set, otherwise z2x_lattice().
EvenLattice resolve_lattice(const RunConfig& cfg);

// Runs fn, timing it; an lattrace::Error turns into a failed check with the message
// as detail.
CheckResult run_check(const std::string& name, double tolerance, const std::function<double()>& fn);

namespace checks {

CheckResult g2_fixed_point(double tolerance = 1e-12);

// P₂, G₂ and ℘ laws for S, T and TST at `points` seeded points each.
std::vector<CheckResult> quasimodular_laws(std::uint64_t seed, int points, double tolerance);

// The four S rows θ_c(z/τ, -1/τ) = μ (-iτ)^{1/2} e^{πiz²/τ} θ_{c'}(z, τ),
// Im τ ∈ [0.5, 2], |z| ≤ 0.4.
std::vector<CheckResult> theta_table(std::uint64_t seed, int points, double tolerance);

// θ_{h,k}(z, τ) against the θ_{W_i}(zx(-1)1, τ) combinations for V_{2ℤx}.
std::vector<CheckResult> theta_dictionary(std::uint64_t seed, int points, double tolerance);

std::vector<CheckResult> combinatorics(int sign_lemma_n, int count_n, int multinomial_max,
                                       int regroup_degree);

CheckResult trace_recursion(const std::string& name, const ModuleRef& module,
                            const std::vector<ComplexVector>& vs, int x_span, const Rational& q_order,
                            double tolerance);

// Fock trace of e^{2πi a(0)} q^{L(0)-c/24} vs the closed form, per grade: exact
// phase multiplicities and numeric coefficients.
std::vector<CheckResult> fock_cross_oracle(const ModuleRef& module, const RationalVector& a,
                                           const Rational& max_grade, double tolerance);

// Z_h(v;u;τ+1) = e^{2πi(<β,β>/2 - d/24)} Z_h(v+u;u;τ) on every module.
CheckResult t_case(const EvenLattice& lattice, std::uint64_t seed, int points, double tolerance);
// Fitted A_T against the diagonal phases.
CheckResult t_fit(const EvenLattice& lattice, std::uint64_t seed, double tolerance);

struct SCaseResult {
  TransitionMatrix A;
  std::vector<CheckResult> checks;  // holdout residual, |entries|
};
SCaseResult s_case(const EvenLattice& lattice, std::uint64_t seed, int samples, int holdout,
                   double tolerance);

std::vector<CheckResult> general_words(const EvenLattice& lattice, std::uint64_t seed, int words, int max_len,
                                       int holdout, double tolerance);

// ‖A_{αβ} - A_α A_β‖ for (S,T), (T,S), (S,S).
std::vector<CheckResult> cocycles(const EvenLattice& lattice, std::uint64_t seed, double tolerance);

}  // namespace checks

// Runs one suite (or "all"). jobs > 1 runs independent check groups concurrently;
// the report order does not depend on it. Throws ConfigError for an unknown suite.
VerificationReport run_suite(const std::string& suite, const RunConfig& cfg, int jobs = 1);

}  // namespace lattrace
