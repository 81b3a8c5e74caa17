#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lattrace/trace.hpp"

namespace lattrace {

// (a b; f d) with ad - bf = 1.
class UnimodularMatrix {
 public:
  // Throws InvalidArgument when ad - bf != 1.
  UnimodularMatrix(long a, long b, long f, long d);

  static UnimodularMatrix identity() { return {1, 0, 0, 1}; }
  static UnimodularMatrix S() { return {0, -1, 1, 0}; }
  static UnimodularMatrix T() { return {1, 1, 0, 1}; }
  static UnimodularMatrix T_inv() { return {1, -1, 0, 1}; }

  [[nodiscard]] long a() const noexcept { return a_; }
  [[nodiscard]] long b() const noexcept { return b_; }
  [[nodiscard]] long f() const noexcept { return f_; }
  [[nodiscard]] long d() const noexcept { return d_; }
  [[nodiscard]] UnimodularMatrix negated() const { return {-a_, -b_, -f_, -d_}; }
  [[nodiscard]] UnimodularMatrix inverse() const { return {d_, -b_, -f_, a_}; }
  [[nodiscard]] std::string to_string() const;

  friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y);
  friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

 private:
  long a_, b_, f_, d_;
};

// Parses "a,b,f,d".
UnimodularMatrix parse_unimodular(const std::string& text);

// (aτ + b)/(fτ + d).
Complex act_tau(const UnimodularMatrix& alpha, Complex tau);

// (v, u) ↦ (d·v + b·u, f·v + a·u). With this action
//   Z_h(v; u; ατ) = Σ_k A^α_{hk} Z_k(α·(v, u); τ)
// composes as A^{αβ} = A^α A^β, which is what the S and T cases require.
std::pair<ComplexVector, ComplexVector> act_pair(const UnimodularMatrix& alpha, const ComplexVector& v,
                                                 const ComplexVector& u);
// (a·v + b·u, f·v + d·u). Agrees with act_pair when a = d but is not an action
// compatible with composing the generator cases.
std::pair<ComplexVector, ComplexVector> act_pair_naive(const UnimodularMatrix& alpha, const ComplexVector& v,
                                                       const ComplexVector& u);

enum class Generator { S, T, TInv };
UnimodularMatrix generator_matrix(Generator g);
std::string to_string(Generator g);

struct STWord {
  std::vector<Generator> letters;
  int sign = 1;  // α = sign · ∏ letters
};
STWord decompose_ST(const UnimodularMatrix& alpha);
UnimodularMatrix word_product(const std::vector<Generator>& letters);

using ComplexMatrix = std::vector<ComplexVector>;

struct TransitionMatrix {
  UnimodularMatrix alpha = UnimodularMatrix::identity();
  std::vector<CosetLabel> cosets;
  ComplexMatrix entries;  // entries[h][k]
  double fit_residual = 0.0;
};

struct FitConfig {
  TraceConfig trace{};
  double max_condition = 1e10;
};

// Relative residual used for fits and holdout checks: |x - y| / max(1, |y|).
double scaled_error(Complex x, Complex y);

// Least squares for A in Z_h(p.a, p.b, α p.tau) = Σ_k A_{hk} Z_k(α·(p.a, p.b), p.tau).
// Throws IllConditioned when cond(XᴴX) exceeds cfg.max_condition.
TransitionMatrix fit_transition(const EvenLattice& lattice, const UnimodularMatrix& alpha,
                                const std::vector<TracePoint>& samples, const FitConfig& cfg = {});

struct MainTheoremReport {
  double max_residual = 0.0;
  std::size_t points = 0;
};
MainTheoremReport verify_main_theorem(const EvenLattice& lattice, const UnimodularMatrix& alpha,
                                      const std::vector<TracePoint>& holdout, const TransitionMatrix& A,
                                      const TraceConfig& cfg = {});

struct CocycleReport {
  ComplexMatrix product;   // A_α A_β
  ComplexMatrix composed;  // A_{αβ}
  double max_difference = 0.0;
};
CocycleReport verify_cocycle(const TransitionMatrix& A_alpha, const TransitionMatrix& A_beta,
                             const TransitionMatrix& A_alpha_beta);

ComplexMatrix multiply(const ComplexMatrix& x, const ComplexMatrix& y);
double max_abs_difference(const ComplexMatrix& x, const ComplexMatrix& y);

// Closed forms used as cross-checks: A_T = diag e^{2πi(<β,β>/2 - d/24)} and
// A_S[h][k] = e^{-2πi<β_h,β_k>} / √|L*/L|.
ComplexMatrix predicted_t_matrix(const EvenLattice& lattice, const std::vector<CosetLabel>& cosets);
ComplexMatrix predicted_s_matrix(const EvenLattice& lattice, const std::vector<CosetLabel>& cosets);

struct SamplingConfig {
  double im_tau_floor = 0.25;
  double vector_scale = 0.25;  // components of a, b have |Re|, |Im| ≤ this
};

// Deterministic sample points with Im τ and Im ατ both ≥ im_tau_floor.
// For f = 0, τ lies in |Re τ| ≤ ½, Im τ ∈ [0.8, 1.6]; otherwise τ sits near the
// cusp -d/f so that ατ lands in a comparable box.
std::vector<TracePoint> sample_points(int rank, const UnimodularMatrix& alpha, std::size_t count,
                                      std::uint64_t seed, const SamplingConfig& cfg = {});

// Random words of length 1..max_len in {S, T} whose product has |f| ≤ 3 and
// entries bounded by 4, keeping both sides of the fit in the fast-convergence range.
std::vector<std::vector<Generator>> sample_words(std::size_t count, std::size_t max_len, std::uint64_t seed);

}  // namespace lattrace
