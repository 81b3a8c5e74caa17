#pragma once

#include <utility>
#include <vector>

#include "lattrace/rational.hpp"

namespace lattrace {

// σ ∈ Σ_n with σ² = 1, stored as its 2-cycles on {1..n}.
class Involution {
 public:
  // Throws InvalidArgument unless the pairs are disjoint, in range, and non-degenerate.
  Involution(int n, std::vector<std::pair<int, int>> pairs);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }
  [[nodiscard]] bool is_identity() const noexcept { return pairs_.empty(); }
  [[nodiscard]] std::vector<int> moved() const;  // m(σ)
  [[nodiscard]] std::vector<int> fixed() const;  // f(σ)
  [[nodiscard]] int operator()(int i) const;
  // One-line form, 1-based: perm[i-1] = σ(i).
  [[nodiscard]] std::vector<int> as_permutation() const;

  friend bool operator==(const Involution&, const Involution&) = default;

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;  // each (i, j) with i < j, sorted
};

inline constexpr int kMaxInvolutionN = 12;

// I(n), identity first. Throws NTooLarge for n > 12.
std::vector<Involution> list_involutions(int n);

// Enumerated number of σ ∈ I(n) with |f(σ)| = r. Throws ParityMismatch when n - r is odd.
BigInt count_with_fixed(int n, int r);

// C(2p+r, r) · (2p)!/(p! 2^p).
BigInt closed_form_count(int p, int r);
// C(2p+r, r) · (2p+r)!/(p! 2^p); overcounts whenever r > 0, kept for reports.
BigInt alternate_closed_form_count(int p, int r);

struct ClosedFormCheck {
  BigInt enumerated;
  BigInt closed_form;
  BigInt alternate;
  [[nodiscard]] bool holds() const { return enumerated == closed_form; }
};
ClosedFormCheck closed_form_check(int p, int r);

// T(n, r) via T(n, r) = T(n-1, r-1) + (n-1) T(n-2, r); no enumeration, any n.
BigInt count_with_fixed_recurrence(int n, int r);
// |I(n)| via T(n) = T(n-1) + (n-1) T(n-2).
BigInt involution_count_recurrence(int n);

BigInt binomial(int n, int k);
BigInt factorial(int n);

// Ordered (σ₁, …, σ_t) of non-identity involutions with disjoint moved sets and
// σ₁⋯σ_t = σ; one for each ordered set partition of σ's pairs.
struct Decomposition {
  std::vector<Involution> parts;
};
std::vector<Decomposition> enumerate_decompositions(const Involution& sigma);

// Checks a decomposition by composing its parts as permutations.
bool decomposition_is_valid(const Decomposition& d, const Involution& sigma);

// With E multiplicative over disjoint products, Σ_t (-1)^t E_{σ_t}⋯E_{σ₁} = (-1)^p E_σ
// reduces to Σ_{decompositions} (-1)^t = (-1)^p.
struct SignLemmaResult {
  int p = 0;
  BigInt signed_sum;
  std::size_t decompositions = 0;
  bool all_valid = true;  // every decomposition composes back to σ
  [[nodiscard]] bool holds() const { return all_valid && signed_sum == (p % 2 == 0 ? 1 : -1); }
};
SignLemmaResult verify_sign_lemma(const Involution& sigma);

// 1/(r+2p)! · C(r+2p, r) · (2p)!/(p! 2^p) == 1/(r+p)! · C(r+p, r) · 1/2^p.
bool verify_multinomial_identity(int p, int r);

// In commuting symbols c, X: Σ_n (1/n!) Σ_{σ∈I(n)} c^{|m(σ)|/2} X^{|f(σ)|} == e^{c/2 + X},
// compared coefficient-wise for c^p X^r, p ≤ p_max, r ≤ r_max.
struct RegroupReport {
  int terms_checked = 0;
  int mismatches = 0;
  int enumerated_terms = 0;  // coefficients taken from list_involutions rather than the recurrence
  [[nodiscard]] bool holds() const { return mismatches == 0; }
};
RegroupReport exponential_regroup_check(int p_max, int r_max);

}  // namespace lattrace
