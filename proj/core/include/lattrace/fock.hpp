#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lattrace/trace.hpp"

namespace lattrace {

// One oscillator factor e_dir(-mode), mode ≥ 1, dir a basis index.
struct Excitation {
  int mode;
  int dir;
  friend auto operator<=>(const Excitation&, const Excitation&) = default;
};

// Monomial ∏ e_{dir}(-mode) |m⟩. Excitations are kept sorted so equal states compare equal.
struct FockState {
  LatticeVector point;
  std::vector<Excitation> excitations;
  Rational grade;

  [[nodiscard]] int level() const;
  friend bool operator==(const FockState& a, const FockState& b) {
    return a.point.coords == b.point.coords && a.excitations == b.excitations;
  }
  friend bool operator<(const FockState& a, const FockState& b);
};

struct GradedBasis {
  ModuleRef module;
  Rational cutoff;
  std::vector<FockState> states;  // by grade, then momentum, then excitations

  // Number of states at each grade, keyed by grade.
  [[nodiscard]] std::map<Rational, std::size_t> dimensions() const;
};

inline constexpr std::size_t kMaxBasisStates = 100'000;

// All states of grade ≤ cutoff. Throws CutoffTooLarge beyond kMaxBasisStates.
GradedBasis build_basis(const ModuleRef& module, const Rational& cutoff);

// h(n) for h = Σ h_i e_i in lattice coordinates.
template <class Scalar>
struct ModeAction {
  std::vector<Scalar> h;
  int n;
};

template <class Scalar>
using FockVector = std::vector<std::pair<FockState, Scalar>>;

// Creation (n < 0) appends e_i(n) with coefficient h_i. Annihilation (n > 0) removes
// one e_j(-n) with weight n<h,e_j> per copy. h(0) multiplies by <h,m>.
FockVector<Complex> apply_mode(const EvenLattice& lattice, const ModeAction<Complex>& op, const FockState& s);
FockVector<Rational> apply_mode(const EvenLattice& lattice, const ModeAction<Rational>& op,
                                const FockState& s);

// Applies op to each term and merges equal states (order of first appearance).
FockVector<Complex> apply_mode(const EvenLattice& lattice, const ModeAction<Complex>& op,
                               const FockVector<Complex>& v);
FockVector<Rational> apply_mode(const EvenLattice& lattice, const ModeAction<Rational>& op,
                                const FockVector<Rational>& v);

// Grid denominator for q^{grade - d/24} on this module.
int grade_denominator(const ModuleRef& module);

// n = 1: tr o(v) q^{L(0)-c/24} at x⁰.
// n = 2: Σ_{|k| ≤ x_span} x^k tr v₁(k) v₂(-k) q^{L(0)-c/24}, x = q_{z₂-z₁}.
// Traces run over build_basis(module, q_order + x_span), so every coefficient of
// grade ≤ q_order is exact; the BiSeries order is set to that grade.
BiSeries s_function_trace(const ModuleRef& module, const std::vector<ComplexVector>& vs, int x_span,
                          const Rational& q_order);

struct RecursionReport {
  BiSeries lhs;
  BiSeries rhs;
  double max_discrepancy = 0.0;
};

// Recursion side for ψ = 1:
//   n = 1: tr o(v₁) q^{…}
//   n = 2: tr o(v₁)o(v₂) q^{…} + <-v₁,v₂> P₂(x,q)/(2πi)² · tr q^{…}
// built from lattice sums and partition counts, without touching the Fock space.
RecursionReport verify_trace_recursion(const ModuleRef& module, const std::vector<ComplexVector>& vs,
                                       int x_span, const Rational& q_order);

// tr e^{2πi a(0)} q^{L(0)-c/24} over build_basis(module, max_grade), as exact
// grade -> phase -> multiplicity counts and as a numeric series.
PhaseCounts fock_phase_counts(const ModuleRef& module, const RationalVector& a, const Rational& max_grade);
TruncatedSeries fock_zero_mode_trace(const ModuleRef& module, const ComplexVector& a,
                                     const Rational& max_grade);

}  // namespace lattrace
