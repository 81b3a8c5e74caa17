#pragma once

#include <map>
#include <vector>

#include "lattrace/lattice.hpp"
#include "lattrace/qseries.hpp"

namespace lattrace {

// The one place the pairing convention lives. For v = a(-1)1 and u = b(-1)1 the
// VOA form satisfies v₁u = -<v,u>1 while a(1)b(-1)1 = <a,b>1 in the lattice, so
// <v,u>_voa = kVoaPairingSign · <a,b>_lattice.
inline constexpr int kVoaPairingSign = -1;

// Weight-one states v = a(-1)1, u = b(-1)1 (lattice coordinates) and τ.
struct TracePoint {
  ComplexVector a;
  ComplexVector b;
  Complex tau;
};

// Irreducible module V_{L+β}.
struct ModuleRef {
  EvenLattice lattice;
  CosetLabel coset;
};

struct TraceConfig {
  EvalConfig eval{};
  // Terms below this fraction of the largest are dropped.
  double relative_tail = 1e-14;
  std::size_t max_terms = 2'000'000;
};

Complex voa_pairing(const EvenLattice& lattice, const ComplexVector& a, const ComplexVector& b);

// Z_W(v; u; τ) = tr_W e^{2πi(v(0) - <v,u>/2)} q^{u(0) - <u,u>/2 + L(0) - c/24}.
//
// On V_{L+β} the zero mode v(0) acts on the momentum-m sector by <a,m>, u(0) by
// <b,m>, and the oscillators contribute η(τ)^{-d}, so
//   Z = η^{-d} Σ_{m ∈ L+β} e^{2πi(<a,m> - <v,u>/2)} q^{<b,m> - <u,u>/2 + <m,m>/2}
//     = η^{-d} Σ e^{2πi<a, m + b/2>} q^{<m+b, m+b>/2}.
// The sum is cut where |term| drops below relative_tail of the peak, which for
// complex a, b sits at m ≈ -(Re b + (Re τ/Im τ) Im b + Im a / Im τ).
Complex z_trace(const ModuleRef& module, const TracePoint& p, const TraceConfig& cfg = {});

// θ_W(v, τ) = Z_W(v; 0; τ) η(τ)^d.
Complex theta_w(const ModuleRef& module, const ComplexVector& a, Complex tau, const TraceConfig& cfg = {});

// Z_{W_h} for every coset h, in dual_coset_reps order.
ComplexVector z_vector(const EvenLattice& lattice, const TracePoint& p, const TraceConfig& cfg = {});
ComplexVector z_vector(const EvenLattice& lattice, const std::vector<CosetLabel>& cosets, const TracePoint& p,
                       const TraceConfig& cfg = {});

// e^{2πi(<β,β>/2 - d/24)}: the factor with Z_W(v;u;τ+1) = phase · Z_W(v+u;u;τ).
Rational t_phase_exponent(const ModuleRef& module);
Complex predicted_t_phase(const ModuleRef& module);

// Returns the predicted phase after checking it against direct evaluation; throws
// PredictionMismatch when |lhs - phase·rhs| > tolerance · max(1, |lhs|).
Complex t_phase(const ModuleRef& module, const TracePoint& p, double tolerance = 1e-10,
                const TraceConfig& cfg = {});

// Σ_{m ∈ L+β} e^{2πi<a,m>} q^{<m,m>/2} through q^{q_order}.
TruncatedSeries theta_w_series(const ModuleRef& module, const ComplexVector& a, long q_order);

// q-expansion of Z_W(v; 0; τ): theta_w_series · η^{-d}. Grid denominator is
// lcm(24, denominator of <β,β>/2); trusted through roughly q^{q_order}.
TruncatedSeries z_trace_series(const ModuleRef& module, const ComplexVector& a, long q_order);

// grade -> (phase mod 1 -> multiplicity), where grade = <m,m>/2 + oscillator level
// and phase = <a,m> mod 1. Exact.
using PhaseCounts = std::map<Rational, std::map<Rational, BigInt>>;
PhaseCounts graded_phase_counts(const ModuleRef& module, const RationalVector& a, const Rational& max_grade);

// Coefficients of ∏_{n≥1}(1-qⁿ)^{-d} through qᴺ.
std::vector<BigInt> colored_partition_counts(int colors, int max_level);

ComplexVector to_complex(const RationalVector& v);

}  // namespace lattrace
