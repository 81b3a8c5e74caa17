#include "lattrace/fock.hpp"

#include <gtest/gtest.h>

#include <random>

#include "lattrace/error.hpp"
#include "oracles.hpp"

using namespace lattrace;

namespace {

const EvenLattice& z2x() {
  static const EvenLattice L = EvenLattice::validate({{4}});
  return L;
}
const EvenLattice& a2() {
  static const EvenLattice L = EvenLattice::validate({{2, -1}, {-1, 2}});
  return L;
}

ModuleRef module(const EvenLattice& L, std::size_t h) { return {L, dual_coset_reps(L)[h]}; }

// Per-grade dimensions from theta_series · (∏(1-qⁿ))^{-d}, computed on the series side.
std::map<Rational, long> series_dimensions(const ModuleRef& W, long max_grade) {
  const int d = W.lattice.rank();
  const auto th = theta_series(W.lattice, W.coset, max_grade);
  TruncatedSeries prod = TruncatedSeries::one(max_grade);
  for (int n = 1; n <= max_grade; ++n) {
    TruncatedSeries f = TruncatedSeries::one(max_grade);
    f.set_coeff(n, -1.0);
    prod = prod * f;
  }
  const auto gen = th * prod.reciprocal().pow(d);
  std::map<Rational, long> out;
  for (const auto& [k, c] : gen.terms()) {
    const Rational g = Rational(k) / gen.denom();
    if (g <= max_grade && std::llround(c.real()) != 0) out[g] = std::llround(c.real());
  }
  return out;
}

FockState vacuum(int rank) {
  return {LatticeVector{RationalVector(static_cast<std::size_t>(rank), Rational(0)), 0}, {}, 0};
}

}  // namespace

TEST(Fock, BasisDimensionsW0) {
  const auto basis = build_basis(module(z2x(), 0), 2);
  const auto dims = basis.dimensions();
  EXPECT_EQ(dims.at(0), 1U);
  EXPECT_EQ(dims.at(1), 1U);
  EXPECT_EQ(dims.at(2), 4U);
}

TEST(Fock, BasisHalfGradeW2) {
  const auto basis = build_basis(module(z2x(), 2), Rational(1, 2));
  ASSERT_EQ(basis.states.size(), 2U);  // m = ±x
  for (const auto& s : basis.states) EXPECT_EQ(s.grade, Rational(1, 2));
}

TEST(Fock, VacuumOnly) {
  const auto basis = build_basis(module(a2(), 0), 0);
  ASSERT_EQ(basis.states.size(), 1U);
  EXPECT_TRUE(basis.states[0].excitations.empty());
}

TEST(Fock, DimensionsMatchSeries) {
  for (const EvenLattice* L : {&z2x(), &a2()}) {
    for (std::size_t h = 0; h < dual_coset_reps(*L).size(); ++h) {
      const auto W = module(*L, h);
      const auto dims = build_basis(W, 6).dimensions();
      const auto expected = series_dimensions(W, 6);
      ASSERT_EQ(dims.size(), expected.size());
      for (const auto& [g, n] : expected) EXPECT_EQ(static_cast<long>(dims.at(g)), n) << to_string(g);
    }
  }
}

TEST(Fock, BasisIsOrderedByGrade) {
  const auto basis = build_basis(module(a2(), 1), 4);
  for (std::size_t i = 1; i < basis.states.size(); ++i) {
    EXPECT_TRUE(basis.states[i - 1] < basis.states[i]);
  }
}

TEST(Fock, CutoffTooLarge) {
  try {
    (void)build_basis(module(a2(), 0), 40);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CutoffTooLarge);
  }
}

TEST(Fock, ModeExamples) {
  const auto& L = z2x();
  const ModeAction<Rational> h0{{1}, 0};
  EXPECT_TRUE(apply_mode(L, h0, vacuum(1)).empty());

  // h(1)h(-1)|0> = <h,h>|0>.
  const RationalVector h{Rational(1, 2)};
  FockVector<Rational> v{{vacuum(1), 1}};
  v = apply_mode(L, ModeAction<Rational>{h, -1}, v);
  v = apply_mode(L, ModeAction<Rational>{h, 1}, v);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].first, vacuum(1));
  EXPECT_EQ(v[0].second, L.inner(h, h));

  // h(0) on |e> with h = x = e/2: <x, 2x> = 2.
  FockState e = vacuum(1);
  e.point = {{1}, 4};
  e.grade = 2;
  const auto r = apply_mode(L, ModeAction<Rational>{h, 0}, e);
  ASSERT_EQ(r.size(), 1U);
  EXPECT_EQ(r[0].second, 2);
}

TEST(Fock, AnnihilationCountsMultiplicity) {
  const auto& L = z2x();
  FockVector<Rational> v{{vacuum(1), 1}};
  const RationalVector e{1};
  v = apply_mode(L, ModeAction<Rational>{e, -2}, v);
  v = apply_mode(L, ModeAction<Rational>{e, -2}, v);
  v = apply_mode(L, ModeAction<Rational>{e, 2}, v);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_EQ(v[0].second, 2 * 4 * 2);  // n · <e,e> · multiplicity
  EXPECT_EQ(v[0].first.excitations.size(), 1U);
}

TEST(Fock, CommutatorContractExact) {
  // [h(m), h'(-m)] = m<h,h'> on random basis states, in exact arithmetic.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-3, 3);
  const auto& L = a2();
  const auto basis = build_basis(module(L, 1), 3);
  for (int trial = 0; trial < 40; ++trial) {
    const RationalVector h{Rational(coef(rng), 2), Rational(coef(rng), 3)};
    const RationalVector hp{Rational(coef(rng)), Rational(coef(rng), 5)};
    const int m = 1 + trial % 3;
    const FockState& s = basis.states[static_cast<std::size_t>(rng() % basis.states.size())];
    const FockVector<Rational> start{{s, 1}};
    auto ab = apply_mode(L, ModeAction<Rational>{h, m}, apply_mode(L, ModeAction<Rational>{hp, -m}, start));
    auto ba = apply_mode(L, ModeAction<Rational>{hp, -m}, apply_mode(L, ModeAction<Rational>{h, m}, start));
    std::map<std::pair<RationalVector, std::vector<Excitation>>, Rational> diff;
    for (const auto& [t, c] : ab) diff[{t.point.coords, t.excitations}] += c;
    for (const auto& [t, c] : ba) diff[{t.point.coords, t.excitations}] -= c;
    const Rational expected = Rational(m) * L.inner(h, hp);
    for (const auto& [key, c] : diff) {
      if (key.first == s.point.coords && key.second == s.excitations) {
        EXPECT_EQ(c, expected);
      } else {
        EXPECT_EQ(c, 0);
      }
    }
  }
}

TEST(Fock, OnePointTraceIsXIndependent) {
  const auto W = module(z2x(), 1);
  const BiSeries s = s_function_trace(W, {{Complex(0.3, 0.1)}}, 3, 4);
  for (const auto& [key, c] : s.terms()) EXPECT_EQ(key.first, 0);
  EXPECT_FALSE(s.terms().empty());
}

TEST(Fock, OrthogonalPairHasNoXDependence) {
  // <(1,0),(1,2)> = 0 in A2.
  const auto W = module(a2(), 0);
  const BiSeries s = s_function_trace(W, {{1.0, 0.0}, {1.0, 2.0}}, 3, 4);
  for (const auto& [key, c] : s.terms()) {
    if (key.first != 0) EXPECT_LT(std::abs(c), 1e-12);
  }
  EXPECT_LT(verify_trace_recursion(W, {{1.0, 0.0}, {1.0, 2.0}}, 3, 4).max_discrepancy, 1e-12);
}

TEST(Fock, ZeroModeSliceMatchesDiagonalOracle) {
  // x⁰ coefficient of the 2-point trace is tr o(v₁)o(v₂) q^{L(0)-c/24}: Σ_m <a,m>² p(n) q^{...}.
  const auto W = module(z2x(), 0);
  const ComplexVector x{Complex(0.5, 0.0)};
  const BiSeries s = s_function_trace(W, {x, x}, 2, 6);
  const TruncatedSeries slice = s.x_slice(0);
  // m = ±e contributes <x,e>² = 4 at grade 2 + n; m = ±2e first appears at grade 8.
  for (int n = 0; n <= 4; ++n) {
    const Complex c = slice.coeff_at(Rational(2 + n) - Rational(1, 24));
    EXPECT_NEAR(c.real(), 2.0 * 4.0 * static_cast<double>(oracle::partitions(n)), 1e-12) << n;
  }
  EXPECT_LT(std::abs(slice.coeff_at(Rational(-1, 24))), 1e-15);
}

TEST(Fock, TwoPointTraceNonzeroOffDiagonal) {
  const auto W = module(z2x(), 0);
  const ComplexVector x{Complex(0.5, 0.0)};
  const BiSeries s = s_function_trace(W, {x, x}, 2, 3);
  // x(1)x(-1)|0> = <x,x>|0> = |0>; x(-1)x(1) e(-1)|0> = <x,e> x(-1)|0> = e(-1)|0>.
  EXPECT_NEAR(s.x_slice(1).coeff_at(Rational(-1, 24)).real(), 1.0, 1e-12);
  EXPECT_NEAR(s.x_slice(-1).coeff_at(Rational(23, 24)).real(), 1.0, 1e-12);
}

TEST(Fock, RecursionExamples) {
  const ComplexVector x{Complex(0.5, 0.0)};
  for (std::size_t h : {0U, 2U}) {
    EXPECT_LT(verify_trace_recursion(module(z2x(), h), {x, x}, 4, 6).max_discrepancy, 1e-9);
  }
  EXPECT_LT(verify_trace_recursion(module(z2x(), 0), {x}, 4, 6).max_discrepancy, 1e-12);
  const auto rep = verify_trace_recursion(
      module(a2(), 2), {{Complex(0.2, 0.1), Complex(-0.3, 0.0)}, {Complex(0.1, 0.0), Complex(0.4, -0.2)}}, 3,
      4);
  EXPECT_LT(rep.max_discrepancy, 1e-12);
  EXPECT_FALSE(rep.lhs.terms().empty());
}

TEST(Fock, RecursionDetectsWrongSign) {
  // Flipping the pairing sign in the recursion breaks agreement, so the check has teeth.
  const auto W = module(z2x(), 0);
  const ComplexVector x{Complex(0.5, 0.0)};
  auto rep = verify_trace_recursion(W, {x, x}, 2, 4);
  const Complex w = -2.0 * voa_pairing(W.lattice, x, x) / (kTwoPiI * kTwoPiI);
  const auto character = fock_zero_mode_trace(W, {0.0}, 4);
  BiSeries wrong = rep.rhs - (p2_series(2, 6) * w) * character;
  EXPECT_GT(max_abs_difference(rep.lhs, wrong), 0.5);
}

TEST(Fock, PhaseCountsMatchClosedForm) {
  for (std::size_t h = 0; h < 4; ++h) {
    const auto W = module(z2x(), h);
    EXPECT_EQ(fock_phase_counts(W, {Rational(1, 3)}, 6), graded_phase_counts(W, {Rational(1, 3)}, 6));
  }
  const auto W = module(a2(), 1);
  EXPECT_EQ(fock_phase_counts(W, {Rational(1, 5), Rational(2, 7)}, 4),
            graded_phase_counts(W, {Rational(1, 5), Rational(2, 7)}, 4));
}

TEST(Fock, ZeroModeTraceMatchesSeries) {
  for (std::size_t h = 0; h < 4; ++h) {
    const auto W = module(z2x(), h);
    const auto fock = fock_zero_mode_trace(W, {Complex(0.3, 0.0)}, 6);
    const auto closed = z_trace_series(W, {Complex(0.3, 0.0)}, 7);
    EXPECT_LT(max_abs_difference(BiSeries::from_x0(fock, 0), BiSeries::from_x0(closed, 0)), 1e-12);
  }
}
