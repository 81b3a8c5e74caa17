#include "lattrace/fock.hpp"

#include <algorithm>
#include <numeric>

#include "lattrace/error.hpp"

namespace lattrace {

namespace {

Complex lift(const Rational& r) { return {to_double(r), 0.0}; }
const Rational& lift_exact(const Rational& r) { return r; }

template <class Scalar>
Scalar from_long(long v) {
  return Scalar(v);
}

// <h, e_j> = Σ_i h_i G_ij.
template <class Scalar>
Scalar pair_with_basis(const EvenLattice& L, const std::vector<Scalar>& h, int j) {
  Scalar out{};
  for (int i = 0; i < L.rank(); ++i) out += h[i] * from_long<Scalar>(L.gram()[i][j]);
  return out;
}

template <class Scalar>
Scalar pair_with_point(const EvenLattice& L, const std::vector<Scalar>& h, const RationalVector& m) {
  Scalar out{};
  for (int j = 0; j < L.rank(); ++j) {
    const Scalar hj = pair_with_basis(L, h, j);
    if constexpr (std::is_same_v<Scalar, Complex>) {
      out += hj * lift(m[j]);
    } else {
      out += hj * lift_exact(m[j]);
    }
  }
  return out;
}

template <class Scalar>
FockVector<Scalar> apply_one(const EvenLattice& L, const ModeAction<Scalar>& op, const FockState& s) {
  if (op.h.size() != static_cast<std::size_t>(L.rank())) {
    throw Error(ErrorCode::InvalidArgument, "mode vector dimension does not match the lattice rank");
  }
  FockVector<Scalar> out;
  if (op.n == 0) {
    const Scalar c = pair_with_point(L, op.h, s.point.coords);
    if (c != Scalar{}) out.emplace_back(s, c);
    return out;
  }
  if (op.n < 0) {
    for (int i = 0; i < L.rank(); ++i) {
      if (op.h[i] == Scalar{}) continue;
      FockState t = s;
      const Excitation e{-op.n, i};
      t.excitations.insert(std::upper_bound(t.excitations.begin(), t.excitations.end(), e), e);
      t.grade += -op.n;
      out.emplace_back(std::move(t), op.h[i]);
    }
    return out;
  }
  // Annihilation: one term per distinct e_j(-n) factor, weighted by its multiplicity.
  const auto& ex = s.excitations;
  for (std::size_t pos = 0; pos < ex.size();) {
    std::size_t end = pos;
    while (end < ex.size() && ex[end] == ex[pos]) ++end;
    if (ex[pos].mode == op.n) {
      const Scalar w = pair_with_basis(L, op.h, ex[pos].dir) * from_long<Scalar>(op.n) *
                       from_long<Scalar>(static_cast<long>(end - pos));
      if (w != Scalar{}) {
        FockState t = s;
        t.excitations.erase(t.excitations.begin() + static_cast<std::ptrdiff_t>(pos));
        t.grade -= op.n;
        out.emplace_back(std::move(t), w);
      }
    }
    pos = end;
  }
  return out;
}

template <class Scalar>
FockVector<Scalar> apply_many(const EvenLattice& L, const ModeAction<Scalar>& op,
                              const FockVector<Scalar>& v) {
  FockVector<Scalar> out;
  for (const auto& [state, c] : v) {
    for (auto& [t, w] : apply_one(L, op, state)) {
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == t; });
      if (it == out.end()) {
        out.emplace_back(std::move(t), c * w);
      } else {
        it->second += c * w;
      }
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second == Scalar{}; });
  return out;
}

// Sorted multisets of excitations with total mode ≤ budget, appended to `out`.
void excitation_sets(int rank, int budget, std::vector<Excitation>& cur, Excitation min_next,
                     std::vector<std::vector<Excitation>>& out) {
  out.push_back(cur);
  for (int mode = min_next.mode; mode <= budget; ++mode) {
    for (int dir = (mode == min_next.mode ? min_next.dir : 0); dir < rank; ++dir) {
      cur.push_back({mode, dir});
      excitation_sets(rank, budget - mode, cur, {mode, dir}, out);
      cur.pop_back();
    }
  }
}

long exponent_units(const Rational& e, int denom) {
  const Rational scaled = e * denom;
  if (denominator(scaled) != 1) throw Error(ErrorCode::InvalidArgument, "exponent off the series grid");
  return static_cast<long>(numerator(scaled));
}

long order_units(const Rational& e, int denom) {
  const Rational scaled = e * denom;
  return static_cast<long>(floor_div(numerator(scaled), denominator(scaled)));
}

// Σ_m f(m) q^{<m,m>/2} · ∏(1-qⁿ)^{-d} · q^{-d/24} through grade q_order.
template <class F>
TruncatedSeries lattice_sum_series(const ModuleRef& module, const Rational& q_order, F weight) {
  const int D = grade_denominator(module);
  const int d = module.lattice.rank();
  const Rational shift(d, 24);
  TruncatedSeries out(D, order_units(q_order - shift, D));
  if (q_order < 0) return out;
  const auto levels = colored_partition_counts(d, static_cast<int>(to_double(floor(q_order))));
  for (const auto& v : enumerate_vectors(module.lattice, module.coset, q_order)) {
    const Complex w = weight(v);
    for (std::size_t n = 0; n < levels.size(); ++n) {
      const Rational grade = v.norm / 2 + static_cast<long>(n);
      if (grade > q_order) break;
      out.add_to_coeff(exponent_units(grade - shift, D), w * levels[n].convert_to<double>());
    }
  }
  return out;
}

}  // namespace

int FockState::level() const {
  int total = 0;
  for (const auto& e : excitations) total += e.mode;
  return total;
}

bool operator<(const FockState& a, const FockState& b) {
  if (a.grade != b.grade) return a.grade < b.grade;
  if (a.point.coords != b.point.coords) return a.point.coords < b.point.coords;
  return a.excitations < b.excitations;
}

std::map<Rational, std::size_t> GradedBasis::dimensions() const {
  std::map<Rational, std::size_t> out;
  for (const auto& s : states) ++out[s.grade];
  return out;
}

GradedBasis build_basis(const ModuleRef& module, const Rational& cutoff) {
  if (cutoff < 0) throw Error(ErrorCode::InvalidArgument, "negative basis cutoff");
  const int d = module.lattice.rank();
  // Bound the size before materializing anything.
  const auto levels = colored_partition_counts(d, static_cast<int>(to_double(floor(cutoff))));
  const auto points = enumerate_vectors(module.lattice, module.coset, cutoff);
  BigInt total = 0;
  for (const auto& v : points) {
    const Rational budget = cutoff - v.norm / 2;
    for (std::size_t n = 0; n < levels.size() && Rational(static_cast<long>(n)) <= budget; ++n)
      total += levels[n];
  }
  if (total > kMaxBasisStates) {
    throw Error(ErrorCode::CutoffTooLarge,
                "basis would exceed " + std::to_string(kMaxBasisStates) + " states");
  }

  GradedBasis basis{module, cutoff, {}};
  std::vector<Excitation> cur;
  for (const auto& v : points) {
    const int budget = static_cast<int>(to_double(floor(cutoff - v.norm / 2)));
    std::vector<std::vector<Excitation>> sets;
    excitation_sets(d, budget, cur, {1, 0}, sets);
    for (auto& ex : sets) {
      FockState s{v, std::move(ex), v.norm / 2};
      s.grade += s.level();
      basis.states.push_back(std::move(s));
    }
  }
  std::sort(basis.states.begin(), basis.states.end());
  return basis;
}

FockVector<Complex> apply_mode(const EvenLattice& lattice, const ModeAction<Complex>& op,
                               const FockState& s) {
  return apply_one(lattice, op, s);
}
FockVector<Rational> apply_mode(const EvenLattice& lattice, const ModeAction<Rational>& op,
                                const FockState& s) {
  return apply_one(lattice, op, s);
}
FockVector<Complex> apply_mode(const EvenLattice& lattice, const ModeAction<Complex>& op,
                               const FockVector<Complex>& v) {
  return apply_many(lattice, op, v);
}
FockVector<Rational> apply_mode(const EvenLattice& lattice, const ModeAction<Rational>& op,
                                const FockVector<Rational>& v) {
  return apply_many(lattice, op, v);
}

int grade_denominator(const ModuleRef& module) {
  const auto& beta = module.coset.beta();
  const auto den = static_cast<int>(denominator(module.lattice.inner(beta, beta) / 2));
  return std::lcm(24, den);
}

BiSeries s_function_trace(const ModuleRef& module, const std::vector<ComplexVector>& vs, int x_span,
                          const Rational& q_order) {
  if (vs.empty() || vs.size() > 2) throw Error(ErrorCode::InvalidArgument, "only n = 1, 2 are supported");
  if (x_span < 0 || q_order < 0) throw Error(ErrorCode::InvalidArgument, "negative trace window");
  const EvenLattice& L = module.lattice;
  const int D = grade_denominator(module);
  const Rational shift(L.rank(), 24);
  const int span = vs.size() == 1 ? 0 : x_span;
  const Rational cutoff = q_order + span;
  const GradedBasis basis = build_basis(module, cutoff);

  BiSeries out(-x_span, x_span, D, order_units(q_order - shift, D));
  for (int k = -span; k <= span; ++k) {
    const Rational exact_through = cutoff - (k < 0 ? -k : k);
    for (const auto& s : basis.states) {
      if (s.grade > exact_through) break;
      FockVector<Complex> v{{s, Complex(1.0, 0.0)}};
      if (vs.size() == 2) v = apply_mode(L, ModeAction<Complex>{vs[1], -k}, v);
      v = apply_mode(L, ModeAction<Complex>{vs[0], k}, v);
      Complex diag{};
      for (const auto& [t, c] : v) {
        if (t == s) diag += c;
      }
      if (diag != Complex{}) out.add_to_coeff(k, exponent_units(s.grade - shift, D), diag);
    }
  }
  return out;
}

RecursionReport verify_trace_recursion(const ModuleRef& module, const std::vector<ComplexVector>& vs,
                                       int x_span, const Rational& q_order) {
  if (vs.empty() || vs.size() > 2) throw Error(ErrorCode::InvalidArgument, "only n = 1, 2 are supported");
  const EvenLattice& L = module.lattice;
  RecursionReport report;
  report.lhs = s_function_trace(module, vs, x_span, q_order);

  auto zero_modes = [&](const LatticeVector& v) {
    const ComplexVector m = to_complex(v.coords);
    Complex w(1.0, 0.0);
    for (const auto& a : vs) w *= L.inner(a, m);
    return w;
  };
  report.rhs = BiSeries::from_x0(lattice_sum_series(module, q_order, zero_modes), x_span);
  if (vs.size() == 2) {
    const TruncatedSeries character =
        lattice_sum_series(module, q_order, [](const LatticeVector&) { return Complex(1.0, 0.0); });
    const Complex weight = -voa_pairing(L, vs[0], vs[1]) / (kTwoPiI * kTwoPiI);
    const int p2_order = static_cast<int>(to_double(floor(q_order))) + 2;
    report.rhs += (p2_series(x_span, p2_order) * weight) * character;
  }
  report.max_discrepancy = max_abs_difference(report.lhs, report.rhs);
  return report;
}

PhaseCounts fock_phase_counts(const ModuleRef& module, const RationalVector& a, const Rational& max_grade) {
  PhaseCounts out;
  const EvenLattice& L = module.lattice;
  for (const auto& s : build_basis(module, max_grade).states) {
    out[s.grade][frac(L.inner(a, s.point.coords))] += 1;
  }
  return out;
}

TruncatedSeries fock_zero_mode_trace(const ModuleRef& module, const ComplexVector& a,
                                     const Rational& max_grade) {
  const EvenLattice& L = module.lattice;
  const int D = grade_denominator(module);
  const Rational shift(L.rank(), 24);
  TruncatedSeries out(D, order_units(max_grade - shift, D));
  for (const auto& s : build_basis(module, max_grade).states) {
    // e^{2πi a(0)} acts on the momentum-m sector by e^{2πi<a,m>}.
    const Complex phase = std::exp(kTwoPiI * L.inner(a, to_complex(s.point.coords)));
    out.add_to_coeff(exponent_units(s.grade - shift, D), phase);
  }
  return out;
}

}  // namespace lattrace
