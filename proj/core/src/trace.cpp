#include "lattrace/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lattrace/error.hpp"

namespace lattrace {

namespace {

ComplexVector add(const ComplexVector& x, const ComplexVector& y) {
  ComplexVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

void require_dims(const EvenLattice& lattice, const TracePoint& p) {
  const auto d = static_cast<std::size_t>(lattice.rank());
  if (p.a.size() != d || p.b.size() != d) {
    throw Error(ErrorCode::InvalidArgument, "trace point dimension does not match the lattice rank");
  }
}

}  // namespace

ComplexVector to_complex(const RationalVector& v) {
  ComplexVector out;
  out.reserve(v.size());
  for (const auto& r : v) out.emplace_back(to_double(r), 0.0);
  return out;
}

Complex voa_pairing(const EvenLattice& lattice, const ComplexVector& a, const ComplexVector& b) {
  return static_cast<double>(kVoaPairingSign) * lattice.inner(a, b);
}

Complex z_trace(const ModuleRef& module, const TracePoint& p, const TraceConfig& cfg) {
  const EvenLattice& L = module.lattice;
  require_dims(L, p);
  require_im_tau(p.tau, cfg.eval);
  const int d = L.rank();
  const double tx = p.tau.real();
  const double ty = p.tau.imag();

  // Peak of |term| in y = m + s coordinates.
  std::vector<double> s(d);
  for (int i = 0; i < d; ++i) {
    s[i] = p.b[i].real() + (tx / ty) * p.b[i].imag() + p.a[i].imag() / ty;
  }
  // Σ|G_ij|/4 bounds min_{y ∈ coset + s} <y,y>; T is the decay window.
  double rho = 0.0;
  for (const auto& row : L.gram()) {
    for (long g : row) rho += std::abs(static_cast<double>(g));
  }
  rho /= 4.0;
  const double window = -std::log(cfg.relative_tail * 1e-6) / (kPi * ty);
  const double bound = rho + window;

  std::vector<long> lo(d), hi(d);
  double count = 1.0;
  for (int i = 0; i < d; ++i) {
    const double w = std::sqrt(bound * to_double(L.inverse_gram()[i][i]));
    const double shift = to_double(module.coset.beta()[i]) + s[i];
    lo[i] = static_cast<long>(std::ceil(-w - shift));
    hi[i] = static_cast<long>(std::floor(w - shift));
    count *= static_cast<double>(std::max(0L, hi[i] - lo[i] + 1));
  }
  if (count > static_cast<double>(cfg.max_terms)) {
    throw Error(ErrorCode::TailBoundViolated, "trace enumeration box exceeds the term cap");
  }

  const Complex vu = voa_pairing(L, p.a, p.b);
  const Complex uu = voa_pairing(L, p.b, p.b);
  const Complex const_exponent = kTwoPiI * (-vu / 2.0) + kTwoPiI * p.tau * (-uu / 2.0);

  ComplexVector m(d);
  std::vector<double> mr(d);
  std::vector<long> n = lo;
  Complex sum{};
  if (count > 0.0) {
    while (true) {
      for (int i = 0; i < d; ++i) {
        mr[i] = to_double(module.coset.beta()[i]) + static_cast<double>(n[i]);
        m[i] = mr[i];
      }
      double y_norm = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          y_norm += (mr[i] + s[i]) * static_cast<double>(L.gram()[i][j]) * (mr[j] + s[j]);
        }
      }
      if (y_norm <= bound) {
        const Complex am = L.inner(p.a, m);
        const Complex bm = L.inner(p.b, m);
        const Complex mm = L.inner(m, m);
        sum += std::exp(const_exponent + kTwoPiI * am + kTwoPiI * p.tau * (bm + mm / 2.0));
      }
      int pos = 0;
      while (pos < d) {
        if (++n[pos] <= hi[pos]) break;
        n[pos] = lo[pos];
        ++pos;
      }
      if (pos == d) break;
    }
  }
  const Complex result = sum * std::pow(eta_eval(p.tau, cfg.eval), -d);
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
    throw Error(ErrorCode::TailBoundViolated, "trace sum overflowed; shrink Im a or Im b");
  }
  return result;
}

Complex theta_w(const ModuleRef& module, const ComplexVector& a, Complex tau, const TraceConfig& cfg) {
  const TracePoint p{a, ComplexVector(a.size()), tau};
  return z_trace(module, p, cfg) * std::pow(eta_eval(tau, cfg.eval), module.lattice.rank());
}

ComplexVector z_vector(const EvenLattice& lattice, const std::vector<CosetLabel>& cosets, const TracePoint& p,
                       const TraceConfig& cfg) {
  ComplexVector out;
  out.reserve(cosets.size());
  for (const auto& c : cosets) out.push_back(z_trace(ModuleRef{lattice, c}, p, cfg));
  return out;
}

ComplexVector z_vector(const EvenLattice& lattice, const TracePoint& p, const TraceConfig& cfg) {
  return z_vector(lattice, dual_coset_reps(lattice), p, cfg);
}

Rational t_phase_exponent(const ModuleRef& module) {
  const auto& beta = module.coset.beta();
  return frac(module.lattice.inner(beta, beta) / 2 - Rational(module.lattice.rank(), 24));
}

Complex predicted_t_phase(const ModuleRef& module) { return unit_phase(t_phase_exponent(module)); }

Complex t_phase(const ModuleRef& module, const TracePoint& p, double tolerance, const TraceConfig& cfg) {
  const Complex phase = predicted_t_phase(module);
  const Complex lhs = z_trace(module, {p.a, p.b, p.tau + 1.0}, cfg);
  const Complex rhs = z_trace(module, {add(p.a, p.b), p.b, p.tau}, cfg);
  const double err = std::abs(lhs - phase * rhs);
  if (err > tolerance * std::max(1.0, std::abs(lhs))) {
    throw Error(ErrorCode::PredictionMismatch, "T-phase prediction off by " + std::to_string(err));
  }
  return phase;
}

TruncatedSeries theta_w_series(const ModuleRef& module, const ComplexVector& a, long q_order) {
  const auto& L = module.lattice;
  const Rational half_norm = L.inner(module.coset.beta(), module.coset.beta()) / 2;
  const int denom = static_cast<int>(denominator(half_norm));
  TruncatedSeries out(denom, q_order * denom);
  for (const auto& v : enumerate_vectors(L, module.coset, Rational(q_order))) {
    const Rational e = v.norm / 2 * denom;
    const Complex phase = std::exp(kTwoPiI * L.inner(a, to_complex(v.coords)));
    out.add_to_coeff(static_cast<long>(numerator(e)), phase);
  }
  return out;
}

TruncatedSeries z_trace_series(const ModuleRef& module, const ComplexVector& a, long q_order) {
  const int d = module.lattice.rank();
  // η^{-d} = q^{-d/24} ∏(1-qⁿ)^{-d}; build it from the η series so both share one grid.
  const TruncatedSeries eta_inv = dedekind_eta(static_cast<int>(q_order) + 1).pow(-d);
  return (theta_w_series(module, a, q_order) * eta_inv);
}

std::vector<BigInt> colored_partition_counts(int colors, int max_level) {
  std::vector<BigInt> c(static_cast<std::size_t>(std::max(0, max_level) + 1), BigInt(0));
  if (max_level < 0) return {};
  c[0] = 1;
  for (int color = 0; color < colors; ++color) {
    for (int part = 1; part <= max_level; ++part) {
      for (int n = part; n <= max_level; ++n) c[n] += c[n - part];
    }
  }
  return c;
}

PhaseCounts graded_phase_counts(const ModuleRef& module, const RationalVector& a, const Rational& max_grade) {
  PhaseCounts out;
  if (max_grade < 0) return out;
  const auto& L = module.lattice;
  const auto levels = colored_partition_counts(L.rank(), static_cast<int>(to_double(floor(max_grade))));
  for (const auto& v : enumerate_vectors(L, module.coset, max_grade)) {
    const Rational base = v.norm / 2;
    const Rational phase = frac(L.inner(a, v.coords));
    for (std::size_t n = 0; n < levels.size(); ++n) {
      const Rational grade = base + static_cast<long>(n);
      if (grade > max_grade) break;
      out[grade][phase] += levels[n];
    }
  }
  return out;
}

}  // namespace lattrace
