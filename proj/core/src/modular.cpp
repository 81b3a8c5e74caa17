#include "lattrace/modular.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lattrace/error.hpp"

namespace lattrace {

namespace {

ComplexVector combine(Complex x, const ComplexVector& v, Complex y, const ComplexVector& u) {
  if (v.size() != u.size()) throw Error(ErrorCode::InvalidArgument, "v and u differ in dimension");
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = x * v[i] + y * u[i];
  return out;
}

Complex as_complex(long x) { return {static_cast<double>(x), 0.0}; }

}  // namespace

UnimodularMatrix::UnimodularMatrix(long a, long b, long f, long d) : a_(a), b_(b), f_(f), d_(d) {
  if (a * d - b * f != 1) throw Error(ErrorCode::InvalidArgument, "matrix " + to_string() + " has det != 1");
}

std::string UnimodularMatrix::to_string() const {
  std::ostringstream os;
  os << '(' << a_ << ',' << b_ << ';' << f_ << ',' << d_ << ')';
  return os.str();
}

UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
  return {x.a_ * y.a_ + x.b_ * y.f_, x.a_ * y.b_ + x.b_ * y.d_, x.f_ * y.a_ + x.d_ * y.f_,
          x.f_ * y.b_ + x.d_ * y.d_};
}

UnimodularMatrix parse_unimodular(const std::string& text) {
  std::vector<long> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      entries.push_back(std::stol(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ConfigError, "cannot parse matrix entry '" + item + "'");
    }
  }
  if (entries.size() != 4) throw Error(ErrorCode::ConfigError, "expected four entries a,b,f,d");
  try {
    return {entries[0], entries[1], entries[2], entries[3]};
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
}

Complex act_tau(const UnimodularMatrix& alpha, Complex tau) {
  return (as_complex(alpha.a()) * tau + as_complex(alpha.b())) /
         (as_complex(alpha.f()) * tau + as_complex(alpha.d()));
}

std::pair<ComplexVector, ComplexVector> act_pair(const UnimodularMatrix& alpha, const ComplexVector& v,
                                                 const ComplexVector& u) {
  return {combine(as_complex(alpha.d()), v, as_complex(alpha.b()), u),
          combine(as_complex(alpha.f()), v, as_complex(alpha.a()), u)};
}

std::pair<ComplexVector, ComplexVector> act_pair_naive(const UnimodularMatrix& alpha, const ComplexVector& v,
                                                       const ComplexVector& u) {
  return {combine(as_complex(alpha.a()), v, as_complex(alpha.b()), u),
          combine(as_complex(alpha.f()), v, as_complex(alpha.d()), u)};
}

UnimodularMatrix generator_matrix(Generator g) {
  switch (g) {
    case Generator::S:
      return UnimodularMatrix::S();
    case Generator::T:
      return UnimodularMatrix::T();
    case Generator::TInv:
      return UnimodularMatrix::T_inv();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator");
}

std::string to_string(Generator g) {
  switch (g) {
    case Generator::S:
      return "S";
    case Generator::T:
      return "T";
    case Generator::TInv:
      return "T^-1";
  }
  return "?";
}

UnimodularMatrix word_product(const std::vector<Generator>& letters) {
  UnimodularMatrix out = UnimodularMatrix::identity();
  for (Generator g : letters) out = out * generator_matrix(g);
  return out;
}

STWord decompose_ST(const UnimodularMatrix& alpha) {
  // Left-multiply by T^{-q} and S^{-1} until the lower-left entry vanishes; the
  // inverses of those steps, in order, spell α up to the remaining ±T^c.
  UnimodularMatrix m = alpha;
  std::vector<Generator> letters;
  auto push_power = [&](long q) {
    for (long i = 0; i < std::abs(q); ++i) letters.push_back(q > 0 ? Generator::T : Generator::TInv);
  };
  while (m.f() != 0) {
    const long q = static_cast<long>(floor_div(BigInt(m.a()), BigInt(m.f())));
    m = UnimodularMatrix{1, -q, 0, 1} * m;
    push_power(q);
    m = UnimodularMatrix::S().inverse() * m;
    letters.push_back(Generator::S);
  }
  // m = ±(1 c; 0 1).
  STWord word;
  word.sign = m.a() > 0 ? 1 : -1;
  push_power(word.sign * m.b());
  word.letters = std::move(letters);
  return word;
}

double scaled_error(Complex x, Complex y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

TransitionMatrix fit_transition(const EvenLattice& lattice, const UnimodularMatrix& alpha,
                                const std::vector<TracePoint>& samples, const FitConfig& cfg) {
  const auto cosets = dual_coset_reps(lattice);
  const auto m = static_cast<Eigen::Index>(cosets.size());
  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n < 2 * m) throw Error(ErrorCode::InvalidArgument, "need at least 2·|L*/L| sample points");

  Eigen::MatrixXcd X(n, m), Y(n, m);
  for (Eigen::Index s = 0; s < n; ++s) {
    const TracePoint& p = samples[static_cast<std::size_t>(s)];
    const auto [a2, b2] = act_pair(alpha, p.a, p.b);
    const ComplexVector lhs = z_vector(lattice, cosets, {p.a, p.b, act_tau(alpha, p.tau)}, cfg.trace);
    const ComplexVector rhs = z_vector(lattice, cosets, {a2, b2, p.tau}, cfg.trace);
    for (Eigen::Index k = 0; k < m; ++k) {
      Y(s, k) = lhs[static_cast<std::size_t>(k)];
      X(s, k) = rhs[static_cast<std::size_t>(k)];
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0 || (smax / smin) * (smax / smin) > cfg.max_condition) {
    throw Error(ErrorCode::IllConditioned,
                "sample matrix condition number exceeds " + std::to_string(cfg.max_condition));
  }
  const Eigen::MatrixXcd At = svd.solve(Y);  // X Aᵀ = Y

  TransitionMatrix out;
  out.alpha = alpha;
  out.cosets = cosets;
  out.entries.assign(static_cast<std::size_t>(m), ComplexVector(static_cast<std::size_t>(m)));
  for (Eigen::Index h = 0; h < m; ++h) {
    for (Eigen::Index k = 0; k < m; ++k) out.entries[h][k] = At(k, h);
  }
  const Eigen::MatrixXcd fitted = X * At;
  for (Eigen::Index s = 0; s < n; ++s) {
    for (Eigen::Index h = 0; h < m; ++h) {
      out.fit_residual = std::max(out.fit_residual, scaled_error(fitted(s, h), Y(s, h)));
    }
  }
  return out;
}

MainTheoremReport verify_main_theorem(const EvenLattice& lattice, const UnimodularMatrix& alpha,
                                      const std::vector<TracePoint>& holdout, const TransitionMatrix& A,
                                      const TraceConfig& cfg) {
  MainTheoremReport rep;
  const auto& cosets = A.cosets;
  for (const auto& p : holdout) {
    const auto [a2, b2] = act_pair(alpha, p.a, p.b);
    const ComplexVector lhs = z_vector(lattice, cosets, {p.a, p.b, act_tau(alpha, p.tau)}, cfg);
    const ComplexVector rhs = z_vector(lattice, cosets, {a2, b2, p.tau}, cfg);
    for (std::size_t h = 0; h < cosets.size(); ++h) {
      Complex predicted{};
      for (std::size_t k = 0; k < cosets.size(); ++k) predicted += A.entries[h][k] * rhs[k];
      rep.max_residual = std::max(rep.max_residual, scaled_error(predicted, lhs[h]));
    }
    ++rep.points;
  }
  return rep;
}

ComplexMatrix multiply(const ComplexMatrix& x, const ComplexMatrix& y) {
  const std::size_t n = x.size();
  const std::size_t inner = y.size();
  const std::size_t m = inner == 0 ? 0 : y[0].size();
  ComplexMatrix out(n, ComplexVector(m));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].size() != inner) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not match");
    for (std::size_t k = 0; k < inner; ++k) {
      for (std::size_t j = 0; j < m; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

double max_abs_difference(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not match");
  double out = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != y[i].size()) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not match");
    for (std::size_t j = 0; j < x[i].size(); ++j) out = std::max(out, std::abs(x[i][j] - y[i][j]));
  }
  return out;
}

CocycleReport verify_cocycle(const TransitionMatrix& A_alpha, const TransitionMatrix& A_beta,
                             const TransitionMatrix& A_alpha_beta) {
  if (!(A_alpha.alpha * A_beta.alpha == A_alpha_beta.alpha) &&
      !(A_alpha.alpha * A_beta.alpha == A_alpha_beta.alpha.negated())) {
    throw Error(ErrorCode::InvalidArgument, "third matrix is not the product of the first two");
  }
  CocycleReport rep;
  rep.product = multiply(A_alpha.entries, A_beta.entries);
  rep.composed = A_alpha_beta.entries;
  rep.max_difference = max_abs_difference(rep.product, rep.composed);
  return rep;
}

ComplexMatrix predicted_t_matrix(const EvenLattice& lattice, const std::vector<CosetLabel>& cosets) {
  ComplexMatrix out(cosets.size(), ComplexVector(cosets.size()));
  for (std::size_t h = 0; h < cosets.size(); ++h) out[h][h] = predicted_t_phase({lattice, cosets[h]});
  return out;
}

ComplexMatrix predicted_s_matrix(const EvenLattice& lattice, const std::vector<CosetLabel>& cosets) {
  const double norm = 1.0 / std::sqrt(static_cast<double>(cosets.size()));
  ComplexMatrix out(cosets.size(), ComplexVector(cosets.size()));
  for (std::size_t h = 0; h < cosets.size(); ++h) {
    for (std::size_t k = 0; k < cosets.size(); ++k) {
      out[h][k] = norm * unit_phase(-lattice.inner(cosets[h].beta(), cosets[k].beta()));
    }
  }
  return out;
}

std::vector<TracePoint> sample_points(int rank, const UnimodularMatrix& alpha, std::size_t count,
                                      std::uint64_t seed, const SamplingConfig& cfg) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  auto vec = [&] {
    ComplexVector v(static_cast<std::size_t>(rank));
    for (auto& c : v) {
      const double re = uniform(-cfg.vector_scale, cfg.vector_scale);
      c = Complex(re, uniform(-cfg.vector_scale, cfg.vector_scale));
    }
    return v;
  };

  std::vector<TracePoint> out;
  while (out.size() < count) {
    Complex tau;
    if (alpha.f() == 0) {
      const double re = uniform(-0.5, 0.5);
      tau = Complex(re, uniform(0.8, 1.6));
    } else {
      const double x = uniform(-0.3, 0.3);
      const double y = uniform(0.8, 1.25);
      const double f = static_cast<double>(alpha.f());
      tau = Complex(-static_cast<double>(alpha.d()) / f, 0.0) + Complex(x, y) / std::abs(f);
    }
    if (tau.imag() < cfg.im_tau_floor || act_tau(alpha, tau).imag() < cfg.im_tau_floor) continue;
    ComplexVector a = vec();
    ComplexVector b = vec();
    out.push_back({std::move(a), std::move(b), tau});
  }
  return out;
}

std::vector<std::vector<Generator>> sample_words(std::size_t count, std::size_t max_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Generator>> out;
  while (out.size() < count) {
    const std::size_t len = 1 + static_cast<std::size_t>(rng() % max_len);
    std::vector<Generator> word(len);
    for (auto& g : word) g = (rng() & 1U) != 0 ? Generator::S : Generator::T;
    const UnimodularMatrix m = word_product(word);
    const long biggest = std::max({std::abs(m.a()), std::abs(m.b()), std::abs(m.f()), std::abs(m.d())});
    if (std::abs(m.f()) > 3 || biggest > 4) continue;
    if (std::find(out.begin(), out.end(), word) != out.end()) continue;
    out.push_back(std::move(word));
  }
  return out;
}

}  // namespace lattrace
