#include "lattrace/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

#include "lattrace/error.hpp"

namespace lattrace {

namespace {

using RationalMatrix = std::vector<RationalVector>;

// Exact inverse and determinant by Gauss-Jordan over the rationals.
std::pair<BigInt, RationalMatrix> invert(const IntMatrix& g) {
  const std::size_t n = g.size();
  RationalMatrix a(n, RationalVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
    a[i][n + i] = 1;
  }
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return {BigInt(0), {}};
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    const Rational pivot = a[c][c];
    det *= pivot;
    for (auto& v : a[c]) v /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  RationalMatrix inv(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  }
  return {numerator(det), inv};
}

BigInt leading_minor(const IntMatrix& g, std::size_t k) {
  IntMatrix sub(k, std::vector<long>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) sub[i][j] = g[i][j];
  }
  return invert(sub).first;
}

// Smith normal form U·G·V = diag(d_1 | d_2 | ...), returning the diagonal and V.
struct SmithForm {
  std::vector<BigInt> diag;
  std::vector<std::vector<BigInt>> right;
};

SmithForm smith_normal_form(const IntMatrix& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  std::vector<std::vector<BigInt>> v(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
    v[i][i] = 1;
  }
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(a[i][x], a[i][y]);
      std::swap(v[i][x], v[i][y]);
    }
  };
  // col_x -= f · col_y
  auto sub_col = [&](std::size_t x, std::size_t y, const BigInt& f) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i][x] -= f * a[i][y];
      v[i][x] -= f * v[i][y];
    }
  };
  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      // Smallest nonzero entry of the trailing block goes to (k, k).
      std::size_t pr = n, pc = n;
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = k; j < n; ++j) {
          if (a[i][j] != 0 && (pr == n || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == n) break;
      std::swap(a[pr], a[k]);
      if (pc != k) swap_cols(pc, k);
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        const BigInt f = a[i][k] / a[k][k];
        for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        if (a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        const BigInt f = a[k][j] / a[k][k];
        sub_col(j, k, f);
        if (a[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into row k and go again.
      bool divides = true;
      for (std::size_t i = k + 1; i < n && divides; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          if (a[i][j] % a[k][k] != 0) {
            for (std::size_t c = k; c < n; ++c) a[k][c] += a[i][c];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
  }
  SmithForm out;
  out.right = v;
  for (std::size_t i = 0; i < n; ++i) out.diag.push_back(abs(a[i][i]));
  return out;
}

RationalVector canonical(RationalVector beta) {
  for (auto& b : beta) b = frac(b);
  return beta;
}

}  // namespace

EvenLattice EvenLattice::validate(const IntMatrix& gram, std::string name) {
  const std::size_t n = gram.size();
  if (n == 0) throw Error(ErrorCode::NotSquare, "Gram matrix is empty");
  for (const auto& row : gram) {
    if (row.size() != n) throw Error(ErrorCode::NotSquare, "Gram matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram[i][j] != gram[j][i]) throw Error(ErrorCode::NotSymmetric, "Gram matrix is not symmetric");
    }
  }
  for (std::size_t k = 1; k <= n; ++k) {
    if (leading_minor(gram, k) <= 0) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "leading principal minor of order " + std::to_string(k) + " is not positive");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (gram[i][i] % 2 != 0) {
      throw Error(ErrorCode::NotEven, "diagonal entry " + std::to_string(i) + " is odd");
    }
  }
  EvenLattice out;
  out.gram_ = gram;
  out.name_ = std::move(name);
  auto [det, inv] = invert(gram);
  out.det_ = det;
  out.inv_ = std::move(inv);
  return out;
}

Rational EvenLattice::inner(const RationalVector& x, const RationalVector& y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < gram_.size(); ++i) {
    for (std::size_t j = 0; j < gram_.size(); ++j) {
      if (gram_[i][j] != 0) s += x[i] * gram_[i][j] * y[j];
    }
  }
  return s;
}

Complex EvenLattice::inner(const ComplexVector& x, const ComplexVector& y) const {
  Complex s{};
  for (std::size_t i = 0; i < gram_.size(); ++i) {
    for (std::size_t j = 0; j < gram_.size(); ++j) {
      s += x[i] * static_cast<double>(gram_[i][j]) * y[j];
    }
  }
  return s;
}

RationalVector EvenLattice::gram_times(const RationalVector& x) const {
  RationalVector out(gram_.size());
  for (std::size_t i = 0; i < gram_.size(); ++i) {
    for (std::size_t j = 0; j < gram_.size(); ++j) out[i] += gram_[i][j] * x[j];
  }
  return out;
}

CosetLabel CosetLabel::make(const EvenLattice& lattice, RationalVector beta) {
  if (static_cast<int>(beta.size()) != lattice.rank()) {
    throw Error(ErrorCode::InvalidArgument, "coset vector has the wrong dimension");
  }
  for (const auto& c : lattice.gram_times(beta)) {
    if (denominator(c) != 1) throw Error(ErrorCode::InvalidArgument, "beta is not in the dual lattice");
  }
  CosetLabel out;
  out.beta_ = canonical(std::move(beta));
  return out;
}

CosetLabel CosetLabel::zero(int rank) {
  CosetLabel out;
  out.beta_.assign(static_cast<std::size_t>(rank), Rational(0));
  return out;
}

bool CosetLabel::is_zero() const {
  return std::all_of(beta_.begin(), beta_.end(), [](const Rational& r) { return r == 0; });
}

CosetLabel CosetLabel::negated() const {
  CosetLabel out;
  out.beta_ = beta_;
  for (auto& b : out.beta_) b = -b;
  out.beta_ = canonical(std::move(out.beta_));
  return out;
}

std::vector<BigInt> gram_invariant_factors(const EvenLattice& lattice) {
  return smith_normal_form(lattice.gram()).diag;
}

std::vector<CosetLabel> dual_coset_reps(const EvenLattice& lattice) {
  const SmithForm snf = smith_normal_form(lattice.gram());
  const std::size_t n = snf.diag.size();
  // Classes are V·(t_i / d_i) with 0 ≤ t_i < d_i.
  std::set<CosetLabel> reps;
  std::vector<BigInt> t(n, 0);
  while (true) {
    RationalVector beta(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        beta[i] += Rational(snf.right[i][j] * t[j], snf.diag[j]);
      }
    }
    reps.insert(CosetLabel::make(lattice, std::move(beta)));
    std::size_t pos = 0;
    while (pos < n) {
      if (++t[pos] < snf.diag[pos]) break;
      t[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return {reps.begin(), reps.end()};
}

std::size_t coset_index(const EvenLattice& lattice, const CosetLabel& label) {
  const auto reps = dual_coset_reps(lattice);
  auto it = std::find(reps.begin(), reps.end(), label);
  if (it == reps.end()) throw Error(ErrorCode::InvalidArgument, "coset not found");
  return static_cast<std::size_t>(it - reps.begin());
}

std::vector<LatticeVector> enumerate_vectors(const EvenLattice& lattice, const CosetLabel& beta,
                                             const Rational& bound, std::size_t cap) {
  if (bound < 0) throw Error(ErrorCode::InvalidArgument, "enumeration bound must be >= 0");
  const int d = lattice.rank();
  const Rational norm_bound = 2 * bound;
  // Fincke-Pohst: with G = RᵀR, <x,x> = Σ_i R_ii² (x_i + Σ_{j>i} (R_ij/R_ii) x_j)², so the
  // admissible range of x_i is an interval once x_{i+1..d} are fixed. Doubles prune with
  // slack; the final test is exact.
  std::vector<std::vector<double>> r(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      double s = static_cast<double>(lattice.gram()[i][j]);
      for (int k = 0; k < i; ++k) s -= r[k][i] * r[k][j];
      r[i][j] = i == j ? std::sqrt(s) : s / r[i][i];
    }
  }
  const double slack = 1e-9 * (1.0 + to_double(norm_bound));
  std::vector<double> x(d, 0.0);
  std::vector<long> n(d, 0);
  std::vector<LatticeVector> out;
  std::size_t visited = 0;
  auto descend = [&](auto&& self, int i, double budget) -> void {
    double centre = 0.0;
    for (int j = i + 1; j < d; ++j) centre -= r[i][j] / r[i][i] * x[j];
    const double b = to_double(beta.beta()[i]);
    const double w = std::sqrt(std::max(0.0, budget) / (r[i][i] * r[i][i]));
    const long lo = static_cast<long>(std::ceil(centre - w - b - 1e-9));
    const long hi = static_cast<long>(std::floor(centre + w - b + 1e-9));
    for (long k = lo; k <= hi; ++k) {
      if (++visited > cap) throw Error(ErrorCode::BoundTooLarge, "enumeration exceeds the element cap");
      n[i] = k;
      x[i] = b + static_cast<double>(k);
      const double t = r[i][i] * (x[i] - centre);
      const double rest = budget - t * t;
      if (rest < -slack) continue;
      if (i > 0) {
        self(self, i - 1, rest);
        continue;
      }
      RationalVector m(d);
      for (int j = 0; j < d; ++j) m[j] = beta.beta()[j] + n[j];
      Rational norm = lattice.inner(m, m);
      if (norm <= norm_bound) out.push_back({std::move(m), std::move(norm)});
    }
  };
  if (d > 0) descend(descend, d - 1, to_double(norm_bound) + slack);
  std::sort(out.begin(), out.end(), [](const LatticeVector& a, const LatticeVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coords < b.coords;
  });
  return out;
}

TruncatedSeries theta_series(const EvenLattice& lattice, const CosetLabel& beta, long q_order) {
  const Rational half_norm = lattice.inner(beta.beta(), beta.beta()) / 2;
  const int denom = static_cast<int>(denominator(half_norm));
  TruncatedSeries out(denom, q_order * denom);
  for (const auto& v : enumerate_vectors(lattice, beta, Rational(q_order))) {
    const Rational e = v.norm / 2 * denom;
    out.add_to_coeff(static_cast<long>(numerator(e)), 1.0);
  }
  return out;
}

EvenLattice lattice_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("gram")) {
    throw Error(ErrorCode::LatticeFileError, "expected an object with a \"gram\" key");
  }
  std::string name = doc.value("name", std::string{});
  IntMatrix gram;
  const auto& g = doc.at("gram");
  if (!g.is_array()) throw Error(ErrorCode::LatticeFileError, "\"gram\" must be an array of arrays");
  for (const auto& row : g) {
    if (!row.is_array()) throw Error(ErrorCode::LatticeFileError, "\"gram\" must be an array of arrays");
    std::vector<long> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw Error(ErrorCode::LatticeFileError, "Gram entries must be integers");
      r.push_back(x.get<long>());
    }
    gram.push_back(std::move(r));
  }
  return EvenLattice::validate(gram, std::move(name));
}

EvenLattice load_lattice_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::LatticeFileError, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::LatticeFileError, path.string() + ": " + e.what());
  }
  return lattice_from_json(doc);
}

}  // namespace lattrace
