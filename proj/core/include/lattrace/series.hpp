#pragma once

#include <map>
#include <optional>
#include <utility>

#include "lattrace/rational.hpp"

namespace lattrace {

// Laurent series in q^(1/D) with complex coefficients. Exponents are stored as
// integers k meaning q^(k/D). Coefficients with k > guaranteed_order() are
// untrusted and never stored; every operation propagates the order so that a
// result is never silently wrong, only shorter.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(int denom, long guaranteed_order);

  static TruncatedSeries monomial(Complex c, long exponent, int denom, long guaranteed_order);
  static TruncatedSeries one(long guaranteed_order, int denom = 1);

  [[nodiscard]] int denom() const noexcept { return denom_; }
  [[nodiscard]] long guaranteed_order() const noexcept { return order_; }
  [[nodiscard]] Rational order_as_rational() const { return Rational(order_) / denom_; }
  [[nodiscard]] const std::map<long, Complex>& terms() const noexcept { return coeffs_; }
  [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] std::optional<long> min_exp() const;
  [[nodiscard]] std::optional<long> max_exp() const;

  [[nodiscard]] Complex coeff(long k) const;
  // Coefficient of q^e for a rational e; zero when e is not on this grid.
  [[nodiscard]] Complex coeff_at(const Rational& e) const;
  void set_coeff(long k, Complex c);
  void add_to_coeff(long k, Complex c);

  // Same series on the finer grid q^(1/new_denom); new_denom must be a multiple.
  [[nodiscard]] TruncatedSeries lifted(int new_denom) const;
  [[nodiscard]] TruncatedSeries truncated(long new_order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(Complex s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, Complex s) { return a *= s; }
  friend TruncatedSeries operator*(Complex s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  // Multiplicative inverse; the leading coefficient must be nonzero.
  [[nodiscard]] TruncatedSeries reciprocal() const;
  [[nodiscard]] TruncatedSeries pow(int n) const;

  // Sum of c_k q^(k/D) with q = e^{2πiτ}; requires Im τ > 0.
  [[nodiscard]] Complex evaluate(Complex tau) const;

 private:
  int denom_ = 1;
  long order_ = 0;
  std::map<long, Complex> coeffs_;
};

// Doubly truncated series in x (Laurent, window [x_min, x_max]) and q^(1/D).
class BiSeries {
 public:
  using Key = std::pair<int, long>;

  BiSeries() = default;
  BiSeries(int x_min, int x_max, int denom, long q_order);

  // Places s at x^0, inside the window [-x_span, x_span].
  static BiSeries from_x0(const TruncatedSeries& s, int x_span);

  [[nodiscard]] int x_min() const noexcept { return x_min_; }
  [[nodiscard]] int x_max() const noexcept { return x_max_; }
  [[nodiscard]] int denom() const noexcept { return denom_; }
  [[nodiscard]] long q_order() const noexcept { return q_order_; }
  [[nodiscard]] const std::map<Key, Complex>& terms() const noexcept { return coeffs_; }

  [[nodiscard]] Complex coeff(int j, long k) const;
  void add_to_coeff(int j, long k, Complex c);

  [[nodiscard]] TruncatedSeries x_slice(int j) const;
  [[nodiscard]] BiSeries lifted(int new_denom) const;
  [[nodiscard]] BiSeries truncated(long new_q_order) const;

  BiSeries& operator+=(const BiSeries& rhs);
  BiSeries& operator-=(const BiSeries& rhs);
  BiSeries& operator*=(Complex s);
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator*(BiSeries a, Complex s) { return a *= s; }
  // x-independent factor; the q order shrinks exactly as for TruncatedSeries.
  friend BiSeries operator*(const BiSeries& a, const TruncatedSeries& s);

  // Σ c_{j,k} x^j q^(k/D) at numeric x and q = e^{2πiτ}.
  [[nodiscard]] Complex evaluate(Complex x, Complex tau) const;

 private:
  int x_min_ = 0;
  int x_max_ = 0;
  int denom_ = 1;
  long q_order_ = 0;
  std::map<Key, Complex> coeffs_;
};

// Largest |a - b| over coefficients both series trust (common x window, q up to the
// smaller order, compared on the common grid).
double max_abs_difference(const BiSeries& a, const BiSeries& b);

}  // namespace lattrace
