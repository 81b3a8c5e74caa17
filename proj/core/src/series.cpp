#include "lattrace/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lattrace/error.hpp"

namespace lattrace {

namespace {

void require_denom(int denom) {
  if (denom <= 0) throw Error(ErrorCode::InvalidArgument, "series denominator must be positive");
}

int common_denom(int a, int b) { return std::lcm(a, b); }

// Effective lowest exponent: an empty series is O(q^{order+1}).
long lowest(const TruncatedSeries& s) {
  auto m = s.min_exp();
  return m ? *m : s.guaranteed_order() + 1;
}

}  // namespace

TruncatedSeries::TruncatedSeries(int denom, long guaranteed_order) : denom_(denom), order_(guaranteed_order) {
  require_denom(denom);
}

TruncatedSeries TruncatedSeries::monomial(Complex c, long exponent, int denom, long guaranteed_order) {
  TruncatedSeries s(denom, guaranteed_order);
  s.set_coeff(exponent, c);
  return s;
}

TruncatedSeries TruncatedSeries::one(long guaranteed_order, int denom) {
  return monomial(1.0, 0, denom, guaranteed_order);
}

std::optional<long> TruncatedSeries::min_exp() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

std::optional<long> TruncatedSeries::max_exp() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

Complex TruncatedSeries::coeff(long k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{} : it->second;
}

Complex TruncatedSeries::coeff_at(const Rational& e) const {
  Rational scaled = e * denom_;
  if (denominator(scaled) != 1) return {};
  return coeff(static_cast<long>(numerator(scaled)));
}

void TruncatedSeries::set_coeff(long k, Complex c) {
  if (k > order_) return;
  if (c == Complex{}) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = c;
  }
}

void TruncatedSeries::add_to_coeff(long k, Complex c) {
  if (k > order_) return;
  coeffs_[k] += c;
}

TruncatedSeries TruncatedSeries::lifted(int new_denom) const {
  if (new_denom % denom_ != 0) {
    throw Error(ErrorCode::InvalidArgument, "lift target must be a multiple of the denominator");
  }
  const long f = new_denom / denom_;
  TruncatedSeries out(new_denom, order_ * f);
  for (const auto& [k, c] : coeffs_) out.coeffs_[k * f] = c;
  return out;
}

TruncatedSeries TruncatedSeries::truncated(long new_order) const {
  TruncatedSeries out(denom_, std::min(order_, new_order));
  for (const auto& [k, c] : coeffs_) {
    if (k <= out.order_) out.coeffs_[k] = c;
  }
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  const int D = common_denom(denom_, rhs.denom_);
  if (D != denom_) *this = lifted(D);
  const TruncatedSeries r = rhs.denom_ == D ? rhs : rhs.lifted(D);
  order_ = std::min(order_, r.order_);
  std::erase_if(coeffs_, [this](const auto& kv) { return kv.first > order_; });
  for (const auto& [k, c] : r.coeffs_) {
    if (k <= order_) coeffs_[k] += c;
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  return *this += rhs * Complex{-1.0};
}

TruncatedSeries& TruncatedSeries::operator*=(Complex s) {
  for (auto& [k, c] : coeffs_) c *= s;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a_in, const TruncatedSeries& b_in) {
  const int D = common_denom(a_in.denom(), b_in.denom());
  const TruncatedSeries a = a_in.denom() == D ? a_in : a_in.lifted(D);
  const TruncatedSeries b = b_in.denom() == D ? b_in : b_in.lifted(D);
  const long order = std::min(a.guaranteed_order() + lowest(b), b.guaranteed_order() + lowest(a));
  TruncatedSeries out(D, order);
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if (ka + kb > order) break;
      out.coeffs_[ka + kb] += ca * cb;
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::reciprocal() const {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "reciprocal of a zero series");
  const long e0 = coeffs_.begin()->first;
  const Complex c0 = coeffs_.begin()->second;
  // Normalised u = a / (c0 q^{e0}) = 1 + ..., known through order_ - e0.
  const long rel_order = order_ - e0;
  std::vector<Complex> u(static_cast<std::size_t>(rel_order + 1));
  for (const auto& [k, c] : coeffs_) u[static_cast<std::size_t>(k - e0)] = c / c0;
  std::vector<Complex> w(u.size());
  w[0] = 1.0;
  for (std::size_t n = 1; n < w.size(); ++n) {
    Complex acc{};
    for (std::size_t j = 1; j <= n; ++j) acc -= u[j] * w[n - j];
    w[n] = acc;
  }
  TruncatedSeries out(denom_, rel_order - e0);
  for (std::size_t n = 0; n < w.size(); ++n) {
    out.set_coeff(static_cast<long>(n) - e0, w[n] / c0);
  }
  return out;
}

TruncatedSeries TruncatedSeries::pow(int n) const {
  if (n < 0) return reciprocal().pow(-n);
  if (n == 0) return one(order_, denom_);
  TruncatedSeries result = *this;
  for (int i = 1; i < n; ++i) result = result * *this;
  return result;
}

Complex TruncatedSeries::evaluate(Complex tau) const {
  if (tau.imag() <= 0.0) throw Error(ErrorCode::ImTooSmall, "series evaluation needs Im tau > 0");
  Complex sum{};
  for (const auto& [k, c] : coeffs_) {
    sum += c * std::exp(kTwoPiI * tau * (static_cast<double>(k) / denom_));
  }
  return sum;
}

// ---------------------------------------------------------------------------

BiSeries::BiSeries(int x_min, int x_max, int denom, long q_order)
    : x_min_(x_min), x_max_(x_max), denom_(denom), q_order_(q_order) {
  require_denom(denom);
  if (x_min > x_max) throw Error(ErrorCode::InvalidArgument, "empty x window");
}

BiSeries BiSeries::from_x0(const TruncatedSeries& s, int x_span) {
  BiSeries out(-x_span, x_span, s.denom(), s.guaranteed_order());
  for (const auto& [k, c] : s.terms()) out.coeffs_[{0, k}] = c;
  return out;
}

Complex BiSeries::coeff(int j, long k) const {
  auto it = coeffs_.find({j, k});
  return it == coeffs_.end() ? Complex{} : it->second;
}

void BiSeries::add_to_coeff(int j, long k, Complex c) {
  if (j < x_min_ || j > x_max_ || k > q_order_) return;
  coeffs_[{j, k}] += c;
}

TruncatedSeries BiSeries::x_slice(int j) const {
  TruncatedSeries out(denom_, q_order_);
  for (const auto& [key, c] : coeffs_) {
    if (key.first == j) out.add_to_coeff(key.second, c);
  }
  return out;
}

BiSeries BiSeries::lifted(int new_denom) const {
  if (new_denom % denom_ != 0) {
    throw Error(ErrorCode::InvalidArgument, "lift target must be a multiple of the denominator");
  }
  const long f = new_denom / denom_;
  BiSeries out(x_min_, x_max_, new_denom, q_order_ * f);
  for (const auto& [key, c] : coeffs_) out.coeffs_[{key.first, key.second * f}] = c;
  return out;
}

BiSeries BiSeries::truncated(long new_q_order) const {
  BiSeries out(x_min_, x_max_, denom_, std::min(q_order_, new_q_order));
  for (const auto& [key, c] : coeffs_) {
    if (key.second <= out.q_order_) out.coeffs_[key] = c;
  }
  return out;
}

BiSeries& BiSeries::operator+=(const BiSeries& rhs) {
  const int D = common_denom(denom_, rhs.denom_);
  if (D != denom_) *this = lifted(D);
  const BiSeries r = rhs.denom_ == D ? rhs : rhs.lifted(D);
  x_min_ = std::max(x_min_, r.x_min_);
  x_max_ = std::min(x_max_, r.x_max_);
  q_order_ = std::min(q_order_, r.q_order_);
  std::erase_if(coeffs_, [this](const auto& kv) {
    return kv.first.first < x_min_ || kv.first.first > x_max_ || kv.first.second > q_order_;
  });
  for (const auto& [key, c] : r.coeffs_) add_to_coeff(key.first, key.second, c);
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& rhs) { return *this += rhs * Complex{-1.0}; }

BiSeries& BiSeries::operator*=(Complex s) {
  for (auto& [key, c] : coeffs_) c *= s;
  return *this;
}

BiSeries operator*(const BiSeries& a, const TruncatedSeries& s) {
  const int D = common_denom(a.denom(), s.denom());
  const BiSeries al = a.denom() == D ? a : a.lifted(D);
  const TruncatedSeries sl = s.denom() == D ? s : s.lifted(D);
  const long s_low = sl.min_exp().value_or(sl.guaranteed_order() + 1);
  // Lowest q-power of a, over all x-powers.
  long a_low = al.q_order() + 1;
  for (const auto& [key, c] : al.terms()) a_low = std::min(a_low, key.second);
  const long order = std::min(al.q_order() + s_low, sl.guaranteed_order() + a_low);
  BiSeries out(al.x_min(), al.x_max(), D, order);
  for (const auto& [key, c] : al.terms()) {
    for (const auto& [k, cs] : sl.terms()) out.add_to_coeff(key.first, key.second + k, c * cs);
  }
  return out;
}

Complex BiSeries::evaluate(Complex x, Complex tau) const {
  if (tau.imag() <= 0.0) throw Error(ErrorCode::ImTooSmall, "series evaluation needs Im tau > 0");
  Complex sum{};
  for (const auto& [key, c] : coeffs_) {
    sum += c * std::pow(x, key.first) * std::exp(kTwoPiI * tau * (static_cast<double>(key.second) / denom_));
  }
  return sum;
}

double max_abs_difference(const BiSeries& a_in, const BiSeries& b_in) {
  const int D = common_denom(a_in.denom(), b_in.denom());
  const BiSeries a = a_in.denom() == D ? a_in : a_in.lifted(D);
  const BiSeries b = b_in.denom() == D ? b_in : b_in.lifted(D);
  const int xmin = std::max(a.x_min(), b.x_min());
  const int xmax = std::min(a.x_max(), b.x_max());
  const long qo = std::min(a.q_order(), b.q_order());
  std::map<BiSeries::Key, Complex> diff;
  auto in_window = [&](const BiSeries::Key& k) {
    return k.first >= xmin && k.first <= xmax && k.second <= qo;
  };
  for (const auto& [key, c] : a.terms()) {
    if (in_window(key)) diff[key] += c;
  }
  for (const auto& [key, c] : b.terms()) {
    if (in_window(key)) diff[key] -= c;
  }
  double worst = 0.0;
  for (const auto& [key, c] : diff) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace lattrace
