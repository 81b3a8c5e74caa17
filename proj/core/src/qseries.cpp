#include "lattrace/qseries.hpp"

#include <cmath>

#include "lattrace/error.hpp"

namespace lattrace {

namespace {

constexpr double kTailTarget = 1e-19;
constexpr int kMaxTerms = 200000;

}  // namespace

int adaptive_order(Complex tau) {
  const double y = tau.imag();
  if (y <= 0.0) throw Error(ErrorCode::ImTooSmall, "Im tau must be positive");
  // |q|^N = e^{-2πyN} < 1e-19
  return static_cast<int>(std::floor(-std::log(kTailTarget) / (2.0 * kPi * y))) + 1;
}

void require_im_tau(Complex tau, const EvalConfig& cfg) {
  if (!(tau.imag() >= cfg.im_tau_floor)) {
    throw Error(ErrorCode::ImTooSmall, "Im tau = " + std::to_string(tau.imag()) + " is below the floor " +
                                           std::to_string(cfg.im_tau_floor));
  }
}

TruncatedSeries dedekind_eta(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "eta order must be >= 1");
  // ∏(1-qⁿ) on the integer grid, then shift by q^{1/24}.
  TruncatedSeries prod = TruncatedSeries::one(order);
  for (int n = 1; n <= order; ++n) {
    TruncatedSeries factor = TruncatedSeries::one(order);
    factor.set_coeff(n, -1.0);
    prod = prod * factor;
  }
  TruncatedSeries out(24, 24L * order + 1);
  for (const auto& [k, c] : prod.terms()) out.set_coeff(24 * k + 1, c);
  return out;
}

Complex eta_eval(Complex tau, const EvalConfig& cfg) {
  require_im_tau(tau, cfg);
  const Complex q = std::exp(kTwoPiI * tau);
  const int N = adaptive_order(tau);
  Complex prod = std::exp(kTwoPiI * tau / 24.0);
  Complex qn = 1.0;
  for (int n = 1; n <= N; ++n) {
    qn *= q;
    prod *= 1.0 - qn;
  }
  return prod;
}

TruncatedSeries eisenstein_g2(int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "G2 order must be >= 0");
  TruncatedSeries out(1, order);
  out.set_coeff(0, kPi * kPi / 3.0);
  for (int n = 1; n <= order; ++n) {
    long sigma = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) sigma += d;
    }
    out.set_coeff(n, -8.0 * kPi * kPi * static_cast<double>(sigma));
  }
  return out;
}

Complex g2_eval(Complex tau, const EvalConfig& cfg) {
  require_im_tau(tau, cfg);
  const Complex q = std::exp(kTwoPiI * tau);
  const double aq = std::abs(q);
  // Lambert form: Σ σ₁(n) qⁿ = Σ n qⁿ/(1-qⁿ).
  Complex sum{};
  Complex qn = 1.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    qn *= q;
    sum += static_cast<double>(n) * qn / (1.0 - qn);
    if (n * std::pow(aq, n) < kTailTarget * (1.0 - aq)) break;
  }
  return kPi * kPi / 3.0 * (1.0 - 24.0 * sum);
}

BiSeries p2_series(int x_span, int q_order) {
  if (x_span < 0 || q_order < 0) throw Error(ErrorCode::InvalidArgument, "negative P2 window");
  const Complex scale = kTwoPiI * kTwoPiI;
  BiSeries out(-x_span, x_span, 1, q_order);
  for (int n = 1; n <= x_span; ++n) {
    for (long i = 0; n * i <= q_order; ++i) {
      out.add_to_coeff(n, n * i, scale * static_cast<double>(n));
      if (i >= 1) out.add_to_coeff(-n, n * i, scale * static_cast<double>(n));
    }
  }
  return out;
}

Complex p2_eval(Complex z, Complex tau, const EvalConfig& cfg) {
  require_im_tau(tau, cfg);
  if (std::abs(z.imag()) >= tau.imag()) {
    throw Error(ErrorCode::OutOfAnnulus, "P2 needs |Im z| < Im tau");
  }
  const double nearest = std::round(z.real());
  if (std::abs(z - Complex(nearest, 0.0)) < cfg.pole_tolerance) {
    throw Error(ErrorCode::PoleAtLatticePoint, "P2 has a pole at integer z");
  }
  const Complex q = std::exp(kTwoPiI * tau);
  const Complex x = std::exp(kTwoPiI * z);
  // Regrouped form, valid on the whole annulus |q| < |x| < 1/|q|:
  //   x/(1-x)² + Σ n (xⁿ + x⁻ⁿ) qⁿ/(1-qⁿ)
  const Complex a = x * q;
  const Complex b = q / x;
  const double r = std::max(std::abs(a), std::abs(b));
  Complex sum = x / ((1.0 - x) * (1.0 - x));
  Complex an = 1.0, bn = 1.0, qn = 1.0;
  int n = 1;
  for (; n <= kMaxTerms; ++n) {
    an *= a;
    bn *= b;
    qn *= q;
    sum += static_cast<double>(n) * (an + bn) / (1.0 - qn);
    const double tail = (n + 1) * std::pow(r, n + 1) / ((1.0 - r) * (1.0 - r));
    if (tail < 1e-17 * std::max(1.0, std::abs(sum))) break;
  }
  if (n > kMaxTerms) throw Error(ErrorCode::OutOfAnnulus, "P2 series too close to the annulus edge");
  return kTwoPiI * kTwoPiI * sum;
}

Complex weierstrass_p(Complex z, Complex tau, const EvalConfig& cfg) {
  require_im_tau(tau, cfg);
  const double m = std::round(z.imag() / tau.imag());
  z -= m * tau;
  z -= std::round(z.real());
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const Complex omega = static_cast<double>(i) * tau + static_cast<double>(j);
      if (std::abs(z - omega) < cfg.pole_tolerance) {
        throw Error(ErrorCode::PoleAtLatticePoint, "z lies on the period lattice");
      }
    }
  }
  return p2_eval(z, tau, cfg) - g2_eval(tau, cfg);
}

HalfCharacteristic HalfCharacteristic::from_rationals(const Rational& h, const Rational& k) {
  auto is_half = [](const Rational& r) {
    if (r == 0) return false;
    if (r == Rational(1, 2)) return true;
    throw Error(ErrorCode::InvalidArgument, "characteristic must be 0 or 1/2");
  };
  return {is_half(h), is_half(k)};
}

Complex jacobi_theta(HalfCharacteristic c, Complex z, Complex tau, const EvalConfig& cfg) {
  require_im_tau(tau, cfg);
  const double y = tau.imag();
  const double h = c.h();
  const double k = c.k();
  // |term| = exp(-πy(n+h)² - 2π(n+h) Im z), maximal at n+h = -Im z / y.
  const double center = -z.imag() / y;
  const double radius = std::sqrt(-std::log(kTailTarget * 1e-2) / (kPi * y)) + 1.0;
  const long lo = static_cast<long>(std::floor(center - h - radius));
  const long hi = static_cast<long>(std::ceil(center - h + radius));
  Complex sum{};
  for (long n = lo; n <= hi; ++n) {
    const double nh = static_cast<double>(n) + h;
    sum += std::exp(kI * kPi * nh * nh * tau + kTwoPiI * nh * (z + k));
  }
  return sum;
}

ThetaSRow theta_s_row(HalfCharacteristic c) {
  // θ[h,k](z/τ,-1/τ) = e^{2πihk}(-iτ)^{1/2} e^{πiz²/τ} θ[k,-h](z,τ), and
  // θ[½,-½] = -θ[½,½], which gives -i on the odd row.
  if (c == kThetaHalfHalf) return {c, Complex(0.0, -1.0)};
  return {c.swapped(), Complex(1.0, 0.0)};
}

}  // namespace lattrace
