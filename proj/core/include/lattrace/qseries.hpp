#pragma once

#include "lattrace/series.hpp"

namespace lattrace {

// Numerical knobs shared by every evaluator.
struct EvalConfig {
  double im_tau_floor = 0.25;
  // Distance below which z counts as a lattice point of Zτ + Z.
  double pole_tolerance = 1e-8;
};

// Number of q-powers needed so that |q|^N falls below 1e-16 with a 1e3 safety factor.
int adaptive_order(Complex tau);

void require_im_tau(Complex tau, const EvalConfig& cfg);

// η(τ) = q^{1/24} ∏_{n≥1} (1 - q^n), as a series on the 1/24 grid through q^order.
TruncatedSeries dedekind_eta(int order);
Complex eta_eval(Complex tau, const EvalConfig& cfg = {});

// G₂(τ) = (π²/3)(1 - 24 Σ σ₁(n) qⁿ).
//
// The constant term is 2ζ(2) = π²/3. This is the value for which
// G₂((aτ+b)/(fτ+d)) = (fτ+d)² G₂(τ) - 2πi f (fτ+d) holds; a printed π²/2 would
// break that law (and G₂(i) = π).
TruncatedSeries eisenstein_g2(int order);
Complex g2_eval(Complex tau, const EvalConfig& cfg = {});

// P₂(x, q) = (2πi)² Σ_{n≥1} ( n xⁿ/(1-qⁿ) + n x⁻ⁿ qⁿ/(1-qⁿ) ), exact in the window
// |x-power| ≤ x_span, q-power ≤ q_order.
BiSeries p2_series(int x_span, int q_order);

// Analytic value of P₂ at x = e^{2πiz}. Requires |q| < |x| < |q|⁻¹ (|Im z| < Im τ)
// and z away from the integers.
Complex p2_eval(Complex z, Complex tau, const EvalConfig& cfg = {});

// ℘(z, τ) = P₂ - G₂ after reducing z into the fundamental cell.
Complex weierstrass_p(Complex z, Complex tau, const EvalConfig& cfg = {});

// One of the four half-integral characteristics (h, k) ∈ {0, ½}².
class HalfCharacteristic {
 public:
  constexpr HalfCharacteristic(bool h_half, bool k_half) noexcept : h_(h_half), k_(k_half) {}
  // Only 0 and 1/2 are accepted.
  static HalfCharacteristic from_rationals(const Rational& h, const Rational& k);

  [[nodiscard]] constexpr bool h_half() const noexcept { return h_; }
  [[nodiscard]] constexpr bool k_half() const noexcept { return k_; }
  [[nodiscard]] double h() const noexcept { return h_ ? 0.5 : 0.0; }
  [[nodiscard]] double k() const noexcept { return k_ ? 0.5 : 0.0; }
  [[nodiscard]] constexpr HalfCharacteristic swapped() const noexcept { return {k_, h_}; }

  friend constexpr bool operator==(HalfCharacteristic, HalfCharacteristic) = default;

 private:
  bool h_;
  bool k_;
};

inline constexpr HalfCharacteristic kTheta00{false, false};
inline constexpr HalfCharacteristic kTheta0Half{false, true};
inline constexpr HalfCharacteristic kThetaHalf0{true, false};
inline constexpr HalfCharacteristic kThetaHalfHalf{true, true};

// θ_{h,k}(z, τ) = Σ_n exp(πi(n+h)²τ + 2πi(n+h)(z+k)).
Complex jacobi_theta(HalfCharacteristic c, Complex z, Complex tau, const EvalConfig& cfg = {});

// θ_c(z/τ, -1/τ) = multiplier · (-iτ)^{1/2} e^{πiz²/τ} θ_{image}(z, τ).
struct ThetaSRow {
  HalfCharacteristic image;
  Complex multiplier;
};
ThetaSRow theta_s_row(HalfCharacteristic c);

}  // namespace lattrace
