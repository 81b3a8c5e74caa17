#include "lattrace/qseries.hpp"

#include <gtest/gtest.h>

#include <random>

#include "lattrace/error.hpp"
#include "oracles.hpp"

using namespace lattrace;

TEST(Eta, PentagonalCoefficients) {
  const auto eta = dedekind_eta(30);
  EXPECT_EQ(eta.denom(), 24);
  EXPECT_EQ(eta.coeff_at(Rational(1, 24)), Complex(1));
  const auto expected = oracle::pentagonal(30);
  for (int n = 0; n <= 30; ++n) {
    EXPECT_EQ(eta.coeff(24 * n + 1).real(), static_cast<double>(expected[n])) << n;
  }
}

TEST(Eta, EvalAtI) {
  EXPECT_NEAR(std::abs(eta_eval(kI) - 0.768225422326056659), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eta_eval(kI) - oracle::eta(kI)), 0.0, 1e-15);
}

TEST(Eta, TranslationPhase) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const Complex tau(u(rng) - 0.5, 0.4 + u(rng));
    const Complex ratio = eta_eval(tau + 1.0) / eta_eval(tau);
    EXPECT_NEAR(std::abs(ratio - std::exp(kI * kPi / 12.0)), 0.0, 1e-13);
  }
}

TEST(Eta, ModularS) {
  const Complex tau(0.2, 0.9);
  const Complex lhs = eta_eval(-1.0 / tau);
  EXPECT_NEAR(std::abs(lhs - std::sqrt(-kI * tau) * eta_eval(tau)), 0.0, 1e-13);
}

TEST(Eta, FloorIsEnforced) {
  try {
    (void)eta_eval(Complex(0.0, 0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ImTooSmall);
  }
}

TEST(G2, Coefficients) {
  const auto g2 = eisenstein_g2(12);
  EXPECT_NEAR(g2.coeff(0).real(), kPi * kPi / 3.0, 1e-14);
  EXPECT_NEAR(g2.coeff(1).real(), -8.0 * kPi * kPi, 1e-12);
  for (int n = 1; n <= 12; ++n) {
    EXPECT_NEAR(g2.coeff(n).real(), -8.0 * kPi * kPi * static_cast<double>(oracle::sigma1(n)), 1e-9) << n;
  }
}

TEST(G2, FixedPointValue) { EXPECT_NEAR(std::abs(g2_eval(kI) - kPi), 0.0, 1e-12); }

TEST(G2, SeriesAndEvalAgree) {
  const Complex tau(0.3, 1.1);
  EXPECT_NEAR(std::abs(eisenstein_g2(40).evaluate(tau) - g2_eval(tau)), 0.0, 1e-12);
}

TEST(P2, QZeroSlice) {
  const BiSeries p = p2_series(6, 4);
  const Complex scale = kTwoPiI * kTwoPiI;
  for (int n = 1; n <= 6; ++n) {
    EXPECT_NEAR(std::abs(p.coeff(n, 0) - scale * static_cast<double>(n)), 0.0, 1e-12);
    EXPECT_EQ(p.coeff(-n, 0), Complex(0));
  }
  // x^{-1} first appears with q¹, coefficient (2πi)².
  EXPECT_NEAR(std::abs(p.coeff(-1, 1) - scale), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.coeff(2, 4) - 2.0 * scale), 0.0, 1e-12);
}

TEST(P2, SeriesMatchesEvaluationInsideWindow) {
  // With |q| tiny and x near the unit circle, the truncated double series converges.
  const Complex tau(0.1, 2.0);
  const Complex z(0.3, 0.05);
  const BiSeries p = p2_series(80, 6);
  const Complex x = std::exp(kTwoPiI * z);
  EXPECT_NEAR(std::abs(p.evaluate(x, tau) - p2_eval(z, tau)), 0.0, 1e-6);
}

TEST(P2, IsWeierstrassPlusG2) {
  const Complex tau(-0.2, 1.1);
  for (Complex z : {Complex(0.3, 0.1), Complex(0.7, -0.4), Complex(0.45, 0.0)}) {
    EXPECT_NEAR(std::abs(p2_eval(z, tau) - g2_eval(tau) - oracle::weierstrass(z, tau)), 0.0, 1e-9) << z;
  }
}

TEST(P2, ErrorsOutsideAnnulusAndAtPoles) {
  try {
    (void)p2_eval(Complex(0.3, 1.5), Complex(0.0, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfAnnulus);
  }
  try {
    (void)p2_eval(Complex(1.0, 0.0), Complex(0.0, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleAtLatticePoint);
  }
}

TEST(Weierstrass, MatchesThetaQuotient) {
  const Complex tau(0.15, 0.95);
  for (Complex z : {Complex(0.2, 0.1), Complex(0.6, 0.7), Complex(-0.35, 1.3), Complex(2.4, -3.1)}) {
    const Complex ours = weierstrass_p(z, tau);
    const Complex ref = oracle::weierstrass(z, tau);
    EXPECT_NEAR(std::abs(ours - ref) / std::max(1.0, std::abs(ref)), 0.0, 1e-10) << z;
  }
}

TEST(Weierstrass, EvenAndPeriodic) {
  const Complex tau(0.1, 1.2);
  const Complex z(0.27, 0.33);
  const Complex w = weierstrass_p(z, tau);
  EXPECT_NEAR(std::abs(weierstrass_p(-z, tau) - w), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(weierstrass_p(z + 1.0, tau) - w), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(weierstrass_p(z + tau, tau) - w), 0.0, 1e-10);
}

TEST(Weierstrass, RealOnSquareLatticeHalfPeriod) {
  EXPECT_LT(std::abs(weierstrass_p(0.5, kI).imag()), 1e-12);
  EXPECT_NEAR(weierstrass_p(0.5, kI).real(), oracle::weierstrass(0.5, kI).real(), 1e-10);
}

TEST(Weierstrass, PoleAtLatticePoint) {
  const Complex tau(0.0, 1.0);
  try {
    (void)weierstrass_p(tau + 1.0, tau);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleAtLatticePoint);
  }
}

TEST(Weierstrass, LaurentLeadingTerm) {
  const Complex tau(0.0, 1.0);
  const Complex z(1e-3, 0.0);
  // ℘(z) - 1/z² = O(z²) with a modest coefficient.
  EXPECT_LT(std::abs(weierstrass_p(z, tau) - 1.0 / (z * z)), 1e-3);
}

TEST(JacobiTheta, DirectSums) {
  EXPECT_NEAR(std::abs(jacobi_theta(kThetaHalfHalf, 0.0, Complex(0.3, 0.8))), 0.0, 1e-15);
  EXPECT_NEAR(jacobi_theta(kTheta00, 0.0, kI).real(), 1.0864348112133080146, 1e-15);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (auto c : {kTheta00, kTheta0Half, kThetaHalf0, kThetaHalfHalf}) {
    for (int i = 0; i < 5; ++i) {
      const Complex z(u(rng), u(rng));
      const Complex tau(u(rng), 0.6 + u(rng) + 0.5);
      const Complex ref = oracle::theta(c.h(), c.k(), z, tau);
      EXPECT_NEAR(std::abs(jacobi_theta(c, z, tau) - ref), 0.0, 1e-13);
    }
  }
}

TEST(JacobiTheta, SRowsAgainstOracle) {
  // Transformation table checked with the direct sums on both sides.
  const Complex tau(0.25, 0.8);
  const Complex z(0.2, -0.15);
  for (auto c : {kTheta00, kTheta0Half, kThetaHalf0, kThetaHalfHalf}) {
    const ThetaSRow row = theta_s_row(c);
    EXPECT_EQ(row.image, c.swapped());
    const Complex lhs = oracle::theta(c.h(), c.k(), z / tau, -1.0 / tau);
    const Complex rhs = row.multiplier * std::sqrt(-kI * tau) * std::exp(kPi * kI * z * z / tau) *
                        oracle::theta(row.image.h(), row.image.k(), z, tau);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
  EXPECT_EQ(theta_s_row(kThetaHalfHalf).multiplier, Complex(0.0, -1.0));
}

TEST(JacobiTheta, CharacteristicsFromRationals) {
  EXPECT_EQ(HalfCharacteristic::from_rationals(Rational(1, 2), 0), kThetaHalf0);
  EXPECT_THROW((void)HalfCharacteristic::from_rationals(Rational(1, 3), 0), Error);
}
