#include "lattrace/lattice.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "lattrace/error.hpp"
#include "oracles.hpp"

using namespace lattrace;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no lattrace::Error thrown";
  return ErrorCode::InvalidArgument;
}

const IntMatrix kE8 = {{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
                       {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
                       {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 0, 0, 2}};

}  // namespace

TEST(Lattice, ValidateAcceptsEvenPositiveDefinite) {
  const auto L = EvenLattice::validate({{4}});
  EXPECT_EQ(L.rank(), 1);
  EXPECT_EQ(L.determinant(), 4);
  const auto A2 = EvenLattice::validate({{2, -1}, {-1, 2}});
  EXPECT_EQ(A2.determinant(), 3);
  EXPECT_EQ(A2.inverse_gram()[0][0], Rational(2, 3));
}

TEST(Lattice, ValidateRejects) {
  EXPECT_EQ(code_of([] { (void)EvenLattice::validate({{1}}); }), ErrorCode::NotEven);
  EXPECT_EQ(code_of([] { (void)EvenLattice::validate({{2, 1}, {0, 2}}); }), ErrorCode::NotSymmetric);
  EXPECT_EQ(code_of([] { (void)EvenLattice::validate({{2, 3}, {3, 2}}); }), ErrorCode::NotPositiveDefinite);
  EXPECT_EQ(code_of([] { (void)EvenLattice::validate({{2, 0}}); }), ErrorCode::NotSquare);
  EXPECT_EQ(code_of([] { (void)EvenLattice::validate({}); }), ErrorCode::NotSquare);
}

TEST(Lattice, CosetsOfZ2x) {
  const auto L = EvenLattice::validate({{4}});
  const auto reps = dual_coset_reps(L);
  ASSERT_EQ(reps.size(), 4U);
  // W0..W3 = 2ℤx, (2ℤ+½)x, (2ℤ+1)x, (2ℤ-½)x with x = e/2.
  const std::vector<Rational> expected = {0, Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(reps[i].beta()[0], expected[i]);
  EXPECT_EQ(coset_index(L, CosetLabel::make(L, {Rational(-1, 4)})), 3U);
  EXPECT_EQ(reps[1].negated(), reps[3]);
}

TEST(Lattice, CosetCountsMatchDeterminant) {
  EXPECT_EQ(dual_coset_reps(EvenLattice::validate({{2, -1}, {-1, 2}})).size(), 3U);
  EXPECT_EQ(dual_coset_reps(EvenLattice::validate(kE8)).size(), 1U);
  EXPECT_EQ(dual_coset_reps(EvenLattice::validate({{2, 0}, {0, 4}})).size(), 8U);
  const auto D4 = EvenLattice::validate({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  const auto reps = dual_coset_reps(D4);
  EXPECT_EQ(reps.size(), 4U);
  const auto factors = gram_invariant_factors(D4);
  EXPECT_EQ(factors.back(), 2);  // ℤ/2 × ℤ/2
}

TEST(Lattice, CosetRepresentativesAreDistinctDualVectors) {
  const auto L = EvenLattice::validate({{4, 2}, {2, 6}});
  const auto reps = dual_coset_reps(L);
  EXPECT_EQ(BigInt(reps.size()), L.determinant());
  for (const auto& r : reps) {
    for (const auto& x : L.gram_times(r.beta())) EXPECT_EQ(denominator(x), 1) << "not in the dual";
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) EXPECT_FALSE(reps[i] == reps[j]);
  }
}

TEST(Lattice, CosetLabelRejectsNonDual) {
  const auto L = EvenLattice::validate({{4}});
  EXPECT_EQ(code_of([&] { (void)CosetLabel::make(L, {Rational(1, 3)}); }), ErrorCode::InvalidArgument);
}

TEST(Lattice, EnumerateSmallBall) {
  const auto L = EvenLattice::validate({{4}});
  const auto v = enumerate_vectors(L, CosetLabel::zero(1), 2);
  ASSERT_EQ(v.size(), 3U);
  EXPECT_EQ(v[0].norm, 0);
  EXPECT_EQ(v[1].norm, 4);
  EXPECT_EQ(v[2].norm, 4);
}

TEST(Lattice, EnumerateQuarterCoset) {
  // Only x/2 lies in (2ℤ+½)x within <m,m>/2 ≤ 1/4; -x/2 belongs to (2ℤ-½)x.
  const auto L = EvenLattice::validate({{4}});
  const auto reps = dual_coset_reps(L);
  const auto v1 = enumerate_vectors(L, reps[1], Rational(1, 4));
  ASSERT_EQ(v1.size(), 1U);
  EXPECT_EQ(v1[0].coords[0], Rational(1, 4));
  EXPECT_EQ(v1[0].norm / 2, Rational(1, 8));
  const auto v3 = enumerate_vectors(L, reps[3], Rational(1, 4));
  ASSERT_EQ(v3.size(), 1U);
  EXPECT_EQ(v3[0].coords[0], Rational(-1, 4));
}

TEST(Lattice, EnumerateMatchesBruteForce) {
  for (const IntMatrix& G :
       {IntMatrix{{2, -1}, {-1, 2}}, IntMatrix{{4, 2}, {2, 6}}, IntMatrix{{4, 1, 0}, {1, 2, 0}, {0, 0, 2}}}) {
    const auto L = EvenLattice::validate(G);
    for (const auto& c : dual_coset_reps(L)) {
      std::vector<double> beta;
      for (const auto& b : c.beta()) beta.push_back(to_double(b));
      const auto ours = enumerate_vectors(L, c, 5);
      const auto ref = oracle::short_vectors(G, beta, 5.0, 8);
      EXPECT_EQ(ours.size(), ref.size());
    }
  }
}

TEST(Lattice, EnumerateZeroBound) {
  const auto L = EvenLattice::validate(kE8);
  EXPECT_EQ(enumerate_vectors(L, CosetLabel::zero(8), 0).size(), 1U);
  EXPECT_EQ(enumerate_vectors(L, CosetLabel::zero(8), 1).size(), 241U);  // 240 roots
}

TEST(Lattice, EnumerateCap) {
  const auto L = EvenLattice::validate(kE8);
  EXPECT_EQ(code_of([&] { (void)enumerate_vectors(L, CosetLabel::zero(8), 4, 1000); }),
            ErrorCode::BoundTooLarge);
}

TEST(Lattice, ThetaSeries) {
  const auto Z = EvenLattice::validate({{4}});
  const auto t = theta_series(Z, CosetLabel::zero(1), 8);
  EXPECT_EQ(t.coeff_at(0), Complex(1));
  EXPECT_EQ(t.coeff_at(2), Complex(2));
  EXPECT_EQ(t.coeff_at(8), Complex(2));
  EXPECT_EQ(t.coeff_at(4), Complex(0));
  const auto A2 = EvenLattice::validate({{2, -1}, {-1, 2}});
  const auto a = theta_series(A2, CosetLabel::zero(2), 4);
  EXPECT_EQ(a.coeff_at(1), Complex(6));
  EXPECT_EQ(a.coeff_at(2), Complex(0));
  EXPECT_EQ(a.coeff_at(3), Complex(6));
  EXPECT_EQ(a.coeff_at(4), Complex(6));
  const auto reps = dual_coset_reps(Z);
  const auto t1 = theta_series(Z, reps[1], 4);
  EXPECT_EQ(t1.coeff_at(0), Complex(0));
  EXPECT_EQ(t1.coeff_at(Rational(1, 8)), Complex(1));
  const auto e8 = theta_series(EvenLattice::validate(kE8), CosetLabel::zero(8), 2);
  EXPECT_EQ(e8.coeff_at(1), Complex(240));
  EXPECT_EQ(e8.coeff_at(2), Complex(2160));
}

TEST(Lattice, JsonLoading) {
  const auto L = lattice_from_json(nlohmann::json::parse(R"({"name": "a2", "gram": [[2,-1],[-1,2]]})"));
  EXPECT_EQ(L.name(), "a2");
  EXPECT_EQ(code_of([] { (void)lattice_from_json(nlohmann::json::parse(R"({"gram": "x"})")); }),
            ErrorCode::LatticeFileError);
  EXPECT_EQ(code_of([] { (void)load_lattice_file("/nonexistent/lattice.json"); }),
            ErrorCode::LatticeFileError);
  const auto file = load_lattice_file(std::string(LATTRACE_DATA_DIR) + "/z2x.json");
  EXPECT_EQ(file.gram(), (IntMatrix{{4}}));
}
