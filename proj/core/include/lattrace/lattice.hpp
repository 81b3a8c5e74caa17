#pragma once

#include <cstddef>
#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "lattrace/series.hpp"

namespace lattrace {

using IntMatrix = std::vector<std::vector<long>>;
using ComplexVector = std::vector<Complex>;

// Positive-definite even lattice given by its Gram matrix in a fixed basis.
// All vectors handed to this class are coordinate vectors in that basis.
class EvenLattice {
 public:
  // Throws Error{NotSquare | NotSymmetric | NotPositiveDefinite | NotEven}.
  static EvenLattice validate(const IntMatrix& gram, std::string name = {});

  [[nodiscard]] int rank() const noexcept { return static_cast<int>(gram_.size()); }
  [[nodiscard]] const IntMatrix& gram() const noexcept { return gram_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const BigInt& determinant() const noexcept { return det_; }
  [[nodiscard]] const std::vector<RationalVector>& inverse_gram() const noexcept { return inv_; }

  [[nodiscard]] Rational inner(const RationalVector& x, const RationalVector& y) const;
  // Complex bilinear form (no conjugation).
  [[nodiscard]] Complex inner(const ComplexVector& x, const ComplexVector& y) const;
  // Gram·x; a rational x lies in the dual lattice iff this is integral.
  [[nodiscard]] RationalVector gram_times(const RationalVector& x) const;

  friend bool operator==(const EvenLattice& a, const EvenLattice& b) { return a.gram_ == b.gram_; }

 private:
  EvenLattice() = default;
  IntMatrix gram_;
  std::string name_;
  BigInt det_;
  std::vector<RationalVector> inv_;
};

// β + L with β in the dual lattice, canonicalised to the half-open box [0,1)^d.
class CosetLabel {
 public:
  // Throws InvalidArgument if β is not in the dual lattice.
  static CosetLabel make(const EvenLattice& lattice, RationalVector beta);
  static CosetLabel zero(int rank);

  [[nodiscard]] const RationalVector& beta() const noexcept { return beta_; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] CosetLabel negated() const;

  friend bool operator==(const CosetLabel&, const CosetLabel&) = default;
  friend auto operator<=>(const CosetLabel& a, const CosetLabel& b) { return a.beta_ <=> b.beta_; }

 private:
  RationalVector beta_;
};

struct LatticeVector {
  RationalVector coords;
  Rational norm;  // <m, m>
};

// Smith normal form diagonal of the Gram matrix (invariant factors of L*/L).
std::vector<BigInt> gram_invariant_factors(const EvenLattice& lattice);

// Representatives of L*/L, one per class, sorted lexicographically; the index in
// this list is the module index used throughout.
std::vector<CosetLabel> dual_coset_reps(const EvenLattice& lattice);

// Index of `label` in dual_coset_reps(lattice).
std::size_t coset_index(const EvenLattice& lattice, const CosetLabel& label);

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

// Every m in L + β with <m,m>/2 ≤ bound, sorted by norm then coordinates. Throws
// BoundTooLarge once more than `cap` candidates have been visited.
std::vector<LatticeVector> enumerate_vectors(const EvenLattice& lattice, const CosetLabel& beta,
                                             const Rational& bound, std::size_t cap = kDefaultEnumerationCap);

// Σ_{m ∈ L+β} q^{<m,m>/2} through q^{q_order}; the grid denominator is that of <β,β>/2.
TruncatedSeries theta_series(const EvenLattice& lattice, const CosetLabel& beta, long q_order);

// Lattice input file: {"name": string, "gram": [[int]]}.
EvenLattice lattice_from_json(const nlohmann::json& doc);
EvenLattice load_lattice_file(const std::filesystem::path& path);

}  // namespace lattrace
