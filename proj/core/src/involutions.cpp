#include "lattrace/involutions.hpp"

#include <algorithm>
#include <map>

#include "lattrace/error.hpp"

namespace lattrace {

namespace {

void extend(int n, std::vector<bool>& used, std::vector<std::pair<int, int>>& pairs,
            std::vector<Involution>& out) {
  int i = 1;
  while (i <= n && used[i]) ++i;
  if (i > n) {
    out.emplace_back(n, pairs);
    return;
  }
  used[i] = true;
  extend(n, used, pairs, out);  // i fixed
  for (int j = i + 1; j <= n; ++j) {
    if (used[j]) continue;
    used[j] = true;
    pairs.emplace_back(i, j);
    extend(n, used, pairs, out);
    pairs.pop_back();
    used[j] = false;
  }
  used[i] = false;
}

// Set partitions of {0..k-1}, each as a list of blocks.
void set_partitions_of(int k, int next, std::vector<std::vector<int>>& blocks,
                       std::vector<std::vector<std::vector<int>>>& out) {
  if (next == k) {
    out.push_back(blocks);
    return;
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    blocks[i].push_back(next);
    set_partitions_of(k, next + 1, blocks, out);
    blocks[i].pop_back();
  }
  blocks.push_back({next});
  set_partitions_of(k, next + 1, blocks, out);
  blocks.pop_back();
}

}  // namespace

Involution::Involution(int n, std::vector<std::pair<int, int>> pairs) : n_(n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative ground set");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (auto [i, j] : pairs) {
    if (i == j || i < 1 || j < 1 || i > n || j > n || seen[i] || seen[j]) {
      throw Error(ErrorCode::InvalidArgument, "pairs must be disjoint 2-subsets of {1..n}");
    }
    seen[i] = seen[j] = true;
    pairs_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(pairs_.begin(), pairs_.end());
}

std::vector<int> Involution::moved() const {
  std::vector<int> out;
  for (auto [i, j] : pairs_) {
    out.push_back(i);
    out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Involution::fixed() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    if ((*this)(i) == i) out.push_back(i);
  }
  return out;
}

int Involution::operator()(int i) const {
  for (auto [a, b] : pairs_) {
    if (a == i) return b;
    if (b == i) return a;
  }
  return i;
}

std::vector<int> Involution::as_permutation() const {
  std::vector<int> out(static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i) out[i - 1] = (*this)(i);
  return out;
}

std::vector<Involution> list_involutions(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (n > kMaxInvolutionN) throw Error(ErrorCode::NTooLarge, "involution enumeration is capped at n = 12");
  std::vector<Involution> out;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::pair<int, int>> pairs;
  extend(n, used, pairs, out);
  return out;
}

BigInt count_with_fixed(int n, int r) {
  if (r < 0 || r > n) throw Error(ErrorCode::InvalidArgument, "need 0 <= r <= n");
  if ((n - r) % 2 != 0) throw Error(ErrorCode::ParityMismatch, "n - r must be even");
  BigInt count = 0;
  for (const auto& s : list_involutions(n)) {
    if (static_cast<int>(s.fixed().size()) == r) ++count;
  }
  return count;
}

BigInt factorial(int n) {
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

BigInt closed_form_count(int p, int r) {
  return binomial(2 * p + r, r) * factorial(2 * p) / (factorial(p) * (BigInt(1) << p));
}

BigInt alternate_closed_form_count(int p, int r) {
  return binomial(2 * p + r, r) * factorial(2 * p + r) / (factorial(p) * (BigInt(1) << p));
}

ClosedFormCheck closed_form_check(int p, int r) {
  return {count_with_fixed(2 * p + r, r), closed_form_count(p, r), alternate_closed_form_count(p, r)};
}

BigInt count_with_fixed_recurrence(int n, int r) {
  if (n < 0 || r < 0 || r > n || (n - r) % 2 != 0) return 0;
  // table[m][s] = T(m, s)
  std::vector<std::vector<BigInt>> table(static_cast<std::size_t>(n) + 1,
                                         std::vector<BigInt>(static_cast<std::size_t>(n) + 1, 0));
  table[0][0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int s = 0; s <= m; ++s) {
      BigInt v = s >= 1 ? table[m - 1][s - 1] : BigInt(0);
      if (m >= 2) v += BigInt(m - 1) * table[m - 2][s];
      table[m][s] = v;
    }
  }
  return table[n][r];
}

BigInt involution_count_recurrence(int n) {
  BigInt prev = 1, cur = 1;  // T(0), T(1)
  if (n <= 1) return 1;
  for (int m = 2; m <= n; ++m) {
    BigInt next = cur + BigInt(m - 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<Decomposition> enumerate_decompositions(const Involution& sigma) {
  if (sigma.is_identity())
    throw Error(ErrorCode::InvalidArgument, "decompositions need a non-identity involution");
  const auto& pairs = sigma.pairs();
  const int k = static_cast<int>(pairs.size());
  std::vector<std::vector<std::vector<int>>> set_partitions;
  std::vector<std::vector<int>> blocks;
  set_partitions_of(k, 0, blocks, set_partitions);

  std::vector<Decomposition> out;
  for (const auto& partition : set_partitions) {
    std::vector<std::size_t> order(partition.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    do {
      Decomposition d;
      for (std::size_t idx : order) {
        std::vector<std::pair<int, int>> part;
        for (int b : partition[idx]) part.push_back(pairs[b]);
        d.parts.emplace_back(sigma.n(), std::move(part));
      }
      out.push_back(std::move(d));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

bool decomposition_is_valid(const Decomposition& d, const Involution& sigma) {
  std::vector<int> product(static_cast<std::size_t>(sigma.n()));
  for (int i = 1; i <= sigma.n(); ++i) product[i - 1] = i;
  std::vector<bool> moved(static_cast<std::size_t>(sigma.n()) + 1, false);
  for (const auto& part : d.parts) {
    if (part.is_identity() || part.n() != sigma.n()) return false;
    for (int i : part.moved()) {
      if (moved[i]) return false;
      moved[i] = true;
    }
    const auto perm = part.as_permutation();
    for (auto& x : product) x = perm[x - 1];
  }
  return product == sigma.as_permutation();
}

SignLemmaResult verify_sign_lemma(const Involution& sigma) {
  SignLemmaResult res;
  res.p = static_cast<int>(sigma.pairs().size());
  for (const auto& d : enumerate_decompositions(sigma)) {
    ++res.decompositions;
    res.all_valid = res.all_valid && decomposition_is_valid(d, sigma);
    res.signed_sum += d.parts.size() % 2 == 0 ? 1 : -1;
  }
  return res;
}

bool verify_multinomial_identity(int p, int r) {
  if (p < 0 || r < 0) throw Error(ErrorCode::InvalidArgument, "p and r must be nonnegative");
  const Rational two_p(BigInt(1) << p);
  const Rational lhs = Rational(binomial(r + 2 * p, r)) * Rational(factorial(2 * p)) /
                       (Rational(factorial(r + 2 * p)) * Rational(factorial(p)) * two_p);
  const Rational rhs = Rational(binomial(r + p, r)) / (Rational(factorial(r + p)) * two_p);
  return lhs == rhs;
}

RegroupReport exponential_regroup_check(int p_max, int r_max) {
  if (p_max < 0 || r_max < 0) throw Error(ErrorCode::InvalidArgument, "bounds must be nonnegative");
  RegroupReport rep;
  // Enumerated T(n, r) for the n where listing is allowed.
  std::map<std::pair<int, int>, BigInt> enumerated;
  for (int n = 1; n <= std::min(kMaxInvolutionN, 2 * p_max + r_max); ++n) {
    for (const auto& s : list_involutions(n)) ++enumerated[{n, static_cast<int>(s.fixed().size())}];
  }
  for (int p = 0; p <= p_max; ++p) {
    for (int r = 0; r <= r_max; ++r) {
      const int n = 2 * p + r;
      BigInt count;
      if (n == 0) {
        count = 1;
      } else if (n <= kMaxInvolutionN) {
        count = enumerated[{n, r}];
        ++rep.enumerated_terms;
      } else {
        count = count_with_fixed_recurrence(n, r);
      }
      const Rational lhs = Rational(count) / Rational(factorial(n));
      const Rational rhs =
          Rational(1) / (Rational(BigInt(1) << p) * Rational(factorial(p)) * Rational(factorial(r)));
      ++rep.terms_checked;
      if (lhs != rhs) ++rep.mismatches;
    }
  }
  return rep;
}

}  // namespace lattrace
