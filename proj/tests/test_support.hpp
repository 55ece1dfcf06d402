#pragma once

// Shared helpers for the test suites: deterministic random rational
// orthogonal maps (Cayley transforms of antisymmetric matrices, optionally
// conjugated by signed permutations) and the brute-force hypersurface
// oracle.

#include <random>
#include <vector>

#include "cubical/isometry.hpp"

namespace test_support {

using cubical::RatMat;
using cubical::Rational;
using cubical::RationalOrthoAffine;
using cubical::RatVec;

inline RatMat cayley_orthogonal(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> keep(0, 2);
  RatMat s(n, RatVec(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (keep(rng) == 0) continue;  // sparse patterns exercise block splits
      Rational x(num(rng), den(rng));
      s[i][j] = x;
      s[j][i] = -x;
    }
  RatMat plus = cubical::identity_matrix(n), minus = cubical::identity_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      plus[i][j] += s[i][j];
      minus[i][j] -= s[i][j];
    }
  return cubical::mat_mul(minus, cubical::mat_inverse(plus));
}

inline std::vector<RatMat> all_signed_permutations(int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<RatMat> out;
  do {
    for (unsigned signs = 0; signs < (1u << n); ++signs) {
      RatMat m(n, RatVec(n, Rational(0)));
      for (int i = 0; i < n; ++i) m[i][perm[i]] = (signs >> i) & 1 ? Rational(-1) : Rational(1);
      out.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline RationalOrthoAffine random_map(int n, std::mt19937& rng) {
  RatMat a = cayley_orthogonal(n, rng);
  // Mix in signed-permutation conjugation so the nonzero pattern moves.
  auto perms = all_signed_permutations(n);
  std::uniform_int_distribution<size_t> pick(0, perms.size() - 1);
  const RatMat& p = perms[pick(rng)];
  a = cubical::mat_mul(cubical::mat_mul(p, a), cubical::mat_transpose(p));
  static const Rational choices[] = {Rational(0), Rational(1), Rational(-1), Rational(1, 2),
                                     Rational(-1, 2), Rational(1, 3), Rational(2), Rational(7, 10)};
  std::uniform_int_distribution<int> t(0, 7);
  RatVec b(n);
  for (int i = 0; i < n; ++i) b[i] = choices[t(rng)];
  return RationalOrthoAffine(a, b);
}

/// Brute-force oracle: T maps the hypersurface spanned by S to a
/// hypersurface iff the rows outside S vanish on the columns of S and the
/// matching translation entries are integral, for some nonempty proper S.
inline bool hypersurface_oracle(const RationalOrthoAffine& t) {
  int n = t.n;
  for (unsigned s = 1; s + 1 < (1u << n); ++s) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (s & (1u << i)) continue;  // row inside S
      for (int j = 0; j < n && ok; ++j)
        if ((s & (1u << j)) && !t.A[i][j].is_zero()) ok = false;
      if (ok && !t.b[i].is_integer()) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace test_support
