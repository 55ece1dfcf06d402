#pragma once

#include <array>
#include <string>
#include <vector>

#include "cubical/cube_complex.hpp"
#include "cubical/isometry.hpp"

namespace cubical {

using Vec2 = std::array<long long, 2>;

/// Two integral plane vectors of equal squared norm whose coordinates do not
/// differ by a signed permutation (hence linearly independent).
struct PythagoreanPair {
  Vec2 a{};
  Vec2 b{};
  long long norm_sq = 0;

  static PythagoreanPair make(Vec2 a, Vec2 b);
  /// Orbit of a vector under signed permutations, as (min |x|, max |x|).
  static Vec2 canonical(Vec2 v);
  /// Equality up to signed permutation of each vector and swapping the pair.
  bool matches(Vec2 x, Vec2 y) const;
};

/// All distinct pairs with coordinate magnitudes <= limit, deduplicated up
/// to signed permutations of each vector and swapping; vectors are emitted
/// in canonical (min, max) form, pairs sorted by norm then lexicographically.
std::vector<PythagoreanPair> find_pythagorean_doubles(long long limit);

/// Quotient of the standard cubulation of the plane by the lattice spanned
/// by a and b: |det(a b)| squares, every vertex link a 4-cycle.
struct TorusComplex {
  CubeComplex complex;
  Vec2 a{};
  Vec2 b{};
};

TorusComplex build_torus(Vec2 a, Vec2 b);

/// Canonical representative of z modulo the lattice spanned by a, b (the
/// half-open fundamental parallelogram).
Vec2 lattice_rep(Vec2 z, Vec2 a, Vec2 b);

/// The reflection exchanging the two vectors of a Pythagorean pair:
/// R = I - 2uu^T/|u|^2 with u = a - b. Exact rational; never cubical for a
/// distinct pair.
RationalOrthoAffine swap_isometry(const PythagoreanPair& p);

/// True iff the linear part of T maps the lattice spanned by a, b
/// bijectively to itself (so T descends to the torus quotient).
bool verify_descends(const RationalOrthoAffine& t, Vec2 a, Vec2 b);

/// Permutation on d sheets as images of 0..d-1.
using Perm = std::vector<int>;

Perm perm_identity(int d);
Perm perm_compose(const Perm& outer, const Perm& inner);  // outer after inner
Perm perm_inverse(const Perm& p);
std::vector<std::vector<int>> perm_cycles(const Perm& p);

/// Degree-d cover data for the once-punctured torus: monodromy images of the
/// two loop generators.
struct CoverSpec {
  int degree = 0;
  Perm sigma_a;
  Perm sigma_b;

  bool transitive() const;
  /// sigma_a sigma_b sigma_a^-1 sigma_b^-1; its cycles are the branch data.
  Perm commutator() const;

  std::string to_json_string() const;
  static CoverSpec from_json_string(const std::string& text);
};

/// Branched cover of the torus determined by the permutation representation:
/// the cover of the punctured torus is built sheet by sheet with holonomy
/// read off two routed cut paths, then the punctures are filled. Each filled
/// vertex over the base vertex has cone order 4 times its commutator cycle
/// length; every other vertex stays flat. The construction verifies the
/// branch data, the Riemann-Hurwitz count, and connectivity before
/// returning. Throws std::invalid_argument for non-transitive specs, and
/// std::runtime_error for the few quotients too small to carry two cut
/// curves meeting only at the base vertex (e.g. checkerboard lattices of
/// determinant 2).
CubeComplex branched_cover(const TorusComplex& torus, const CoverSpec& spec);

/// Freely reduced word in the rank-2 free group: letters +-1 (generator a)
/// and +-2 (generator b), negatives for inverses.
using Word = std::vector<int>;

Word word_reduce(Word w);
Word word_inverse(const Word& w);
/// Parses "abAB" (lowercase generators, uppercase inverses).
Word word_parse(const std::string& s);

/// Certifies that (wa, wb) defines an automorphism of the free group:
/// abelianization determinant +-1 plus a bounded Nielsen-move search back to
/// a basis pair (total length <= 16). Incomplete in general; throws
/// std::invalid_argument when certification fails.
void require_automorphism(const Word& wa, const Word& wb);

/// Whether the isometry realizing the substitution a -> wa, b -> wb lifts to
/// the cover: the permutation representation precomposed with the
/// substitution must be conjugate to the original one by a relabeling of
/// sheets (Schreier graph isomorphism).
bool lift_check(const CoverSpec& spec, const Word& wa, const Word& wb);

}  // namespace cubical
