#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cubical/rational.hpp"

namespace cubical {

/// Euclidean isometry x -> Ax + b of R^n with exact rational orthogonal part.
///
/// The constructor enforces A^T A == I; everything downstream may rely on it.
struct RationalOrthoAffine {
  int n = 0;
  RatMat A;
  RatVec b;

  RationalOrthoAffine() = default;
  RationalOrthoAffine(RatMat a, RatVec t);

  RatVec apply(const RatVec& x) const;
  RationalOrthoAffine inverse() const;
  RationalOrthoAffine compose_after(const RationalOrthoAffine& inner) const;

  bool operator==(const RationalOrthoAffine& o) const { return n == o.n && mat_equal(A, o.A) && b == o.b; }

  std::string to_json_string() const;
  static RationalOrthoAffine from_json_string(const std::string& text);
};

/// True iff A^T A == I exactly. Throws on non-square input.
bool check_orthogonal(const RatMat& a);

/// True iff the matrix is a signed permutation (entries in {0, +-1}, one
/// nonzero per row and column).
bool is_signed_permutation(const RatMat& a);

/// Composes T with an integer translation so every component of the
/// translation satisfies |b_i| < sqrt(2)/2 (exactly: 2 b_i^2 < 1), rounding
/// to the nearest integer with ties toward zero. Integral components become
/// zero. Returns the reduced map and the subtracted integer vector.
std::pair<RationalOrthoAffine, std::vector<long long>> reduce_translation(
    const RationalOrthoAffine& t);

/// True iff T is an automorphism of the standard cubulation: A a signed
/// permutation and b integral.
bool is_cubical_map(const RationalOrthoAffine& t);

/// An affine integer translate of a coordinate sub-cubulation: the
/// coordinates in `free_coords` span it; the complementary coordinates sit
/// at the integral offsets.
struct HypersurfaceSpec {
  std::vector<int> free_coords;            // 0-based, ascending
  std::vector<long long> offsets;          // one per complementary coordinate
};

struct HypersurfaceSplit {
  HypersurfaceSpec hypersurface;
  std::vector<int> coords1;  // block acting on the preserved hypersurface
  std::vector<int> coords2;  // complementary block, integral translation
  RatMat a1, a2;
  RatVec b1, b2;
};

/// Decides whether T maps some proper coordinate hypersurface to an integer
/// translate of itself, and returns a witness split A = A1 (+) A2 with b2
/// integral when one exists.
///
/// Algorithm: connected components of the nonzero pattern of A are the
/// finest coordinate-aligned blocks; a split exists iff there are at least
/// two components and some component carries integral translation. The
/// witness places every integral-translation component into A2 (all but the
/// first component when the whole translation is integral).
std::optional<HypersurfaceSplit> preserves_proper_hypersurface(const RationalOrthoAffine& t);

enum class BlockKind { Lambda, B0, BStrict };

struct Block {
  BlockKind kind;
  std::vector<int> coords;  // original 0-based coordinates, ascending
  RatMat matrix;            // entries of the normalized map on these coordinates
  RatVec translation;
};

/// Normal form of an orthogonal affine map: after subtracting an integer
/// shift and post-composing with a permutation that diagonalizes the
/// cubical directions, the matrix splits into
///   Lambda blocks  - 1x1 entries +-1, zero translation (cubical directions),
///   B0 blocks      - connected blocks carrying the non-integral translation,
///   BStrict blocks - non-cubical connected blocks with zero translation.
/// reconstruct() composes the recorded data back into the original map.
struct BlockDecomposition {
  int n = 0;
  std::vector<int> permutation;          // normal-order listing of original coords
  std::vector<long long> integer_shift;  // subtracted before classification
  RatMat post;                           // permutation matrix Q applied on the left
  std::vector<Block> blocks;             // Lambda, then B0, then BStrict

  RationalOrthoAffine reconstruct() const;
  int lambda_rank() const;
  bool all_lambda() const;
};

BlockDecomposition normal_form(const RationalOrthoAffine& t);

/// A d-cube of the standard cubulation: the coordinates it spans and the
/// integral base corner.
struct CubeSpec {
  std::vector<int> spanning;      // 0-based, ascending
  std::vector<long long> offset;  // length n
};

/// For T preserving no proper hypersurface (and not cubical), returns a
/// rational point in the open cube whose image has more than dim(cube)
/// non-integral coordinates.
///
/// The point is found on the grid {1/q, ..., (q-1)/q}^d with
/// q = max(2*denominator(A,b) + 1, n^2 + 2); the counting bound guarantees a
/// grid point misses every integrality hyperplane, and the search asserts
/// it. Throws std::domain_error when the cube's image lies inside the
/// hypersurface web (fewer than d+1 coordinates can ever be non-integral).
RatVec transverse_witness(const RationalOrthoAffine& t, const CubeSpec& cube);

struct IntegralTranslate {
  std::vector<long long> shift;  // T(base corner) - base corner
};

using GeneralTransverseResult = std::variant<RatVec, IntegralTranslate>;

/// General position check for maps that may preserve hypersurfaces: when the
/// cube spans only cubical directions and T maps its base corner to an
/// integral point, the image is an integral translate; otherwise a witness
/// point is produced as in transverse_witness.
GeneralTransverseResult general_transverse(const RationalOrthoAffine& t, const CubeSpec& cube);

/// All integer vectors z with |z|^2 <= D^2, compared exactly. Sorted
/// lexicographically.
std::vector<std::vector<long long>> enumerate_integral_points(int n, const Rational& radius);

/// Same enumeration with the bound given as a squared radius (useful when
/// the radius itself is irrational, e.g. all points of a fixed integral
/// squared norm).
std::vector<std::vector<long long>> enumerate_integral_points_sq(int n,
                                                                 const Rational& radius_sq);

}  // namespace cubical
