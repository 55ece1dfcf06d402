#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cubical/cube_complex.hpp"
#include "cubical/rational.hpp"

namespace cubical {

/// Closed-surface diagnostics for a 2-dimensional square complex: every edge
/// must lie in exactly two square incidences and every vertex link must be a
/// single cycle.
struct SurfaceReport {
  bool closed_surface = false;
  std::vector<std::string> problems;
  std::map<CellId, int> cone_orders;  // populated when closed_surface
  bool npc = false;                   // all cone orders >= 4
};

SurfaceReport check_square_surface(const CubeComplex& complex);

enum class ConeClass { Euclidean, QiHyperbolicPlane, Invalid };

struct ConeReport {
  std::map<CellId, int> cone_orders;
  long long euler_characteristic = 0;
  bool gauss_bonnet_holds = false;
  ConeClass classification = ConeClass::Invalid;
};

std::string cone_class_name(ConeClass c);

/// Radius-bounded patch of the plane cone of order n: n quarter-plane grids
/// glued cyclically along rays. The apex vertex is "v:apex"; its link is an
/// n-cycle, every other interior vertex is flat. Throws for n < 4 (the link
/// condition fails) or radius < 1.
CubeComplex build_cone_plane(int n, int radius);

/// Cycle length of every vertex link. Throws std::domain_error when some
/// link is not a single cycle.
std::map<CellId, int> cone_orders(const CubeComplex& surface);

/// Euler characteristic V - E + F and the combinatorial curvature identity
/// sum_v (4 - k_v) == 4 * chi.
std::pair<long long, bool> gauss_bonnet(const CubeComplex& surface);

/// Classification of the universal cover of a compact square surface:
/// all cone orders 4 -> Euclidean; any order >= 5 -> quasi-isometric to the
/// hyperbolic plane (compactness makes the singular set cobounded and the
/// angles bounded); any order < 4 -> Invalid. Throws when the complex is not
/// a closed surface.
ConeReport classify_universal_cover(const CubeComplex& surface);

/// One automorphism of a patch, as a bijection of cell ids.
using CellMap = std::map<CellId, CellId>;

struct SymmetryReport {
  int n = 0;
  long long automorphism_order = 0;        // |Aut| = 2n
  std::string isometry_group = "O(2)";     // the full metric symmetry group
  std::vector<CellMap> automorphisms;      // enumerated on the radius-2 patch
  bool group_closed = false;               // closure and inverses verified
  std::string note;
};

/// Symmetries of the order-n cone plane: |Aut| = 2n (dihedral), Isom = O(2).
/// The 2n automorphisms are enumerated exhaustively on a radius-2 patch and
/// verified to be cubical and to form a group. For n = 4 the patch is flat
/// and the automorphisms realize the point group O(2,Z) of order 8.
SymmetryReport cone_plane_symmetries(int n);

/// Pigeonhole bound on the power of an isometry needed to become cubical,
/// from a configuration of cone points with integral positions: for two
/// points the symmetry group embeds in the Klein four group (N = 2); for an
/// affinely spanning configuration, N = M! where M counts the integral
/// configurations realizing the pairwise squared distances with the first
/// point pinned at the origin. Collinear configurations of three or more
/// points and single points are rejected.
unsigned long long cubical_power_bound(const std::vector<std::array<long long, 2>>& cone_points);

/// The enumeration behind cubical_power_bound, exposed for verification.
std::vector<std::vector<std::array<long long, 2>>> enumerate_integral_configurations(
    const std::vector<std::array<long long, 2>>& cone_points);

}  // namespace cubical
