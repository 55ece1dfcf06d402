#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubical/cube_complex.hpp"
#include "cubical/isometry.hpp"

namespace cubical {

/// Chart of an n-cube: the images of its 2^n model corners on an integral
/// unit cube of Z^n. Corner index encodes the bits of the model corner,
/// bit i-1 = coordinate i.
struct Chart {
  CellId cell;
  std::vector<std::vector<long long>> corner_images;

  int dim() const;
  /// The assignment must be a cube isometry: corner differences along each
  /// model axis are a fixed signed unit vector.
  bool is_valid() const;
  /// Affine extension evaluated at a rational point of the model cube.
  RatVec map_point(const RatVec& model_point) const;
  /// Identity chart placing the cube on [0,1]^n at the origin.
  static Chart identity(const CellId& cell, int dim);

  bool operator==(const Chart& o) const {
    return cell == o.cell && corner_images == o.corner_images;
  }
};

enum class FrontierReason {
  Radius,        // extension would exceed the distance budget
  Boundary,      // facet with a single incidence (patch boundary)
  Hypersurface,  // facet image lies inside an integral hypersurface
  ChartConflict, // facet closes a loop with incompatible holonomy
  Branching,     // facet with three or more incidences
};

std::string frontier_reason_name(FrontierReason r);

struct FrontierEntry {
  CellId cell;  // the codimension-one face where development stopped
  FrontierReason reason;
  bool operator<(const FrontierEntry& o) const {
    return cell != o.cell ? cell < o.cell : reason < o.reason;
  }
};

/// Classification of the link of a branch vertex inside the developed
/// region. Circles are reported for 2-dimensional developments; in higher
/// dimension only the octahedral sphere passes.
struct SphereClass {
  enum class Kind { StandardSphere, Circle, NotASphere };
  Kind kind = Kind::NotASphere;
  int m = 0;                       // sphere dimension (StandardSphere)
  int k = 0;                       // cycle length (Circle)
  std::vector<long long> counts;   // simplex counts F_0..F_dim
  std::string detail;              // violated condition for NotASphere

  std::string kind_name() const;
};

struct DevelopmentResult {
  int n = 0;
  CellId seed;
  int radius = 0;
  std::map<CellId, Chart> charted;
  std::map<CellId, int> distance;          // extension distance from the seed
  std::vector<CellId> branch_vertices;     // sorted
  std::map<CellId, SphereClass> link_class;
  std::vector<FrontierEntry> frontier;     // sorted, deduplicated
  SimplicialComplex common_link;           // link away from branch vertices

  std::string to_json_string() const;
};

/// GraphViz rendering of the developed region's dual graph: charted cubes as
/// nodes, shared facets as edges.
std::string development_dual_graph_dot(const CubeComplex& complex,
                                       const DevelopmentResult& result);

/// Develops the trace tau across the complex from a seeded chart.
///
/// Charts extend across codimension-one faces whose image under tau meets
/// the interior of a top-dimensional cube, growing to saturation within the
/// given combinatorial radius. Faces whose image stays inside an integral
/// hypersurface, patch boundaries, over-branched faces, and holonomy
/// conflicts are recorded in the frontier. Interior vertices (all incident
/// n-cubes charted, closed link) whose link differs from the common link
/// Sigma_(n-1) * lk(seed) are the branch vertices.
///
/// Preconditions: the complex passes check_npc, the seed is an n-cube with a
/// valid chart, tau has matching dimension and is not cubical, radius >= 1.
DevelopmentResult develop(const CubeComplex& complex, const Chart& seed,
                          const RationalOrthoAffine& tau, int radius);

/// Verifies that every facet shared by two charted cubes induces the same
/// corner images from both sides, skipping facets recorded as chart
/// conflicts (where the developed region wraps a singular vertex and a
/// single-valued chart cannot exist).
bool charts_compatible(const CubeComplex& complex, const DevelopmentResult& result);

/// Classifies a simplicial complex expected to be a simplicial (m)-sphere
/// built from regular cells: for m = 1 a single cycle of length k >= 4 is
/// Circle(k); for m >= 2 the complex must be a connected closed
/// pseudo-manifold whose simplex counts match the cross-polytope exactly.
SphereClass classify_sphere(const SimplicialComplex& link, int m);

/// Link of a branch vertex intersected with the developed region,
/// classified by classify_sphere. Throws when v is not a branch vertex.
SphereClass branch_link(const CubeComplex& complex, const DevelopmentResult& result,
                        const CellId& v);

struct IdentityCheck {
  std::string name;
  bool holds = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_hold() const;
};

/// Counting identities for a candidate simplicial m-sphere with simplex
/// counts F_0..F_m: the incidence identities 2^(m-k) F_k = C(m+1,k+1) F_m,
/// the edge bound C(F_0,2) >= F_1, and the facet bound F_m >= 2^(m+1).
IdentityReport simplex_count_identities(int m, const std::vector<long long>& f);

/// Combinatorial form of vol(S^m) = 2^(m+1) vol(simplex): the boundary of
/// the (m+1)-cross-polytope tiles the m-sphere by exactly 2^(m+1) regular
/// simplices. Supported for 1 <= m <= 6.
bool sphere_volume_identity(int m);

struct Factor {
  int dimension = 0;
  std::vector<int> coords;    // original coordinates
  bool standard = false;      // true when dimension != 2
};

struct FactorSpec {
  int lambda_rank = 0;
  std::vector<Factor> factors;  // the B0 factor (if any) first, then strict blocks
};

/// Product structure of the developed region for a non-cubical trace: the
/// cube factor [0,1]^l from the cubical directions and one Euclidean factor
/// per block, flagged "standard" unless 2-dimensional (where a singular cone
/// metric is possible). Throws for cubical tau.
FactorSpec product_structure(const RationalOrthoAffine& tau);

}  // namespace cubical
