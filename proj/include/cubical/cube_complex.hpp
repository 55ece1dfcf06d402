#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubical/simplicial.hpp"

namespace cubical {

using CellId = std::string;

/// One of the 2k codimension-one faces of the model cube [0,1]^k, named by a
/// signed coordinate: axis in 1..k, upper = the face where that coordinate
/// is 1. Serialized as "+2", "-1".
struct FaceLabel {
  int axis = 1;
  bool upper = false;

  std::string str() const { return (upper ? "+" : "-") + std::to_string(axis); }
  static FaceLabel parse(const std::string& s);
  bool operator==(const FaceLabel& o) const { return axis == o.axis && upper == o.upper; }
  bool operator<(const FaceLabel& o) const {
    return axis != o.axis ? axis < o.axis : upper < o.upper;
  }
};

struct FacetRef {
  CellId id;
  FaceLabel face;
};

/// A cell of dimension k with its 2k facets.
///
/// The corner correspondence of each facet is the canonical one implied by
/// the face label: the facet's model cube [0,1]^(k-1) is identified with the
/// face of [0,1]^k by deleting the labeled coordinate and keeping the
/// remaining coordinates in order. All gluings arising in this project
/// (grids, cone planes, lattice-quotient tori, branched covers) are
/// expressible this way, and `validate` checks that the induced face poset
/// of every cell embeds the face lattice of its model cube.
struct Cell {
  CellId id;
  int dim = 0;
  std::vector<FacetRef> facets;
};

/// A position in the face lattice of [0,1]^k: each coordinate is free or
/// fixed at 0/1. All-free is the cell itself, all-fixed a corner.
struct FaceSpec {
  enum Coord : signed char { kFree = -1, kLo = 0, kHi = 1 };
  std::vector<signed char> coords;

  int free_count() const;
  bool operator<(const FaceSpec& o) const { return coords < o.coords; }
  bool operator==(const FaceSpec& o) const { return coords == o.coords; }
};

struct Violation {
  CellId cell;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

struct NpcVertexIssue {
  CellId vertex;
  std::string reason;  // "link not simplicial" or "link not flag"
};

struct NpcReport {
  bool npc = false;
  std::vector<NpcVertexIssue> offenders;
};

/// Link of a point in the interior of a positive-dimensional cell, carried
/// as the join of the octahedral sphere of in-cube directions with the
/// ascending link.
struct LinkReport {
  SimplicialComplex link;
  bool flag = false;
  struct JoinDecomposition {
    SimplicialComplex sphere_factor;    // directions inside the cell
    SimplicialComplex residual;         // ascending link
  };
  std::optional<JoinDecomposition> join_decomposition;
};

/// An incidence of a cell c inside a higher cell: c == face(parent, spec).
struct Incidence {
  CellId parent;
  FaceSpec position;
};

/// Finite combinatorial cube complex as a face poset with labeled facets.
///
/// Immutable after construction; all queries are const. Quotient complexes
/// (tori, branched covers) are supported: a cell may appear as several
/// distinct faces of the same higher cell, and incidences are counted with
/// multiplicity throughout.
class CubeComplex {
 public:
  CubeComplex(int dimension, std::vector<Cell> cells, bool surface_marker = false);

  int dimension() const { return dimension_; }
  bool surface_marker() const { return surface_marker_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(const CellId& id) const;
  bool has_cell(const CellId& id) const { return index_.count(id) > 0; }
  std::vector<CellId> cells_of_dim(int d) const;
  long long count_of_dim(int d) const;

  /// Structural invariant check: facet counts, labels, dimensions, and
  /// order-independence of two-step facet descent. Pure; safe to re-run.
  ValidationReport validate() const;

  /// The cell reached by fixing the spec's coordinates (descent through
  /// facets). Requires a validated complex.
  CellId face(const CellId& id, const FaceSpec& spec) const;

  /// Corner of a cell, bits[i] = value of coordinate i+1.
  CellId corner(const CellId& id, const std::vector<int>& bits) const;

  /// All incidences (parent, position) with face(parent, position) == id and
  /// parent of strictly larger dimension.
  const std::vector<Incidence>& incidences_above(const CellId& id) const;

  /// Link simplex contributed by one incidence: one vertex per fixed
  /// coordinate, labeled "<cell>@<face>" by the facet-incidence it passes
  /// through. May contain repeats for degenerate gluings.
  std::vector<std::string> link_simplex_labels(const Incidence& inc) const;

  /// Codimension-one incidences only: the n-cells attached across a facet.
  std::vector<Incidence> facet_incidences(const CellId& id) const;

  /// Link of a vertex: k-simplices are corners of (k+1)-cells at the vertex,
  /// with link vertices the edge-ends at it. Throws if not a 0-cell.
  SimplicialComplex vertex_link(const CellId& v) const;

  /// Ascending link of any cell: the simplicial realization of the poset of
  /// cells strictly containing it, with vertices the (dim+1)-incidences.
  SimplicialComplex ascending_link(const CellId& c) const;

  /// True when the link's natural cell structure is simplicial: no corner
  /// simplex degenerates and distinct incidences span distinct vertex sets.
  bool link_is_simplicial(const CellId& v) const;

  /// Gromov's criterion on every vertex: link simplicial and flag. Simple
  /// connectivity is the caller's hypothesis; this certifies NPC only.
  NpcReport check_npc() const;

  /// Cells with empty ascending link.
  std::vector<CellId> locally_maximal_cubes() const;

  /// Common link of interior points of a positive-dimensional cell:
  /// octahedral_sphere(dim-1) joined with the ascending link.
  LinkReport interior_point_link(const CellId& c) const;

  std::string to_json_string() const;
  static CubeComplex from_json_string(const std::string& text);

 private:
  void build_tables() const;
  int cell_index(const CellId& id) const;

  int dimension_;
  bool surface_marker_;
  std::vector<Cell> cells_;
  std::unordered_map<CellId, int> index_;

  // Lazily built face tables (complex is logically immutable).
  mutable bool tables_built_ = false;
  mutable std::vector<std::map<FaceSpec, CellId>> faces_of_;
  mutable std::unordered_map<CellId, std::vector<Incidence>> above_;
  struct LinkData {
    SimplicialComplex complex;
    bool simplicial = true;
  };
  LinkData link_of_cell(const CellId& c) const;
};

/// Axis-aligned grid patch: dims[i] cubes along axis i+1. Cell ids follow
/// "x<axes>:<coords>", e.g. "x12:3,4" for the square spanning axes 1,2 with
/// base corner (3,4) and "x:0,0" for a vertex.
CubeComplex grid_complex(const std::vector<int>& dims);

/// Id helpers shared by the generators.
CellId grid_cell_id(const std::vector<int>& axes, const std::vector<long long>& base);

}  // namespace cubical
