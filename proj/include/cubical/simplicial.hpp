#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cubical {

/// Finite abstract simplicial complex over string-labeled vertices.
///
/// Simplices are stored as sorted vertex-index sets, closed under taking
/// subsets. The empty simplex is not stored; a complex with no vertices is
/// the empty complex.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Builds the downward closure of the given simplices (each a set of
  /// vertex labels). Labels may repeat across simplices; within one simplex
  /// repeated labels throw std::invalid_argument.
  static SimplicialComplex from_simplices(const std::vector<std::vector<std::string>>& simplices);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::set<std::vector<int>>& simplices() const { return simplices_; }

  bool empty() const { return vertices_.empty(); }
  bool contains(const std::vector<std::string>& simplex) const;

  /// Dimension of the complex; -1 when empty.
  int dim() const;

  /// f-vector: counts of k-simplices for k = 0..dim().
  std::vector<long long> f_vector() const;

  /// Edges of the 1-skeleton as index pairs.
  std::vector<std::pair<int, int>> edges() const;

  /// True iff every clique of the 1-skeleton spans a simplex. Checked on
  /// maximal cliques; downward closure covers the rest.
  bool is_flag() const;

  /// If the complex is a single cycle graph (every vertex in exactly two
  /// edges, connected, no higher simplices), returns its length.
  std::optional<int> as_single_cycle() const;

  /// True iff the 1-skeleton is connected (empty complex counts as connected).
  bool is_connected() const;

  /// Join: simplices are unions of a simplex from each side (or one side
  /// alone). Vertex labels are prefixed to keep the two sides disjoint.
  static SimplicialComplex join(const SimplicialComplex& a, const std::string& prefix_a,
                                const SimplicialComplex& b, const std::string& prefix_b);

  /// Backtracking isomorphism test; fine for the small links this project
  /// handles.
  static bool isomorphic(const SimplicialComplex& a, const SimplicialComplex& b);

  /// GraphViz rendering of the 1-skeleton.
  std::string to_dot(const std::string& name = "link") const;

 private:
  int vertex_index(const std::string& label) const;
  std::vector<std::string> vertices_;          // sorted
  std::set<std::vector<int>> simplices_;       // sorted index vectors, closed downward
};

/// Boundary complex of the (m+1)-dimensional cross-polytope: the standard
/// simplicial m-sphere, 2(m+1) vertices, 2^(m+1) facets. m = -1 gives the
/// empty complex.
SimplicialComplex octahedral_sphere(int m);

}  // namespace cubical
