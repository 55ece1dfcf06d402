#include "cubical/cone.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>

#include "cubical/isometry.hpp"

namespace cubical {

SurfaceReport check_square_surface(const CubeComplex& complex) {
  SurfaceReport report;
  auto validation = complex.validate();
  if (!validation.ok()) {
    report.problems.push_back("complex fails validation");
    return report;
  }
  if (complex.dimension() != 2) {
    report.problems.push_back("surface must be 2-dimensional");
    return report;
  }
  bool ok = true;
  for (const auto& c : complex.cells()) {
    if (c.dim != 1) continue;
    auto incs = complex.facet_incidences(c.id);
    if (incs.size() != 2) {
      report.problems.push_back("edge " + c.id + " lies in " + std::to_string(incs.size()) +
                                " squares, expected 2");
      ok = false;
    }
  }
  for (const auto& c : complex.cells()) {
    if (c.dim != 0) continue;
    auto link = complex.vertex_link(c.id);
    auto cycle = link.as_single_cycle();
    if (!cycle) {
      report.problems.push_back("vertex " + c.id + " link is not a single cycle");
      ok = false;
      continue;
    }
    report.cone_orders[c.id] = *cycle;
  }
  report.closed_surface = ok;
  if (ok) {
    report.npc = true;
    for (const auto& [v, k] : report.cone_orders)
      if (k < 4) report.npc = false;
  }
  return report;
}

std::string cone_class_name(ConeClass c) {
  switch (c) {
    case ConeClass::Euclidean:
      return "euclidean";
    case ConeClass::QiHyperbolicPlane:
      return "qi_hyperbolic_plane";
    default:
      return "invalid";
  }
}

CubeComplex build_cone_plane(int n, int radius) {
  if (n < 4) throw std::invalid_argument("cone order must be at least 4");
  if (radius < 1) throw std::invalid_argument("radius must be at least 1");

  // Quarter-plane grids q = 0..n-1; the y-axis ray of quarter q is the
  // x-axis ray of quarter q+1. Ray q carries the identified points
  // (q, 0, t) == (q+1, t, 0); the apex is shared by all quarters.
  auto vertex_id = [&](int q, long long i, long long j) -> CellId {
    if (i == 0 && j == 0) return "v:apex";
    if (i == 0) return "v:ray:" + std::to_string(q) + ":" + std::to_string(j);
    if (j == 0) return "v:ray:" + std::to_string((q + n - 1) % n) + ":" + std::to_string(i);
    return "v:" + std::to_string(q) + ":" + std::to_string(i) + "," + std::to_string(j);
  };
  auto hedge_id = [&](int q, long long i, long long j) -> CellId {
    // Horizontal edge (i,j)->(i+1,j) of quarter q.
    if (j == 0) return "e:ray:" + std::to_string((q + n - 1) % n) + ":" + std::to_string(i);
    return "e:h:" + std::to_string(q) + ":" + std::to_string(i) + "," + std::to_string(j);
  };
  auto vedge_id = [&](int q, long long i, long long j) -> CellId {
    // Vertical edge (i,j)->(i,j+1) of quarter q.
    if (i == 0) return "e:ray:" + std::to_string(q) + ":" + std::to_string(j);
    return "e:v:" + std::to_string(q) + ":" + std::to_string(i) + "," + std::to_string(j);
  };

  std::vector<Cell> cells;
  std::set<CellId> emitted;
  auto emit = [&](Cell c) {
    if (emitted.insert(c.id).second) cells.push_back(std::move(c));
  };

  for (int q = 0; q < n; ++q) {
    for (long long i = 0; i <= radius; ++i)
      for (long long j = 0; j <= radius; ++j) emit({vertex_id(q, i, j), 0, {}});
    for (long long i = 0; i < radius; ++i)
      for (long long j = 0; j <= radius; ++j)
        emit({hedge_id(q, i, j),
              1,
              {{vertex_id(q, i, j), {1, false}}, {vertex_id(q, i + 1, j), {1, true}}}});
    for (long long i = 0; i <= radius; ++i)
      for (long long j = 0; j < radius; ++j)
        emit({vedge_id(q, i, j),
              1,
              {{vertex_id(q, i, j), {1, false}}, {vertex_id(q, i, j + 1), {1, true}}}});
    for (long long i = 0; i < radius; ++i)
      for (long long j = 0; j < radius; ++j)
        emit({"s:" + std::to_string(q) + ":" + std::to_string(i) + "," + std::to_string(j),
              2,
              {{vedge_id(q, i, j), {1, false}},
               {vedge_id(q, i + 1, j), {1, true}},
               {hedge_id(q, i, j), {2, false}},
               {hedge_id(q, i, j + 1), {2, true}}}});
  }
  return CubeComplex(2, std::move(cells));
}

std::map<CellId, int> cone_orders(const CubeComplex& surface) {
  auto report = check_square_surface(surface);
  if (!report.closed_surface) {
    std::string detail;
    for (const auto& p : report.problems) detail += p + "; ";
    throw std::domain_error("not a closed square surface: " + detail);
  }
  return report.cone_orders;
}

std::pair<long long, bool> gauss_bonnet(const CubeComplex& surface) {
  auto orders = cone_orders(surface);
  long long v = surface.count_of_dim(0);
  long long e = surface.count_of_dim(1);
  long long f = surface.count_of_dim(2);
  long long chi = v - e + f;
  long long curvature = 0;
  for (const auto& [id, k] : orders) curvature += 4 - k;
  return {chi, curvature == 4 * chi};
}

ConeReport classify_universal_cover(const CubeComplex& surface) {
  ConeReport report;
  report.cone_orders = cone_orders(surface);
  auto [chi, holds] = gauss_bonnet(surface);
  report.euler_characteristic = chi;
  report.gauss_bonnet_holds = holds;
  bool npc = true, singular = false;
  for (const auto& [v, k] : report.cone_orders) {
    if (k < 4) npc = false;
    if (k >= 5) singular = true;
  }
  if (!npc)
    report.classification = ConeClass::Invalid;
  else if (singular)
    report.classification = ConeClass::QiHyperbolicPlane;
  else
    report.classification = ConeClass::Euclidean;
  return report;
}

namespace {

/// Exhaustive automorphism enumeration for complexes whose cells are
/// determined by their vertex sets (true for the embedded patches used
/// here). An automorphism is a vertex bijection mapping cells to cells of
/// the same dimension; facet structure is re-verified afterwards.
std::vector<CellMap> enumerate_automorphisms(const CubeComplex& complex) {
  std::vector<CellId> vertex_ids = complex.cells_of_dim(0);
  int nv = static_cast<int>(vertex_ids.size());
  std::map<CellId, int> vindex;
  for (int i = 0; i < nv; ++i) vindex[vertex_ids[i]] = i;

  // Cells as sorted vertex-index sets; bail out if a vertex set repeats.
  std::map<std::vector<int>, CellId> cell_by_vertices;
  std::vector<std::pair<std::vector<int>, int>> cell_sets;  // (vertices, dim)
  for (const auto& c : complex.cells()) {
    std::vector<int> vs;
    int corners = 1 << c.dim;
    for (int bits = 0; bits < corners; ++bits) {
      std::vector<int> corner_bits;
      for (int b = 0; b < c.dim; ++b) corner_bits.push_back((bits >> b) & 1);
      vs.push_back(vindex.at(complex.corner(c.id, corner_bits)));
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (static_cast<int>(vs.size()) != corners)
      throw std::domain_error("cell " + c.id + " has repeated corners; enumeration unsupported");
    if (!cell_by_vertices.emplace(vs, c.id).second)
      throw std::domain_error("two cells share a vertex set; enumeration unsupported");
    cell_sets.emplace_back(vs, c.dim);
  }

  // Adjacency and per-vertex incidence profile for pruning.
  std::vector<std::set<int>> adj(nv);
  std::vector<std::vector<int>> profile(nv);
  for (const auto& [vs, dim] : cell_sets) {
    if (dim == 1)
      for (int a : vs)
        for (int b : vs)
          if (a != b) adj[a].insert(b);
    for (int a : vs) profile[a].push_back(dim);
  }
  for (auto& p : profile) std::sort(p.begin(), p.end());

  // Match vertices in BFS order from vertex 0 so adjacency constrains early.
  std::vector<int> order;
  {
    std::vector<bool> seen(nv, false);
    for (int root = 0; root < nv; ++root) {
      if (seen[root]) continue;
      std::vector<int> queue{root};
      seen[root] = true;
      for (size_t h = 0; h < queue.size(); ++h) {
        order.push_back(queue[h]);
        for (int u : adj[queue[h]])
          if (!seen[u]) {
            seen[u] = true;
            queue.push_back(u);
          }
      }
    }
  }

  std::vector<CellMap> found;
  std::vector<int> map(nv, -1), used(nv, 0);
  std::function<void(int)> extend = [&](int pos) {
    if (pos == nv) {
      // Vertex bijection complete; require every cell to map to a cell.
      CellMap cm;
      for (const auto& [vs, dim] : cell_sets) {
        std::vector<int> img;
        for (int v : vs) img.push_back(map[v]);
        std::sort(img.begin(), img.end());
        auto it = cell_by_vertices.find(img);
        if (it == cell_by_vertices.end()) return;
        cm[cell_by_vertices.at(vs)] = it->second;
      }
      // Facet structure must be preserved cell by cell.
      for (const auto& c : complex.cells()) {
        std::set<CellId> lhs, rhs;
        for (const auto& f : c.facets) lhs.insert(cm.at(f.id));
        for (const auto& f : complex.cell(cm.at(c.id)).facets) rhs.insert(f.id);
        if (lhs != rhs) return;
      }
      found.push_back(std::move(cm));
      return;
    }
    int v = order[pos];
    for (int w = 0; w < nv; ++w) {
      if (used[w] || profile[v] != profile[w]) continue;
      bool ok = true;
      for (int u : adj[v]) {
        if (map[u] < 0) continue;
        if (adj[w].count(map[u]) == 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      extend(pos + 1);
      map[v] = -1;
      used[w] = 0;
    }
  };
  extend(0);
  return found;
}

CellMap compose_maps(const CellMap& outer, const CellMap& inner) {
  CellMap out;
  for (const auto& [k, v] : inner) out[k] = outer.at(v);
  return out;
}

}  // namespace

SymmetryReport cone_plane_symmetries(int n) {
  if (n < 4) throw std::invalid_argument("cone order must be at least 4");
  SymmetryReport report;
  report.n = n;
  report.automorphism_order = 2LL * n;

  CubeComplex patch = build_cone_plane(n, 2);
  report.automorphisms = enumerate_automorphisms(patch);

  // Closure and inverses on the enumerated set.
  std::set<CellMap> all(report.automorphisms.begin(), report.automorphisms.end());
  bool closed = true;
  for (const auto& f : report.automorphisms)
    for (const auto& g : report.automorphisms)
      if (all.count(compose_maps(f, g)) == 0) closed = false;
  for (const auto& f : report.automorphisms) {
    CellMap inv;
    for (const auto& [k, v] : f) inv[v] = k;
    if (all.count(inv) == 0) closed = false;
  }
  report.group_closed = closed;
  if (n == 4)
    report.note = "flat plane: the automorphisms realize the point group O(2,Z) of order 8";
  return report;
}

std::vector<std::vector<std::array<long long, 2>>> enumerate_integral_configurations(
    const std::vector<std::array<long long, 2>>& pts) {
  size_t m = pts.size();
  auto dist2 = [&](size_t i, size_t j) {
    long long dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1];
    return dx * dx + dy * dy;
  };

  // Candidates per point: integral vectors at the right distance from the
  // pinned origin.
  std::vector<std::vector<std::array<long long, 2>>> candidates(m);
  candidates[0] = {{0, 0}};
  for (size_t i = 1; i < m; ++i) {
    long long d2 = dist2(0, i);
    for (const auto& z : enumerate_integral_points_sq(2, Rational(d2)))
      if (z[0] * z[0] + z[1] * z[1] == d2) candidates[i].push_back({z[0], z[1]});
  }

  std::vector<std::vector<std::array<long long, 2>>> configs;
  std::vector<std::array<long long, 2>> current(m);
  current[0] = {0, 0};
  std::function<void(size_t)> place = [&](size_t i) {
    if (i == m) {
      configs.push_back(current);
      return;
    }
    for (const auto& w : candidates[i]) {
      bool ok = true;
      for (size_t j = 1; j < i; ++j) {
        long long dx = w[0] - current[j][0], dy = w[1] - current[j][1];
        if (dx * dx + dy * dy != dist2(i, j)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        current[i] = w;
        place(i + 1);
      }
    }
  };
  place(1);
  return configs;
}

unsigned long long cubical_power_bound(const std::vector<std::array<long long, 2>>& cone_points) {
  if (cone_points.size() < 2)
    throw std::invalid_argument(
        "a single cone point has isometry group O(2); no finite power bound exists");
  if (cone_points.size() == 2) return 2;  // subgroup of the Klein four group

  bool spanning = false;
  for (size_t i = 1; i < cone_points.size() && !spanning; ++i)
    for (size_t j = i + 1; j < cone_points.size() && !spanning; ++j) {
      long long ux = cone_points[i][0] - cone_points[0][0];
      long long uy = cone_points[i][1] - cone_points[0][1];
      long long vx = cone_points[j][0] - cone_points[0][0];
      long long vy = cone_points[j][1] - cone_points[0][1];
      if (ux * vy - uy * vx != 0) spanning = true;
    }
  if (!spanning) throw std::invalid_argument("collinear cone points are rejected");

  auto configs = enumerate_integral_configurations(cone_points);
  unsigned long long n = 1;
  for (unsigned long long k = 2; k <= configs.size(); ++k) {
    if (n > ULLONG_MAX / k) throw std::overflow_error("configuration factorial overflows");
    n *= k;
  }
  return n;
}

}  // namespace cubical
