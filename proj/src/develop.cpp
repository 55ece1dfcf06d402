#include "cubical/develop.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cubical {

int Chart::dim() const {
  size_t c = corner_images.size();
  int d = 0;
  while ((size_t(1) << d) < c) ++d;
  return d;
}

bool Chart::is_valid() const {
  int d = dim();
  if (corner_images.size() != (size_t(1) << d)) return false;
  size_t n = corner_images[0].size();
  for (const auto& p : corner_images)
    if (p.size() != n) return false;
  // Each model axis must step by one fixed signed unit vector.
  std::set<size_t> used_axes;
  for (int a = 0; a < d; ++a) {
    std::vector<long long> step;
    for (size_t bits = 0; bits < corner_images.size(); ++bits) {
      if (bits & (size_t(1) << a)) continue;
      std::vector<long long> diff(n);
      for (size_t i = 0; i < n; ++i)
        diff[i] = corner_images[bits | (size_t(1) << a)][i] - corner_images[bits][i];
      if (step.empty())
        step = diff;
      else if (step != diff)
        return false;
    }
    size_t nonzero = n;
    for (size_t i = 0; i < n; ++i) {
      if (step[i] == 0) continue;
      if (nonzero != n || (step[i] != 1 && step[i] != -1)) return false;
      nonzero = i;
    }
    if (nonzero == n || !used_axes.insert(nonzero).second) return false;
  }
  return true;
}

RatVec Chart::map_point(const RatVec& model_point) const {
  int d = dim();
  size_t n = corner_images[0].size();
  RatVec out(n);
  for (size_t i = 0; i < n; ++i) out[i] = Rational(corner_images[0][i]);
  for (int a = 0; a < d; ++a) {
    for (size_t i = 0; i < n; ++i) {
      long long step = corner_images[size_t(1) << a][i] - corner_images[0][i];
      if (step != 0) out[i] += model_point[a] * Rational(step);
    }
  }
  return out;
}

Chart Chart::identity(const CellId& cell, int dim) {
  Chart c;
  c.cell = cell;
  for (size_t bits = 0; bits < (size_t(1) << dim); ++bits) {
    std::vector<long long> p(dim);
    for (int a = 0; a < dim; ++a) p[a] = (bits >> a) & 1;
    c.corner_images.push_back(p);
  }
  return c;
}

std::string frontier_reason_name(FrontierReason r) {
  switch (r) {
    case FrontierReason::Radius:
      return "radius";
    case FrontierReason::Boundary:
      return "boundary";
    case FrontierReason::Hypersurface:
      return "hypersurface";
    case FrontierReason::ChartConflict:
      return "chart_conflict";
    default:
      return "branching";
  }
}

std::string SphereClass::kind_name() const {
  switch (kind) {
    case Kind::StandardSphere:
      return "standard_sphere";
    case Kind::Circle:
      return "circle";
    default:
      return "not_a_sphere";
  }
}

namespace {

/// Corner images of a facet of a charted cube: the facet corner bits embed
/// into the cube's corner bits by inserting the fixed coordinate.
std::vector<std::vector<long long>> facet_corner_images(const Chart& chart, int axis, bool upper) {
  int d = chart.dim();
  std::vector<std::vector<long long>> out;
  for (size_t bits = 0; bits < (size_t(1) << (d - 1)); ++bits) {
    size_t low = bits & ((size_t(1) << (axis - 1)) - 1);
    size_t high = bits >> (axis - 1);
    size_t full = low | (size_t(upper ? 1 : 0) << (axis - 1)) | (high << axis);
    out.push_back(chart.corner_images[full]);
  }
  return out;
}

/// True when the image of the open facet meets the interior of an n-cube:
/// no image coordinate is identically integral on the facet.
bool facet_crosses(const RationalOrthoAffine& tau, const Chart& chart, int axis, bool upper) {
  auto corners = facet_corner_images(chart, axis, upper);
  int n = tau.n;
  // Affine data of tau restricted to the facet: value at the facet's base
  // corner plus gradients along the facet's axes.
  RatVec base(n);
  for (int i = 0; i < n; ++i) base[i] = Rational(corners[0][i]);
  RatVec at_base = tau.apply(base);
  int d = chart.dim();
  for (int j = 0; j < n; ++j) {
    if (!at_base[j].is_integer()) continue;
    bool constant = true;
    for (int a = 0; a < d - 1 && constant; ++a) {
      Rational g(0);
      for (int i = 0; i < n; ++i)
        g += tau.A[j][i] * Rational(corners[size_t(1) << a][i] - corners[0][i]);
      if (!g.is_zero()) constant = false;
    }
    if (constant) return false;
  }
  return true;
}

/// Chart of the neighbor cube across a shared facet. `other` is the
/// neighbor's incidence position of the facet (exactly one fixed axis).
Chart extend_chart(const CubeComplex& complex, const Chart& chart, int axis, bool upper,
                   const Incidence& other) {
  int n = chart.dim();
  auto f_corners = facet_corner_images(chart, axis, upper);

  // The facet image fixes exactly one coordinate; the neighbor occupies the
  // opposite side of that hyperplane from the charted cube.
  size_t fixed = 0;
  for (size_t i = 0; i < f_corners[0].size(); ++i) {
    bool constant = true;
    for (const auto& p : f_corners)
      if (p[i] != f_corners[0][i]) constant = false;
    if (constant) fixed = i;
  }
  long long face_value = f_corners[0][fixed];
  bool cube_above = false;  // does the charted cube occupy [face_value, face_value+1]?
  for (const auto& p : chart.corner_images)
    if (p[fixed] == face_value + 1) cube_above = true;
  long long step = cube_above ? -1 : 1;

  int other_axis = 0;
  bool other_upper = false;
  for (size_t j = 0; j < other.position.coords.size(); ++j)
    if (other.position.coords[j] != FaceSpec::kFree) {
      other_axis = static_cast<int>(j) + 1;
      other_upper = other.position.coords[j] == FaceSpec::kHi;
    }

  Chart out;
  out.cell = other.parent;
  out.corner_images.resize(size_t(1) << n);
  for (size_t bits = 0; bits < (size_t(1) << n); ++bits) {
    bool on_facet = (((bits >> (other_axis - 1)) & 1) != 0) == other_upper;
    size_t low = bits & ((size_t(1) << (other_axis - 1)) - 1);
    size_t high = (bits >> other_axis) << (other_axis - 1);
    size_t facet_bits = low | high;
    auto p = f_corners[facet_bits];
    if (!on_facet) p[fixed] += step;
    out.corner_images[bits] = p;
  }
  (void)complex;
  return out;
}

/// Closedness of the top-dimensional part: every ridge of a top simplex lies
/// in exactly two top simplices. With require_pure, lower simplices must all
/// be faces of top ones (a genuine closed pseudo-manifold).
bool link_is_closed(const SimplicialComplex& link, int top_dim, bool require_pure) {
  if (link.empty()) return false;
  if (require_pure && link.dim() != top_dim) return false;
  if (link.dim() < top_dim) return false;
  if (top_dim == 0) return link.vertex_count() == 2;
  std::map<std::vector<int>, int> ridge_count;
  std::set<std::vector<int>> below_top;
  bool has_top = false;
  for (const auto& s : link.simplices()) {
    if (static_cast<int>(s.size()) != top_dim + 1) continue;
    has_top = true;
    for (size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> r = s;
      r.erase(r.begin() + drop);
      ++ridge_count[r];
    }
    for (unsigned mask = 1; mask + 1 < (1u << s.size()); ++mask) {
      std::vector<int> sub;
      for (size_t b = 0; b < s.size(); ++b)
        if (mask & (1u << b)) sub.push_back(s[b]);
      below_top.insert(sub);
    }
  }
  if (!has_top) return false;
  if (require_pure)
    for (const auto& s : link.simplices()) {
      if (static_cast<int>(s.size()) == top_dim + 1) continue;
      if (below_top.count(s) == 0) return false;
    }
  for (const auto& [r, c] : ridge_count)
    if (c != 2) return false;
  return true;
}

}  // namespace

DevelopmentResult develop(const CubeComplex& complex, const Chart& seed,
                          const RationalOrthoAffine& tau, int radius) {
  auto npc = complex.check_npc();
  if (!npc.npc) throw std::invalid_argument("develop requires an NPC complex");
  if (radius < 1) throw std::invalid_argument("radius must be at least 1");
  int n = complex.dimension();
  if (tau.n != n) throw std::invalid_argument("trace dimension does not match the complex");
  if (!complex.has_cell(seed.cell) || complex.cell(seed.cell).dim != n)
    throw std::invalid_argument("seed must be an n-cube of the complex");
  if (!seed.is_valid() || seed.dim() != n) throw std::invalid_argument("seed chart is not a cube isometry");
  if (is_cubical_map(tau)) throw std::invalid_argument("cubical trace: nothing to develop");

  DevelopmentResult result;
  result.n = n;
  result.seed = seed.cell;
  result.radius = radius;
  result.charted[seed.cell] = seed;
  result.distance[seed.cell] = 0;

  std::set<FrontierEntry> frontier;
  std::deque<CellId> queue{seed.cell};
  while (!queue.empty()) {
    CellId eid = queue.front();
    queue.pop_front();
    const Chart& chart = result.charted.at(eid);
    int dist = result.distance.at(eid);
    for (const auto& facet : complex.cell(eid).facets) {
      int axis = facet.face.axis;
      bool upper = facet.face.upper;
      if (!facet_crosses(tau, chart, axis, upper)) {
        frontier.insert({facet.id, FrontierReason::Hypersurface});
        continue;
      }
      auto incidences = complex.facet_incidences(facet.id);
      if (incidences.size() == 1) {
        frontier.insert({facet.id, FrontierReason::Boundary});
        continue;
      }
      if (incidences.size() > 2) {
        frontier.insert({facet.id, FrontierReason::Branching});
        continue;
      }
      // Pick the incidence that is not the one we came through.
      const Incidence* other = nullptr;
      for (const auto& inc : incidences) {
        bool is_current = inc.parent == eid;
        if (is_current) {
          int fixed_axis = 0;
          bool fixed_upper = false;
          for (size_t j = 0; j < inc.position.coords.size(); ++j)
            if (inc.position.coords[j] != FaceSpec::kFree) {
              fixed_axis = static_cast<int>(j) + 1;
              fixed_upper = inc.position.coords[j] == FaceSpec::kHi;
            }
          is_current = fixed_axis == axis && fixed_upper == upper;
        }
        if (!is_current) other = &inc;
      }
      if (!other) continue;  // both incidences are this very face position

      Chart extended = extend_chart(complex, chart, axis, upper, *other);
      auto it = result.charted.find(other->parent);
      if (it != result.charted.end()) {
        if (!(it->second == extended))
          frontier.insert({facet.id, FrontierReason::ChartConflict});
        continue;
      }
      if (dist + 1 > radius) {
        frontier.insert({facet.id, FrontierReason::Radius});
        continue;
      }
      if (!extended.is_valid()) throw std::logic_error("extension produced an invalid chart");
      result.charted[other->parent] = extended;
      result.distance[other->parent] = dist + 1;
      queue.push_back(other->parent);
    }
  }
  result.frontier.assign(frontier.begin(), frontier.end());

  // Common link of regular points: in-cube directions joined with the
  // ascending link of the seed cube.
  result.common_link = SimplicialComplex::join(octahedral_sphere(n - 1), "dir:",
                                               complex.ascending_link(seed.cell), "up:");

  // Branch vertices: interior vertices of the charted region whose link in
  // the complex differs from the common link.
  std::set<CellId> vertices;
  for (const auto& [cid, chart] : result.charted) {
    for (size_t bits = 0; bits < (size_t(1) << n); ++bits) {
      std::vector<int> corner_bits;
      for (int a = 0; a < n; ++a) corner_bits.push_back((bits >> a) & 1);
      vertices.insert(complex.corner(cid, corner_bits));
    }
  }
  for (const auto& v : vertices) {
    bool interior = true;
    for (const auto& inc : complex.incidences_above(v)) {
      if (complex.cell(inc.parent).dim == n && result.charted.count(inc.parent) == 0)
        interior = false;
    }
    if (!interior) continue;
    auto link = complex.vertex_link(v);
    if (!link_is_closed(link, n - 1, false)) continue;
    if (!SimplicialComplex::isomorphic(link, result.common_link))
      result.branch_vertices.push_back(v);
  }
  std::sort(result.branch_vertices.begin(), result.branch_vertices.end());
  for (const auto& v : result.branch_vertices)
    result.link_class[v] = branch_link(complex, result, v);
  return result;
}

bool charts_compatible(const CubeComplex& complex, const DevelopmentResult& result) {
  std::set<CellId> conflicted;
  for (const auto& f : result.frontier)
    if (f.reason == FrontierReason::ChartConflict) conflicted.insert(f.cell);

  // Group charted-cube incidences by shared facet.
  std::map<CellId, std::vector<std::pair<CellId, FaceLabel>>> sides;
  for (const auto& [cid, chart] : result.charted)
    for (const auto& facet : complex.cell(cid).facets)
      sides[facet.id].push_back({cid, facet.face});

  for (const auto& [fid, incs] : sides) {
    if (conflicted.count(fid)) continue;
    std::vector<std::vector<std::vector<long long>>> images;
    for (const auto& [cid, face] : incs)
      images.push_back(facet_corner_images(result.charted.at(cid), face.axis, face.upper));
    for (size_t i = 1; i < images.size(); ++i)
      if (images[i] != images[0]) return false;
  }
  return true;
}

SphereClass classify_sphere(const SimplicialComplex& link, int m) {
  SphereClass out;
  out.counts = link.f_vector();
  if (m == 1) {
    auto cycle = link.as_single_cycle();
    if (!cycle) {
      out.detail = "not a single cycle";
      return out;
    }
    if (*cycle < 4) {
      out.detail = "cycle of length " + std::to_string(*cycle) + " violates the link condition";
      return out;
    }
    out.kind = SphereClass::Kind::Circle;
    out.k = *cycle;
    return out;
  }
  if (m < 1) throw std::invalid_argument("sphere dimension must be at least 1");
  out.m = m;
  if (link.dim() != m) {
    out.detail = "dimension " + std::to_string(link.dim()) + ", expected " + std::to_string(m);
    return out;
  }
  if (!link.is_connected()) {
    out.detail = "not connected";
    return out;
  }
  if (!link_is_closed(link, m, true)) {
    out.detail = "not a closed pseudo-manifold";
    return out;
  }
  auto expected = octahedral_sphere(m).f_vector();
  if (out.counts != expected) {
    out.detail = "simplex counts differ from the cross-polytope sphere";
    return out;
  }
  out.kind = SphereClass::Kind::StandardSphere;
  return out;
}

SphereClass branch_link(const CubeComplex& complex, const DevelopmentResult& result,
                        const CellId& v) {
  if (!std::binary_search(result.branch_vertices.begin(), result.branch_vertices.end(), v))
    throw std::invalid_argument("not a branch vertex: " + v);

  // Cells of the developed region: charted cubes and all their faces.
  std::set<CellId> region;
  for (const auto& [cid, chart] : result.charted) {
    region.insert(cid);
    const Cell& c = complex.cell(cid);
    long long total = 1;
    for (int i = 0; i < c.dim; ++i) total *= 3;
    for (long long code = 0; code < total; ++code) {
      FaceSpec spec;
      long long rest = code;
      for (int i = 0; i < c.dim; ++i) {
        int digit = rest % 3;
        rest /= 3;
        spec.coords.push_back(digit == 0 ? FaceSpec::kFree
                                         : (digit == 1 ? FaceSpec::kLo : FaceSpec::kHi));
      }
      region.insert(complex.face(cid, spec));
    }
  }

  std::vector<std::vector<std::string>> simplices;
  for (const auto& inc : complex.incidences_above(v))
    if (region.count(inc.parent)) simplices.push_back(complex.link_simplex_labels(inc));
  auto restricted = SimplicialComplex::from_simplices(simplices);
  return classify_sphere(restricted, result.n - 1);
}

bool IdentityReport::all_hold() const {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

IdentityReport simplex_count_identities(int m, const std::vector<long long>& f) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (static_cast<int>(f.size()) != m + 1)
    throw std::invalid_argument("expected m+1 simplex counts");
  for (long long x : f)
    if (x <= 0) throw std::invalid_argument("simplex counts must be positive");

  IdentityReport report;
  for (int k = 0; k <= m; ++k) {
    long long lhs = (1LL << (m - k)) * f[k];
    long long rhs = binomial(m + 1, k + 1) * f[m];
    report.checks.push_back({"incidence k=" + std::to_string(k), lhs == rhs});
  }
  report.checks.push_back({"edge bound", f[0] * (f[0] - 1) / 2 >= f[1]});
  report.checks.push_back({"facet bound", f[m] >= (1LL << (m + 1))});
  return report;
}

bool sphere_volume_identity(int m) {
  if (m < 1 || m > 6) throw std::invalid_argument("supported range is 1 <= m <= 6");
  auto sphere = octahedral_sphere(m);
  long long facets = 0;
  for (const auto& s : sphere.simplices())
    if (static_cast<int>(s.size()) == m + 1) ++facets;
  return facets == (1LL << (m + 1));
}

FactorSpec product_structure(const RationalOrthoAffine& tau) {
  if (is_cubical_map(tau))
    throw std::domain_error("cubical map: no non-trivial product structure");
  auto nf = normal_form(tau);
  FactorSpec spec;
  spec.lambda_rank = nf.lambda_rank();
  Factor b0;
  for (const auto& blk : nf.blocks) {
    if (blk.kind == BlockKind::Lambda) continue;
    if (blk.kind == BlockKind::B0) {
      b0.coords.insert(b0.coords.end(), blk.coords.begin(), blk.coords.end());
      continue;
    }
    Factor f;
    f.coords = blk.coords;
    f.dimension = static_cast<int>(blk.coords.size());
    f.standard = f.dimension != 2;
    spec.factors.push_back(f);
  }
  if (!b0.coords.empty()) {
    std::sort(b0.coords.begin(), b0.coords.end());
    b0.dimension = static_cast<int>(b0.coords.size());
    b0.standard = b0.dimension != 2;
    spec.factors.insert(spec.factors.begin(), b0);
  }
  return spec;
}

std::string DevelopmentResult::to_json_string() const {
  nlohmann::json j;
  j["n"] = n;
  j["seed"] = seed;
  j["radius"] = radius;
  nlohmann::json charted_json = nlohmann::json::array();
  for (const auto& [cid, chart] : charted) {
    nlohmann::json e;
    e["cell"] = cid;
    e["distance"] = distance.at(cid);
    e["corners"] = chart.corner_images;
    charted_json.push_back(e);
  }
  j["charted"] = charted_json;
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& v : branch_vertices) {
    const auto& sc = link_class.at(v);
    nlohmann::json e;
    e["vertex"] = v;
    nlohmann::json cls;
    cls["kind"] = sc.kind_name();
    if (sc.kind == SphereClass::Kind::Circle) cls["k"] = sc.k;
    if (sc.kind == SphereClass::Kind::StandardSphere) cls["m"] = sc.m;
    if (!sc.detail.empty()) cls["detail"] = sc.detail;
    cls["counts"] = sc.counts;
    e["link"] = cls;
    branches.push_back(e);
  }
  j["branch_vertices"] = branches;
  nlohmann::json fr = nlohmann::json::array();
  for (const auto& f : frontier)
    fr.push_back({{"cell", f.cell}, {"reason", frontier_reason_name(f.reason)}});
  j["frontier"] = fr;
  return j.dump(2) + "\n";
}

std::string development_dual_graph_dot(const CubeComplex& complex,
                                       const DevelopmentResult& result) {
  std::ostringstream os;
  os << "graph development {\n";
  for (const auto& [cid, chart] : result.charted)
    os << "  \"" << cid << "\" [label=\"" << cid << " d=" << result.distance.at(cid) << "\"];\n";
  std::map<CellId, std::vector<CellId>> by_facet;
  for (const auto& [cid, chart] : result.charted)
    for (const auto& facet : complex.cell(cid).facets) by_facet[facet.id].push_back(cid);
  std::set<std::pair<CellId, CellId>> emitted;
  for (const auto& [fid, cubes] : by_facet)
    for (size_t i = 0; i < cubes.size(); ++i)
      for (size_t j = i + 1; j < cubes.size(); ++j) {
        auto key = std::minmax(cubes[i], cubes[j]);
        if (cubes[i] != cubes[j] && emitted.insert(key).second)
          os << "  \"" << key.first << "\" -- \"" << key.second << "\";\n";
      }
  os << "}\n";
  return os.str();
}

}  // namespace cubical
