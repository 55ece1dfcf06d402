#include "cubical/cube_complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cubical {

namespace {

std::string join_ll(const std::vector<long long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

FaceLabel FaceLabel::parse(const std::string& s) {
  if (s.size() < 2 || (s[0] != '+' && s[0] != '-'))
    throw std::invalid_argument("bad face label: " + s);
  int axis = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad face label: " + s);
    axis = axis * 10 + (s[i] - '0');
  }
  if (axis < 1) throw std::invalid_argument("bad face label: " + s);
  return FaceLabel{axis, s[0] == '+'};
}

int FaceSpec::free_count() const {
  int c = 0;
  for (auto x : coords)
    if (x == kFree) ++c;
  return c;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) os << "[" << v.cell << "] " << v.message << "\n";
  return os.str();
}

CubeComplex::CubeComplex(int dimension, std::vector<Cell> cells, bool surface_marker)
    : dimension_(dimension), surface_marker_(surface_marker), cells_(std::move(cells)) {
  if (dimension < 0) throw std::invalid_argument("negative dimension");
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    if (!index_.emplace(cells_[i].id, i).second)
      throw std::invalid_argument("duplicate cell id: " + cells_[i].id);
  }
}

const Cell& CubeComplex::cell(const CellId& id) const {
  int i = cell_index(id);
  if (i < 0) throw std::invalid_argument("unknown cell id: " + id);
  return cells_[i];
}

int CubeComplex::cell_index(const CellId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

std::vector<CellId> CubeComplex::cells_of_dim(int d) const {
  std::vector<CellId> out;
  for (const auto& c : cells_)
    if (c.dim == d) out.push_back(c.id);
  std::sort(out.begin(), out.end());
  return out;
}

long long CubeComplex::count_of_dim(int d) const {
  long long n = 0;
  for (const auto& c : cells_)
    if (c.dim == d) ++n;
  return n;
}

ValidationReport CubeComplex::validate() const {
  ValidationReport report;
  auto flag = [&report](const CellId& id, const std::string& msg) {
    report.violations.push_back({id, msg});
  };

  int max_dim = 0;
  for (const auto& c : cells_) {
    max_dim = std::max(max_dim, c.dim);
    if (c.dim < 0) {
      flag(c.id, "negative cell dimension");
      continue;
    }
    if (c.dim > dimension_) flag(c.id, "cell dimension exceeds complex dimension");
    if (static_cast<int>(c.facets.size()) != 2 * c.dim) {
      flag(c.id, "facet count: expected " + std::to_string(2 * c.dim) + ", got " +
                     std::to_string(c.facets.size()));
      continue;
    }
    // Each model face must appear exactly once.
    std::vector<int> seen(2 * c.dim, 0);
    bool labels_ok = true;
    for (const auto& f : c.facets) {
      if (f.face.axis < 1 || f.face.axis > c.dim) {
        flag(c.id, "facet label out of range: " + f.face.str());
        labels_ok = false;
        continue;
      }
      int slot = 2 * (f.face.axis - 1) + (f.face.upper ? 1 : 0);
      if (seen[slot]++) {
        flag(c.id, "duplicate facet label: " + f.face.str());
        labels_ok = false;
      }
      int fi = cell_index(f.id);
      if (fi < 0) {
        flag(c.id, "facet references unknown cell: " + f.id);
        labels_ok = false;
      } else if (cells_[fi].dim != c.dim - 1) {
        flag(c.id, "facet " + f.id + " has dimension " + std::to_string(cells_[fi].dim) +
                       ", expected " + std::to_string(c.dim - 1));
        labels_ok = false;
      }
    }
    if (!labels_ok) continue;

    // Two-step descent must not depend on the order of fixed coordinates;
    // by induction this embeds the whole face lattice of the model cube.
    auto facet_of = [this](const Cell& cell, int axis, bool upper) -> const Cell* {
      for (const auto& f : cell.facets)
        if (f.face.axis == axis && f.face.upper == upper) {
          int i = cell_index(f.id);
          return i < 0 ? nullptr : &cells_[i];
        }
      return nullptr;
    };
    for (int i = 1; i <= c.dim; ++i)
      for (int j = i + 1; j <= c.dim; ++j)
        for (int ei = 0; ei < 2; ++ei)
          for (int ej = 0; ej < 2; ++ej) {
            const Cell* ci = facet_of(c, i, ei);
            const Cell* cj = facet_of(c, j, ej);
            if (!ci || !cj) continue;
            // After deleting coordinate i, coordinate j becomes j-1.
            const Cell* via_i = facet_of(*ci, j - 1, ej);
            const Cell* via_j = facet_of(*cj, i, ei);
            if (!via_i || !via_j || via_i->id != via_j->id) {
              flag(c.id, "inconsistent corner correspondence on axes " + std::to_string(i) +
                             "," + std::to_string(j));
            }
          }
  }
  if (!cells_.empty() && max_dim != dimension_)
    flag("", "declared dimension " + std::to_string(dimension_) +
                 " but maximal cell dimension is " + std::to_string(max_dim));
  return report;
}

void CubeComplex::build_tables() const {
  if (tables_built_) return;
  auto report = validate();
  if (!report.ok())
    throw std::invalid_argument("complex fails validation:\n" + report.summary());

  // Process cells by dimension so facet tables exist before parents need them.
  std::vector<int> order(cells_.size());
  for (size_t i = 0; i < cells_.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [this](int a, int b) { return cells_[a].dim < cells_[b].dim; });

  faces_of_.assign(cells_.size(), {});
  for (int ci : order) {
    const Cell& c = cells_[ci];
    int k = c.dim;
    // Enumerate all face specs in base-3.
    std::vector<signed char> spec(k, FaceSpec::kFree);
    long long total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    for (long long code = 0; code < total; ++code) {
      long long rest = code;
      for (int i = 0; i < k; ++i) {
        int digit = rest % 3;
        rest /= 3;
        spec[i] = digit == 0 ? FaceSpec::kFree : (digit == 1 ? FaceSpec::kLo : FaceSpec::kHi);
      }
      FaceSpec fs{spec};
      int first_fixed = -1;
      for (int i = 0; i < k; ++i)
        if (spec[i] != FaceSpec::kFree) {
          first_fixed = i;
          break;
        }
      if (first_fixed < 0) {
        faces_of_[ci][fs] = c.id;
        continue;
      }
      bool upper = spec[first_fixed] == FaceSpec::kHi;
      CellId facet_id;
      for (const auto& f : c.facets)
        if (f.face.axis == first_fixed + 1 && f.face.upper == upper) facet_id = f.id;
      FaceSpec sub;
      sub.coords = spec;
      sub.coords.erase(sub.coords.begin() + first_fixed);
      faces_of_[ci][fs] = faces_of_[cell_index(facet_id)].at(sub);
    }
  }

  above_.clear();
  for (size_t ci = 0; ci < cells_.size(); ++ci) {
    for (const auto& [spec, child] : faces_of_[ci]) {
      if (spec.free_count() == cells_[ci].dim) continue;  // the cell itself
      above_[child].push_back({cells_[ci].id, spec});
    }
  }
  for (auto& [id, incs] : above_) {
    std::sort(incs.begin(), incs.end(), [](const Incidence& a, const Incidence& b) {
      return a.parent != b.parent ? a.parent < b.parent : a.position < b.position;
    });
  }
  tables_built_ = true;
}

CellId CubeComplex::face(const CellId& id, const FaceSpec& spec) const {
  build_tables();
  int ci = cell_index(id);
  if (ci < 0) throw std::invalid_argument("unknown cell id: " + id);
  auto it = faces_of_[ci].find(spec);
  if (it == faces_of_[ci].end()) throw std::invalid_argument("bad face spec for cell " + id);
  return it->second;
}

CellId CubeComplex::corner(const CellId& id, const std::vector<int>& bits) const {
  FaceSpec spec;
  for (int b : bits) spec.coords.push_back(b ? FaceSpec::kHi : FaceSpec::kLo);
  return face(id, spec);
}

const std::vector<Incidence>& CubeComplex::incidences_above(const CellId& id) const {
  build_tables();
  static const std::vector<Incidence> kEmpty;
  auto it = above_.find(id);
  return it == above_.end() ? kEmpty : it->second;
}

std::vector<Incidence> CubeComplex::facet_incidences(const CellId& id) const {
  int d = cell(id).dim;
  std::vector<Incidence> out;
  for (const auto& inc : incidences_above(id))
    if (cell(inc.parent).dim == d + 1) out.push_back(inc);
  return out;
}

std::vector<std::string> CubeComplex::link_simplex_labels(const Incidence& inc) const {
  build_tables();
  const FaceSpec& phi = inc.position;
  int pi = cell_index(inc.parent);
  if (pi < 0) throw std::invalid_argument("unknown cell id: " + inc.parent);
  std::vector<std::string> simplex;
  for (size_t j = 0; j < phi.coords.size(); ++j) {
    if (phi.coords[j] == FaceSpec::kFree) continue;
    FaceSpec freed = phi;
    freed.coords[j] = FaceSpec::kFree;
    CellId dj = faces_of_[pi].at(freed);
    // Model coordinate of j inside dj: its rank among the freed axes.
    int rank = 0;
    for (size_t t = 0; t <= j; ++t)
      if (freed.coords[t] == FaceSpec::kFree) ++rank;
    FaceLabel label{rank, phi.coords[j] == FaceSpec::kHi};
    simplex.push_back(dj + "@" + label.str());
  }
  return simplex;
}

CubeComplex::LinkData CubeComplex::link_of_cell(const CellId& c) const {
  build_tables();
  LinkData data;
  std::vector<std::vector<std::string>> simplices;
  std::map<size_t, long long> incidence_count_by_size;
  for (const auto& inc : incidences_above(c)) {
    auto simplex = link_simplex_labels(inc);
    ++incidence_count_by_size[simplex.size()];
    std::set<std::string> dedup(simplex.begin(), simplex.end());
    if (dedup.size() != simplex.size()) {
      data.simplicial = false;
      simplex.assign(dedup.begin(), dedup.end());
    }
    simplices.push_back(simplex);
  }
  data.complex = SimplicialComplex::from_simplices(simplices);

  // Distinct incidences must span distinct vertex sets.
  std::map<size_t, std::set<std::vector<std::string>>> distinct;
  for (auto& s : simplices) {
    std::sort(s.begin(), s.end());
    distinct[s.size()].insert(s);
  }
  for (const auto& [size, count] : incidence_count_by_size)
    if (static_cast<long long>(distinct[size].size()) != count) data.simplicial = false;

  return data;
}

SimplicialComplex CubeComplex::vertex_link(const CellId& v) const {
  if (cell(v).dim != 0) throw std::invalid_argument("vertex_link requires a 0-cell: " + v);
  return link_of_cell(v).complex;
}

SimplicialComplex CubeComplex::ascending_link(const CellId& c) const {
  cell(c);  // existence check
  return link_of_cell(c).complex;
}

bool CubeComplex::link_is_simplicial(const CellId& v) const { return link_of_cell(v).simplicial; }

NpcReport CubeComplex::check_npc() const {
  build_tables();  // throws on invalid complexes
  NpcReport report;
  report.npc = true;
  for (const auto& c : cells_) {
    if (c.dim != 0) continue;
    auto link = link_of_cell(c.id);
    if (!link.simplicial) {
      report.npc = false;
      report.offenders.push_back({c.id, "link not simplicial"});
    } else if (!link.complex.is_flag()) {
      report.npc = false;
      report.offenders.push_back({c.id, "link not flag"});
    }
  }
  std::sort(report.offenders.begin(), report.offenders.end(),
            [](const NpcVertexIssue& a, const NpcVertexIssue& b) { return a.vertex < b.vertex; });
  return report;
}

std::vector<CellId> CubeComplex::locally_maximal_cubes() const {
  build_tables();
  std::vector<CellId> out;
  for (const auto& c : cells_)
    if (incidences_above(c.id).empty()) out.push_back(c.id);
  std::sort(out.begin(), out.end());
  return out;
}

LinkReport CubeComplex::interior_point_link(const CellId& c) const {
  int n = cell(c).dim;
  if (n < 1)
    throw std::invalid_argument("interior_point_link requires dim >= 1; use vertex_link");
  LinkReport report;
  SimplicialComplex sphere = octahedral_sphere(n - 1);
  SimplicialComplex asc = ascending_link(c);
  report.link = SimplicialComplex::join(sphere, "dir:", asc, "up:");
  report.flag = report.link.is_flag();
  report.join_decomposition = LinkReport::JoinDecomposition{sphere, asc};
  return report;
}

std::string CubeComplex::to_json_string() const {
  nlohmann::json j;
  j["dimension"] = dimension_;
  if (surface_marker_) j["surface"] = true;
  std::vector<int> order(cells_.size());
  for (size_t i = 0; i < cells_.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [this](int a, int b) { return cells_[a].id < cells_[b].id; });
  nlohmann::json cells = nlohmann::json::array();
  for (int ci : order) {
    const Cell& c = cells_[ci];
    nlohmann::json jc;
    jc["id"] = c.id;
    jc["dim"] = c.dim;
    auto facets = c.facets;
    std::sort(facets.begin(), facets.end(), [](const FacetRef& a, const FacetRef& b) {
      return a.face < b.face;
    });
    nlohmann::json jf = nlohmann::json::array();
    for (const auto& f : facets) jf.push_back({{"face", f.face.str()}, {"id", f.id}});
    jc["facets"] = jf;
    cells.push_back(jc);
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

CubeComplex CubeComplex::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object() || !j.contains("dimension") || !j.contains("cells"))
    throw std::invalid_argument("complex JSON must carry 'dimension' and 'cells'");
  int dim = j.at("dimension").get<int>();
  bool surface = j.value("surface", false);
  std::vector<Cell> cells;
  for (const auto& jc : j.at("cells")) {
    Cell c;
    c.id = jc.at("id").get<std::string>();
    c.dim = jc.at("dim").get<int>();
    for (const auto& jf : jc.at("facets"))
      c.facets.push_back({jf.at("id").get<std::string>(),
                          FaceLabel::parse(jf.at("face").get<std::string>())});
    cells.push_back(std::move(c));
  }
  return CubeComplex(dim, std::move(cells), surface);
}

CellId grid_cell_id(const std::vector<int>& axes, const std::vector<long long>& base) {
  std::string s = "x";
  for (int a : axes) s += std::to_string(a);
  return s + ":" + join_ll(base);
}

CubeComplex grid_complex(const std::vector<int>& dims) {
  int n = static_cast<int>(dims.size());
  if (n < 1 || n > 9) throw std::invalid_argument("grid dimension must be 1..9");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("grid extent must be positive");

  std::vector<Cell> cells;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> axes;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) axes.push_back(i + 1);
    // Base corners range over one fewer step along spanned axes.
    std::vector<long long> base(n, 0);
    while (true) {
      Cell c;
      c.id = grid_cell_id(axes, base);
      c.dim = static_cast<int>(axes.size());
      for (int r = 0; r < c.dim; ++r) {
        int axis = axes[r];
        std::vector<int> sub_axes = axes;
        sub_axes.erase(sub_axes.begin() + r);
        for (int upper = 0; upper < 2; ++upper) {
          auto sub_base = base;
          sub_base[axis - 1] += upper;
          c.facets.push_back({grid_cell_id(sub_axes, sub_base), FaceLabel{r + 1, upper == 1}});
        }
      }
      cells.push_back(std::move(c));
      int i = 0;
      for (; i < n; ++i) {
        long long limit = dims[i] - ((mask >> i) & 1);
        if (base[i] < limit) {
          ++base[i];
          break;
        }
        base[i] = 0;
      }
      if (i == n) break;
    }
  }
  return CubeComplex(n, std::move(cells));
}

}  // namespace cubical
