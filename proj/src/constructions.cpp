#include "cubical/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "cubical/cone.hpp"
#include "json.hpp"

namespace cubical {

namespace {

long long det2(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }

std::string coords_str(Vec2 v) { return std::to_string(v[0]) + "," + std::to_string(v[1]); }
CellId torus_vertex_id(Vec2 v) { return "x:" + coords_str(v); }
CellId torus_edge_id(int axis, Vec2 v) { return "x" + std::to_string(axis) + ":" + coords_str(v); }
CellId torus_square_id(Vec2 v) { return "x12:" + coords_str(v); }

std::vector<Vec2> lattice_representatives(Vec2 a, Vec2 b) {
  long long xs[4] = {0, a[0], b[0], a[0] + b[0]};
  long long ys[4] = {0, a[1], b[1], a[1] + b[1]};
  long long x0 = *std::min_element(xs, xs + 4), x1 = *std::max_element(xs, xs + 4);
  long long y0 = *std::min_element(ys, ys + 4), y1 = *std::max_element(ys, ys + 4);
  std::vector<Vec2> reps;
  for (long long x = x0; x <= x1; ++x)
    for (long long y = y0; y <= y1; ++y) {
      Vec2 z{x, y};
      if (lattice_rep(z, a, b) == z) reps.push_back(z);
    }
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace

Vec2 PythagoreanPair::canonical(Vec2 v) {
  long long x = std::abs(v[0]), y = std::abs(v[1]);
  return {std::min(x, y), std::max(x, y)};
}

PythagoreanPair PythagoreanPair::make(Vec2 a, Vec2 b) {
  long long na = a[0] * a[0] + a[1] * a[1];
  long long nb = b[0] * b[0] + b[1] * b[1];
  if (na != nb) throw std::invalid_argument("vectors must have equal squared norm");
  if (canonical(a) == canonical(b))
    throw std::invalid_argument("vectors differ by a signed permutation");
  if (det2(a, b) == 0) throw std::invalid_argument("vectors must be independent");
  return {a, b, na};
}

bool PythagoreanPair::matches(Vec2 x, Vec2 y) const {
  auto ca = canonical(a), cb = canonical(b), cx = canonical(x), cy = canonical(y);
  return (ca == cx && cb == cy) || (ca == cy && cb == cx);
}

std::vector<PythagoreanPair> find_pythagorean_doubles(long long limit) {
  if (limit < 1) throw std::invalid_argument("limit must be positive");
  std::map<long long, std::vector<Vec2>> by_norm;
  for (long long q = 0; q <= limit; ++q)
    for (long long p = 0; p <= q; ++p) {
      if (p == 0 && q == 0) continue;
      by_norm[p * p + q * q].push_back({p, q});
    }
  std::vector<PythagoreanPair> out;
  for (auto& [norm, vecs] : by_norm) {
    std::sort(vecs.begin(), vecs.end());
    for (size_t i = 0; i < vecs.size(); ++i)
      for (size_t j = i + 1; j < vecs.size(); ++j)
        out.push_back(PythagoreanPair::make(vecs[i], vecs[j]));
  }
  return out;
}

Vec2 lattice_rep(Vec2 z, Vec2 a, Vec2 b) {
  long long det = det2(a, b);
  if (det == 0) throw std::invalid_argument("lattice basis must be independent");
  long long alpha_num = z[0] * b[1] - z[1] * b[0];
  long long beta_num = a[0] * z[1] - a[1] * z[0];
  long long fa = Rational(alpha_num, det).floor();
  long long fb = Rational(beta_num, det).floor();
  return {z[0] - fa * a[0] - fb * b[0], z[1] - fa * a[1] - fb * b[1]};
}

TorusComplex build_torus(Vec2 a, Vec2 b) {
  if (det2(a, b) == 0) throw std::invalid_argument("lattice basis must be independent");
  auto rep = [&](Vec2 z) { return lattice_rep(z, a, b); };
  std::vector<Cell> cells;
  for (const auto& z : lattice_representatives(a, b)) {
    Vec2 east = rep({z[0] + 1, z[1]});
    Vec2 north = rep({z[0], z[1] + 1});
    cells.push_back({torus_vertex_id(z), 0, {}});
    cells.push_back({torus_edge_id(1, z),
                     1,
                     {{torus_vertex_id(z), {1, false}}, {torus_vertex_id(east), {1, true}}}});
    cells.push_back({torus_edge_id(2, z),
                     1,
                     {{torus_vertex_id(z), {1, false}}, {torus_vertex_id(north), {1, true}}}});
    cells.push_back({torus_square_id(z),
                     2,
                     {{torus_edge_id(2, z), {1, false}},
                      {torus_edge_id(2, east), {1, true}},
                      {torus_edge_id(1, z), {2, false}},
                      {torus_edge_id(1, north), {2, true}}}});
  }
  return {CubeComplex(2, std::move(cells), true), a, b};
}

RationalOrthoAffine swap_isometry(const PythagoreanPair& p) {
  RatVec u{Rational(p.a[0] - p.b[0]), Rational(p.a[1] - p.b[1])};
  Rational norm = u[0] * u[0] + u[1] * u[1];
  RatMat r = identity_matrix(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] -= Rational(2) * u[i] * u[j] / norm;
  RationalOrthoAffine t(r, {Rational(0), Rational(0)});
  RatVec image_a = t.apply({Rational(p.a[0]), Rational(p.a[1])});
  RatVec image_b = t.apply({Rational(p.b[0]), Rational(p.b[1])});
  if (image_a != RatVec{Rational(p.b[0]), Rational(p.b[1])} ||
      image_b != RatVec{Rational(p.a[0]), Rational(p.a[1])})
    throw std::logic_error("swap reflection failed to exchange the pair");
  return t;
}

bool verify_descends(const RationalOrthoAffine& t, Vec2 a, Vec2 b) {
  Rational det(det2(a, b));
  if (det.is_zero()) throw std::invalid_argument("lattice basis must be independent");
  RatMat c(2, RatVec(2, Rational(0)));
  Vec2 basis[2] = {a, b};
  for (int col = 0; col < 2; ++col) {
    RatVec image = mat_apply(t.A, {Rational(basis[col][0]), Rational(basis[col][1])});
    // Coordinates of the image in the basis (a, b), by Cramer's rule.
    Rational alpha = (image[0] * Rational(b[1]) - image[1] * Rational(b[0])) / det;
    Rational beta = (Rational(a[0]) * image[1] - Rational(a[1]) * image[0]) / det;
    if (!alpha.is_integer() || !beta.is_integer()) return false;
    c[0][col] = alpha;
    c[1][col] = beta;
  }
  Rational cdet = c[0][0] * c[1][1] - c[0][1] * c[1][0];
  return cdet == Rational(1) || cdet == Rational(-1);
}

Perm perm_identity(int d) {
  Perm p(d);
  for (int i = 0; i < d; ++i) p[i] = i;
  return p;
}

Perm perm_compose(const Perm& outer, const Perm& inner) {
  Perm p(inner.size());
  for (size_t i = 0; i < inner.size(); ++i) p[i] = outer[inner[i]];
  return p;
}

Perm perm_inverse(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

std::vector<std::vector<int>> perm_cycles(const Perm& p) {
  std::vector<std::vector<int>> cycles;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cycle;
    int x = static_cast<int>(i);
    while (!seen[x]) {
      seen[x] = true;
      cycle.push_back(x);
      x = p[x];
    }
    cycles.push_back(cycle);
  }
  return cycles;
}

bool CoverSpec::transitive() const {
  if (degree < 1) return false;
  std::vector<bool> seen(degree, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const Perm* g : {&sigma_a, &sigma_b})
      for (int y : {(*g)[x], perm_inverse(*g)[x]})
        if (!seen[y]) {
          seen[y] = true;
          ++count;
          stack.push_back(y);
        }
  }
  return count == degree;
}

Perm CoverSpec::commutator() const {
  return perm_compose(perm_compose(sigma_a, sigma_b),
                      perm_compose(perm_inverse(sigma_a), perm_inverse(sigma_b)));
}

std::string CoverSpec::to_json_string() const {
  nlohmann::json j;
  j["degree"] = degree;
  nlohmann::json sa = nlohmann::json::array(), sb = nlohmann::json::array();
  for (int x : sigma_a) sa.push_back(x + 1);
  for (int x : sigma_b) sb.push_back(x + 1);
  j["sigma_a"] = sa;
  j["sigma_b"] = sb;
  return j.dump(2) + "\n";
}

CoverSpec CoverSpec::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CoverSpec spec;
  spec.degree = j.at("degree").get<int>();
  for (const auto& x : j.at("sigma_a")) spec.sigma_a.push_back(x.get<int>() - 1);
  for (const auto& x : j.at("sigma_b")) spec.sigma_b.push_back(x.get<int>() - 1);
  auto check = [&](const Perm& p) {
    if (static_cast<int>(p.size()) != spec.degree)
      throw std::invalid_argument("permutation length does not match degree");
    std::vector<bool> seen(spec.degree, false);
    for (int x : p) {
      if (x < 0 || x >= spec.degree || seen[x])
        throw std::invalid_argument("not a permutation");
      seen[x] = true;
    }
  };
  check(spec.sigma_a);
  check(spec.sigma_b);
  return spec;
}

namespace {

using ClassKey = std::pair<long long, long long>;

ClassKey class_of(Vec2 z, Vec2 a, Vec2 b) {
  Vec2 r = lattice_rep(z, a, b);
  return {r[0], r[1]};
}

/// Signed permutation frame taking the unit direction `dir` to +x.
struct Frame {
  long long m[2][2];
  Vec2 to_frame(Vec2 v) const {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
  }
  Vec2 from_frame(Vec2 v) const {  // the matrices used here are orthogonal
    return {m[0][0] * v[0] + m[1][0] * v[1], m[0][1] * v[0] + m[1][1] * v[1]};
  }
};

Frame frame_for(Vec2 dir) {
  if (dir == Vec2{1, 0}) return {{{1, 0}, {0, 1}}};
  if (dir == Vec2{-1, 0}) return {{{-1, 0}, {0, -1}}};
  if (dir == Vec2{0, 1}) return {{{0, 1}, {-1, 0}}};
  return {{{0, -1}, {1, 0}}};
}

void append_run(std::vector<Vec2>& path, Vec2 to) {
  Vec2 cur = path.back();
  long long dx = to[0] == cur[0] ? 0 : (to[0] > cur[0] ? 1 : -1);
  long long dy = to[1] == cur[1] ? 0 : (to[1] > cur[1] ? 1 : -1);
  while (cur != to) {
    cur = {cur[0] + dx, cur[1] + dy};
    path.push_back(cur);
  }
}

/// Staircase and hook shapes with first and last step +x (in frame
/// coordinates), cheap to enumerate and check.
std::vector<std::vector<Vec2>> staircase_candidates(Vec2 u, long long span) {
  std::vector<std::vector<Vec2>> out;
  if (u[1] == 0 && u[0] >= 1) {
    std::vector<Vec2> p{{0, 0}};
    append_run(p, u);
    out.push_back(p);
  }
  for (long long k = 1; k < u[0]; ++k) {
    std::vector<Vec2> p{{0, 0}};
    append_run(p, {k, 0});
    append_run(p, {k, u[1]});
    append_run(p, u);
    out.push_back(p);
  }
  for (long long s_abs = 1; s_abs <= span; ++s_abs)
    for (long long sign = -1; sign <= 1; sign += 2)
      for (long long k = 1; k <= span; ++k) {
        long long s = sign * s_abs;
        std::vector<Vec2> p{{0, 0}};
        append_run(p, {k, 0});
        append_run(p, {k, u[1] + s});
        append_run(p, {u[0] - 1, u[1] + s});
        append_run(p, {u[0] - 1, u[1]});
        append_run(p, u);
        out.push_back(p);
      }
  return out;
}

/// Self-avoiding (modulo the lattice) path from the origin to `target` whose
/// first and last steps both equal `step`; interior vertices stay off the
/// lattice and off the forbidden classes. Deterministic: staircase and hook
/// candidates first, then a budgeted depth-first search.
std::vector<Vec2> route_cut_path(Vec2 target, Vec2 step, const std::set<ClassKey>& forbidden,
                                 Vec2 a, Vec2 b) {
  Vec2 start{step[0], step[1]};
  Vec2 goal{target[0] - step[0], target[1] - step[1]};
  if (start == target) return {{0, 0}, target};

  auto is_lattice = [&](Vec2 z) { return lattice_rep(z, a, b) == Vec2{0, 0}; };

  auto acceptable = [&](const std::vector<Vec2>& path) {
    if (path.size() < 2 || path.front() != Vec2{0, 0} || path.back() != target) return false;
    std::set<ClassKey> used;
    for (size_t i = 1; i + 1 < path.size(); ++i) {
      if (is_lattice(path[i])) return false;
      auto cls = class_of(path[i], a, b);
      if (forbidden.count(cls) || !used.insert(cls).second) return false;
    }
    return true;
  };

  long long span = std::abs(det2(a, b)) + 2;
  Frame frame = frame_for(step);
  for (auto& framed : staircase_candidates(frame.to_frame(target), std::min<long long>(span, 24))) {
    std::vector<Vec2> path;
    path.reserve(framed.size());
    for (const auto& p : framed) path.push_back(frame.from_frame(p));
    if (acceptable(path)) return path;
  }

  // Fallback: budgeted progress-first search.
  long long window = std::max({std::abs(a[0]), std::abs(a[1]), std::abs(b[0]), std::abs(b[1])}) +
                     std::abs(det2(a, b)) + 4;
  if (is_lattice(start) || is_lattice(goal))
    throw std::logic_error("cut path endpoints degenerate");
  auto start_class = class_of(start, a, b);
  auto goal_class = class_of(goal, a, b);
  if (forbidden.count(start_class) || forbidden.count(goal_class))
    throw std::logic_error("cut path endpoints forbidden");

  long long budget = 200000;
  std::set<ClassKey> used{start_class};
  std::vector<Vec2> path{{0, 0}, start};
  std::function<bool(Vec2)> dfs = [&](Vec2 cur) -> bool {
    if (cur == goal) return true;
    if (--budget <= 0) return false;
    std::vector<Vec2> moves{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    std::sort(moves.begin(), moves.end(), [&](Vec2 m1, Vec2 m2) {
      auto dist = [&](Vec2 m) {
        return std::abs(cur[0] + m[0] - goal[0]) + std::abs(cur[1] + m[1] - goal[1]);
      };
      return dist(m1) < dist(m2);
    });
    for (const auto& m : moves) {
      Vec2 nxt{cur[0] + m[0], cur[1] + m[1]};
      if (std::abs(nxt[0]) > window || std::abs(nxt[1]) > window) continue;
      if (is_lattice(nxt)) continue;
      auto cls = class_of(nxt, a, b);
      if (used.count(cls) || forbidden.count(cls)) continue;
      if (nxt != goal && cls == goal_class) continue;
      used.insert(cls);
      path.push_back(nxt);
      if (dfs(nxt)) return true;
      path.pop_back();
      used.erase(cls);
    }
    return false;
  };
  if (start != goal && !dfs(start))
    throw std::logic_error("cut path routing failed within budget");
  path.push_back(target);
  return path;
}

struct EdgeVoltages {
  // Key: (axis, class of the edge's base vertex). Value: transition picked
  // up crossing the edge in its canonical direction (east across vertical
  // edges, north across horizontal ones).
  std::map<std::pair<int, ClassKey>, Perm> table;

  Perm transition(int axis, ClassKey cls, int degree) const {
    auto it = table.find({axis, cls});
    return it == table.end() ? perm_identity(degree) : it->second;
  }
};

/// Records the transition picked up when crossing each edge of a cut path in
/// the canonical direction (east across vertical edges, north across
/// horizontal ones). A loop crossing the cut once with intersection sign
/// `orientation` picks up sigma, so the stored voltage is
/// sigma^(orientation * det[crossing direction, path direction]).
void add_path_voltages(EdgeVoltages& voltages, const std::vector<Vec2>& path, const Perm& sigma,
                       int orientation, Vec2 a, Vec2 b) {
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    Vec2 from = path[i], to = path[i + 1];
    long long dx = to[0] - from[0], dy = to[1] - from[1];
    int axis;
    Vec2 base;
    int det_sign;  // det[canonical crossing, step direction]
    if (dx != 0) {
      axis = 1;
      base = dx > 0 ? from : to;
      det_sign = dx > 0 ? -1 : 1;  // crossing +y over a +x step
    } else {
      axis = 2;
      base = dy > 0 ? from : to;
      det_sign = dy > 0 ? 1 : -1;  // crossing +x over a +y step
    }
    Perm v = orientation * det_sign > 0 ? sigma : perm_inverse(sigma);
    if (!voltages.table.emplace(std::make_pair(axis, class_of(base, a, b)), v).second)
      throw std::logic_error("cut paths overlap on an edge class");
  }
}

}  // namespace

CubeComplex branched_cover(const TorusComplex& torus, const CoverSpec& spec) {
  if (!spec.transitive())
    throw std::invalid_argument("cover specification must act transitively on the sheets");
  Vec2 a = torus.a, b = torus.b;
  int d = spec.degree;

  // Cut system: two loops through the base vertex read off the lattice
  // generators, routed to meet only at lattice points and to interleave
  // there so the puncture monodromy is the commutator. Each path enters and
  // leaves the lattice points along one fixed axis, the two paths on
  // different axes; sign combinations and routing order are tried in turn,
  // and the verification below backstops the choice.
  struct Config {
    Vec2 step_a, step_b;
    bool a_before_b;
  };
  std::vector<Config> configs;
  for (long long sa = -1; sa <= 1; sa += 2)
    for (long long sb = -1; sb <= 1; sb += 2)
      for (int axis_a = 0; axis_a < 2; ++axis_a)
        for (bool order : {true, false}) {
          Vec2 da = axis_a == 0 ? Vec2{sa, 0} : Vec2{0, sa};
          Vec2 db = axis_a == 0 ? Vec2{0, sb} : Vec2{sb, 0};
          configs.push_back({da, db, order});
        }

  EdgeVoltages voltages;
  bool routed = false;
  std::string routing_error;
  for (const auto& cfg : configs) {
    try {
      EdgeVoltages attempt;
      Vec2 first_target = cfg.a_before_b ? a : b;
      Vec2 second_target = cfg.a_before_b ? b : a;
      Vec2 first_step = cfg.a_before_b ? cfg.step_a : cfg.step_b;
      Vec2 second_step = cfg.a_before_b ? cfg.step_b : cfg.step_a;

      // The second path's forced endpoints must stay available, so the
      // first path routes around their classes.
      std::set<ClassKey> reserved{
          class_of(second_step, a, b),
          class_of({second_target[0] - second_step[0], second_target[1] - second_step[1]}, a, b)};
      auto first_path = route_cut_path(first_target, first_step, reserved, a, b);
      std::set<ClassKey> forbidden;
      for (size_t i = 1; i + 1 < first_path.size(); ++i)
        forbidden.insert(class_of(first_path[i], a, b));
      auto second_path = route_cut_path(second_target, second_step, forbidden, a, b);

      // Loops winding once along a cross the b-cut (and vice versa), with
      // opposite intersection orientations.
      const auto& path_a = cfg.a_before_b ? first_path : second_path;
      const auto& path_b = cfg.a_before_b ? second_path : first_path;
      add_path_voltages(attempt, path_a, spec.sigma_b, -1, a, b);
      add_path_voltages(attempt, path_b, spec.sigma_a, +1, a, b);
      voltages = attempt;
      routed = true;
      break;
    } catch (const std::logic_error& e) {
      routing_error = e.what();
    }
  }
  if (!routed)
    throw std::runtime_error(
        "no disjoint cut system exists in the 1-skeleton of this quotient (" + routing_error +
        "); tori whose fundamental domain has at most one interior vertex class cannot carry "
        "one");

  auto rep = [&](Vec2 z) { return lattice_rep(z, a, b); };
  auto cls = [&](Vec2 z) { return class_of(z, a, b); };
  auto reps = lattice_representatives(a, b);

  auto sheet_id = [](const CellId& base, int s) { return base + "@" + std::to_string(s); };

  // Sheet bookkeeping: the lift label of an edge is the sheet seen from its
  // canonical side (west of vertical edges, south of horizontal ones).
  auto vertical_transition = [&](Vec2 at) { return voltages.transition(2, cls(at), d); };
  auto horizontal_transition = [&](Vec2 at) { return voltages.transition(1, cls(at), d); };

  // Union-find on vertex germs (edge lift, end).
  std::map<std::tuple<int, long long, long long, int, int>, int> germ_index;
  std::vector<int> parent;
  auto germ = [&](int axis, Vec2 base, int sheet, int end) {
    Vec2 r = rep(base);
    auto key = std::make_tuple(axis, r[0], r[1], sheet, end);
    auto it = germ_index.find(key);
    if (it != germ_index.end()) return it->second;
    int idx = static_cast<int>(parent.size());
    germ_index[key] = idx;
    parent.push_back(idx);
    return idx;
  };
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  struct SquareLifts {
    int west, east, south, north;  // sheet labels of the four edge lifts
  };
  std::map<std::pair<ClassKey, int>, SquareLifts> lifts;
  for (const auto& q : reps)
    for (int s = 0; s < d; ++s) {
      SquareLifts sl;
      sl.west = perm_inverse(vertical_transition(q))[s];
      sl.east = s;
      sl.south = perm_inverse(horizontal_transition(q))[s];
      sl.north = s;
      lifts[{{q[0], q[1]}, s}] = sl;
      Vec2 east_base{q[0] + 1, q[1]};
      Vec2 north_base{q[0], q[1] + 1};
      unite(germ(2, q, sl.west, 0), germ(1, q, sl.south, 0));
      unite(germ(2, east_base, sl.east, 0), germ(1, q, sl.south, 1));
      unite(germ(2, q, sl.west, 1), germ(1, north_base, sl.north, 0));
      unite(germ(2, east_base, sl.east, 1), germ(1, north_base, sl.north, 1));
    }

  // Vertex ids per union-find class, grouped over the base vertex.
  std::map<int, CellId> class_name;
  {
    std::map<CellId, std::vector<std::pair<std::tuple<int, long long, long long, int, int>, int>>>
        by_base;
    for (const auto& [key, idx] : germ_index) {
      auto [axis, rx, ry, sheet, end] = key;
      Vec2 base{rx, ry};
      Vec2 at = base;
      if (end == 1) at[axis - 1] += 1;
      by_base[torus_vertex_id(rep(at))].push_back({key, idx});
    }
    for (const auto& [base_id, germs] : by_base) {
      std::set<int> classes;
      std::map<int, std::tuple<int, long long, long long, int, int>> smallest;
      for (const auto& [key, idx] : germs) {
        int root = find(idx);
        if (!smallest.count(root) || key < smallest[root]) smallest[root] = key;
        classes.insert(root);
      }
      std::vector<std::pair<std::tuple<int, long long, long long, int, int>, int>> ordered;
      for (int root : classes) ordered.push_back({smallest[root], root});
      std::sort(ordered.begin(), ordered.end());
      for (size_t i = 0; i < ordered.size(); ++i)
        class_name[ordered[i].second] = base_id + "@" + std::to_string(i);
    }
  }

  std::vector<Cell> cells;
  std::set<CellId> emitted;
  auto emit = [&](Cell c) {
    if (emitted.insert(c.id).second) cells.push_back(std::move(c));
  };
  for (const auto& [key, idx] : germ_index) {
    (void)idx;
    auto [axis, rx, ry, sheet, end] = key;
    if (end != 0) continue;
    Vec2 base{rx, ry};
    CellId id = sheet_id(torus_edge_id(axis, base), sheet);
    CellId v0 = class_name.at(find(germ(axis, base, sheet, 0)));
    CellId v1 = class_name.at(find(germ(axis, base, sheet, 1)));
    emit({id, 1, {{v0, {1, false}}, {v1, {1, true}}}});
    emit({v0, 0, {}});
    emit({v1, 0, {}});
  }
  for (const auto& q : reps)
    for (int s = 0; s < d; ++s) {
      const auto& sl = lifts.at({{q[0], q[1]}, s});
      Vec2 east_base = rep({q[0] + 1, q[1]});
      Vec2 north_base = rep({q[0], q[1] + 1});
      emit({sheet_id(torus_square_id(q), s),
            2,
            {{sheet_id(torus_edge_id(2, q), sl.west), {1, false}},
             {sheet_id(torus_edge_id(2, east_base), sl.east), {1, true}},
             {sheet_id(torus_edge_id(1, q), sl.south), {2, false}},
             {sheet_id(torus_edge_id(1, north_base), sl.north), {2, true}}}});
    }

  CubeComplex cover(2, std::move(cells), true);

  // The construction is only returned once verified: closed surface, branch
  // orders over the base vertex matching the commutator cycles, flat
  // elsewhere, and connected.
  auto validation = cover.validate();
  if (!validation.ok())
    throw std::logic_error("cover failed validation:\n" + validation.summary());
  auto surface = check_square_surface(cover);
  if (!surface.closed_surface) throw std::logic_error("cover is not a closed surface");

  CellId base_vertex = torus_vertex_id(rep({0, 0}));
  std::vector<int> branch_orders, expected_orders;
  for (const auto& [v, k] : surface.cone_orders) {
    bool over_base = v.rfind(base_vertex + "@", 0) == 0;
    if (over_base)
      branch_orders.push_back(k);
    else if (k != 4)
      throw std::logic_error("unexpected branching at " + v);
  }
  for (const auto& cycle : perm_cycles(spec.commutator()))
    expected_orders.push_back(4 * static_cast<int>(cycle.size()));
  std::sort(branch_orders.begin(), branch_orders.end());
  std::sort(expected_orders.begin(), expected_orders.end());
  if (branch_orders != expected_orders)
    throw std::logic_error("branch orders do not match the commutator cycles");

  long long chi = cover.count_of_dim(0) - cover.count_of_dim(1) + cover.count_of_dim(2);
  long long defect = 0;
  for (const auto& cycle : perm_cycles(spec.commutator()))
    defect += static_cast<long long>(cycle.size()) - 1;
  if (chi != -defect) throw std::logic_error("Riemann-Hurwitz count failed");

  // Transitivity of the spec must translate into a connected cover.
  {
    std::map<CellId, std::vector<CellId>> adj;
    for (const auto& c : cover.cells())
      if (c.dim == 1)
        for (const auto& f : c.facets) adj[f.id].push_back(c.id), adj[c.id].push_back(f.id);
    std::set<CellId> seen;
    std::vector<CellId> stack{cover.cells().front().id};
    seen.insert(stack.back());
    while (!stack.empty()) {
      CellId v = stack.back();
      stack.pop_back();
      for (const auto& u : adj[v])
        if (seen.insert(u).second) stack.push_back(u);
    }
    long long reachable = 0;
    for (const auto& c : cover.cells())
      if (c.dim <= 1 && seen.count(c.id)) ++reachable;
    if (reachable != cover.count_of_dim(0) + cover.count_of_dim(1))
      throw std::logic_error("cover is not connected");
  }
  return cover;
}

Word word_reduce(Word w) {
  Word out;
  for (int letter : w) {
    if (letter == 0 || std::abs(letter) > 2) throw std::invalid_argument("bad word letter");
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

Word word_inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& letter : out) letter = -letter;
  return out;
}

Word word_parse(const std::string& s) {
  Word w;
  for (char c : s) {
    switch (c) {
      case 'a': w.push_back(1); break;
      case 'A': w.push_back(-1); break;
      case 'b': w.push_back(2); break;
      case 'B': w.push_back(-2); break;
      default: throw std::invalid_argument("word letters must be one of a, A, b, B");
    }
  }
  return word_reduce(w);
}

void require_automorphism(const Word& wa_in, const Word& wb_in) {
  Word wa = word_reduce(wa_in), wb = word_reduce(wb_in);
  long long ex_a = 0, ex_b = 0, ey_a = 0, ey_b = 0;
  for (int l : wa) (std::abs(l) == 1 ? ex_a : ey_a) += l > 0 ? 1 : -1;
  for (int l : wb) (std::abs(l) == 1 ? ex_b : ey_b) += l > 0 ? 1 : -1;
  long long det = ex_a * ey_b - ey_a * ex_b;
  if (det != 1 && det != -1)
    throw std::invalid_argument("abelianization determinant is not a unit");

  // Bounded Nielsen-move search back to a basis pair.
  const size_t kLengthBound = 16;
  auto is_basis = [](const Word& u, const Word& v) {
    return u.size() == 1 && v.size() == 1 && std::abs(u[0]) != std::abs(v[0]);
  };
  std::set<std::pair<Word, Word>> seen;
  std::queue<std::pair<Word, Word>> queue;
  queue.push({wa, wb});
  seen.insert({wa, wb});
  size_t budget = 200000;
  while (!queue.empty() && budget--) {
    auto [u, v] = queue.front();
    queue.pop();
    if (is_basis(u, v)) return;
    std::vector<std::pair<Word, Word>> next;
    next.push_back({v, u});
    next.push_back({word_inverse(u), v});
    next.push_back({u, word_inverse(v)});
    auto concat = [](const Word& x, const Word& y) {
      Word w = x;
      w.insert(w.end(), y.begin(), y.end());
      return word_reduce(w);
    };
    next.push_back({concat(u, v), v});
    next.push_back({concat(u, word_inverse(v)), v});
    next.push_back({concat(v, u), v});
    next.push_back({concat(word_inverse(v), u), v});
    next.push_back({u, concat(v, u)});
    next.push_back({u, concat(v, word_inverse(u))});
    next.push_back({u, concat(u, v)});
    next.push_back({u, concat(word_inverse(u), v)});
    for (auto& state : next) {
      if (state.first.empty() || state.second.empty()) continue;
      if (state.first.size() + state.second.size() > std::max(kLengthBound, wa.size() + wb.size()))
        continue;
      if (seen.insert(state).second) queue.push(state);
    }
  }
  throw std::invalid_argument("words not certified as an automorphism within the search bound");
}

namespace {

Perm perm_of_word(const Word& w, const CoverSpec& spec) {
  Perm p = perm_identity(spec.degree);
  for (int letter : w) {
    const Perm& g = std::abs(letter) == 1 ? spec.sigma_a : spec.sigma_b;
    p = perm_compose(letter > 0 ? g : perm_inverse(g), p);
  }
  return p;
}

}  // namespace

bool lift_check(const CoverSpec& spec, const Word& wa, const Word& wb) {
  if (!spec.transitive())
    throw std::invalid_argument("cover specification must act transitively on the sheets");
  require_automorphism(wa, wb);
  Perm pa = perm_of_word(wa, spec);
  Perm pb = perm_of_word(wb, spec);
  int d = spec.degree;

  // A sheet relabeling conjugating (pa, pb) to (sigma_a, sigma_b) is forced
  // by the image of one sheet, because the action is transitive.
  for (int image0 = 0; image0 < d; ++image0) {
    std::vector<int> pi(d, -1);
    pi[0] = image0;
    std::vector<int> stack{0};
    bool ok = true;
    std::vector<bool> used(d, false);
    used[image0] = true;
    while (!stack.empty() && ok) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& [from, to] : {std::pair{&pa, &spec.sigma_a}, std::pair{&pb, &spec.sigma_b}})
        for (int dir = 0; dir < 2 && ok; ++dir) {
          int y = dir == 0 ? (*from)[x] : perm_inverse(*from)[x];
          int target = dir == 0 ? (*to)[pi[x]] : perm_inverse(*to)[pi[x]];
          if (pi[y] < 0) {
            if (used[target]) {
              ok = false;
            } else {
              pi[y] = target;
              used[target] = true;
              stack.push_back(y);
            }
          } else if (pi[y] != target) {
            ok = false;
          }
        }
    }
    if (!ok) continue;
    bool total = true;
    for (int x = 0; x < d; ++x)
      if (pi[x] < 0) total = false;
    if (!total) continue;  // cannot happen for transitive actions
    bool conjugates = true;
    for (int x = 0; x < d && conjugates; ++x)
      if (pi[pa[x]] != spec.sigma_a[pi[x]] || pi[pb[x]] != spec.sigma_b[pi[x]])
        conjugates = false;
    if (conjugates) return true;
  }
  return false;
}

}  // namespace cubical
