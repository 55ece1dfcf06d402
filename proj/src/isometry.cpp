#include "cubical/isometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"

namespace cubical {

namespace {

/// Connected components of the symmetric nonzero pattern of A, each sorted,
/// ordered by smallest coordinate. For orthogonal A these are the finest
/// coordinate-aligned diagonal blocks.
std::vector<std::vector<int>> pattern_components(const RatMat& a) {
  int n = static_cast<int>(a.size());
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = next;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (comp[j] >= 0) continue;
        if (!a[v][j].is_zero() || !a[j][v].is_zero()) {
          comp[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  std::vector<std::vector<int>> comps(next);
  for (int i = 0; i < n; ++i) comps[comp[i]].push_back(i);
  return comps;
}

RatMat submatrix(const RatMat& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  RatMat m(rows.size(), RatVec(cols.size(), Rational(0)));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) m[i][j] = a[rows[i]][cols[j]];
  return m;
}

RatVec subvector(const RatVec& v, const std::vector<int>& idx) {
  RatVec out(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

}  // namespace

RationalOrthoAffine::RationalOrthoAffine(RatMat a, RatVec t)
    : n(static_cast<int>(a.size())), A(std::move(a)), b(std::move(t)) {
  if (!check_orthogonal(A)) throw std::invalid_argument("matrix is not orthogonal");
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("translation length does not match dimension");
}

RatVec RationalOrthoAffine::apply(const RatVec& x) const { return vec_add(mat_apply(A, x), b); }

RationalOrthoAffine RationalOrthoAffine::inverse() const {
  RatMat at = mat_transpose(A);
  RatVec nb = mat_apply(at, b);
  for (auto& x : nb) x = -x;
  return RationalOrthoAffine(at, nb);
}

RationalOrthoAffine RationalOrthoAffine::compose_after(const RationalOrthoAffine& inner) const {
  return RationalOrthoAffine(mat_mul(A, inner.A), vec_add(mat_apply(A, inner.b), b));
}

std::string RationalOrthoAffine::to_json_string() const {
  nlohmann::json j;
  j["n"] = n;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : A) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(x.str());
    rows.push_back(r);
  }
  j["A"] = rows;
  nlohmann::json t = nlohmann::json::array();
  for (const auto& x : b) t.push_back(x.str());
  j["b"] = t;
  return j.dump(2) + "\n";
}

RationalOrthoAffine RationalOrthoAffine::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("n").get<int>();
  RatMat a;
  for (const auto& row : j.at("A")) {
    RatVec r;
    for (const auto& x : row) r.push_back(Rational::parse(x.get<std::string>()));
    a.push_back(r);
  }
  RatVec b;
  for (const auto& x : j.at("b")) b.push_back(Rational::parse(x.get<std::string>()));
  if (static_cast<int>(a.size()) != n)
    throw std::invalid_argument("matrix size does not match declared n");
  return RationalOrthoAffine(a, b);
}

bool check_orthogonal(const RatMat& a) {
  size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  return mat_equal(mat_mul(mat_transpose(a), a), identity_matrix(static_cast<int>(n)));
}

bool is_signed_permutation(const RatMat& a) {
  int n = static_cast<int>(a.size());
  std::vector<int> col_used(n, 0);
  for (int i = 0; i < n; ++i) {
    int nonzero = -1;
    for (int j = 0; j < n; ++j) {
      if (a[i][j].is_zero()) continue;
      if (nonzero >= 0) return false;
      if (a[i][j] != Rational(1) && a[i][j] != Rational(-1)) return false;
      nonzero = j;
    }
    if (nonzero < 0 || col_used[nonzero]++) return false;
  }
  return true;
}

std::pair<RationalOrthoAffine, std::vector<long long>> reduce_translation(
    const RationalOrthoAffine& t) {
  std::vector<long long> shift(t.n);
  RatVec reduced(t.n);
  for (int i = 0; i < t.n; ++i) {
    shift[i] = t.b[i].round_half_toward_zero();
    reduced[i] = t.b[i] - Rational(shift[i]);
  }
  return {RationalOrthoAffine(t.A, reduced), shift};
}

bool is_cubical_map(const RationalOrthoAffine& t) {
  return is_signed_permutation(t.A) && vec_is_integral(t.b);
}

std::optional<HypersurfaceSplit> preserves_proper_hypersurface(const RationalOrthoAffine& t) {
  if (t.n < 2) return std::nullopt;
  auto comps = pattern_components(t.A);
  if (comps.size() < 2) return std::nullopt;

  std::vector<int> integral_comps;
  for (size_t c = 0; c < comps.size(); ++c)
    if (vec_is_integral(subvector(t.b, comps[c]))) integral_comps.push_back(static_cast<int>(c));
  if (integral_comps.empty()) return std::nullopt;

  // A2 takes every integral component; when all are integral, the first
  // component stays on the hypersurface side so both blocks are nonempty.
  std::vector<bool> to_a2(comps.size(), false);
  for (int c : integral_comps) to_a2[c] = true;
  if (integral_comps.size() == comps.size()) to_a2[0] = false;

  HypersurfaceSplit split;
  for (size_t c = 0; c < comps.size(); ++c) {
    auto& side = to_a2[c] ? split.coords2 : split.coords1;
    side.insert(side.end(), comps[c].begin(), comps[c].end());
  }
  std::sort(split.coords1.begin(), split.coords1.end());
  std::sort(split.coords2.begin(), split.coords2.end());
  split.a1 = submatrix(t.A, split.coords1, split.coords1);
  split.a2 = submatrix(t.A, split.coords2, split.coords2);
  split.b1 = subvector(t.b, split.coords1);
  split.b2 = subvector(t.b, split.coords2);
  split.hypersurface.free_coords = split.coords1;
  for (const auto& x : split.b2) split.hypersurface.offsets.push_back(x.num());
  return split;
}

BlockDecomposition normal_form(const RationalOrthoAffine& t) {
  auto [reduced, shift] = reduce_translation(t);
  auto comps = pattern_components(reduced.A);

  BlockDecomposition nf;
  nf.n = t.n;
  nf.integer_shift = shift;
  nf.post = identity_matrix(t.n);

  std::vector<Block> lambda, b0, strict;
  for (const auto& comp : comps) {
    RatMat block = submatrix(reduced.A, comp, comp);
    RatVec trans = subvector(reduced.b, comp);
    bool integral = vec_is_integral(trans);  // reduced: integral means zero
    if (integral && is_signed_permutation(block)) {
      // Cubical component: post-compose with the inverse of the unsigned
      // permutation part, leaving a +-1 diagonal. Q is assembled globally.
      int m = static_cast<int>(comp.size());
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          nf.post[comp[i]][comp[j]] = block[j][i].is_zero() ? Rational(0) : Rational(1);
      for (int i = 0; i < m; ++i) {
        Rational diag(0);
        for (int k = 0; k < m; ++k) diag += nf.post[comp[i]][comp[k]] * block[k][i];
        lambda.push_back({BlockKind::Lambda, {comp[i]}, {{diag}}, {Rational(0)}});
      }
    } else if (!integral) {
      b0.push_back({BlockKind::B0, comp, block, trans});
    } else {
      strict.push_back({BlockKind::BStrict, comp, block, trans});
    }
  }

  auto by_first = [](const Block& x, const Block& y) { return x.coords[0] < y.coords[0]; };
  std::sort(lambda.begin(), lambda.end(), by_first);
  std::sort(b0.begin(), b0.end(), by_first);
  std::sort(strict.begin(), strict.end(), by_first);
  nf.blocks = std::move(lambda);
  nf.blocks.insert(nf.blocks.end(), b0.begin(), b0.end());
  nf.blocks.insert(nf.blocks.end(), strict.begin(), strict.end());
  for (const auto& blk : nf.blocks)
    nf.permutation.insert(nf.permutation.end(), blk.coords.begin(), blk.coords.end());
  return nf;
}

RationalOrthoAffine BlockDecomposition::reconstruct() const {
  RatMat qa(n, RatVec(n, Rational(0)));
  RatVec trans(n, Rational(0));
  for (const auto& blk : blocks) {
    for (size_t i = 0; i < blk.coords.size(); ++i) {
      trans[blk.coords[i]] = blk.translation[i];
      for (size_t j = 0; j < blk.coords.size(); ++j)
        qa[blk.coords[i]][blk.coords[j]] = blk.matrix[i][j];
    }
  }
  RatMat a = mat_mul(mat_transpose(post), qa);
  RatVec b = mat_apply(mat_transpose(post), trans);
  for (int i = 0; i < n; ++i) b[i] += Rational(integer_shift[i]);
  return RationalOrthoAffine(a, b);
}

int BlockDecomposition::lambda_rank() const {
  int l = 0;
  for (const auto& blk : blocks)
    if (blk.kind == BlockKind::Lambda) ++l;
  return l;
}

bool BlockDecomposition::all_lambda() const { return lambda_rank() == n; }

namespace {

struct ImageCoordinate {
  Rational constant;  // value at the cube's base corner
  RatVec gradient;    // per spanned direction
  bool identically_integral() const {
    if (!constant.is_integer()) return false;
    for (const auto& g : gradient)
      if (!g.is_zero()) return false;
    return true;
  }
};

std::vector<ImageCoordinate> face_image(const RationalOrthoAffine& t, const CubeSpec& cube) {
  RatVec base(cube.offset.begin(), cube.offset.end());
  RatVec at_base = t.apply(base);
  std::vector<ImageCoordinate> coords(t.n);
  for (int j = 0; j < t.n; ++j) {
    coords[j].constant = at_base[j];
    for (int k : cube.spanning) coords[j].gradient.push_back(t.A[j][k]);
  }
  return coords;
}

void check_cube_spec(const RationalOrthoAffine& t, const CubeSpec& cube) {
  int d = static_cast<int>(cube.spanning.size());
  if (d < 1 || d > t.n - 1)
    throw std::invalid_argument("cube dimension must lie in 1..n-1");
  if (static_cast<int>(cube.offset.size()) != t.n)
    throw std::invalid_argument("cube offset must have length n");
  for (size_t i = 0; i + 1 < cube.spanning.size(); ++i)
    if (cube.spanning[i] >= cube.spanning[i + 1])
      throw std::invalid_argument("spanning coordinates must be strictly ascending");
  if (cube.spanning.front() < 0 || cube.spanning.back() >= t.n)
    throw std::invalid_argument("spanning coordinate out of range");
}

/// Grid search for a point of the open cube where strictly more than d image
/// coordinates are non-integral. Each active coordinate kills at most
/// (d+1) * (q-1)^(d-1) grid points, so q > n(d+1) + 1 guarantees a hit.
RatVec witness_search(const RationalOrthoAffine& t, const CubeSpec& cube,
                      const std::vector<ImageCoordinate>& coords) {
  int d = static_cast<int>(cube.spanning.size());
  long long denom = common_denominator(t.A, t.b);
  long long q = std::max<long long>(2 * denom + 1, static_cast<long long>(t.n) * t.n + 2);

  std::vector<long long> steps(d, 1);
  while (true) {
    int non_integral = 0;
    for (int j = 0; j < t.n; ++j) {
      Rational value = coords[j].constant;
      for (int k = 0; k < d; ++k) value += coords[j].gradient[k] * Rational(steps[k], q);
      if (!value.is_integer()) ++non_integral;
    }
    if (non_integral > d) {
      RatVec point(t.n);
      for (int i = 0; i < t.n; ++i) point[i] = Rational(cube.offset[i]);
      for (int k = 0; k < d; ++k) point[cube.spanning[k]] += Rational(steps[k], q);
      return point;
    }
    int i = 0;
    for (; i < d; ++i) {
      if (steps[i] < q - 1) {
        ++steps[i];
        break;
      }
      steps[i] = 1;
    }
    if (i == d) break;
  }
  throw std::logic_error("witness grid exhausted; the counting bound rules this out");
}

}  // namespace

RatVec transverse_witness(const RationalOrthoAffine& t, const CubeSpec& cube) {
  check_cube_spec(t, cube);
  if (is_cubical_map(t) || preserves_proper_hypersurface(t))
    throw std::domain_error("transverse_witness requires a non-cubical map preserving no proper hypersurface");
  auto coords = face_image(t, cube);
  int active = 0;
  for (const auto& c : coords)
    if (!c.identically_integral()) ++active;
  if (active <= static_cast<int>(cube.spanning.size()))
    throw std::domain_error("cube image lies inside the hypersurface web; no transverse point exists");
  return witness_search(t, cube, coords);
}

GeneralTransverseResult general_transverse(const RationalOrthoAffine& t, const CubeSpec& cube) {
  check_cube_spec(t, cube);
  auto nf = normal_form(t);
  std::set<int> cubical_coords;
  for (const auto& blk : nf.blocks)
    if (blk.kind == BlockKind::Lambda) cubical_coords.insert(blk.coords[0]);

  bool in_lambda_cube = true;
  for (int k : cube.spanning)
    if (cubical_coords.count(k) == 0) in_lambda_cube = false;

  RatVec base(cube.offset.begin(), cube.offset.end());
  RatVec image = t.apply(base);
  if (in_lambda_cube && vec_is_integral(image)) {
    IntegralTranslate result;
    for (int i = 0; i < t.n; ++i) result.shift.push_back(image[i].num() - cube.offset[i]);
    return result;
  }

  auto coords = face_image(t, cube);
  int active = 0;
  for (const auto& c : coords)
    if (!c.identically_integral()) ++active;
  if (active <= static_cast<int>(cube.spanning.size()))
    throw std::domain_error("cube image lies inside the hypersurface web; neither branch applies");
  return witness_search(t, cube, coords);
}

std::vector<std::vector<long long>> enumerate_integral_points_sq(int n,
                                                                 const Rational& radius_sq) {
  if (radius_sq < Rational(0)) throw std::invalid_argument("radius must be non-negative");
  long long bound = 0;
  while (Rational((bound + 1) * (bound + 1)) <= radius_sq) ++bound;
  std::vector<std::vector<long long>> out;
  std::vector<long long> z(n, -bound);
  if (n == 0) return {{}};
  while (true) {
    Rational norm2(0);
    for (long long zi : z) norm2 += Rational(zi * zi);
    if (norm2 <= radius_sq) out.push_back(z);
    int i = n - 1;
    for (; i >= 0; --i) {
      if (z[i] < bound) {
        ++z[i];
        break;
      }
      z[i] = -bound;
    }
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<long long>> enumerate_integral_points(int n, const Rational& radius) {
  if (radius < Rational(0)) throw std::invalid_argument("radius must be non-negative");
  return enumerate_integral_points_sq(n, radius * radius);
}

}  // namespace cubical
