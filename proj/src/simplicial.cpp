#include "cubical/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cubical {

SimplicialComplex SimplicialComplex::from_simplices(
    const std::vector<std::vector<std::string>>& simplices) {
  SimplicialComplex sc;
  std::set<std::string> labels;
  for (const auto& s : simplices) {
    std::set<std::string> check(s.begin(), s.end());
    if (check.size() != s.size())
      throw std::invalid_argument("repeated vertex within a simplex");
    labels.insert(s.begin(), s.end());
  }
  sc.vertices_.assign(labels.begin(), labels.end());
  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(sc.vertices_.size()); ++i) index[sc.vertices_[i]] = i;

  // Downward closure by subset enumeration; simplices here are tiny.
  for (const auto& s : simplices) {
    std::vector<int> idx;
    idx.reserve(s.size());
    for (const auto& v : s) idx.push_back(index[v]);
    std::sort(idx.begin(), idx.end());
    int k = static_cast<int>(idx.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> sub;
      for (int b = 0; b < k; ++b)
        if (mask & (1u << b)) sub.push_back(idx[b]);
      sc.simplices_.insert(sub);
    }
  }
  return sc;
}

int SimplicialComplex::vertex_index(const std::string& label) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), label);
  if (it == vertices_.end() || *it != label) return -1;
  return static_cast<int>(it - vertices_.begin());
}

bool SimplicialComplex::contains(const std::vector<std::string>& simplex) const {
  std::vector<int> idx;
  for (const auto& v : simplex) {
    int i = vertex_index(v);
    if (i < 0) return false;
    idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  return simplices_.count(idx) > 0;
}

int SimplicialComplex::dim() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

std::vector<long long> SimplicialComplex::f_vector() const {
  int d = dim();
  std::vector<long long> f(std::max(0, d + 1), 0);
  for (const auto& s : simplices_) ++f[s.size() - 1];
  return f;
}

std::vector<std::pair<int, int>> SimplicialComplex::edges() const {
  std::vector<std::pair<int, int>> e;
  for (const auto& s : simplices_)
    if (s.size() == 2) e.emplace_back(s[0], s[1]);
  return e;
}

bool SimplicialComplex::is_flag() const {
  int n = vertex_count();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [u, v] : edges()) adj[u][v] = adj[v][u] = true;

  // Bron-Kerbosch over maximal cliques.
  bool flag = true;
  std::function<void(std::vector<int>&, std::vector<int>, std::vector<int>)> bk =
      [&](std::vector<int>& r, std::vector<int> p, std::vector<int> x) {
        if (!flag) return;
        if (p.empty() && x.empty()) {
          if (!r.empty() && simplices_.count(r) == 0) flag = false;
          return;
        }
        std::vector<int> p_copy = p;
        for (int v : p_copy) {
          std::vector<int> pn, xn;
          for (int u : p)
            if (adj[u][v]) pn.push_back(u);
          for (int u : x)
            if (adj[u][v]) xn.push_back(u);
          r.push_back(v);
          std::sort(r.begin(), r.end());
          std::vector<int> saved = r;
          bk(r, pn, xn);
          r = saved;
          r.erase(std::find(r.begin(), r.end(), v));
          p.erase(std::find(p.begin(), p.end(), v));
          x.push_back(v);
        }
      };
  std::vector<int> r, p(n), x;
  for (int i = 0; i < n; ++i) p[i] = i;
  bk(r, p, x);
  return flag;
}

std::optional<int> SimplicialComplex::as_single_cycle() const {
  if (dim() != 1 || !is_connected()) return std::nullopt;
  int n = vertex_count();
  std::vector<int> deg(n, 0);
  auto e = edges();
  for (auto [u, v] : e) {
    ++deg[u];
    ++deg[v];
  }
  for (int d : deg)
    if (d != 2) return std::nullopt;
  if (static_cast<int>(e.size()) != n) return std::nullopt;
  return n;
}

bool SimplicialComplex::is_connected() const {
  int n = vertex_count();
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

SimplicialComplex SimplicialComplex::join(const SimplicialComplex& a, const std::string& prefix_a,
                                          const SimplicialComplex& b,
                                          const std::string& prefix_b) {
  auto relabel = [](const SimplicialComplex& c, const std::string& prefix,
                    const std::vector<int>& s) {
    std::vector<std::string> out;
    for (int i : s) out.push_back(prefix + c.vertices_[i]);
    return out;
  };
  std::vector<std::vector<std::string>> sims;
  for (const auto& s : a.simplices_) sims.push_back(relabel(a, prefix_a, s));
  for (const auto& t : b.simplices_) sims.push_back(relabel(b, prefix_b, t));
  for (const auto& s : a.simplices_)
    for (const auto& t : b.simplices_) {
      auto u = relabel(a, prefix_a, s);
      auto v = relabel(b, prefix_b, t);
      u.insert(u.end(), v.begin(), v.end());
      sims.push_back(u);
    }
  return from_simplices(sims);
}

bool SimplicialComplex::isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  if (a.f_vector() != b.f_vector()) return false;
  int n = a.vertex_count();
  if (n == 0) return true;

  // Per-vertex invariant: sorted sizes of all simplices containing it.
  auto profile = [](const SimplicialComplex& c) {
    std::vector<std::vector<int>> p(c.vertex_count());
    for (const auto& s : c.simplices_)
      for (int v : s) p[v].push_back(static_cast<int>(s.size()));
    for (auto& v : p) std::sort(v.begin(), v.end());
    return p;
  };
  auto pa = profile(a), pb = profile(b);
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> extend = [&](int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || pa[v] != pb[w]) continue;
      map[v] = w;
      used[w] = 1;
      // Check all simplices fully mapped so far.
      bool ok = true;
      for (const auto& s : a.simplices_) {
        if (!ok) break;
        bool full = true;
        std::vector<int> img;
        for (int x : s) {
          if (map[x] < 0) {
            full = false;
            break;
          }
          img.push_back(map[x]);
        }
        if (!full) continue;
        std::sort(img.begin(), img.end());
        if (b.simplices_.count(img) == 0) ok = false;
      }
      if (ok && extend(v + 1)) return true;
      used[w] = 0;
      map[v] = -1;
    }
    return false;
  };
  return extend(0);
}

std::string SimplicialComplex::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (const auto& v : vertices_) os << "  \"" << v << "\";\n";
  for (auto [u, v] : edges()) os << "  \"" << vertices_[u] << "\" -- \"" << vertices_[v] << "\";\n";
  os << "}\n";
  return os.str();
}

SimplicialComplex octahedral_sphere(int m) {
  if (m < 0) return SimplicialComplex();
  std::vector<std::vector<std::string>> facets;
  int n = m + 1;
  for (unsigned signs = 0; signs < (1u << n); ++signs) {
    std::vector<std::string> f;
    for (int i = 0; i < n; ++i)
      f.push_back(((signs >> i) & 1 ? "+" : "-") + std::to_string(i + 1));
    facets.push_back(f);
  }
  return SimplicialComplex::from_simplices(facets);
}

}  // namespace cubical
