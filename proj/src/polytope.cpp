#include "qf/polytope.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace qf {

namespace {

long affine_dim(const std::vector<Exponent>& pts, const std::vector<int>& idx) {
  if (idx.size() <= 1) return 0;
  IntMat d;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    IntVec row;
    for (std::size_t k = 0; k < pts[idx[0]].size(); ++k) row.push_back(pts[idx[i]][k] - pts[idx[0]][k]);
    d.push_back(row);
  }
  return rank(d);
}

bool in_hull(const std::vector<Exponent>& pts, const Exponent& p, std::size_t skip) {
  std::size_t n = p.size();
  std::vector<std::size_t> use;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (i != skip) use.push_back(i);
  if (use.empty()) return false;
  RatMat a(n + 1, RatVec(use.size()));
  RatVec b(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < use.size(); ++j) a[k][j] = pts[use[j]][k];
    b[k] = p[k];
  }
  for (std::size_t j = 0; j < use.size(); ++j) a[n][j] = 1;
  b[n] = 1;
  return simplex_max(a, b, RatVec(use.size(), Rat(0))).status == LPResult::Optimal;
}

// Primitive normal to the hyperplane through pts[idx[0]], ..., pts[idx[n-1]].
IntVec normal_of(const std::vector<Exponent>& pts, const std::vector<int>& idx, int n) {
  IntMat d;
  for (int i = 1; i < n; ++i) {
    IntVec row;
    for (int k = 0; k < n; ++k) row.push_back(pts[idx[i]][k] - pts[idx[0]][k]);
    d.push_back(row);
  }
  IntVec nv(n);
  long g = 0;
  for (int k = 0; k < n; ++k) {
    IntMat minor;
    for (const auto& row : d) {
      IntVec r;
      for (int c = 0; c < n; ++c)
        if (c != k) r.push_back(row[c]);
      minor.push_back(r);
    }
    Int v = n == 1 ? Int(1) : det(minor);
    nv[k] = ((k % 2) ? -1 : 1) * v.get_si();
    g = std::gcd(g, std::abs(nv[k]));
  }
  if (g > 1)
    for (auto& v : nv) v /= g;
  return nv;
}

long dot(const IntVec& a, const Exponent& e) {
  long s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * e[k];
  return s;
}

void choose(int m, int k, int start, std::vector<int>& cur, const std::function<void()>& f) {
  if ((int)cur.size() == k) {
    f();
    return;
  }
  for (int i = start; i <= m - (k - (int)cur.size()); ++i) {
    cur.push_back(i);
    choose(m, k, i + 1, cur, f);
    cur.pop_back();
  }
}

struct Triangulator {
  const std::vector<Exponent>& v;
  std::vector<std::vector<int>> facet_sets;

  // Pulling triangulation of the face spanned by `face` (sorted vertex ids, affine dim d).
  std::vector<std::vector<int>> run(const std::vector<int>& face, long d) {
    if (d == 0) return {{face[0]}};
    int apex = face[0];
    std::set<std::vector<int>> subs;
    for (const auto& fs : facet_sets) {
      std::vector<int> cut;
      std::set_intersection(face.begin(), face.end(), fs.begin(), fs.end(), std::back_inserter(cut));
      if (cut.empty() || std::binary_search(cut.begin(), cut.end(), apex)) continue;
      if (affine_dim(v, cut) == d - 1) subs.insert(cut);
    }
    std::vector<std::vector<int>> out;
    for (const auto& s : subs)
      for (auto simplex : run(s, d - 1)) {
        simplex.push_back(apex);
        out.push_back(simplex);
      }
    return out;
  }
};

}  // namespace

Polytope convex_hull(const std::vector<Exponent>& input) {
  Polytope p;
  if (input.empty()) return p;
  int n = (int)input[0].size();
  p.ambient = n;
  std::set<Exponent> uniq(input.begin(), input.end());
  std::vector<Exponent> pts(uniq.begin(), uniq.end());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!in_hull(pts, pts[i], i)) p.vertices.push_back(pts[i]);
  const auto& v = p.vertices;
  std::vector<int> all(v.size());
  std::iota(all.begin(), all.end(), 0);
  p.dim = (int)affine_dim(v, all);

  Exponent lo = v[0], hi = v[0];
  for (const auto& e : v)
    for (int k = 0; k < n; ++k) {
      lo[k] = std::min(lo[k], e[k]);
      hi[k] = std::max(hi[k], e[k]);
    }

  std::vector<std::vector<int>> facet_sets;
  if (p.dim == n) {
    std::set<std::pair<IntVec, long>> seen;
    std::vector<int> cur;
    choose((int)v.size(), n, 0, cur, [&] {
      if (affine_dim(v, cur) != n - 1) return;
      IntVec nv = normal_of(v, cur, n);
      long c = dot(nv, v[cur[0]]);
      bool le = true, ge = true;
      for (const auto& e : v) {
        long t = dot(nv, e);
        le = le && t <= c;
        ge = ge && t >= c;
      }
      if (!le && !ge) return;
      if (!le) {
        for (auto& x : nv) x = -x;
        c = -c;
      }
      if (!seen.insert({nv, c}).second) return;
      p.facets.push_back({nv, c});
      std::vector<int> on;
      for (int i = 0; i < (int)v.size(); ++i)
        if (dot(nv, v[i]) == c) on.push_back(i);
      facet_sets.push_back(on);
    });
    Triangulator tr{v, facet_sets};
    for (const auto& s : tr.run(all, n)) {
      IntMat m;
      for (int i = 0; i < n; ++i) {
        IntVec row;
        for (int k = 0; k < n; ++k) row.push_back(v[s[i]][k] - v[s[n]][k]);
        m.push_back(row);
      }
      p.normalized_volume += abs(det(m));
    }
    p.is_fano = true;
    for (const auto& f : p.facets) p.is_fano = p.is_fano && f.offset > 0;
  }

  Exponent x = lo;
  for (;;) {
    bool inside;
    if (p.dim == n) {
      inside = true;
      for (const auto& f : p.facets) inside = inside && dot(f.normal, x) <= f.offset;
    } else {
      inside = in_hull(v, x, v.size());
    }
    if (inside) p.lattice_points.push_back(x);
    int k = 0;
    while (k < n && x[k] == hi[k]) x[k] = lo[k], ++k;
    if (k == n) break;
    ++x[k];
  }

  if (p.is_fano) {
    std::set<Exponent> vs(v.begin(), v.end());
    p.is_terminal = true;
    for (const auto& e : p.lattice_points)
      if (!vs.count(e) && std::any_of(e.begin(), e.end(), [](int c) { return c != 0; })) p.is_terminal = false;
  }
  return p;
}

Polytope newton_polytope(const Laurent& f) {
  std::vector<Exponent> pts;
  for (const auto& [e, c] : f.terms()) pts.push_back(e);
  return convex_hull(pts);
}

std::vector<Exponent> minkowski_sum(const std::vector<Exponent>& a, const std::vector<Exponent>& b) {
  std::set<Exponent> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Exponent s(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) s[k] = x[k] + y[k];
      out.insert(s);
    }
  return {out.begin(), out.end()};
}

nlohmann::json polytope_to_json(const Polytope& p) {
  nlohmann::json facets = nlohmann::json::array();
  for (const auto& f : p.facets) facets.push_back({{"normal", f.normal}, {"offset", f.offset}});
  return nlohmann::json{{"ambient", p.ambient},
                        {"dim", p.dim},
                        {"vertices", p.vertices},
                        {"facets", facets},
                        {"lattice_points", p.lattice_points.size()},
                        {"is_fano", p.is_fano},
                        {"is_terminal", p.is_terminal},
                        {"normalized_volume", p.normalized_volume.get_str()}};
}

}  // namespace qf
