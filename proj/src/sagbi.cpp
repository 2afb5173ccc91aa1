#include "qf/sagbi.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "qf/parallel.hpp"
#include "qf/toric.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qf {

namespace {

constexpr long kExactRows = 8;

void column_subsets(long n, long k, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> cur;
  std::function<void(long)> go = [&](long start) {
    if ((long)cur.size() == k) {
      f(cur);
      return;
    }
    for (long c = start; c <= n - (k - (long)cur.size()) + 1; ++c) {
      cur.push_back(c);
      go(c + 1);
      cur.pop_back();
    }
  };
  go(1);
}

std::vector<long> ranks_of(const Monomial& m, const VariableOrder& ord) {
  std::vector<long> r;
  r.reserve(m.size());
  for (const auto& v : m) r.push_back(ord.rank.at(v));
  std::sort(r.begin(), r.end());
  return r;
}

// determinant modulo p of the minor with random values substituted
bool vanishes_mod_p(const SymMatrix& m, const std::vector<long>& sigma, std::mt19937_64& rng) {
  const std::uint64_t p = 2305843009213693951ULL;  // 2^61 - 1
  auto mulmod = [&](std::uint64_t a, std::uint64_t b) { return (std::uint64_t)((unsigned __int128)a * b % p); };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
      if (e & 1) r = mulmod(r, a);
    return r;
  };
  std::map<Variable, std::uint64_t> val;
  long n = m.rows;
  std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n, 0));
  for (long j = 0; j < n; ++j)
    for (long k = 0; k < n; ++k) {
      const auto& cell = m.at(j + 1, sigma[k]);
      if (!cell) continue;
      auto it = val.find(*cell);
      if (it == val.end()) it = val.emplace(*cell, rng() % p).first;
      a[j][k] = it->second;
    }
  for (long c = 0; c < n; ++c) {
    long piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return true;
    std::swap(a[piv], a[c]);
    std::uint64_t inv = powmod(a[c][c], p - 2);
    for (long r = c + 1; r < n; ++r) {
      std::uint64_t f = mulmod(a[r][c], inv);
      for (long k = c; k < n; ++k) a[r][k] = (a[r][k] + p - mulmod(f, a[c][k])) % p;
    }
  }
  return false;
}

struct Frame {
  LadderDiagram ld;
  LadderQuiver lq;
  EdgeLabeling lab;
  CoordinateMatrices cm;
  VariableOrder ord;
};

Frame make_frame(const Quiver& q) {
  Frame f;
  f.ld = build_ladder(q);
  f.lq = build_ladder_quiver(f.ld);
  f.lab = edge_labels(f.ld);
  f.cm = build_matrices(q, f.ld.shape);
  f.ord = plucker_order(f.cm, f.ld.shape);
  return f;
}

std::string mono_string(const Monomial& m) {
  std::string s;
  for (const auto& v : m) s += (s.empty() ? "" : " ") + variable_name(v);
  return s.empty() ? "1" : s;
}

}  // namespace

VariableOrder plucker_order(const CoordinateMatrices& cm, const YShapeDecomposition& y) {
  std::vector<long> blocks(y.branch1.rbegin(), y.branch1.rend() - 1);
  blocks.push_back(1);
  blocks.insert(blocks.end(), y.branch2.begin() + 1, y.branch2.end());
  VariableOrder ord;
  long next = 0;
  for (long v : blocks) {
    std::set<Variable> own;
    for (const auto& row : cm.a.at(v).a)
      for (const auto& cell : row)
        if (cell && cell->vertex == v) own.insert(*cell);
    for (const auto& var : own) ord.rank[var] = next++;
  }
  return ord;
}

Monomial diagonal_term(const SymMatrix& m, const std::vector<long>& sigma) {
  Monomial d;
  for (long j = 0; j < m.rows; ++j) {
    const auto& cell = m.at(j + 1, sigma[j]);
    if (!cell) return {};
    d.push_back(*cell);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::map<Monomial, long> expand_minor(const SymMatrix& m, const std::vector<long>& sigma) {
  if ((long)sigma.size() != m.rows) throw Error("BadInput", "minor must be maximal");
  if (m.rows > kExactRows) throw Error("TooLarge", "exact minor expansion is limited to 8 rows");
  std::map<Monomial, long> out;
  long n = m.rows;
  std::vector<long> perm;
  std::vector<bool> used(n, false);
  Monomial cur;
  std::function<void(long)> go = [&](long j) {
    if (j == n) {
      long inv = 0;
      for (long a = 0; a < n; ++a)
        for (long b = a + 1; b < n; ++b) inv += perm[a] > perm[b];
      Monomial mono = cur;
      std::sort(mono.begin(), mono.end());
      long& c = out[mono];
      c += (inv % 2) ? -1 : 1;
      if (c == 0) out.erase(mono);
      return;
    }
    for (long k = 0; k < n; ++k) {
      if (used[k]) continue;
      const auto& cell = m.at(j + 1, sigma[k]);
      if (!cell) continue;
      used[k] = true;
      perm.push_back(k);
      cur.push_back(*cell);
      go(j + 1);
      cur.pop_back();
      perm.pop_back();
      used[k] = false;
    }
  };
  go(0);
  return out;
}

bool lex_greater(const Monomial& a, const Monomial& b, const VariableOrder& ord) {
  return ranks_of(a, ord) < ranks_of(b, ord);
}

std::optional<Monomial> initial_term(const SymMatrix& m, const std::vector<long>& sigma,
                                     const VariableOrder& ord) {
  if (m.rows <= kExactRows) {
    auto terms = expand_minor(m, sigma);
    if (terms.empty()) return std::nullopt;
    const Monomial* best = nullptr;
    for (const auto& [mono, c] : terms)
      if (!best || lex_greater(mono, *best, ord)) best = &mono;
    return *best;
  }
  std::mt19937_64 rng(0x5eed + sigma.size());
  bool zero = true;
  for (int attempt = 0; attempt < 3 && zero; ++attempt) zero = vanishes_mod_p(m, sigma, rng);
  if (zero) return std::nullopt;
  Monomial d = diagonal_term(m, sigma);
  if (d.empty()) throw Error("TooLarge", "nonvanishing minor with a zero diagonal above the exact range");
  return d;
}

std::vector<MinorTerm> nonzero_minors(const SymMatrix& m, const VariableOrder& ord) {
  std::vector<MinorTerm> out;
  column_subsets(m.cols, m.rows, [&](const std::vector<long>& sigma) {
    auto in = initial_term(m, sigma, ord);
    if (!in) return;
    out.push_back({sigma, *in, *in == diagonal_term(m, sigma)});
  });
  return out;
}

std::vector<MinorTerm> nonzero_minors_parallel(const SymMatrix& m, const VariableOrder& ord) {
  std::vector<std::vector<long>> all;
  column_subsets(m.cols, m.rows, [&](const std::vector<long>& s) { all.push_back(s); });
  std::vector<std::optional<MinorTerm>> slot(all.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (long i = 0; i < (long)all.size(); ++i) {
    auto in = initial_term(m, all[i], ord);
    if (in) slot[i] = MinorTerm{all[i], *in, *in == diagonal_term(m, all[i])};
  }
  std::vector<MinorTerm> out;
  for (auto& s : slot)
    if (s) out.push_back(std::move(*s));
  return out;
}

BijectionReport verify_path_bijection(const Quiver& q) {
  Frame f = make_frame(q);
  BijectionReport rep;
  for (const auto& [v, m] : f.cm.a) {
    VertexBijection vb;
    vb.vertex = v;
    std::set<Monomial> inits, prods;
    for (const auto& mt : nonzero_minors(m, f.ord)) {
      inits.insert(mt.initial);
      vb.diagonal_initial = vb.diagonal_initial && mt.diagonal;
      ++vb.minors;
    }
    for (const auto& p : paths_between(f.lq, f.lq.path_start.at(v), f.lq.path_end.at(v))) {
      if (!prods.insert(label_product(f.lab, f.lq, p)).second)
        vb.mismatches.push_back("two paths share the monomial " + mono_string(label_product(f.lab, f.lq, p)));
      ++vb.paths;
    }
    for (const auto& x : inits)
      if (!prods.count(x)) vb.mismatches.push_back("initial term without a path: " + mono_string(x));
    for (const auto& x : prods)
      if (!inits.count(x)) vb.mismatches.push_back("path without a minor: " + mono_string(x));
    vb.equal = vb.mismatches.empty() && vb.minors == vb.paths;
    rep.pass = rep.pass && vb.equal && vb.diagonal_initial;
    rep.vertices.push_back(vb);
  }
  return rep;
}

KernelReport verify_binomial_kernels(const Quiver& q, long d) {
  Frame f = make_frame(q);
  KernelReport rep;
  rep.degree = d;
  struct Section {
    std::vector<long> arrows;
    std::vector<Edge> edges;
    Monomial initial;
  };
  std::vector<Section> secs;
  for (const auto& [v, m] : f.cm.a) {
    std::map<Monomial, Monomial> by_label;
    for (const auto& mt : nonzero_minors(m, f.ord)) by_label[mt.initial] = mt.initial;
    for (const auto& p : paths_between(f.lq, f.lq.path_start.at(v), f.lq.path_end.at(v))) {
      Monomial lp = label_product(f.lab, f.lq, p);
      auto it = by_label.find(lp);
      if (it == by_label.end()) {
        rep.mismatches.push_back("vertex " + std::to_string(v) + ": path " + mono_string(lp) + " has no minor");
        continue;
      }
      Section s{p, path_edges(f.lq, p), it->second};
      std::sort(s.arrows.begin(), s.arrows.end());
      std::sort(s.edges.begin(), s.edges.end());
      secs.push_back(std::move(s));
    }
  }

  using Key = std::tuple<std::vector<long>, std::vector<Edge>, Monomial>;
  std::set<Key> triples;
  std::map<std::vector<long>, long> by_arrows;
  std::map<std::vector<Edge>, long> by_edges;
  std::map<Monomial, long> by_mono;
  std::vector<long> pick;
  std::function<void(std::size_t)> go = [&](std::size_t start) {
    if (!pick.empty()) {
      Key k;
      auto& [ar, ed, mo] = k;
      for (long i : pick) {
        ar.insert(ar.end(), secs[i].arrows.begin(), secs[i].arrows.end());
        ed.insert(ed.end(), secs[i].edges.begin(), secs[i].edges.end());
        mo.insert(mo.end(), secs[i].initial.begin(), secs[i].initial.end());
      }
      std::sort(ar.begin(), ar.end());
      std::sort(ed.begin(), ed.end());
      std::sort(mo.begin(), mo.end());
      ++by_arrows[ar];
      ++by_edges[ed];
      ++by_mono[mo];
      triples.insert(std::move(k));
      ++rep.multisets;
    }
    if ((long)pick.size() == d) return;
    for (std::size_t i = start; i < secs.size(); ++i) {
      pick.push_back((long)i);
      go(i);
      pick.pop_back();
    }
  };
  go(0);

  rep.classes = (long)by_mono.size();
  for (const auto& [m, n] : by_mono) rep.relations += n > 1;
  // the three groupings agree iff each has as many classes as the joint key
  if (by_arrows.size() != triples.size())
    rep.mismatches.push_back("arrow multisets do not separate the initial monomials");
  if (by_edges.size() != triples.size())
    rep.mismatches.push_back("edge supports do not separate the initial monomials");
  if (by_mono.size() != triples.size())
    rep.mismatches.push_back("initial monomials do not separate the arrow multisets");
  rep.pass = rep.mismatches.empty();
  return rep;
}

TableauFrame tableau_frame(const CoordinateMatrices& cm, const Quiver& q) {
  (void)q;
  TableauFrame fr;
  fr.m1 = &cm.a.at(cm.leaf1);
  fr.m2 = &cm.a.at(cm.leaf2);
  fr.upper_rows = fr.m1->rows - cm.a.at(1).rows;
  fr.shift1 = cm.col_shift.at(cm.leaf1);
  fr.shift2 = cm.col_shift.at(cm.leaf2);
  return fr;
}

SkewTableau encode_tableau(const Monomial& mono, const TableauFrame& fr) {
  std::map<Variable, std::pair<long, long>> up, low;  // variable -> (row, global column)
  for (long j = 0; j < fr.upper_rows; ++j)
    for (long k = 0; k < fr.m1->cols; ++k)
      if (const auto& c = fr.m1->a[j][k]) up[*c] = {j, k + 1 + fr.shift1};
  for (long j = 0; j < fr.m2->rows; ++j)
    for (long k = 0; k < fr.m2->cols; ++k)
      if (const auto& c = fr.m2->a[j][k]) low[*c] = {j, k + 1 + fr.shift2};
  SkewTableau t;
  t.upper.resize(fr.upper_rows);
  t.lower.resize(fr.m2->rows);
  for (const auto& v : mono) {
    if (auto it = up.find(v); it != up.end())
      t.upper[it->second.first].push_back(it->second.second);
    else if (auto jt = low.find(v); jt != low.end())
      t.lower[jt->second.first].push_back(jt->second.second);
    else
      throw Error("BadInput", variable_name(v) + " is not an entry of M_1 or M_2");
  }
  for (auto& r : t.upper) std::sort(r.begin(), r.end());
  for (auto& r : t.lower) std::sort(r.begin(), r.end());
  return t;
}

Monomial decode_tableau(const SkewTableau& t, const TableauFrame& fr) {
  Monomial m;
  auto cell = [](const SymMatrix& a, long row, long col) -> const std::optional<Variable>& {
    static const std::optional<Variable> none;
    if (row < 0 || row >= a.rows || col < 1 || col > a.cols) return none;
    return a.at(row + 1, col);
  };
  for (std::size_t j = 0; j < t.upper.size(); ++j)
    for (long g : t.upper[j]) {
      const auto& c = cell(*fr.m1, (long)j, g - fr.shift1);
      if (!c) throw Error("BadInput", "tableau entry on a zero of M_1");
      m.push_back(*c);
    }
  for (std::size_t j = 0; j < t.lower.size(); ++j)
    for (long g : t.lower[j]) {
      const auto& c = cell(*fr.m2, (long)j, g - fr.shift2);
      if (!c) throw Error("BadInput", "tableau entry on a zero of M_2");
      m.push_back(*c);
    }
  std::sort(m.begin(), m.end());
  return m;
}

namespace {

bool rows_weak(const std::vector<std::vector<long>>& rows) {
  for (const auto& r : rows)
    if (!std::is_sorted(r.begin(), r.end())) return false;
  return true;
}

}  // namespace

bool tableau_rows_upper(const SkewTableau& t) {
  if (!rows_weak(t.upper)) return false;
  for (std::size_t p = 0; p + 1 < t.upper.size(); ++p) {
    const auto &a = t.upper[p], &b = t.upper[p + 1];
    if (a.size() > b.size()) return false;
    // right-aligned: a[q] sits above b[q + |b| - |a|]
    for (std::size_t q = 0; q < a.size(); ++q)
      if (!(a[q] < b[q + b.size() - a.size()])) return false;
  }
  return true;
}

bool tableau_boundary(const SkewTableau& t) {
  if (t.upper.empty() || t.upper.back().empty()) return true;
  const auto& a = t.upper.back();
  if (t.lower.empty() || t.lower.front().size() < a.size()) return false;
  const auto& b = t.lower.front();
  for (std::size_t q = 0; q < a.size(); ++q)
    if (!(a[q] < b[q + b.size() - a.size()])) return false;
  return true;
}

bool tableau_rows_lower(const SkewTableau& t) {
  if (!rows_weak(t.lower)) return false;
  for (std::size_t p = 0; p + 1 < t.lower.size(); ++p) {
    const auto &a = t.lower[p], &b = t.lower[p + 1];
    if (a.size() < b.size()) return false;
    for (std::size_t q = 0; q < b.size(); ++q)
      if (!(a[q] < b[q])) return false;
  }
  return true;
}

bool is_semistandard(const SkewTableau& t) {
  return tableau_rows_upper(t) && tableau_boundary(t) && tableau_rows_lower(t);
}

SemistandardResult enumerate_semistandard(const Quiver& q, const std::map<long, long>& multidegree) {
  Frame f = make_frame(q);
  TableauFrame fr = tableau_frame(f.cm, q);
  const auto& y = f.ld.shape;
  long b = f.cm.a.at(1).rows;

  // column heights: lower-only columns (vertex 1 and branch 2), then columns
  // reaching into the upper rows (branch 1 beyond vertex 1)
  std::vector<long> low_cols, up_cols;
  for (const auto& [v, d] : multidegree) {
    if (!f.cm.a.count(v)) throw Error("BadInput", "no vertex " + std::to_string(v));
    if (d < 0) throw Error("BadInput", "negative degree");
    bool upper = v != 1 && std::find(y.branch1.begin(), y.branch1.end(), v) != y.branch1.end();
    for (long i = 0; i < d; ++i) (upper ? up_cols : low_cols).push_back(f.cm.a.at(v).rows);
  }
  std::sort(low_cols.rbegin(), low_cols.rend());
  std::sort(up_cols.begin(), up_cols.end());

  struct Cell {
    bool upper;
    long row;
  };
  std::vector<std::vector<Cell>> cols;
  for (long h : low_cols) {
    std::vector<Cell> c;
    for (long r = 0; r < h; ++r) c.push_back({false, r});
    cols.push_back(c);
  }
  for (long h : up_cols) {
    std::vector<Cell> c;
    for (long r = fr.upper_rows - (h - b); r < fr.upper_rows; ++r) c.push_back({true, r});
    for (long r = 0; r < b; ++r) c.push_back({false, r});
    cols.push_back(c);
  }
  long max_col = std::max(fr.m1->cols + fr.shift1, fr.m2->cols + fr.shift2);
  auto valid = [&](const Cell& c, long g) {
    const SymMatrix& m = c.upper ? *fr.m1 : *fr.m2;
    long k = g - (c.upper ? fr.shift1 : fr.shift2);
    return k >= 1 && k <= m.cols && m.at(c.row + 1, k).has_value();
  };

  SemistandardResult res;
  SkewTableau t;
  t.upper.assign(fr.upper_rows, {});
  t.lower.assign(fr.m2->rows, {});
  std::set<Monomial> found;
  std::function<void(std::size_t, std::size_t, long)> go = [&](std::size_t ci, std::size_t cj, long above) {
    if (ci == cols.size()) {
      if (!is_semistandard(t)) return;
      res.tableaux.push_back(t);
      found.insert(decode_tableau(t, fr));
      return;
    }
    if (cj == cols[ci].size()) {
      go(ci + 1, 0, 0);
      return;
    }
    const Cell& c = cols[ci][cj];
    auto& row = c.upper ? t.upper[c.row] : t.lower[c.row];
    long lo = std::max(above + 1, row.empty() ? 1L : row.back());
    for (long g = lo; g <= max_col; ++g) {
      if (!valid(c, g)) continue;
      row.push_back(g);
      go(ci, cj + 1, g);
      row.pop_back();
    }
  };
  go(0, 0, 0);
  res.count = (long)res.tableaux.size();

  // oracle: every product of initial terms with this multidegree
  std::set<Monomial> oracle{Monomial{}};
  for (const auto& [v, d] : multidegree) {
    auto terms = nonzero_minors(f.cm.a.at(v), f.ord);
    for (long i = 0; i < d; ++i) {
      std::set<Monomial> next;
      for (const auto& base : oracle)
        for (const auto& mt : terms) {
          Monomial m = base;
          m.insert(m.end(), mt.initial.begin(), mt.initial.end());
          std::sort(m.begin(), m.end());
          next.insert(std::move(m));
        }
      oracle = std::move(next);
    }
  }
  res.oracle = (long)oracle.size();
  res.equal_sets = found == oracle && (long)found.size() == res.count;
  return res;
}

nlohmann::json bijection_to_json(const BijectionReport& r) {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : r.vertices)
    vs.push_back({{"vertex", v.vertex},
                  {"minors", v.minors},
                  {"paths", v.paths},
                  {"diagonal_initial", v.diagonal_initial},
                  {"pass", v.equal && v.diagonal_initial},
                  {"mismatches", v.mismatches}});
  return {{"vertices", vs}, {"pass", r.pass}};
}

nlohmann::json kernel_to_json(const KernelReport& r) {
  return {{"degree", r.degree},     {"multisets", r.multisets}, {"kernel_classes", r.classes},
          {"relations", r.relations}, {"mismatches", r.mismatches}, {"pass", r.pass}};
}

nlohmann::json tableau_to_json(const SkewTableau& t) { return {{"upper", t.upper}, {"lower", t.lower}}; }

}  // namespace qf
