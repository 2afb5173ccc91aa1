#include "qf/przyjalkowski.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qf/parallel.hpp"

namespace qf {

namespace {

IntVec add(IntVec a, const IntVec& b, long k = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

IntVec unit_class(long rank, long start, long end) {
  IntVec c(rank, 0);
  if (end > 0) c[end - 1] += 1;
  if (start > 0) c[start - 1] -= 1;
  return c;
}

Point point_from_json(const nlohmann::json& j) { return {j.at(0).get<long>(), j.at(1).get<long>()}; }

std::map<long, long> powers_from_json(const nlohmann::json& j) {
  std::map<long, long> m;
  for (auto it = j.begin(); it != j.end(); ++it) m[std::stol(it.key())] = it.value().get<long>();
  return m;
}

nlohmann::json powers_to_json(const std::map<long, long>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

// Cut a section path into consecutive pieces with exactly one vertical unit step each.
std::vector<std::pair<long, long>> auto_split(const LadderQuiver& lq, long start, long end, long pieces) {
  for (const LadderPath& p : paths_between(lq, start, end)) {
    std::vector<std::pair<long, long>> cut;
    long from = start, count = 0;
    bool ok = true;
    for (long ai : p) {
      const Arrow& a = lq.arrows[ai];
      long up = a.support.back().y - a.support.front().y;
      if (up > 1) {
        ok = false;
        break;
      }
      count += up;
      if (up == 1 && count < pieces) {
        cut.push_back({from, a.tgt});
        from = a.tgt;
      }
    }
    if (!ok || count != pieces) continue;
    cut.push_back({from, end});
    return cut;
  }
  throw Error("NoSplitAvailable", "no section path splits into " + std::to_string(pieces) + " pieces");
}

}  // namespace

BundleSpec bundle_from_json(const nlohmann::json& j) {
  BundleSpec spec;
  const nlohmann::json& list = j.is_object() ? j.at("summands") : j;
  for (const auto& s : list) {
    BundleSummand b;
    std::string type = s.at("type").get<std::string>();
    if (type == "det") {
      b.kind = BundleSummand::Det;
      b.powers = powers_from_json(s.at("powers"));
    } else if (type == "split") {
      b.kind = BundleSummand::Split;
      b.vertex = s.at("vertex").get<long>();
      b.wedge = s.value("wedge", 1L);
      if (s.contains("paths"))
        for (const auto& piece : s.at("paths")) {
          std::vector<Point> pts;
          for (const auto& p : piece) pts.push_back(point_from_json(p));
          b.pieces.push_back(pts);
        }
      if (s.contains("twist")) b.twist = powers_from_json(s.at("twist"));
    } else {
      throw Error("BadInput", "unknown summand type " + type);
    }
    spec.push_back(b);
  }
  return spec;
}

nlohmann::json bundle_to_json(const BundleSpec& spec) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& b : spec) {
    if (b.kind == BundleSummand::Det) {
      out.push_back({{"type", "det"}, {"powers", powers_to_json(b.powers)}});
      continue;
    }
    nlohmann::json s{{"type", "split"}, {"vertex", b.vertex}, {"wedge", b.wedge}};
    if (!b.pieces.empty()) {
      nlohmann::json paths = nlohmann::json::array();
      for (const auto& piece : b.pieces) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : piece) pts.push_back({p.x, p.y});
        paths.push_back(pts);
      }
      s["paths"] = paths;
    }
    if (!b.twist.empty()) s["twist"] = powers_to_json(b.twist);
    out.push_back(s);
  }
  return out;
}

std::vector<IntVec> bundle_to_divisors(const Quiver& q, const LadderDiagram& ld, const LadderQuiver& lq,
                                       const ToricGitData& gd, const BundleSpec& spec) {
  (void)ld;
  auto dv = vertex_divisors(gd, lq);
  IntVec c = anticanonical_coefficients(q);
  IntVec used(q.vertex_count, 0);
  auto det_class = [&](const std::map<long, long>& powers) {
    IntVec col(gd.rank, 0);
    for (const auto& [v, a] : powers) {
      if (!dv.count(v) || a < 0) throw Error("BadInput", "bad det power at vertex " + std::to_string(v));
      col = add(col, dv.at(v), a);
    }
    return col;
  };

  std::vector<IntVec> cols;
  for (const auto& b : spec) {
    if (b.kind == BundleSummand::Det) {
      cols.push_back(det_class(b.powers));
      for (const auto& [v, a] : b.powers) used[v] += a;
      continue;
    }
    long v = b.vertex;
    if (!dv.count(v)) throw Error("BadInput", "no vertex " + std::to_string(v));
    long r = q.dims[v];
    long start = lq.path_start.at(v), end = lq.path_end.at(v);
    std::vector<std::pair<long, long>> cut;
    if (b.pieces.empty()) {
      cut = auto_split(lq, start, end, r);
    } else {
      if ((long)b.pieces.size() != r)
        throw Error("NoSplitAvailable", "vertex " + std::to_string(v) + " needs " + std::to_string(r) + " pieces");
      long at = start;
      for (const auto& piece : b.pieces) {
        if (piece.size() < 2) throw Error("NoSplitAvailable", "piece needs two endpoints");
        // every listed point must be a ladder vertex reachable from the previous one
        std::vector<long> idx;
        for (const auto& p : piece) {
          long i = lq.index_of(p);
          if (i < 0)
            throw Error("NoSplitAvailable",
                        "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ") is not a ladder vertex");
          idx.push_back(i);
        }
        if (idx.front() != at) throw Error("NoSplitAvailable", "pieces do not chain");
        for (std::size_t t = 0; t + 1 < idx.size(); ++t)
          if (paths_between(lq, idx[t], idx[t + 1]).empty()) throw Error("NoSplitAvailable", "no path for piece");
        cut.push_back({idx.front(), idx.back()});
        at = idx.back();
      }
      if (at != end) throw Error("NoSplitAvailable", "pieces do not end at the section endpoint");
    }
    std::vector<IntVec> piece_class;
    for (const auto& [s, e] : cut) piece_class.push_back(unit_class(gd.rank, s, e));
    IntVec tw = det_class(b.twist);
    long before = (long)cols.size();
    std::vector<int> sel(r, 0);
    std::fill(sel.begin(), sel.begin() + std::min(b.wedge, r), 1);
    if (b.wedge < 1 || b.wedge > r) throw Error("BadInput", "wedge out of range");
    do {
      IntVec col = tw;
      for (long t = 0; t < r; ++t)
        if (sel[t]) col = add(col, piece_class[t]);
      cols.push_back(col);
    } while (std::prev_permutation(sel.begin(), sel.end()));
    used[v] += binomial(r - 1, b.wedge - 1).get_si();
    for (const auto& [u, a] : b.twist) used[u] += a * ((long)cols.size() - before);
  }
  for (long v = 1; v < q.vertex_count; ++v)
    if (used[v] > c[v] - 1)
      throw Error("AmpleRemainderViolated", "det(W_" + std::to_string(v) + ") used " + std::to_string(used[v]) +
                                                " times, at most " + std::to_string(c[v] - 1) + " allowed");
  return cols;
}

MirrorProblem mirror_problem(const ToricGitData& gd, const std::vector<IntVec>& l) {
  MirrorProblem mp;
  mp.rank = gd.rank;
  mp.d = gd.weights;
  mp.w = gd.stability;
  mp.l = l;
  mp.labels = gd.arrow_labels;
  return mp;
}

namespace {

IntMat basis_matrix(const MirrorProblem& mp, const std::vector<long>& b) {
  IntMat a(mp.rank, IntVec(b.size()));
  for (std::size_t c = 0; c < b.size(); ++c)
    for (long r = 0; r < mp.rank; ++r) a[r][c] = mp.d[b[c]][r];
  return a;
}

IntVec coords_in(const IntMat& inv, const IntVec& v) {
  IntVec out(inv.size(), 0);
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) out[i] += inv[i][k] * v[k];
  return out;
}

bool unimodular(const IntMat& a) {
  Int d = det(a);
  return d == 1 || d == -1;
}

std::vector<long> sorted_union(std::vector<long> a, const std::vector<long>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

// Disjoint S_1..S_k drawn from `pool` with sum_{S_i} D = L_i and S_i not inside B_1.
struct SubsetSearch {
  const MirrorProblem& mp;
  const std::set<long>& b1;
  std::vector<long> pool;
  std::vector<char> taken;
  std::vector<std::vector<long>> s;

  bool bundle(std::size_t i) {
    if (i == mp.l.size()) return true;
    std::vector<long> avail;
    for (std::size_t t = 0; t < pool.size(); ++t)
      if (!taken[t]) avail.push_back((long)t);
    // suffix bounds per coordinate
    std::size_t r = mp.rank, n = avail.size();
    std::vector<IntVec> lo(n + 1, IntVec(r, 0)), hi(n + 1, IntVec(r, 0));
    for (std::size_t t = n; t-- > 0;)
      for (std::size_t c = 0; c < r; ++c) {
        long v = mp.d[pool[avail[t]]][c];
        lo[t][c] = lo[t + 1][c] + std::min(0L, v);
        hi[t][c] = hi[t + 1][c] + std::max(0L, v);
      }
    std::vector<long> cur;
    IntVec need = mp.l[i];
    std::function<bool(std::size_t)> go = [&](std::size_t t) -> bool {
      bool zero = std::all_of(need.begin(), need.end(), [](long x) { return x == 0; });
      if (zero && !cur.empty()) {
        bool outside = std::any_of(cur.begin(), cur.end(), [&](long e) { return !b1.count(pool[e]); });
        if (outside) {
          std::vector<long> si;
          for (long e : cur) si.push_back(pool[e]);
          s[i + 1] = si;
          for (long e : cur) taken[e] = 1;
          if (bundle(i + 1)) return true;
          for (long e : cur) taken[e] = 0;
        }
      }
      if (t == n) return false;
      for (std::size_t c = 0; c < r; ++c)
        if (need[c] < lo[t][c] || need[c] > hi[t][c]) return false;
      long e = avail[t];
      cur.push_back(e);
      need = add(need, mp.d[pool[e]], -1);
      if (go(t + 1)) return true;
      need = add(need, mp.d[pool[e]], 1);
      cur.pop_back();
      return go(t + 1);
    };
    return go(0);
  }
};

void choose_subsets(long m, long k, const std::function<bool(const std::vector<long>&)>& f) {
  std::vector<long> cur;
  std::function<bool(long)> go = [&](long start) -> bool {
    if ((long)cur.size() == k) return f(cur);
    for (long i = start; i <= m - (k - (long)cur.size()); ++i) {
      cur.push_back(i);
      if (go(i + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  go(0);
}

}  // namespace

std::string check_partition(const MirrorProblem& mp, const ConvexPartition& cp) {
  long m = (long)mp.d.size(), k = (long)mp.l.size();
  std::vector<long> b = sorted_union(cp.b0, cp.b1);
  if ((long)b.size() != mp.rank || std::adjacent_find(b.begin(), b.end()) != b.end()) return "B has wrong size";
  IntMat bm = basis_matrix(mp, b);
  if (!unimodular(bm)) return "B is not a lattice basis";
  if ((long)cp.s.size() != k + 1 || (long)cp.j.size() != k + 1) return "wrong number of parts";
  std::vector<int> seen(m, 0);
  for (long e : cp.b0) seen.at(e) += 1;
  for (const auto& part : cp.s)
    for (long e : part) seen.at(e) += 1;
  for (long e = 0; e < m; ++e)
    if (seen[e] != 1) return "column " + std::to_string(e) + " not covered exactly once";
  IntMat inv = unimodular_inverse(bm);
  std::set<long> b0(cp.b0.begin(), cp.b0.end()), b1(cp.b1.begin(), cp.b1.end());
  for (long i = 1; i <= k; ++i) {
    IntVec sum(mp.rank, 0);
    for (long e : cp.s[i]) sum = add(sum, mp.d[e]);
    if (sum != mp.l[i - 1]) return "S_" + std::to_string(i) + " does not sum to L_" + std::to_string(i);
    IntVec coords = coords_in(inv, mp.l[i - 1]);
    for (std::size_t t = 0; t < b.size(); ++t)
      if (coords[t] < 0 || (coords[t] > 0 && !b0.count(b[t])))
        return "L_" + std::to_string(i) + " is not in the positive span of B_0";
    const auto& si = cp.s[i];
    if (std::find(si.begin(), si.end(), cp.j[i]) == si.end()) return "j_i not in S_i";
    bool inside = std::all_of(si.begin(), si.end(), [&](long e) { return b1.count(e) > 0; });
    if (!inside && b1.count(cp.j[i])) return "j_" + std::to_string(i) + " lies in B_1";
  }
  return "";
}

namespace {

// Try one basis; appends a partition to `out` if one exists.  Returns true to stop.
bool try_basis(const MirrorProblem& mp, const std::vector<long>& b, const std::vector<long>* preferred_b0,
               std::vector<ConvexPartition>& out, std::size_t limit) {
  long m = (long)mp.d.size(), k = (long)mp.l.size();
  {
    IntMat bm = basis_matrix(mp, b);
    if (!unimodular(bm)) return false;
    IntMat inv = unimodular_inverse(bm);
    std::set<long> support;
    for (const auto& l : mp.l) {
      IntVec c = coords_in(inv, l);
      for (std::size_t t = 0; t < b.size(); ++t) {
        if (c[t] < 0) return false;
        if (c[t] > 0) support.insert(b[t]);
      }
    }
    // B_0 = the preferred set, then all of B, then the support of the L_i
    std::vector<std::vector<long>> tries;
    if (preferred_b0) tries.push_back(*preferred_b0);
    tries.push_back(b);
    tries.push_back(std::vector<long>(support.begin(), support.end()));
    for (std::size_t attempt = 0; attempt < tries.size(); ++attempt) {
      std::vector<long> b0 = tries[attempt];
      if (std::find(tries.begin(), tries.begin() + attempt, b0) != tries.begin() + attempt) continue;
      if (!std::includes(b0.begin(), b0.end(), support.begin(), support.end())) continue;
      std::set<long> b0s(b0.begin(), b0.end()), b1;
      for (long e : b)
        if (!b0s.count(e)) b1.insert(e);
      SubsetSearch ss{mp, b1, {}, {}, std::vector<std::vector<long>>(k + 1)};
      for (long e = 0; e < m; ++e)
        if (!b0s.count(e)) ss.pool.push_back(e);
      ss.taken.assign(ss.pool.size(), 0);
      if (!ss.bundle(0)) continue;
      ConvexPartition cp;
      cp.b0 = b0;
      cp.b1.assign(b1.begin(), b1.end());
      cp.s = ss.s;
      std::set<long> rest(ss.pool.begin(), ss.pool.end());
      for (long i = 1; i <= k; ++i)
        for (long e : ss.s[i]) rest.erase(e);
      cp.s[0].assign(rest.begin(), rest.end());
      cp.j.assign(k + 1, -1);
      for (long i = 1; i <= k; ++i)
        for (long e : ss.s[i])
          if (!b1.count(e)) {
            cp.j[i] = e;
            break;
          }
      out.push_back(cp);
      return out.size() >= limit;
    }
  }
  return false;
}

}  // namespace

std::vector<ConvexPartition> convex_partitions(const MirrorProblem& mp, std::size_t limit, const PartitionSeed* seed) {
  std::vector<ConvexPartition> out;
  std::vector<long> seeded;
  if (seed && seed->b0.size() + seed->b1.size() == (std::size_t)mp.rank) {
    seeded = sorted_union(seed->b0, seed->b1);
    std::vector<long> b0 = seed->b0;
    std::sort(b0.begin(), b0.end());
    if (try_basis(mp, seeded, &b0, out, limit)) return out;
  }
  choose_subsets((long)mp.d.size(), mp.rank, [&](const std::vector<long>& b) {
    if (b == seeded) return false;
    return try_basis(mp, b, nullptr, out, limit);
  });
  return out;
}

ConvexPartition find_convex_partition(const MirrorProblem& mp, const PartitionSeed* seed) {
  auto all = convex_partitions(mp, 1, seed);
  if (all.empty()) throw Error("NotFound", "no extended convex partition");
  return all.front();
}

PartitionSeed ladder_seed(const LadderQuiver& lq, const ToricGitData& gd) {
  PartitionSeed seed;
  IntMat chosen;
  auto independent_with = [&](long a) {
    IntMat t = chosen;
    t.push_back(gd.weights[a]);
    return rank(t) == (long)t.size();
  };
  // longest section path of every vertex, arrows taken greedily while independent
  for (const auto& [v, start] : lq.path_start) {
    const LadderPath* best = nullptr;
    auto paths = paths_between(lq, start, lq.path_end.at(v));
    for (const auto& p : paths)
      if (!best || p.size() > best->size()) best = &p;
    if (!best) continue;
    for (long a : *best)
      if (std::find(seed.b0.begin(), seed.b0.end(), a) == seed.b0.end() && independent_with(a)) {
        seed.b0.push_back(a);
        chosen.push_back(gd.weights[a]);
      }
  }
  // extend by arrows into each ladder vertex
  for (long v = 1; v < (long)lq.vertices.size() && (long)chosen.size() < gd.rank; ++v)
    for (long a = 0; a < (long)lq.arrows.size(); ++a)
      if (lq.arrows[a].tgt == v && std::find(seed.b0.begin(), seed.b0.end(), a) == seed.b0.end() &&
          std::find(seed.b1.begin(), seed.b1.end(), a) == seed.b1.end() && independent_with(a)) {
        seed.b1.push_back(a);
        chosen.push_back(gd.weights[a]);
        break;
      }
  std::sort(seed.b0.begin(), seed.b0.end());
  std::sort(seed.b1.begin(), seed.b1.end());
  return seed;
}

Laurent przyjalkowski(const MirrorProblem& mp, const ConvexPartition& cp) {
  std::string why = check_partition(mp, cp);
  if (!why.empty()) throw Error("NotLaurent", "invalid partition: " + why);
  long m = (long)mp.d.size(), k = (long)mp.l.size();
  std::vector<long> b = sorted_union(cp.b0, cp.b1);
  std::set<long> bset(b.begin(), b.end()), b1(cp.b1.begin(), cp.b1.end());
  IntMat inv = unimodular_inverse(basis_matrix(mp, b));

  std::vector<long> part(m, 0);  // which S_i holds a column (-1 for B_0)
  for (long e : cp.b0) part[e] = -1;
  for (long i = 0; i <= k; ++i)
    for (long e : cp.s[i]) part[e] = i;

  // free variables: non-basis columns other than the distinguished j_i
  std::vector<long> var(m, -1);
  int n = 0;
  for (long e = 0; e < m; ++e)
    if (!bset.count(e) && !(part[e] > 0 && cp.j[part[e]] == e)) var[e] = n++;
  if (n != m - mp.rank - k) throw Error("WrongDimension", std::to_string(n) + " variables");

  // x_e = monomial * prod_i T_i^tpow[i]
  std::vector<Exponent> mono(m, Exponent(n, 0));
  std::vector<std::vector<long>> tpow(m, std::vector<long>(k + 1, 0));
  for (long e = 0; e < m; ++e) {
    if (bset.count(e)) continue;
    if (var[e] >= 0) mono[e][var[e]] = 1;
    if (part[e] > 0) tpow[e][part[e]] = -1;
  }
  for (std::size_t row = 0; row < b.size(); ++row) {
    long be = b[row];
    for (long e = 0; e < m; ++e) {
      if (bset.count(e)) continue;
      long coef = -coords_in(inv, mp.d[e])[row];
      if (coef == 0) continue;
      for (int v = 0; v < n; ++v) mono[be][v] += (int)(coef * mono[e][v]);
      for (long i = 1; i <= k; ++i) tpow[be][i] += coef * tpow[e][i];
    }
  }
  // B_1 members of S_i: y = T_i x must be a monomial
  for (long e : cp.b1)
    for (long i = 1; i <= k; ++i) {
      long want = part[e] == i ? -1 : 0;
      if (tpow[e][i] != want) throw Error("NotLaurent", "T_" + std::to_string(i) + " survives in y_" + std::to_string(e));
    }

  std::vector<Laurent> t(k + 1, Laurent(n));
  for (long i = 1; i <= k; ++i)
    for (long e : cp.s[i]) t[i].add_term(mono[e], 1);

  Laurent f(n);
  for (long e : cp.s[0]) f.add_term(mono[e], 1);
  for (long e : cp.b0) {
    Laurent term = Laurent::monomial(mono[e]);
    for (long i = 1; i <= k; ++i) {
      if (tpow[e][i] < 0) throw Error("NotLaurent", "T_" + std::to_string(i) + " in a denominator");
      if (tpow[e][i] > 0) term = term * t[i].pow((unsigned)tpow[e][i]);
    }
    f += term;
  }
  // constant terms come only from sum_{j in S_i} x_j = 1
  f.add_term(Exponent(n, 0), -f.constant_term());
  return f;
}

namespace {

struct BetaWalk {
  const MirrorProblem& mp;
  unsigned n;
  long r;
  IntVec dvec;
  std::vector<long> lo, hi;
  std::vector<IntVec> rows;  // constraint functionals: D_a then L_i (>= 0)
  // suffix extrema of each functional over the remaining box
  std::vector<std::vector<long>> smax, dmin;

  BetaWalk(const MirrorProblem& p, unsigned n_) : mp(p), n(n_), r(p.rank) {
    dvec = p.w;
    for (const auto& l : p.l) dvec = add(dvec, l, -1);
    for (long c = 0; c < r; ++c) {
      Rat a, b;
      if (!coordinate_range(p.d, dvec, (long)n, (std::size_t)c, a, b))
        throw Error("NonFanoData", "degree functional is not positive on the effective cone");
      lo.push_back(ceil_rat(a));
      hi.push_back(floor_rat(b));
    }
    rows = p.d;
    rows.insert(rows.end(), p.l.begin(), p.l.end());
    smax.assign(rows.size(), std::vector<long>(r + 1, 0));
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (long c = r; c-- > 0;)
        smax[a][c] = smax[a][c + 1] + std::max(rows[a][c] * lo[c], rows[a][c] * hi[c]);
    dmin.assign(1, std::vector<long>(r + 1, 0));
    for (long c = r; c-- > 0;) dmin[0][c] = dmin[0][c + 1] + std::min(dvec[c] * lo[c], dvec[c] * hi[c]);
  }

  void walk(long c, IntVec& beta, std::vector<long>& part, long dpart, std::vector<Rat>& acc) const {
    if (c == r) {
      if (dpart < 0 || dpart > (long)n) return;
      Rat term = Rat(factorial((unsigned)dpart));
      std::size_t m = mp.d.size();
      for (std::size_t a = 0; a < rows.size(); ++a) {
        if (part[a] < 0) return;
        if (a < m) term /= factorial((unsigned)part[a]);
        else term *= factorial((unsigned)part[a]);
      }
      acc[dpart] += term;
      return;
    }
    for (long v = lo[c]; v <= hi[c]; ++v) {
      long dn = dpart + dvec[c] * v;
      if (dn + dmin[0][c + 1] > (long)n) continue;
      bool ok = true;
      for (std::size_t a = 0; a < rows.size(); ++a) {
        part[a] += rows[a][c] * v;
        if (part[a] + smax[a][c + 1] < 0) ok = false;
      }
      if (ok) {
        beta[c] = v;
        walk(c + 1, beta, part, dn, acc);
      }
      for (std::size_t a = 0; a < rows.size(); ++a) part[a] -= rows[a][c] * v;
    }
  }
};

PeriodSequence finish_period(std::vector<Rat> g, unsigned n) {
  // g holds d! * coefficient; undo the regularization, shift by exp(-g_1 t), redo it
  std::vector<Rat> raw(n + 1);
  for (unsigned d = 0; d <= n; ++d) raw[d] = g[d] / Rat(factorial(d));
  if (n >= 1 && raw[1] != 0) {
    Rat c = raw[1];
    std::vector<Rat> e(n + 1), out(n + 1, Rat(0));
    Rat p = 1;
    for (unsigned d = 0; d <= n; ++d) {
      e[d] = p / Rat(factorial(d));
      p *= -c;
    }
    for (unsigned a = 0; a <= n; ++a)
      for (unsigned b = 0; a + b <= n; ++b) out[a + b] += e[a] * raw[b];
    raw = out;
  }
  PeriodSequence seq;
  for (unsigned d = 0; d <= n; ++d) {
    Rat v = raw[d] * Rat(factorial(d));
    if (v.get_den() != 1) throw Error("NonIntegral", "coefficient " + std::to_string(d) + " is " + v.get_str());
    seq.push_back(v.get_num());
  }
  return seq;
}

}  // namespace

PeriodSequence toric_ci_period(const MirrorProblem& mp, unsigned n) {
  BetaWalk bw(mp, n);
  std::vector<Rat> acc(n + 1, Rat(0));
  IntVec beta(bw.r, 0);
  std::vector<long> part(bw.rows.size(), 0);
  bw.walk(0, beta, part, 0, acc);
  return finish_period(acc, n);
}

PeriodSequence toric_ci_period_parallel(const MirrorProblem& mp, unsigned n) {
  BetaWalk bw(mp, n);
  if (bw.r == 0) return toric_ci_period(mp, n);
  long span = bw.hi[0] - bw.lo[0] + 1;
  int threads = thread_count();
  std::vector<std::vector<Rat>> accs(threads, std::vector<Rat>(n + 1, Rat(0)));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long t = 0; t < span; ++t) {
    int id = 0;
#ifdef _OPENMP
    id = omp_get_thread_num();
#endif
    BetaWalk local = bw;
    local.lo[0] = local.hi[0] = bw.lo[0] + t;
    IntVec beta(bw.r, 0);
    std::vector<long> part(bw.rows.size(), 0);
    local.walk(0, beta, part, 0, accs[id]);
  }
  std::vector<Rat> acc(n + 1, Rat(0));
  for (const auto& a : accs)
    for (unsigned d = 0; d <= n; ++d) acc[d] += a[d];
  return finish_period(acc, n);
}

nlohmann::json partition_to_json(const ConvexPartition& cp) {
  return nlohmann::json{{"b0", cp.b0}, {"b1", cp.b1}, {"s", cp.s}, {"j", cp.j}};
}

nlohmann::json problem_to_json(const MirrorProblem& mp) {
  return nlohmann::json{{"rank", mp.rank}, {"d", mp.d}, {"w", mp.w}, {"l", mp.l}, {"labels", mp.labels}};
}

MirrorRun mirror_pipeline(const Quiver& q, const BundleSpec& spec, bool require) {
  MirrorRun run;
  run.ld = build_ladder(q);
  run.lq = build_ladder_quiver(run.ld);
  run.gd = git_data(run.lq);
  run.mp = mirror_problem(run.gd, bundle_to_divisors(q, run.ld, run.lq, run.gd, spec));
  PartitionSeed seed = ladder_seed(run.lq, run.gd);
  auto found = convex_partitions(run.mp, 1, &seed);
  if (found.empty()) {
    if (require) throw Error("NotFound", "no extended convex partition");
    return run;
  }
  run.partition = found.front();
  run.polynomial = przyjalkowski(run.mp, *run.partition);
  return run;
}

}  // namespace qf
