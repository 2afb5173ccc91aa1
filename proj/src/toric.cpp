#include "qf/toric.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

#include "qf/parallel.hpp"

namespace qf {

namespace {

struct UnionFind {
  std::vector<long> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  long find(long x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool join(long a, long b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

ToricGitData git_data(const LadderQuiver& lq) {
  ToricGitData gd;
  gd.rank = (long)lq.vertices.size() - 1;
  gd.stability.assign(gd.rank, 0);
  for (const Arrow& a : lq.arrows) {
    IntVec col(gd.rank, 0);
    if (a.src > 0) col[a.src - 1] -= 1;
    if (a.tgt > 0) col[a.tgt - 1] += 1;
    for (long i = 0; i < gd.rank; ++i) gd.stability[i] += col[i];
    gd.weights.push_back(col);
    const Point& s = lq.vertices[a.src];
    const Point& t = lq.vertices[a.tgt];
    gd.arrow_labels.push_back("(" + std::to_string(s.x) + "," + std::to_string(s.y) + ")->(" +
                              std::to_string(t.x) + "," + std::to_string(t.y) + ")");
  }
  if (rank(IntMat(gd.weights.begin(), gd.weights.end())) != gd.rank)
    throw Error("RankDeficient", "weight matrix has rank below " + std::to_string(gd.rank));
  return gd;
}

DivisorClass arrows_class(const ToricGitData& gd, const ArrowSet& s) {
  DivisorClass c(gd.rank, 0);
  for (long a : s)
    for (long i = 0; i < gd.rank; ++i) c[i] += gd.weights[a][i];
  return c;
}

DivisorClass divisor_of_path(const ToricGitData& gd, const LadderPath& p) {
  return arrows_class(gd, ArrowSet(p.begin(), p.end()));
}

std::map<long, DivisorClass> vertex_divisors(const ToricGitData& gd, const LadderQuiver& lq) {
  std::map<long, DivisorClass> d;
  for (const auto& [v, start] : lq.path_start) {
    DivisorClass c(gd.rank, 0);
    long end = lq.path_end.at(v);
    if (end > 0) c[end - 1] += 1;
    if (start > 0) c[start - 1] -= 1;
    d[v] = c;
  }
  return d;
}

DivisorClass anticanonical(const ToricGitData& gd, const LadderQuiver& lq, const Quiver& q) {
  IntVec c = anticanonical_coefficients(q);
  DivisorClass sum(gd.rank, 0);
  for (const auto& [v, d] : vertex_divisors(gd, lq))
    for (long i = 0; i < gd.rank; ++i) sum[i] += c[v] * d[i];
  if (sum != gd.stability) throw Error("AnticanonicalMismatch", "w differs from sum of c_i D_i");
  return gd.stability;
}

std::vector<Meander> meanders(const LadderQuiver& lq) {
  std::vector<long> verts;
  std::vector<std::vector<LadderPath>> options;
  for (const auto& [v, start] : lq.path_start) {
    verts.push_back(v);
    options.push_back(paths_between(lq, start, lq.path_end.at(v)));
  }
  std::vector<Meander> out;
  std::vector<std::size_t> choice(verts.size());
  std::function<void(std::size_t, UnionFind, std::vector<char>)> go =
      [&](std::size_t k, UnionFind uf, std::vector<char> used) {
        if (k == verts.size()) {
          Meander m;
          for (std::size_t i = 0; i < verts.size(); ++i) m.paths[verts[i]] = options[i][choice[i]];
          for (std::size_t a = 0; a < used.size(); ++a)
            if (used[a]) m.support.push_back((long)a);
          out.push_back(std::move(m));
          return;
        }
        for (std::size_t c = 0; c < options[k].size(); ++c) {
          UnionFind u2 = uf;
          std::vector<char> used2 = used;
          bool ok = true;
          for (long a : options[k][c]) {
            if (used2[a]) continue;
            used2[a] = 1;
            if (!u2.join(lq.arrows[a].src, lq.arrows[a].tgt)) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          choice[k] = c;
          go(k + 1, u2, used2);
        }
      };
  go(0, UnionFind(lq.vertices.size()), std::vector<char>(lq.arrows.size(), 0));
  return out;
}

namespace {

constexpr int kMaxV = 64;

// Search state: component labels of the chosen forest plus per-vertex
// in/out counts. Small fixed arrays so copies are cheap.
struct SearchState {
  std::array<unsigned char, kMaxV> comp;
  std::array<unsigned char, kMaxV> in, out;
};

struct AnticoneSearch {
  const ToricGitData& gd;
  const LadderQuiver& lq;
  long nv;
  std::vector<long> last_in, last_out;
  std::vector<long> w;  // divergence target, w[0] unused

  AnticoneSearch(const ToricGitData& g, const LadderQuiver& l) : gd(g), lq(l) {
    nv = (long)lq.vertices.size();
    if (nv > kMaxV) throw Error("TooLarge", "too many ladder vertices");
    last_in.assign(nv, -1);
    last_out.assign(nv, -1);
    w.assign(nv, 0);
    for (long v = 1; v < nv; ++v) w[v] = gd.stability[v - 1];
    for (std::size_t a = 0; a < lq.arrows.size(); ++a) {
      last_out[lq.arrows[a].src] = (long)a;
      last_in[lq.arrows[a].tgt] = (long)a;
    }
  }

  SearchState initial() const {
    SearchState st{};
    for (long v = 0; v < nv; ++v) st.comp[v] = (unsigned char)v;
    return st;
  }

  static void join(SearchState& st, long nv, unsigned char a, unsigned char b) {
    for (long v = 0; v < nv; ++v)
      if (st.comp[v] == a) st.comp[v] = b;
  }

  // Flow with divergence w at each non-source vertex that is strictly positive
  // on every arrow of the forest s.
  bool positive_flow(const ArrowSet& s) const {
    std::array<long, kMaxV> resid{}, deg{};
    std::array<long, kMaxV> xor_arrow{};  // xor of incident live arrow ids (+1)
    for (long v = 1; v < nv; ++v) resid[v] = w[v];
    for (long a : s) {
      const Arrow& ar = lq.arrows[a];
      ++deg[ar.src];
      ++deg[ar.tgt];
      xor_arrow[ar.src] ^= a + 1;
      xor_arrow[ar.tgt] ^= a + 1;
    }
    for (long v = 1; v < nv; ++v)
      if (deg[v] == 0 && resid[v] != 0) return false;
    std::array<long, kMaxV> stack{};
    long top = 0;
    for (long v = 1; v < nv; ++v)
      if (deg[v] == 1) stack[top++] = v;
    while (top > 0) {
      long u = stack[--top];
      if (deg[u] != 1) continue;
      long a = xor_arrow[u] - 1;
      const Arrow& ar = lq.arrows[a];
      long lambda = (u == ar.tgt) ? resid[u] : -resid[u];
      if (lambda <= 0) return false;
      long other = (u == ar.tgt) ? ar.src : ar.tgt;
      resid[u] = 0;
      deg[u] = 0;
      xor_arrow[u] = 0;
      xor_arrow[other] ^= a + 1;
      resid[other] += (other == ar.src) ? lambda : -lambda;
      --deg[other];
      if (other != 0 && deg[other] == 1) stack[top++] = other;
    }
    for (long v = 1; v < nv; ++v)
      if (resid[v] != 0) return false;
    return true;
  }

  bool covered(const SearchState& st) const {
    for (long v = 1; v < nv; ++v)
      if (w[v] != 0 && st.in[v] + st.out[v] == 0) return false;
    return true;
  }

  // Necessary conditions that no extension past arrow idx can repair.
  bool doomed(const SearchState& st, long idx) const {
    for (long v = 1; v < nv; ++v) {
      bool can_in = st.in[v] > 0 || last_in[v] >= idx;
      bool can_out = st.out[v] > 0 || last_out[v] >= idx;
      if (w[v] > 0 && !can_in) return true;
      if (w[v] < 0 && !can_out) return true;
      if (w[v] == 0 && st.in[v] + st.out[v] > 0 && (!can_in || !can_out)) return true;
    }
    return false;
  }

  void dfs(std::size_t idx, const SearchState& st, ArrowSet& chosen, std::vector<ArrowSet>& out) const {
    if (covered(st) && positive_flow(chosen)) {
      out.push_back(chosen);
      return;
    }
    if (idx == lq.arrows.size() || (long)chosen.size() == gd.rank) return;
    if (doomed(st, (long)idx)) return;
    const Arrow& a = lq.arrows[idx];
    if (st.comp[a.src] != st.comp[a.tgt]) {
      SearchState s2 = st;
      join(s2, nv, st.comp[a.src], st.comp[a.tgt]);
      ++s2.out[a.src];
      ++s2.in[a.tgt];
      chosen.push_back((long)idx);
      dfs(idx + 1, s2, chosen, out);
      chosen.pop_back();
    }
    dfs(idx + 1, st, chosen, out);
  }
};

}  // namespace

std::vector<ArrowSet> minimal_anticones_bruteforce(const ToricGitData& gd, const LadderQuiver& lq) {
  if (gd.rank > 16 || lq.arrows.size() > 40) throw Error("TooLarge", "anti-cone search guard");
  AnticoneSearch s(gd, lq);
  ArrowSet chosen;
  std::vector<ArrowSet> out;
  s.dfs(0, s.initial(), chosen, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ArrowSet> minimal_anticones_parallel(const ToricGitData& gd, const LadderQuiver& lq) {
  if (gd.rank > 16 || lq.arrows.size() > 40) throw Error("TooLarge", "anti-cone search guard");
  AnticoneSearch s(gd, lq);
  // Replay the serial search down to a fixed depth, collecting the frontier
  // nodes; each frontier node is then searched independently.
  struct Node {
    std::size_t idx;
    SearchState st;
    ArrowSet chosen;
  };
  std::size_t depth = std::min<std::size_t>(12, lq.arrows.size());
  std::vector<Node> frontier;
  std::vector<ArrowSet> early;
  std::function<void(std::size_t, const SearchState&, ArrowSet&)> expand =
      [&](std::size_t idx, const SearchState& st, ArrowSet& chosen) {
        if (idx == depth) {
          frontier.push_back({idx, st, chosen});
          return;
        }
        if (s.covered(st) && s.positive_flow(chosen)) {
          early.push_back(chosen);
          return;
        }
        if ((long)chosen.size() == gd.rank || s.doomed(st, (long)idx)) return;
        const Arrow& a = lq.arrows[idx];
        if (st.comp[a.src] != st.comp[a.tgt]) {
          SearchState s2 = st;
          AnticoneSearch::join(s2, s.nv, st.comp[a.src], st.comp[a.tgt]);
          ++s2.out[a.src];
          ++s2.in[a.tgt];
          chosen.push_back((long)idx);
          expand(idx + 1, s2, chosen);
          chosen.pop_back();
        }
        expand(idx + 1, st, chosen);
      };
  ArrowSet chosen;
  expand(0, s.initial(), chosen);
  std::vector<std::vector<ArrowSet>> parts(frontier.size());
  long n = (long)frontier.size();
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (long k = 0; k < n; ++k) {
    ArrowSet c = frontier[k].chosen;
    s.dfs(frontier[k].idx, frontier[k].st, c, parts[k]);
  }
  std::vector<ArrowSet> out = early;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ArrowSet> minimal_anticones_lp(const ToricGitData& gd) {
  std::size_t m = gd.weights.size();
  if (m > 20) throw Error("TooLarge", "LP anti-cone oracle is for small inputs");
  std::vector<ArrowSet> found;
  for (std::size_t size = 1; size <= (std::size_t)gd.rank; ++size) {
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + (long)size, true);
    do {
      ArrowSet s;
      for (std::size_t a = 0; a < m; ++a)
        if (pick[a]) s.push_back((long)a);
      bool has_smaller = false;
      for (const auto& f : found)
        if (std::includes(s.begin(), s.end(), f.begin(), f.end())) has_smaller = true;
      if (has_smaller) continue;
      std::vector<IntVec> gens;
      for (long a : s) gens.push_back(gd.weights[a]);
      if (in_cone(gens, gd.stability)) found.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<CartierCertificate> cartier_certificate(const ToricGitData& gd, const LadderQuiver& lq,
                                                    const std::vector<Meander>& ms,
                                                    const std::map<long, LadderPath>& pi) {
  std::vector<CartierCertificate> out;
  std::size_t m = lq.arrows.size();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    std::vector<char> in_sigma(m, 0);
    for (long a : ms[k].support) in_sigma[a] = 1;
    for (const auto& [v, big_pi] : pi) {
      CartierCertificate c;
      c.vertex = v;
      c.meander = k;
      std::vector<char> in_p(m, 0), in_pi(m, 0);
      for (long a : ms[k].paths.at(v)) in_p[a] = 1;
      for (long a : big_pi) in_pi[a] = 1;
      c.delta.assign(m, 0);
      for (std::size_t a = 0; a < m; ++a) {
        if (in_p[a] && !in_pi[a]) c.delta[a] = 1;
        if (!in_p[a] && in_pi[a]) c.delta[a] = -1;
      }
      std::vector<long> net(lq.vertices.size(), 0);
      for (std::size_t a = 0; a < m; ++a) {
        net[lq.arrows[a].tgt] += c.delta[a];
        net[lq.arrows[a].src] -= c.delta[a];
      }
      for (std::size_t x = 1; x < net.size(); ++x) c.conserved = c.conserved && net[x] == 0;
      for (std::size_t a = 0; a < m; ++a)
        if (!in_sigma[a]) c.matches_divisor = c.matches_divisor && c.delta[a] == -in_pi[a];
      out.push_back(std::move(c));
    }
  }
  (void)gd;
  return out;
}

bool gorenstein_check(const ToricGitData& gd, const LadderQuiver& lq, const Quiver& q) {
  anticanonical(gd, lq, q);
  std::map<long, LadderPath> pi;
  for (const auto& [v, start] : lq.path_start) {
    auto ps = paths_between(lq, start, lq.path_end.at(v));
    if (ps.empty()) throw Error("NotCartier", "no section path for vertex " + std::to_string(v));
    pi[v] = ps.front();
  }
  auto ms = meanders(lq);
  for (const auto& c : cartier_certificate(gd, lq, ms, pi))
    if (!c.conserved || !c.matches_divisor)
      throw Error("NotCartier", "delta fails for D_" + std::to_string(c.vertex) + " on meander " +
                                    std::to_string(c.meander));
  return true;
}

nlohmann::json git_to_json(const ToricGitData& gd, const LadderQuiver& lq) {
  using nlohmann::json;
  json divisors = json::object();
  auto dv = vertex_divisors(gd, lq);
  for (const auto& [v, d] : dv) {
    auto ps = paths_between(lq, lq.path_start.at(v), lq.path_end.at(v));
    divisors[std::to_string(v)] = {{"class", d}, {"path", ps.empty() ? LadderPath{} : ps.front()}};
  }
  return json{{"schema", 1},
              {"rank", gd.rank},
              {"weights", gd.weights},
              {"stability", gd.stability},
              {"arrow_labels", gd.arrow_labels},
              {"divisors", divisors}};
}

}  // namespace qf
