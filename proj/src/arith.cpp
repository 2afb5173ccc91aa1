#include "qf/arith.hpp"

#include <algorithm>
#include <map>

namespace qf {

Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
  return r;
}

IntMat transpose(const IntMat& a) {
  if (a.empty()) return {};
  IntMat t(a[0].size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatMat to_rat(const IntMat& a) {
  RatMat r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (long v : a[i]) r[i].emplace_back(v);
  return r;
}

long rank(RatMat a) {
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return (long)r;
}

long rank(const IntMat& a) { return rank(to_rat(a)); }

Int det(const IntMat& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

bool solve(const RatMat& a0, const RatVec& b, RatVec& x) {
  std::size_t rows = a0.size();
  std::size_t cols = rows ? a0[0].size() : 0;
  RatMat a = a0;
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<long> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][c];
    for (std::size_t j = c; j <= cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivcol.push_back((long)c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return false;
  x.assign(cols, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = a[i][cols];
  return true;
}

IntMat unimodular_inverse(const IntMat& m) {
  std::size_t n = m.size();
  RatMat a = to_rat(m);
  RatMat inv(n, RatVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw Error("Singular", "matrix is not invertible");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rat f = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= f;
      inv[c][j] *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat g = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= g * a[c][j];
        inv[i][j] -= g * inv[c][j];
      }
    }
  }
  IntMat out(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (inv[i][j].get_den() != 1) throw Error("NotUnimodular", "inverse is not integral");
      out[i][j] = inv[i][j].get_num().get_si();
    }
  return out;
}

namespace {

struct Tableau {
  RatMat t;  // rows x (cols + 1), last column is rhs
  std::vector<std::size_t> basis;
  std::size_t cols;
};

void pivot(Tableau& tb, std::size_t r, std::size_t c) {
  auto& t = tb.t;
  Rat inv = 1 / t[r][c];
  for (auto& v : t[r]) v *= inv;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i == r || t[i][c] == 0) continue;
    Rat f = t[i][c];
    for (std::size_t j = 0; j <= tb.cols; ++j) t[i][j] -= f * t[r][j];
  }
  tb.basis[r] = c;
}

// Returns false on unbounded.
bool run(Tableau& tb, const RatVec& cost, const std::vector<bool>& allowed) {
  for (;;) {
    long enter = -1;
    for (std::size_t j = 0; j < tb.cols && enter < 0; ++j) {
      if (!allowed[j]) continue;
      Rat rc = cost[j];
      for (std::size_t i = 0; i < tb.t.size(); ++i)
        if (tb.t[i][j] != 0) rc -= cost[tb.basis[i]] * tb.t[i][j];
      if (rc > 0) enter = (long)j;
    }
    if (enter < 0) return true;
    long leave = -1;
    Rat best;
    for (std::size_t i = 0; i < tb.t.size(); ++i) {
      if (tb.t[i][enter] <= 0) continue;
      Rat ratio = tb.t[i][tb.cols] / tb.t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && tb.basis[i] < tb.basis[leave])) {
        leave = (long)i;
        best = ratio;
      }
    }
    if (leave < 0) return false;
    pivot(tb, (std::size_t)leave, (std::size_t)enter);
  }
}

}  // namespace

LPResult simplex_max(const RatMat& a, const RatVec& b, const RatVec& c) {
  std::size_t m = a.size(), n = c.size();
  Tableau tb;
  tb.cols = n + m;
  tb.t.assign(m, RatVec(n + m + 1, Rat(0)));
  tb.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    int s = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = s * a[i][j];
    tb.t[i][n + i] = 1;
    tb.t[i][n + m] = s * b[i];
    tb.basis[i] = n + i;
  }
  RatVec cost1(n + m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) cost1[n + i] = -1;
  std::vector<bool> all(n + m, true);
  run(tb, cost1, all);
  LPResult res;
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] >= n && tb.t[i][n + m] != 0) return res;  // infeasible

  // drive zero-level artificials out, drop redundant rows
  for (std::size_t i = 0; i < tb.t.size();) {
    if (tb.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < n && tb.t[i][j] == 0) ++j;
    if (j < n) {
      pivot(tb, i, j);
      ++i;
    } else {
      tb.t.erase(tb.t.begin() + (long)i);
      tb.basis.erase(tb.basis.begin() + (long)i);
    }
  }
  RatVec cost2(n + m, Rat(0));
  for (std::size_t j = 0; j < n; ++j) cost2[j] = c[j];
  std::vector<bool> orig(n + m, false);
  for (std::size_t j = 0; j < n; ++j) orig[j] = true;
  if (!run(tb, cost2, orig)) {
    res.status = LPResult::Unbounded;
    return res;
  }
  res.status = LPResult::Optimal;
  res.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < tb.t.size(); ++i) res.x[tb.basis[i]] = tb.t[i][n + m];
  res.value = 0;
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

bool in_cone(const std::vector<IntVec>& gens, const IntVec& w) {
  std::size_t r = w.size(), k = gens.size();
  bool zero = std::all_of(w.begin(), w.end(), [](long v) { return v == 0; });
  if (zero) return true;
  if (k == 0) return false;
  RatMat a(r, RatVec(k));
  RatVec b(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = gens[j][i];
    b[i] = w[i];
  }
  return simplex_max(a, b, RatVec(k, Rat(0))).status == LPResult::Optimal;
}

bool in_cone_interior(const std::vector<IntVec>& gens, const IntVec& w) {
  std::size_t r = w.size(), k = gens.size();
  if (k == 0) return r == 0;
  IntMat g(gens.begin(), gens.end());
  if (rank(g) != (long)r) return false;
  // lambda_j = mu_j + t, maximize t in [0, 1]; interior iff optimum t > 0
  RatMat a(r + 1, RatVec(k + 2, Rat(0)));
  RatVec b(r + 1);
  for (std::size_t i = 0; i < r; ++i) {
    Rat rowsum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      a[i][j] = gens[j][i];
      rowsum += gens[j][i];
    }
    a[i][k] = rowsum;
    b[i] = w[i];
  }
  a[r][k] = 1;
  a[r][k + 1] = 1;  // t + slack = 1
  b[r] = 1;
  RatVec c(k + 2, Rat(0));
  c[k] = 1;
  LPResult res = simplex_max(a, b, c);
  return res.status == LPResult::Optimal && res.value > 0;
}

bool coordinate_range(const std::vector<IntVec>& cols, const IntVec& d, long n,
                      std::size_t k, Rat& lo, Rat& hi) {
  // variables: u (r), v (r), slack s_a (m), slack t; beta = u - v
  std::size_t r = d.size(), m = cols.size();
  std::size_t nv = 2 * r + m + 1;
  RatMat a(m + 1, RatVec(nv, Rat(0)));
  RatVec b(m + 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      a[i][j] = cols[i][j];
      a[i][r + j] = -cols[i][j];
    }
    a[i][2 * r + i] = -1;
  }
  for (std::size_t j = 0; j < r; ++j) {
    a[m][j] = d[j];
    a[m][r + j] = -d[j];
  }
  a[m][nv - 1] = 1;
  b[m] = n;
  RatVec c(nv, Rat(0));
  c[k] = 1;
  c[r + k] = -1;
  LPResult up = simplex_max(a, b, c);
  if (up.status != LPResult::Optimal) return false;
  c[k] = -1;
  c[r + k] = 1;
  LPResult down = simplex_max(a, b, c);
  if (down.status != LPResult::Optimal) return false;
  hi = up.value;
  lo = -down.value;
  return true;
}

long floor_rat(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

long ceil_rat(const Rat& q) {
  Int f;
  mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

}  // namespace qf
