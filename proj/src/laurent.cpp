#include "qf/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qf/parallel.hpp"

namespace qf {

Laurent Laurent::constant(int n, const Int& c) {
  Laurent f(n);
  f.add_term(Exponent(n, 0), c);
  return f;
}

Laurent Laurent::monomial(const Exponent& e, const Int& c) {
  Laurent f((int)e.size());
  f.add_term(e, c);
  return f;
}

Laurent Laurent::variable(int n, int i) {
  Exponent e(n, 0);
  e[i] = 1;
  return monomial(e);
}

Int Laurent::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

void Laurent::add_term(const Exponent& e, const Int& c) {
  if ((int)e.size() != n_) throw Error("VariableCountMismatch", "exponent length differs from n");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Laurent::check(const Laurent& o) const {
  if (n_ != o.n_)
    throw Error("VariableCountMismatch", std::to_string(n_) + " vs " + std::to_string(o.n_));
}

Laurent& Laurent::operator+=(const Laurent& o) {
  check(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  r += o;
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r(n_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Int& k) const {
  Laurent r(n_);
  if (k == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * k);
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  check(o);
  Laurent r(n_);
  Exponent e(n_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Laurent Laurent::pow(unsigned k) const {
  Laurent r = constant(n_, 1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Exponent Laurent::min_exponent() const {
  Exponent m(n_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < n_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

Exponent Laurent::max_exponent() const {
  Exponent m(n_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < n_; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

Laurent Laurent::divide_exact(const Laurent& d) const {
  check(d);
  if (d.is_zero()) throw Error("NotDivisible", "division by zero");
  Laurent q(n_), r = *this;
  if (r.is_zero()) return q;
  // the quotient's support lies in the box [min(f) - min(d), max(f) - max(d)]
  Exponent lo = min_exponent(), hi = max_exponent();
  Exponent dlo = d.min_exponent(), dhi = d.max_exponent();
  for (int i = 0; i < n_; ++i) {
    lo[i] -= dlo[i];
    hi[i] -= dhi[i];
  }
  const auto& [lead_d, lead_dc] = *d.terms_.rbegin();
  while (!r.is_zero()) {
    const auto& [lead_r, lead_rc] = *r.terms_.rbegin();
    Exponent t(n_);
    for (int i = 0; i < n_; ++i) {
      t[i] = lead_r[i] - lead_d[i];
      if (t[i] < lo[i] || t[i] > hi[i]) throw Error("NotDivisible", "quotient leaves the Newton box");
    }
    if (!mpz_divisible_p(lead_rc.get_mpz_t(), lead_dc.get_mpz_t()))
      throw Error("NotDivisible", "coefficient does not divide");
    Int c = lead_rc / lead_dc;
    Laurent m = monomial(t, c);
    q += m;
    r = r - m * d;
  }
  return q;
}

Laurent Laurent::substitute(const std::vector<Laurent>& g) const {
  if ((int)g.size() != n_) throw Error("VariableCountMismatch", "substitution arity");
  int m = g.empty() ? 0 : g[0].n();
  Laurent r(m);
  std::vector<std::map<int, Laurent>> cache(n_);
  auto power = [&](int i, int k) -> const Laurent& {
    auto it = cache[i].find(k);
    if (it != cache[i].end()) return it->second;
    Laurent p(m);
    if (k >= 0) {
      p = g[i].pow((unsigned)k);
    } else {
      if (g[i].size() != 1) throw Error("NotLaurent", "negative power of a non-monomial");
      const auto& [e, c] = *g[i].terms().begin();
      if (c != 1 && c != -1) throw Error("NotLaurent", "inverse of a non-unit coefficient");
      Exponent ne(m);
      for (int j = 0; j < m; ++j) ne[j] = -e[j];
      p = monomial(ne, c).pow((unsigned)-k);
    }
    return cache[i].emplace(k, p).first->second;
  };
  for (const auto& [e, c] : terms_) {
    Laurent t = constant(m, c);
    for (int i = 0; i < n_; ++i)
      if (e[i] != 0) t = t * power(i, e[i]);
    r += t;
  }
  return r;
}

namespace {

// Exponents packed into one 64-bit key, one biased field per coordinate.
struct Packer {
  int n = 0;
  std::vector<long> bias;
  std::vector<int> shift;
  std::vector<uint64_t> mask;
  bool ok = true;

  Packer(int n_, const std::vector<long>& bound) : n(n_) {
    int total = 0;
    for (int i = 0; i < n; ++i) {
      long range = 2 * bound[i] + 1;
      int bits = 1;
      while ((1L << bits) < range) ++bits;
      bias.push_back(bound[i]);
      shift.push_back(total);
      mask.push_back((uint64_t(1) << bits) - 1);
      total += bits;
    }
    ok = total <= 63;
  }
  uint64_t encode(const Exponent& e) const {
    uint64_t k = 0;
    for (int i = 0; i < n; ++i) k |= uint64_t(e[i] + bias[i]) << shift[i];
    return k;
  }
  int64_t delta(const Exponent& e) const {
    int64_t k = 0;
    for (int i = 0; i < n; ++i) k += int64_t(e[i]) * (int64_t(1) << shift[i]);
    return k;
  }
  long coord(uint64_t k, int i) const { return long((k >> shift[i]) & mask[i]) - bias[i]; }
};

struct PeriodSetup {
  std::vector<long> pos, neg;  // largest positive / negative excursion per variable
  std::vector<std::pair<Exponent, Int>> terms;
};

PeriodSetup setup(const Laurent& f) {
  PeriodSetup s;
  s.pos.assign(f.n(), 0);
  s.neg.assign(f.n(), 0);
  for (const auto& [e, c] : f.terms()) {
    for (int i = 0; i < f.n(); ++i) {
      s.pos[i] = std::max<long>(s.pos[i], e[i]);
      s.neg[i] = std::max<long>(s.neg[i], -e[i]);
    }
    s.terms.emplace_back(e, c);
  }
  return s;
}

PeriodSequence period_generic(const Laurent& f, unsigned n) {
  PeriodSetup s = setup(f);
  PeriodSequence a{Int(1)};
  std::map<Exponent, Int> cur{{Exponent(f.n(), 0), Int(1)}};
  Exponent e(f.n());
  for (unsigned k = 1; k <= n; ++k) {
    long rem = (long)(n - k);
    std::map<Exponent, Int> next;
    for (const auto& [e1, c1] : cur)
      for (const auto& [e2, c2] : s.terms) {
        bool keep = true;
        for (int i = 0; i < f.n() && keep; ++i) {
          e[i] = e1[i] + e2[i];
          keep = e[i] >= -rem * s.pos[i] && e[i] <= rem * s.neg[i];
        }
        if (!keep) continue;
        Int& slot = next[e];
        mpz_addmul(slot.get_mpz_t(), c1.get_mpz_t(), c2.get_mpz_t());
      }
    cur.clear();
    for (auto& [key, c] : next)
      if (c != 0) cur.emplace(key, std::move(c));
    auto it = cur.find(Exponent(f.n(), 0));
    a.push_back(it == cur.end() ? Int(0) : it->second);
  }
  return a;
}

PeriodSequence period_packed(const Laurent& f, unsigned n, int threads) {
  PeriodSetup s = setup(f);
  std::vector<long> bound(f.n());
  for (int i = 0; i < f.n(); ++i) bound[i] = (long)n * std::max(s.pos[i], s.neg[i]);
  Packer pk(f.n(), bound);
  if (!pk.ok) return period_generic(f, n);
  std::vector<std::pair<int64_t, Int>> terms;
  for (const auto& [e, c] : s.terms) terms.emplace_back(pk.delta(e), c);
  const uint64_t origin = pk.encode(Exponent(f.n(), 0));

  PeriodSequence a{Int(1)};
  std::vector<std::pair<uint64_t, Int>> cur{{origin, Int(1)}};
  for (unsigned k = 1; k <= n; ++k) {
    long rem = (long)(n - k);
    std::vector<std::unordered_map<uint64_t, Int>> parts(threads);
#pragma omp parallel num_threads(threads)
    {
      int t = 0;
#ifdef _OPENMP
      t = omp_get_thread_num();
#endif
      auto& next = parts[t];
      next.reserve(cur.size() * 2 / threads + 16);
      for (const auto& [k1, c1] : cur)
        for (const auto& [d, c2] : terms) {
          uint64_t key = uint64_t(int64_t(k1) + d);
          if (threads > 1 && (int)((key * 0x9E3779B97F4A7C15ULL) >> 58) % threads != t) continue;
          bool keep = true;
          for (int i = 0; i < pk.n && keep; ++i) {
            long x = pk.coord(key, i);
            keep = x >= -rem * s.pos[i] && x <= rem * s.neg[i];
          }
          if (!keep) continue;
          Int& slot = next[key];
          mpz_addmul(slot.get_mpz_t(), c1.get_mpz_t(), c2.get_mpz_t());
        }
    }
    cur.clear();
    Int a_k = 0;
    for (auto& part : parts)
      for (auto& [key, c] : part) {
        if (c == 0) continue;
        if (key == origin) a_k = c;
        cur.emplace_back(key, std::move(c));
      }
    a.push_back(a_k);
  }
  return a;
}

}  // namespace

PeriodSequence classical_period(const Laurent& f, unsigned n) { return period_packed(f, n, 1); }

PeriodSequence classical_period_parallel(const Laurent& f, unsigned n) {
  return period_packed(f, n, thread_count());
}

Laurent gl_equivalence(const Laurent& f, const IntMat& a) {
  int n = f.n();
  if ((int)a.size() != n) throw Error("VariableCountMismatch", "matrix size");
  Int d = det(a);
  if (d != 1 && d != -1) throw Error("NotUnimodular", "determinant " + d.get_str());
  Laurent r(n);
  Exponent ne(n);
  for (const auto& [e, c] : f.terms()) {
    for (int i = 0; i < n; ++i) {
      long v = 0;
      for (int k = 0; k < n; ++k) v += a[k][i] * e[k];
      ne[i] = (int)v;
    }
    r.add_term(ne, c);
  }
  return r;
}

Laurent mutate(const Laurent& f, const Laurent& h, int pivot) {
  int n = f.n();
  if (h.n() != n) throw Error("VariableCountMismatch", "factor arity");
  for (const auto& [e, c] : h.terms())
    if (e[pivot] != 0) throw Error("BadFactor", "factor involves the pivot variable");
  std::map<int, Laurent> parts;
  for (const auto& [e, c] : f.terms()) {
    Exponent e0 = e;
    e0[pivot] = 0;
    auto it = parts.try_emplace(e[pivot], Laurent(n)).first;
    it->second.add_term(e0, c);
  }
  Laurent g(n);
  for (const auto& [i, ci] : parts) {
    Laurent part(n);
    if (i >= 0) {
      part = h.pow((unsigned)i) * ci;
    } else {
      try {
        part = ci.divide_exact(h.pow((unsigned)-i));
      } catch (const Error&) {
        throw Error("NotDivisible", "h^" + std::to_string(-i) + " does not divide C_" + std::to_string(i));
      }
    }
    Exponent shift(n, 0);
    shift[pivot] = i;
    g += part * Laurent::monomial(shift);
  }
  return g;
}

std::vector<std::string> default_names(int n) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(n <= 4 ? std::string(small[i]) : "x" + std::to_string(i + 1));
  return v;
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t p = 0;
  std::vector<std::pair<std::string, int>> factors_num, factors_den;

  explicit Parser(const std::string& t) : s(t) {}
  void ws() {
    while (p < s.size() && std::isspace((unsigned char)s[p])) ++p;
  }
  bool eat(char c) {
    ws();
    if (p < s.size() && s[p] == c) {
      ++p;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw Error("ParseError", why + " at offset " + std::to_string(p));
  }
  bool at_name() {
    ws();
    return p < s.size() && (std::isalpha((unsigned char)s[p]) || s[p] == '_');
  }
  bool at_digit() {
    ws();
    return p < s.size() && std::isdigit((unsigned char)s[p]);
  }
  std::string number() {
    ws();
    std::size_t b = p;
    while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
    if (b == p) fail("expected number");
    return s.substr(b, p - b);
  }
  std::string name() {
    ws();
    std::size_t b = p;
    while (p < s.size() && (std::isalnum((unsigned char)s[p]) || s[p] == '_')) ++p;
    return s.substr(b, p - b);
  }
  std::pair<std::string, int> factor() {
    std::string nm = name();
    int e = 1;
    if (eat('^')) {
      bool neg = eat('-');
      bool paren = eat('(');
      if (paren && eat('-')) neg = !neg;
      e = std::stoi(number());
      if (paren && !eat(')')) fail("expected )");
      if (neg) e = -e;
    }
    return {nm, e};
  }
  // one term: [coef] [factors] [/ (factors) | / factor]
  struct Term {
    Int c;
    std::vector<std::pair<std::string, int>> f;
  };
  Term term() {
    Term t;
    t.c = 1;
    bool any = false;
    if (at_digit()) {
      t.c = Int(number());
      any = true;
    }
    eat('*');
    while (at_name()) {
      t.f.push_back(factor());
      any = true;
      eat('*');
    }
    if (eat('/')) {
      if (eat('(')) {
        if (at_digit()) {
          Int d(number());
          if (d != 1) fail("only monomial denominators are supported");
        }
        while (at_name()) {
          auto [nm, e] = factor();
          t.f.push_back({nm, -e});
          eat('*');
        }
        if (!eat(')')) fail("expected )");
      } else if (at_name()) {
        auto [nm, e] = factor();
        t.f.push_back({nm, -e});
      } else {
        Int d(number());
        if (d != 1) fail("only monomial denominators are supported");
      }
      any = true;
    }
    if (!any) fail("empty term");
    return t;
  }
  std::vector<Term> expr() {
    std::vector<Term> out;
    ws();
    if (p >= s.size()) return out;
    int sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    for (;;) {
      Term t = term();
      t.c *= sign;
      out.push_back(t);
      ws();
      if (p >= s.size()) break;
      if (eat('+')) sign = 1;
      else if (eat('-')) sign = -1;
      else fail("expected + or -");
    }
    return out;
  }
};

Laurent build(const std::vector<Parser::Term>& terms, const std::vector<std::string>& names) {
  int n = (int)names.size();
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[names[i]] = i;
  Laurent f(n);
  for (const auto& t : terms) {
    Exponent e(n, 0);
    for (const auto& [nm, k] : t.f) {
      auto it = idx.find(nm);
      if (it == idx.end()) throw Error("ParseError", "unknown variable " + nm);
      e[it->second] += k;
    }
    f.add_term(e, t.c);
  }
  return f;
}

}  // namespace

Laurent parse_laurent(const std::string& text, const std::vector<std::string>& names) {
  Parser ps(text);
  return build(ps.expr(), names);
}

Laurent parse_laurent(const std::string& text) {
  Parser ps(text);
  auto terms = ps.expr();
  std::set<std::string> seen;
  for (const auto& t : terms)
    for (const auto& f : t.f) seen.insert(f.first);
  static const std::vector<std::string> xyzw{"x", "y", "z", "w"};
  int top = -1;
  bool small = true;
  for (const auto& nm : seen) {
    auto it = std::find(xyzw.begin(), xyzw.end(), nm);
    if (it == xyzw.end()) small = false;
    else top = std::max(top, (int)(it - xyzw.begin()));
  }
  if (small) return build(terms, std::vector<std::string>(xyzw.begin(), xyzw.begin() + top + 1));
  bool indexed = true;
  int maxi = 0;
  for (const auto& nm : seen) {
    if (nm.size() < 2 || nm[0] != 'x' ||
        !std::all_of(nm.begin() + 1, nm.end(), [](char c) { return std::isdigit((unsigned char)c); }))
      indexed = false;
    else
      maxi = std::max(maxi, std::stoi(nm.substr(1)));
  }
  if (indexed) {
    std::vector<std::string> names;
    for (int i = 1; i <= maxi; ++i) names.push_back("x" + std::to_string(i));
    return build(terms, names);
  }
  return build(terms, std::vector<std::string>(seen.begin(), seen.end()));
}

std::string to_string(const Laurent& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<Exponent, Int>> terms(f.terms().begin(), f.terms().end());
  auto deg = [](const Exponent& e) {
    long d = 0;
    for (int v : e) d += v;
    return d;
  };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    if (deg(a.first) != deg(b.first)) return deg(a.first) > deg(b.first);
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    std::string num, den;
    int nden = 0;
    for (int i = 0; i < f.n(); ++i) {
      if (e[i] == 0) continue;
      std::string piece = names[i];
      if (std::abs(e[i]) != 1) piece += "^" + std::to_string(std::abs(e[i]));
      std::string& dst = e[i] > 0 ? num : den;
      if (!dst.empty()) dst += " ";
      dst += piece;
      if (e[i] < 0) ++nden;
    }
    Int mag = abs(c);
    std::string body;
    if (num.empty()) body = mag.get_str();
    else body = (mag == 1 ? "" : mag.get_str() + " ") + num;
    if (!den.empty()) body += nden > 1 ? "/(" + den + ")" : "/" + den;
    if (first) out += (c < 0 ? "-" : "") + body;
    else out += (c < 0 ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::string to_string(const Laurent& f) { return to_string(f, default_names(f.n())); }

nlohmann::json laurent_to_json(const Laurent& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"e", e}, {"c", c.get_str()}});
  return nlohmann::json{{"n", f.n()}, {"terms", terms}};
}

Laurent laurent_from_json(const nlohmann::json& j) {
  Laurent f(j.at("n").get<int>());
  for (const auto& t : j.at("terms")) f.add_term(t.at("e").get<Exponent>(), Int(t.at("c").get<std::string>()));
  return f;
}

}  // namespace qf
