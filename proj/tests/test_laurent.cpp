#include <random>

#include "doctest.h"
#include "qf/arith.hpp"
#include "qf/fixtures.hpp"
#include "qf/laurent.hpp"

using namespace qf;

namespace {

// constant terms of f^k by direct expansion on plain maps
PeriodSequence expansion_period(const Laurent& f, unsigned n) {
  using Poly = std::map<Exponent, Int>;
  Poly base(f.terms().begin(), f.terms().end());
  Poly power{{Exponent(f.n(), 0), Int(1)}};
  PeriodSequence out;
  for (unsigned k = 0; k <= n; ++k) {
    auto it = power.find(Exponent(f.n(), 0));
    out.push_back(it == power.end() ? Int(0) : it->second);
    Poly next;
    for (const auto& [a, ca] : power)
      for (const auto& [b, cb] : base) {
        Exponent e(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
        next[e] += ca * cb;
      }
    power.clear();
    for (auto& [e, c] : next)
      if (c != 0) power.emplace(e, c);
  }
  return out;
}

Int multinomial3(unsigned k) { return factorial(3 * k) / (factorial(k) * factorial(k) * factorial(k)); }

IntMat random_unimodular(std::mt19937& rng, int n) {
  std::uniform_int_distribution<long> d(-2, 2);
  for (;;) {
    IntMat a(n, IntVec(n));
    for (auto& r : a)
      for (auto& x : r) x = d(rng);
    Int det_a = det(a);
    if (det_a == 1 || det_a == -1) return a;
  }
}

const char* kPid20 = "x + y + z + w + z/y + 1/(y w) + w/x + 1/(x z)";

}  // namespace

TEST_CASE("parse and print round trip") {
  for (const char* text : {kPid20, "x^2 y - 3 x/y + 7", "1/(x y z) + x + y + z", "-x^3 + 2"}) {
    Laurent f = parse_laurent(text);
    CHECK(parse_laurent(to_string(f)) == f);
    CHECK(laurent_from_json(laurent_to_json(f)) == f);
  }
  Laurent f = parse_laurent("y + 1/y + 2 x/y + x^2/y", {"x", "y"});
  CHECK(f.size() == 4);
  CHECK(f.coeff({1, -1}) == 2);
  CHECK_THROWS_AS(parse_laurent("x + + y"), Error);
}

TEST_CASE("arithmetic") {
  Laurent x = Laurent::variable(2, 0), y = Laurent::variable(2, 1);
  Laurent one = Laurent::constant(2, 1);
  Laurent f = (x + y) * (x - y);
  CHECK(f == x * x - y * y);
  CHECK((x + one).pow(3).coeff({2, 0}) == 3);
  CHECK(f.divide_exact(x + y) == x - y);
  CHECK_THROWS_AS((x + one).divide_exact(y + one), Error);
}

TEST_CASE("classical period oracles") {
  auto p1 = classical_period(parse_laurent("x + 1/x"), 20);
  for (unsigned k = 0; k <= 20; ++k) CHECK(p1[k] == (k % 2 ? Int(0) : binomial(k, k / 2)));
  auto p2 = classical_period(parse_laurent("x + y + 1/(x y)"), 15);
  for (unsigned k = 0; k <= 15; ++k) CHECK(p2[k] == (k % 3 ? Int(0) : multinomial3(k / 3)));
}

TEST_CASE("classical period equals direct expansion") {
  for (const char* text : {kPid20, "x + y + z + 1/(x y z) + x/y", "x y + 1/x + 1/y + 2", "x + y + 1/x + 1/y"}) {
    Laurent f = parse_laurent(text);
    CAPTURE(text);
    CHECK(classical_period(f, 8) == expansion_period(f, 8));
    CHECK(classical_period_parallel(f, 8) == classical_period(f, 8));
  }
}

TEST_CASE("frozen pid20 period") {
  // values from the expansion oracle above
  PeriodSequence frozen{1, 0, 0, 12, 48, 0, 900, 7560, 15120, 94080, 1310400};
  Laurent f = parse_laurent(kPid20);
  CHECK(expansion_period(f, 10) == frozen);
  CHECK(classical_period(f, 10) == frozen);
}

TEST_CASE("period is invariant under GL(n,Z)") {
  std::mt19937 rng(3);
  Laurent f = parse_laurent(kPid20);
  auto base = classical_period(f, 8);
  for (int t = 0; t < 10; ++t) {
    IntMat a = random_unimodular(rng, 4);
    Laurent g = gl_equivalence(f, a);
    CHECK(classical_period(g, 8) == base);
    CHECK(gl_equivalence(g, unimodular_inverse(a)) == f);
  }
  CHECK_THROWS_AS(gl_equivalence(f, {{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}), Error);
}

TEST_CASE("mutation matches the cleared substitution") {
  for (const auto& m : load_mutations(default_fixture_dir())) {
    Laurent g = mutate(m.f, m.h, m.pivot);
    // g * h^K == sum c x^e h^(e_pivot + K)
    int k = 0;
    for (const auto& [e, c] : m.f.terms()) k = std::max(k, -e[m.pivot]);
    Laurent lhs = g * m.h.pow(k), rhs(m.f.n());
    for (const auto& [e, c] : m.f.terms()) rhs += Laurent::monomial(e, c) * m.h.pow(e[m.pivot] + k);
    CHECK(lhs == rhs);
    CHECK(classical_period(g, 8) == classical_period(m.f, 8));
  }
}

TEST_CASE("mutation failures") {
  Laurent f = parse_laurent("y + 1/y + 2 x/y", {"x", "y"});
  CHECK_THROWS_WITH_AS(mutate(f, parse_laurent("1 + x", {"x", "y"}), 1), doctest::Contains("NotDivisible"), Error);
  CHECK_THROWS_WITH_AS(mutate(f, parse_laurent("1 + y", {"x", "y"}), 1), doctest::Contains("BadFactor"), Error);
}

TEST_CASE("substitution") {
  Laurent f = parse_laurent("x + 1/y", {"x", "y"});
  std::vector<Laurent> g{parse_laurent("x y", {"x", "y"}), parse_laurent("y", {"x", "y"})};
  CHECK(f.substitute(g) == parse_laurent("x y + 1/y", {"x", "y"}));
  std::vector<Laurent> bad{parse_laurent("x", {"x", "y"}), parse_laurent("1 + y", {"x", "y"})};
  CHECK_THROWS_WITH_AS(f.substitute(bad), doctest::Contains("NotLaurent"), Error);
}
