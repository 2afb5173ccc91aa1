#include "doctest.h"
#include "qf/fixtures.hpp"
#include "qf/sagbi.hpp"

using namespace qf;

namespace {

Quiver fixture_quiver(const std::string& name) {
  static const std::vector<Fixture> fx = load_fixtures(default_fixture_dir());
  return *find_fixture(fx, name).quiver;
}

// lex leader of a polynomial by sorting each monomial's variables by rank
std::optional<Monomial> lex_leader(const std::map<Monomial, long>& poly, const VariableOrder& ord) {
  std::optional<std::vector<long>> best_key;
  std::optional<Monomial> best;
  for (const auto& [m, c] : poly) {
    if (c == 0) continue;
    std::vector<long> key;
    for (const auto& v : m) key.push_back(ord.rank.at(v));
    std::sort(key.begin(), key.end());
    if (!best_key || key < *best_key) best_key = key, best = m;
  }
  return best;
}

// Hilbert function of the Plucker algebra of Gr(2,n) in degree d (Weyl dimension)
long gr2_hilbert(long n, long d) {
  // number of semistandard tableaux of shape (d, d) with entries <= n
  Int num = 1, den = 1;
  for (long i = 1; i <= 2; ++i)
    for (long j = 1; j <= d; ++j) {
      num *= n + j - i;
      den *= (i == 1 ? d - j + 2 : d - j + 1);
    }
  return Int(num / den).get_si();
}

}  // namespace

TEST_CASE("Gr(4,2) initial terms") {
  Quiver q = grassmannian(4, 2);
  CoordinateMatrices cm = build_matrices(q);
  VariableOrder ord = plucker_order(cm, y_shape_decompose(q));
  auto minors = nonzero_minors(cm.a.at(1), ord);
  REQUIRE(minors.size() == 6);
  std::vector<std::string> names;
  for (const auto& mt : minors) {
    std::string s;
    for (const auto& v : mt.initial) s += (s.empty() ? "" : " ") + std::string("x_{") + std::to_string(v.row) + std::to_string(v.col) + "}";
    names.push_back(s);
    CHECK(mt.diagonal);
  }
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"x_{11} x_{22}", "x_{11} x_{23}", "x_{11} x_{24}", "x_{12} x_{23}",
                                          "x_{12} x_{24}", "x_{13} x_{24}"});
}

TEST_CASE("initial terms agree with full expansion") {
  for (const char* name : {"gr52", "fl5321", "yshaped1"}) {
    Quiver q = fixture_quiver(name);
    CoordinateMatrices cm = build_matrices(q);
    VariableOrder ord = plucker_order(cm, y_shape_decompose(q));
    for (const auto& [v, m] : cm.a) {
      if (m.rows > 6) continue;
      for (const auto& mt : nonzero_minors(m, ord)) {
        auto lead = lex_leader(expand_minor(m, mt.sigma), ord);
        REQUIRE(lead);
        Monomial a = *lead, b = mt.initial;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
        CHECK(a == [&] {
          Monomial d = diagonal_term(m, mt.sigma);
          std::sort(d.begin(), d.end());
          return d;
        }());
      }
    }
  }
}

TEST_CASE("parallel minors match serial") {
  Quiver q = fixture_quiver("yshaped2");
  CoordinateMatrices cm = build_matrices(q);
  VariableOrder ord = plucker_order(cm, y_shape_decompose(q));
  for (const auto& [v, m] : cm.a) {
    auto a = nonzero_minors(m, ord), b = nonzero_minors_parallel(m, ord);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].sigma == b[i].sigma);
      CHECK(a[i].initial == b[i].initial);
    }
  }
}

TEST_CASE("matrix shapes") {
  for (const char* name : {"yshaped1", "yshaped2"}) {
    static const std::vector<Fixture> fx = load_fixtures(default_fixture_dir());
    const Fixture& f = find_fixture(fx, name);
    CoordinateMatrices cm = build_matrices(*f.quiver);
    for (const auto& [k, shape] : f.value("matrix_shapes").items()) {
      const SymMatrix& m = cm.a.at(std::stol(k));
      CHECK(IntVec{m.rows, m.cols} == shape.get<IntVec>());
    }
  }
}

TEST_CASE("path bijection and degree-2 kernels") {
  for (const char* name : {"gr42", "gr52", "fl5321", "yshaped1"}) {
    Quiver q = fixture_quiver(name);
    CAPTURE(name);
    auto br = verify_path_bijection(q);
    CHECK(br.pass);
    for (const auto& v : br.vertices) CHECK(v.minors == v.paths);
    auto kr = verify_binomial_kernels(q, 2);
    CHECK(kr.pass);
    CHECK(kr.mismatches.empty());
  }
  // Gr(4,2) has the single Plucker relation in degree 2
  auto kr = verify_binomial_kernels(grassmannian(4, 2), 2);
  CHECK(kr.relations == 1);
}

TEST_CASE("semistandard tableaux match products of initial terms") {
  for (const char* name : {"gr42", "fl5321", "yshaped1"}) {
    Quiver q = fixture_quiver(name);
    std::vector<long> vs;
    for (long v = 1; v < q.vertex_count; ++v) vs.push_back(v);
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a; b <= vs.size(); ++b) {
        std::map<long, long> md{{vs[a], 1}};
        if (b < vs.size()) md[vs[b]]++;
        auto r = enumerate_semistandard(q, md);
        CAPTURE(name);
        CHECK(r.equal_sets);
        CHECK(r.count == r.oracle);
      }
  }
}

TEST_CASE("Grassmannian tableau counts follow the Weyl dimension") {
  for (long n : {4, 5, 6})
    for (long d : {1, 2, 3}) {
      auto r = enumerate_semistandard(grassmannian(n, 2), {{1, d}});
      CHECK(r.count == gr2_hilbert(n, d));
    }
}

TEST_CASE("tableau encoding round trip") {
  Quiver q = fixture_quiver("yshaped1");
  CoordinateMatrices cm = build_matrices(q);
  TableauFrame fr = tableau_frame(cm, q);
  auto r = enumerate_semistandard(q, {{2, 1}, {4, 1}});
  REQUIRE(r.count > 0);
  for (const auto& t : r.tableaux) {
    CHECK(is_semistandard(t));
    CHECK(encode_tableau(decode_tableau(t, fr), fr) == t);
  }
}

TEST_CASE("tableau predicates") {
  SkewTableau ok{{}, {{1, 2}, {2, 3}}};
  CHECK(tableau_rows_lower(ok));
  CHECK(is_semistandard(ok));
  SkewTableau bad{{}, {{2, 1}, {3, 3}}};
  CHECK_FALSE(tableau_rows_lower(bad));
  SkewTableau strict{{}, {{1, 2}, {1, 3}}};
  CHECK_FALSE(is_semistandard(strict));
}

TEST_CASE("large minors are refused by the expander") {
  Quiver q = grassmannian(20, 9);
  CoordinateMatrices cm = build_matrices(q);
  const SymMatrix& m = cm.a.at(1);
  REQUIRE(m.rows > 8);
  std::vector<long> sigma;
  for (long i = 1; i <= m.rows; ++i) sigma.push_back(i);
  CHECK_THROWS_WITH_AS(expand_minor(m, sigma), doctest::Contains("TooLarge"), Error);
}
