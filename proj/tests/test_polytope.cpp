#include <functional>
#include <set>

#include "doctest.h"
#include "qf/arith.hpp"
#include "qf/fixtures.hpp"
#include "qf/polytope.hpp"

using namespace qf;

namespace {

// is k*p a convex combination of the points, decided by LP
bool in_hull(const std::vector<Exponent>& pts, const Exponent& p, long k) {
  std::size_t d = p.size(), m = pts.size();
  RatMat a(d + 1, RatVec(m));
  RatVec b(d + 1);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = Rat(pts[j][i] * k);
    a[d][j] = 1;
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = p[i];
  b[d] = 1;
  return simplex_max(a, b, RatVec(m, 0)).status == LPResult::Optimal;
}

long count_dilate(const std::vector<Exponent>& pts, long k) {
  std::size_t d = pts[0].size();
  Exponent lo(d, 0), hi(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = hi[i] = pts[0][i];
    for (const auto& p : pts) lo[i] = std::min(lo[i], p[i]), hi[i] = std::max(hi[i], p[i]);
  }
  long count = 0;
  Exponent cur(d);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == d) {
      count += in_hull(pts, cur, k);
      return;
    }
    for (long x = k * lo[i]; x <= k * hi[i]; ++x) {
      cur[i] = (int)x;
      go(i + 1);
    }
  };
  if (k == 0) return 1;
  go(0);
  return count;
}

// d-th forward difference of the Ehrhart counts = d! * leading coefficient
Int ehrhart_volume(const std::vector<Exponent>& pts) {
  long d = (long)pts[0].size();
  std::vector<Int> l;
  for (long k = 0; k <= d; ++k) l.push_back(count_dilate(pts, k));
  for (long step = 0; step < d; ++step)
    for (long i = 0; i + 1 < (long)l.size() - step; ++i) l[i] = l[i + 1] - l[i];
  return l[0];
}

std::vector<Exponent> support(const Laurent& f) {
  std::vector<Exponent> out;
  for (const auto& [e, c] : f.terms()) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("Ehrhart oracle for polygons and the pid20 polytope") {
  for (const char* text : {"x + y + 1/(x y)", "x + y + 1/x + 1/y", "x^2 + y + 1/(x y^3)",
                           "x + y + z + w + z/y + 1/(y w) + w/x + 1/(x z)"}) {
    Laurent f = parse_laurent(text);
    Polytope p = newton_polytope(f);
    CAPTURE(text);
    REQUIRE(p.dim == f.n());
    CHECK(p.normalized_volume == ehrhart_volume(support(f)));
    CHECK((long)p.lattice_points.size() == count_dilate(support(f), 1));
  }
}

TEST_CASE("vertices are exactly the support points outside the hull of the others") {
  Laurent f = parse_laurent("x + y + 1/x + 1/y + x y + 1 + x/y");
  auto pts = support(f);
  Polytope p = newton_polytope(f);
  std::set<Exponent> expected;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto others = pts;
    others.erase(others.begin() + i);
    if (!in_hull(others, pts[i], 1)) expected.insert(pts[i]);
  }
  CHECK(std::set<Exponent>(p.vertices.begin(), p.vertices.end()) == expected);
}

TEST_CASE("Fano and terminal flags") {
  Polytope p2 = newton_polytope(parse_laurent("x + y + 1/(x y)"));
  CHECK(p2.is_fano);
  CHECK(p2.is_terminal);
  CHECK(p2.normalized_volume == 3);
  CHECK(p2.facets.size() == 3);
  Polytope edge = newton_polytope(parse_laurent("x + 1/x + y"));
  CHECK_FALSE(edge.is_fano);
  Polytope big = newton_polytope(parse_laurent("x^2 + y^2 + 1/(x^2 y^2)"));
  CHECK(big.is_fano);
  CHECK_FALSE(big.is_terminal);
  Polytope flat = convex_hull({{1, 0}, {-1, 0}, {0, 0}});
  CHECK(flat.dim == 1);
  CHECK(flat.normalized_volume == 0);
}

TEST_CASE("Newton polytope of a product is the Minkowski sum") {
  for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{
           {"x + y + 1/(x y)", "x + 1/x + y"}, {"x + y + z + 1/(x y z)", "x y + 1/z + 1"}}) {
    Laurent f = parse_laurent(a), g = parse_laurent(b);
    // pad to the same arity
    if (f.n() != g.n()) continue;
    Polytope pf = newton_polytope(f), pg = newton_polytope(g), prod = newton_polytope(f * g);
    Polytope sum = convex_hull(minkowski_sum(pf.vertices, pg.vertices));
    CHECK(std::set<Exponent>(sum.vertices.begin(), sum.vertices.end()) ==
          std::set<Exponent>(prod.vertices.begin(), prod.vertices.end()));
    CHECK(sum.normalized_volume == prod.normalized_volume);
  }
}

TEST_CASE("polytope JSON") {
  auto j = polytope_to_json(newton_polytope(parse_laurent("x + y + 1/(x y)")));
  CHECK(j.at("lattice_points") == 4);
  CHECK(j.at("normalized_volume") == "3");
  CHECK(j.at("vertices").size() == 3);
}
