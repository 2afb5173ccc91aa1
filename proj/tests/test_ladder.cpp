#include <functional>
#include <set>

#include "doctest.h"
#include "qf/fixtures.hpp"
#include "qf/ladder.hpp"
#include "qf/toric.hpp"

using namespace qf;

namespace {

// monotone lattice paths along box edges
long lattice_paths(const LadderDiagram& ld, Point from, Point to) {
  std::set<Edge> edges;
  for (const Point& b : ld.boxes) {
    edges.insert({b, false});
    edges.insert({{b.x, b.y + 1}, false});
    edges.insert({b, true});
    edges.insert({{b.x + 1, b.y}, true});
  }
  std::map<Point, long> memo;
  std::function<long(Point)> count = [&](Point p) -> long {
    if (p == to) return 1;
    if (p.x > to.x || p.y > to.y) return 0;
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    long c = 0;
    for (bool up : {false, true})
      if (edges.count({p, up})) c += count(Edge{p, up}.to());
    return memo[p] = c;
  };
  return count(from);
}

Quiver fixture_quiver(const std::string& name) {
  return *find_fixture(load_fixtures(default_fixture_dir()), name).quiver;
}

// the union of arrow supports must be a tree on the lattice points it touches
bool support_is_tree(const LadderQuiver& lq, const ArrowSet& s) {
  std::set<Edge> edges;
  std::set<Point> pts;
  for (long a : s)
    for (const Edge& e : support_edges(lq.arrows[a].support)) {
      edges.insert(e);
      pts.insert(e.from);
      pts.insert(e.to());
    }
  std::map<Point, Point> parent;
  for (const Point& p : pts) parent[p] = p;
  std::function<Point(Point)> find = [&](Point p) { return parent[p] == p ? p : parent[p] = find(parent[p]); };
  for (const Edge& e : edges) {
    Point a = find(e.from), b = find(e.to());
    if (a == b) return false;
    parent[a] = b;
  }
  return edges.size() + 1 == pts.size();
}

}  // namespace

TEST_CASE("Grassmannian ladders") {
  auto check = [](long n, long r, std::size_t v, std::size_t a) {
    LadderDiagram ld = build_ladder(grassmannian(n, r));
    LadderQuiver lq = build_ladder_quiver(ld);
    CHECK(lq.vertices.size() == v);
    CHECK(lq.arrows.size() == a);
    CHECK((long)ld.boxes.size() == r * (n - r));
  };
  check(4, 2, 3, 6);
  check(5, 2, 4, 9);
  // rectangle: interior lattice points plus the two corners
  for (long n = 3; n <= 8; ++n)
    for (long r = 1; r < n; ++r) {
      std::size_t v = (r - 1) * (n - r - 1) + 2;
      check(n, r, v, r * (n - r) + v - 1);
    }
}

TEST_CASE("Gr(5,2) marked vertices") {
  LadderQuiver lq = build_ladder_quiver(build_ladder(grassmannian(5, 2)));
  std::set<Point> pts(lq.vertices.begin(), lq.vertices.end());
  CHECK(pts == std::set<Point>{{0, 0}, {1, 1}, {2, 1}, {3, 2}});
  CHECK(lq.vertices[0] == Point{0, 0});
}

TEST_CASE("section paths equal lattice paths") {
  for (long n = 2; n <= 8; ++n)
    for (long r = 1; r < n; ++r) {
      LadderDiagram ld = build_ladder(grassmannian(n, r));
      LadderQuiver lq = build_ladder_quiver(ld);
      long paths = (long)paths_between(lq, lq.path_start.at(1), lq.path_end.at(1)).size();
      CHECK(Int(paths) == binomial(n, r));
      CHECK(paths == lattice_paths(ld, ld.source, ld.external.at(1)));
    }
}

TEST_CASE("toric dimension identity over a small sweep") {
  long tested = 0;
  for (long a = 2; a <= 5; ++a)
    for (long b = 0; b <= 2; ++b)
      for (long c = 0; c <= 2; ++c)
        for (long r1 = 1; r1 <= 3; ++r1)
          for (long r2 = 1; r2 <= 2; ++r2) {
            Quiver q;
            try {
              q = validate_quiver({{0, a, b}, {0, 0, std::min(c, 1L)}, {0, 0, 0}}, {1, r1, r2});
              if (!is_fano_certificate(q)) continue;
              y_shape_decompose(q);
            } catch (const Error&) {
              continue;
            }
            LadderDiagram ld = build_ladder(q);
            LadderQuiver lq = build_ladder_quiver(ld);
            CHECK((long)lq.arrows.size() - ((long)lq.vertices.size() - 1) == ld.stats.total_dim);
            CHECK((long)ld.boxes.size() == ld.stats.total_dim);
            ++tested;
          }
  CHECK(tested > 10);
}

TEST_CASE("fixture ladders") {
  for (const char* name : {"fl5321", "yshaped1", "yshaped2"}) {
    Quiver q = fixture_quiver(name);
    LadderDiagram ld = build_ladder(q);
    LadderQuiver lq = build_ladder_quiver(ld);
    CAPTURE(name);
    CHECK((long)ld.boxes.size() == vertex_stats(q).total_dim);
    CHECK((long)lq.arrows.size() - ((long)lq.vertices.size() - 1) == vertex_stats(q).total_dim);
    for (const auto& [v, start] : lq.path_start)
      CHECK_FALSE(paths_between(lq, start, lq.path_end.at(v)).empty());
  }
}

TEST_CASE("meander supports are trees") {
  for (const char* name : {"gr42", "gr52", "fl5321", "yshaped1"}) {
    LadderQuiver lq = build_ladder_quiver(build_ladder(fixture_quiver(name)));
    for (const auto& m : meanders(lq)) CHECK(support_is_tree(lq, m.support));
  }
}

TEST_CASE("edge labels cover every horizontal edge") {
  LadderDiagram ld = build_ladder(fixture_quiver("fl5321"));
  EdgeLabeling lab = edge_labels(ld);
  long horizontal = 0;
  std::set<Edge> seen;
  for (const Point& b : ld.boxes)
    for (Edge e : {Edge{b, false}, Edge{{b.x, b.y + 1}, false}})
      if (seen.insert(e).second) ++horizontal;
  long labelled = 0;
  for (const auto& [e, v] : lab) labelled += !e.up;
  CHECK(labelled == horizontal);
}

TEST_CASE("ladder rendering and JSON") {
  LadderDiagram ld = build_ladder(grassmannian(4, 2));
  LadderQuiver lq = build_ladder_quiver(ld);
  auto j = ladder_to_json(ld, lq);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("boxes").size() == 4);
  CHECK(j.at("arrows").size() == 6);
  std::string art = render_ascii(ld);
  CHECK(art.find('O') != std::string::npos);
  CHECK(std::count(art.begin(), art.end(), '\n') == 5);
}
