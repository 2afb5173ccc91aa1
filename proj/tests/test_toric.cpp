#include <set>

#include "doctest.h"
#include "qf/fixtures.hpp"
#include "qf/toric.hpp"

using namespace qf;

namespace {

const std::vector<Fixture>& corpus() {
  static const std::vector<Fixture> fx = load_fixtures(default_fixture_dir());
  return fx;
}

LadderQuiver ladder_of(const std::string& name) {
  return build_ladder_quiver(build_ladder(*find_fixture(corpus(), name).quiver));
}

std::vector<ArrowSet> sorted(std::vector<ArrowSet> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

TEST_CASE("Gr(4,2) weights and stability") {
  ToricGitData gd = git_data(ladder_of("gr42"));
  const Fixture& f = find_fixture(corpus(), "gr42");
  auto cols = gd.weights;
  auto expected = f.value("weight_columns").get<std::vector<IntVec>>();
  std::sort(cols.begin(), cols.end());
  std::sort(expected.begin(), expected.end());
  CHECK(cols == expected);
  CHECK(gd.stability == f.value("stability").get<IntVec>());
}

TEST_CASE("weights are head minus tail, stability is their sum") {
  for (const auto& f : corpus()) {
    if (!f.quiver) continue;
    LadderQuiver lq = build_ladder_quiver(build_ladder(*f.quiver));
    ToricGitData gd = git_data(lq);
    CAPTURE(f.name);
    REQUIRE(gd.rank == (long)lq.vertices.size() - 1);
    IntVec sum(gd.rank, 0);
    for (std::size_t a = 0; a < lq.arrows.size(); ++a) {
      IntVec w(gd.rank, 0);
      if (lq.arrows[a].tgt > 0) w[lq.arrows[a].tgt - 1] += 1;
      if (lq.arrows[a].src > 0) w[lq.arrows[a].src - 1] -= 1;
      CHECK(gd.weights[a] == w);
      for (long i = 0; i < gd.rank; ++i) sum[i] += w[i];
    }
    CHECK(gd.stability == sum);
  }
}

TEST_CASE("section paths of one vertex are linearly equivalent") {
  for (const char* name : {"gr52", "fl5321", "yshaped1"}) {
    LadderQuiver lq = ladder_of(name);
    ToricGitData gd = git_data(lq);
    auto dv = vertex_divisors(gd, lq);
    for (const auto& [v, start] : lq.path_start)
      for (const auto& p : paths_between(lq, start, lq.path_end.at(v))) CHECK(divisor_of_path(gd, p) == dv.at(v));
  }
}

TEST_CASE("meanders, brute-force anti-cones and LP anti-cones agree") {
  for (const char* name : {"gr42", "gr52", "fl5321", "yshaped1", "pid20", "pid115"}) {
    LadderQuiver lq = ladder_of(name);
    ToricGitData gd = git_data(lq);
    std::vector<ArrowSet> m;
    for (const auto& x : meanders(lq)) m.push_back(x.support);
    auto brute = sorted(minimal_anticones_bruteforce(gd, lq));
    CAPTURE(name);
    CHECK(sorted(m) == brute);
    CHECK(sorted(minimal_anticones_parallel(gd, lq)) == brute);
    if (gd.weights.size() <= 20) CHECK(sorted(minimal_anticones_lp(gd)) == brute);
  }
  CHECK_THROWS_AS(minimal_anticones_lp(git_data(ladder_of("yshaped2"))), Error);
}

TEST_CASE("minimal anti-cones are minimal under LP membership") {
  LadderQuiver lq = ladder_of("fl5321");
  ToricGitData gd = git_data(lq);
  for (const auto& s : minimal_anticones_bruteforce(gd, lq)) {
    std::vector<IntVec> gens;
    for (long a : s) gens.push_back(gd.weights[a]);
    CHECK(in_cone(gens, gd.stability));
    for (std::size_t drop = 0; drop < gens.size(); ++drop) {
      auto fewer = gens;
      fewer.erase(fewer.begin() + drop);
      CHECK_FALSE(in_cone(fewer, gd.stability));
    }
  }
}

TEST_CASE("Gorenstein certificates for every fixture") {
  for (const auto& f : corpus()) {
    if (!f.quiver) continue;
    LadderQuiver lq = build_ladder_quiver(build_ladder(*f.quiver));
    ToricGitData gd = git_data(lq);
    CAPTURE(f.name);
    CHECK(gorenstein_check(gd, lq, *f.quiver));
    IntVec c = anticanonical_coefficients(*f.quiver);
    IntVec sum(gd.rank, 0);
    for (const auto& [v, d] : vertex_divisors(gd, lq))
      for (long i = 0; i < gd.rank; ++i) sum[i] += c[v] * d[i];
    CHECK(sum == gd.stability);
  }
}

TEST_CASE("meander counts") {
  CHECK(meanders(ladder_of("gr42")).size() == 6);
  CHECK(meanders(ladder_of("gr52")).size() == 10);
}

TEST_CASE("gitdata JSON") {
  LadderQuiver lq = ladder_of("gr52");
  auto j = git_to_json(git_data(lq), lq);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("rank") == 3);
  CHECK(j.at("weights").size() == 9);
  CHECK(j.at("divisors").contains("1"));
}
