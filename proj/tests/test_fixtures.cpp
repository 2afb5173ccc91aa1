#include <set>

#include "doctest.h"
#include "qf/fixtures.hpp"
#include "qf/przyjalkowski.hpp"

using namespace qf;

namespace {

const std::vector<Fixture>& corpus() {
  static const std::vector<Fixture> fx = load_fixtures(default_fixture_dir());
  return fx;
}

}  // namespace

TEST_CASE("corpus contents and provenance markers") {
  std::set<std::string> names;
  for (const auto& f : corpus()) {
    names.insert(f.name);
    for (const auto& [k, v] : f.expected.items()) {
      CAPTURE(f.name);
      CAPTURE(k);
      CHECK(v.contains("value"));
      std::string origin = v.value("origin", "");
      CHECK((origin == "published" || origin == "oracle" || origin == "trivial"));
    }
  }
  CHECK(names == std::set<std::string>{"fl5321", "gr42", "gr52", "gr86-wedge5", "pid104", "pid115", "pid20",
                                       "pid232", "pid29", "yshaped1", "yshaped2"});
  CHECK(load_mutations(default_fixture_dir()).size() == 7);
}

TEST_CASE("ladder fixture values") {
  for (const auto& f : corpus()) {
    if (!f.quiver) continue;
    CAPTURE(f.name);
    LadderDiagram ld = build_ladder(*f.quiver);
    LadderQuiver lq = build_ladder_quiver(ld);
    if (f.has("total_dim")) CHECK(ld.stats.total_dim == f.value("total_dim").get<long>());
    if (f.has("boxes")) CHECK((long)ld.boxes.size() == f.value("boxes").get<long>());
    if (f.has("meanders")) CHECK((long)meanders(lq).size() == f.value("meanders").get<long>());
    if (f.has("fano_certificate")) CHECK(is_fano_certificate(*f.quiver) == f.value("fano_certificate").get<bool>());
    if (f.has("s_tilde")) {
      IntVec st = vertex_stats(*f.quiver).s_tilde;
      CHECK(IntVec(st.begin() + 1, st.end()) == f.value("s_tilde").get<IntVec>());
    }
    if (f.has("marked")) {
      std::set<Point> pts(lq.vertices.begin(), lq.vertices.end()), expected;
      for (const auto& p : f.value("marked")) expected.insert({p[0].get<long>(), p[1].get<long>()});
      CHECK(pts == expected);
    }
  }
}

TEST_CASE("published polynomials parse in four variables") {
  for (const char* name : {"pid20", "pid115", "pid232", "pid29"}) {
    Laurent f = parse_laurent(find_fixture(corpus(), name).value("polynomial").get<std::string>());
    CHECK(f.n() == 4);
    CHECK(f.constant_term() == 0);
  }
}

TEST_CASE("pid115 and pid232 disagree with the published polynomials from t^3 on") {
  // the partition picked here yields a different mirror; see the README
  for (const char* name : {"pid115", "pid232"}) {
    const Fixture& f = find_fixture(corpus(), name);
    MirrorRun run = mirror_pipeline(*f.quiver, bundle_from_json(f.bundle));
    auto ours = classical_period(run.polynomial, 4);
    auto theirs = classical_period(parse_laurent(f.value("polynomial").get<std::string>()), 4);
    CAPTURE(name);
    CHECK(PeriodSequence(ours.begin(), ours.begin() + 3) == PeriodSequence(theirs.begin(), theirs.begin() + 3));
    CHECK(ours[3] == 30);
    CHECK(theirs[3] == 24);
  }
}

TEST_CASE("missing fixtures") {
  CHECK_THROWS_AS(find_fixture(corpus(), "nope"), Error);
  CHECK_THROWS_AS(load_fixtures("/nonexistent/dir"), std::exception);
}
