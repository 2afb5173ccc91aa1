#include <array>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "qf/fixtures.hpp"

namespace {

struct Output {
  int status = 0;
  std::string text;
};

Output run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + QFL_BINARY + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Output out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.text.append(buf.data(), n);
  int st = pclose(p);
  out.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

std::string fixture(const std::string& name) { return qf::default_fixture_dir() + "/" + name + ".json"; }

nlohmann::json json_of(const Output& o) { return nlohmann::json::parse(o.text); }

}  // namespace

TEST_CASE("cli validate and stats") {
  auto o = run("validate " + fixture("gr52"));
  CHECK(o.status == 0);
  auto j = json_of(o);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("stats").at("total_dim") == 6);
  CHECK(j.at("y_shaped") == true);
  auto s = json_of(run("stats " + fixture("gr42")));
  CHECK(s.at("ladder_vertices") == 3);
  CHECK(s.at("ladder_arrows") == 6);
}

TEST_CASE("cli errors are JSON with a nonzero exit") {
  std::string path = "/tmp/qfl_bad_quiver.json";
  std::ofstream(path) << R"({"adjacency": [[0, 4], [1, 0]], "dims": [1, 2]})";
  auto o = run("validate " + path);
  CHECK(o.status != 0);
  CHECK(json_of(o).at("error").at("code") == "NotAcyclic");
  auto nf = run("mirror --quiver " + fixture("pid104") + " --bundle " + fixture("pid104"));
  CHECK(nf.status != 0);
  CHECK(json_of(nf).at("error").at("code") == "NotFound");
  auto usage = run("frobnicate");
  CHECK(usage.status != 0);
  CHECK(json_of(usage).contains("error"));
}

TEST_CASE("cli mirror then period") {
  std::string mirror_path = "/tmp/qfl_pid20_mirror.json";
  auto m = run("mirror --quiver " + fixture("pid20") + " --bundle " + fixture("pid20"));
  REQUIRE(m.status == 0);
  std::ofstream(mirror_path) << m.text;
  auto ours = json_of(run("period --n 20 --from " + mirror_path)).at("period");
  auto published =
      json_of(run("period --n 20 --poly \"x + y + z + w + z/y + 1/(y w) + w/x + 1/(x z)\"")).at("period");
  CHECK(ours.size() == 21);
  CHECK(ours == published);
  auto toric = json_of(run("period --source toric --n 8 --quiver " + fixture("pid20") + " --bundle " +
                           fixture("pid20")))
                   .at("period");
  CHECK(toric == nlohmann::json(std::vector<nlohmann::json>(ours.begin(), ours.begin() + 9)));
  auto weights = json_of(run("mirror --emit weights --quiver " + fixture("pid20") + " --bundle " + fixture("pid20")));
  CHECK(weights.at("problem").at("l").size() == 2);
}

TEST_CASE("cli gitdata") {
  auto j = json_of(run("gitdata " + fixture("gr86-wedge5")));
  CHECK(j.at("rank") == 6);
  CHECK(j.at("weights").size() == 18);
  auto g = run("gitdata --check gorenstein " + fixture("yshaped1"));
  CHECK(g.status == 0);
  CHECK(json_of(g).at("check").at("pass") == true);
  auto m = json_of(run("gitdata --check meanders " + fixture("fl5321")));
  CHECK(m.at("check").at("pass") == true);
  CHECK(m.at("check").at("supports") == 138);
}

TEST_CASE("cli sagbi-verify, polytope, mutate, fixtures") {
  auto s = json_of(run("sagbi-verify --quiver " + fixture("gr52")));
  CHECK(s.at("pass") == true);
  CHECK(s.at("kernel_classes") == 60);
  CHECK(s.at("mismatches").empty());
  auto p = json_of(run("polytope --poly \"x + y + 1/(x y)\""));
  CHECK(p.at("normalized_volume") == "3");
  auto mu = json_of(run("mutate --poly \"y + 1/y + 2 x/y + x^2/y\" --factor \"1 + x\" --pivot y"));
  CHECK(mu.at("polynomial") == "x y + y + x/y + 1/y");
  auto l = json_of(run("fixtures list"));
  CHECK(l.at("fixtures").size() == 11);
}

TEST_CASE("cli output is identical across thread counts") {
  for (std::string args : std::vector<std::string>{"period --n 12 --poly \"x + y + z + w + z/y + 1/(y w) + w/x + 1/(x z)\"",
                           "sagbi-verify --quiver " + fixture("yshaped1"), "meanders " + fixture("fl5321"),
                           "mirror --quiver " + fixture("pid232") + " --bundle " + fixture("pid232")}) {
    auto a = run(args, "QF_THREADS=1"), b = run(args, "QF_THREADS=4"), c = run(args, "QF_THREADS=1");
    CHECK(a.text == b.text);
    CHECK(a.text == c.text);
  }
}
