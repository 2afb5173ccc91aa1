#include "qf/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#ifndef QF_FIXTURE_DIR
#define QF_FIXTURE_DIR "fixtures"
#endif

namespace qf {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("BadInput", "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", path + ": " + e.what());
  }
}

}  // namespace

Fixture load_fixture(const std::string& path) {
  nlohmann::json j = read_json(path);
  Fixture f;
  f.name = j.at("name").get<std::string>();
  if (j.contains("quiver")) f.quiver = quiver_from_json(j.at("quiver"));
  if (j.contains("bundle")) f.bundle = j.at("bundle");
  f.expected = j.value("expected", nlohmann::json::object());
  return f;
}

std::vector<Fixture> load_fixtures(const std::string& dir) {
  std::vector<Fixture> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".json" || e.path().stem() == "mutations") continue;
    out.push_back(load_fixture(e.path().string()));
  }
  std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return out;
}

const Fixture& find_fixture(const std::vector<Fixture>& all, const std::string& name) {
  for (const auto& f : all)
    if (f.name == name) return f;
  throw Error("BadInput", "no fixture named " + name);
}

std::vector<MutationCase> load_mutations(const std::string& dir) {
  nlohmann::json j = read_json((std::filesystem::path(dir) / "mutations.json").string());
  std::vector<MutationCase> out;
  for (const auto& c : j.at("cases")) {
    MutationCase m;
    std::string text = c.at("polynomial");
    if (c.contains("names")) {
      m.names = c.at("names").get<std::vector<std::string>>();
      m.f = parse_laurent(text, m.names);
    } else {
      m.f = parse_laurent(text);
      m.names = default_names(m.f.n());
    }
    m.h = parse_laurent(c.at("factor").get<std::string>(), m.names);
    auto it = std::find(m.names.begin(), m.names.end(), c.at("pivot").get<std::string>());
    if (it == m.names.end()) throw Error("BadInput", "unknown pivot variable");
    m.pivot = (int)(it - m.names.begin());
    out.push_back(std::move(m));
  }
  return out;
}

std::string default_fixture_dir() {
  if (const char* env = std::getenv("QF_FIXTURES")) return env;
  return QF_FIXTURE_DIR;
}

}  // namespace qf
