#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qf/laurent.hpp"
#include "qf/quiver.hpp"

namespace qf {

struct Fixture {
  std::string name;
  std::optional<Quiver> quiver;
  nlohmann::json bundle;    // null when absent
  nlohmann::json expected;  // name -> {"value": ..., "origin": ...}
  bool has(const std::string& key) const { return expected.contains(key); }
  const nlohmann::json& value(const std::string& key) const { return expected.at(key).at("value"); }
};

struct MutationCase {
  Laurent f, h;
  int pivot = 0;
  std::vector<std::string> names;
};

Fixture load_fixture(const std::string& path);
// All fixtures in a directory except the mutation set, sorted by name.
std::vector<Fixture> load_fixtures(const std::string& dir);
const Fixture& find_fixture(const std::vector<Fixture>& all, const std::string& name);
std::vector<MutationCase> load_mutations(const std::string& dir);

// Compiled-in location of the shipped corpus; QF_FIXTURES overrides it.
std::string default_fixture_dir();

}  // namespace qf
