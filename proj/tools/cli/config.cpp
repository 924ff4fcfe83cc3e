#include "commands.hpp"

#include "qlab/errors.hpp"
#include "qlab/oracle.hpp"

#include <map>

namespace qlab::cli {

namespace {

Json lattice_net(const char* delta) { return Json{{"kind", "lattice"}, {"delta", delta}}; }

Json common_defaults() {
  return Json{
      {"seed", 1},
      {"out", ""},
      {"format", "json"},
      {"budget", default_search_budget()},
      {"mesh", "1/64"},
      {"delta", nullptr},
  };
}

// Per-command defaults; every key a command reads appears here.
const std::map<std::string, Json>& command_defaults() {
  static const std::map<std::string, Json> table{
      {"norm",
       Json{{"space", Json{{"family", "c0"}, {"n", 3}}},
            {"x", Json::object()},
            {"vectors", Json::array()},
            {"samples", 0},
            {"bound", "2"},
            {"denominator", 8}}},
      {"quantize",
       Json{{"space", Json{{"family", "summing"}, {"n", 4}}},
            {"nets", lattice_net("1")},
            {"x", Json::object()},
            {"vectors", Json::array()},
            {"method", "greedy"},
            {"samples", 0},
            {"bound", "2"},
            {"denominator", 8}}},
      {"oracle",
       Json{{"space", Json{{"family", "summing"}, {"n", 3}}},
            {"nets", lattice_net("1")},
            {"x", Json::object()},
            {"vectors", Json::array()},
            {"bound", "2"},
            {"denominator", 8},
            {"task", "best"},
            {"mode", "cqp"},
            {"pruning", true},
            {"section", nullptr},
            {"samples", 200},
            {"radius", "1"}}},
      {"sweep-eps",
       Json{{"space", Json{{"family", "c0"}, {"n", 3}}},
            {"deltas", Json::array({"1", "2"})},
            {"mode", "cqp"},
            {"samples", 200},
            {"radius", "1"}}},
      {"haar", Json{{"levels", Json::array({1, 2})}, {"deltas", Json::array({"1"})}}},
      {"covering",
       Json{{"task", "p1"},
            {"body", Json{{"cube", "1/2"}, {"dimension", 2}}},
            {"lattice", Json{{"integer", 2}}},
            {"coordinate-nets", nullptr},
            {"region", nullptr},
            {"eps0", "1/2"},
            {"eps1", nullptr},
            {"radius", "2"},
            {"eta", "1/8"}}},
      {"construct",
       Json{{"kind", "y"},
            {"inner", Json{{"family", "c0"}, {"n", 4}}},
            {"blocks", 4},
            {"base", Json{{"family", "c0"}, {"n", 2}}},
            {"eta", "1/2"},
            {"stages", 2},
            {"epsilon", "1"},
            {"samples", 200},
            {"build-out", ""}}},
  };
  return table;
}

} // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : command_defaults()) names.push_back(name);
  return names;
}

Json resolve_config(const std::string& command, const Json& user) {
  auto it = command_defaults().find(command);
  if (it == command_defaults().end()) throw ParseError("unknown command \"" + command + "\"");
  Json config = common_defaults();
  for (const auto& [k, v] : it->second.items()) config[k] = v;
  if (!user.is_null() && !user.is_object()) throw ParseError("a config must be a JSON object");
  for (const auto& [k, v] : user.items()) {
    if (k == "command") continue;
    if (!config.contains(k)) throw ParseError("unknown config key \"" + k + "\" for " + command);
    config[k] = v;
  }
  return config;
}

} // namespace qlab::cli
