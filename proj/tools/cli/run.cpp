#include "commands.hpp"

#include "qlab/errors.hpp"
#include "qlab/version.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

namespace qlab::cli {

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed, budget, stages, blocks;
  std::optional<std::string> out, format, mesh, space, nets, delta;
};

Json parse_json_text(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("cannot parse ") + what + ": " + e.what());
  }
}

// "family:n" shorthand for the one-parameter families, otherwise JSON.
Json space_flag(const std::string& text) {
  static const std::map<std::string, std::string> param{
      {"c0", "n"}, {"summing", "n"}, {"schauder", "max_index"}, {"haar", "level"}};
  auto colon = text.find(':');
  if (!text.empty() && text.front() != '{' && colon != std::string::npos) {
    std::string family = text.substr(0, colon);
    auto it = param.find(family);
    if (it == param.end()) throw ParseError("no shorthand for space family \"" + family + "\"");
    std::string value = text.substr(colon + 1);
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("space shorthand needs a non-negative integer: " + text);
    return Json{{"family", family}, {it->second, std::stoull(value)}};
  }
  return parse_json_text(text, "--space");
}

// A bare scalar means the lattice with that delta.
Json nets_flag(const std::string& text) {
  if (!text.empty() && text.front() == '{') return parse_json_text(text, "--nets");
  parse_scalar(text);
  return Json{{"kind", "lattice"}, {"delta", text}};
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open config " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  Json j = parse_json_text(text, path.c_str());
  if (!j.is_object()) throw ParseError("config " + path + " is not a JSON object");
  return j;
}

Json overlay(Json user, const Flags& f) {
  if (f.seed) user["seed"] = *f.seed;
  if (f.budget) user["budget"] = *f.budget;
  if (f.stages) user["stages"] = *f.stages;
  if (f.blocks) user["blocks"] = *f.blocks;
  if (f.out) user["out"] = *f.out;
  if (f.format) user["format"] = *f.format;
  if (f.mesh) {
    parse_scalar(*f.mesh);
    user["mesh"] = *f.mesh;
  }
  if (f.delta) {
    parse_scalar(*f.delta);
    user["delta"] = *f.delta;
  }
  if (f.space) user["space"] = space_flag(*f.space);
  if (f.nets) user["nets"] = nets_flag(*f.nets);
  return user;
}

using Command = std::function<CommandOutput(const Json&)>;

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"norm", cmd_norm},       {"quantize", cmd_quantize}, {"oracle", cmd_oracle},      {"sweep-eps", cmd_sweep_eps},
      {"haar", cmd_haar},       {"covering", cmd_covering}, {"construct", cmd_construct},
  };
  return table;
}

int execute(const std::string& name, const Flags& flags, std::ostream& out) {
  Json config = resolve_config(name, overlay(load_config(flags.config_path), flags));
  const std::string format = config.at("format").get<std::string>();
  if (format != "json" && format != "csv") throw ParseError("format must be json or csv");

  auto start = std::chrono::steady_clock::now();
  CommandOutput result = commands().at(name)(config);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text = format == "csv" ? to_csv(result) : make_report(name, config, result, seconds).dump(2) + "\n";
  const std::string path = config.at("out").get<std::string>();
  if (path.empty()) {
    out << text;
  } else {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write " + path);
    f << text;
  }
  return result.violation ? exit_violation : exit_ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact experiments on coefficient quantization of bases", "qlab"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);

  Flags flags;
  const std::map<std::string, std::string> about{
      {"norm", "evaluate norms of coefficient vectors"},
      {"quantize", "run a greedy quantizer (or plain rounding) and check its guarantee"},
      {"oracle", "exact best quantization, property P, tolerance estimates, quasi-greedy constants"},
      {"sweep-eps", "tolerance estimates across delta values and the scaling check"},
      {"haar", "distance of the Haar witness to the quantized set"},
      {"covering", "lattice and net covering checks, amplification, parallelogram example"},
      {"construct", "build the Y or U space and run its checks"},
  };
  for (const auto& [name, text] : about) {
    CLI::App* sub = app.add_subcommand(name, text);
    sub->add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--out", flags.out, "write the report here instead of stdout");
    sub->add_option("--format", flags.format, "json or csv");
    sub->add_option("--budget", flags.budget, "search node budget");
    sub->add_option("--mesh", flags.mesh, "grid mesh p/q");
    sub->add_option("--space", flags.space, "space JSON or family:n shorthand");
    sub->add_option("--nets", flags.nets, "net family JSON or a lattice delta");
    sub->add_option("--delta", flags.delta, "lattice delta p/q");
    sub->add_option("--stages", flags.stages, "U construction stages");
    sub->add_option("--blocks", flags.blocks, "Y construction blocks");
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << version << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "qlab: " << e.what() << "\n";
    return exit_config;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    return execute(name, flags, out);
  } catch (const SearchBudgetExceeded& e) {
    err << "qlab: " << e.what() << " (" << e.nodes() << " nodes)\n";
    return exit_budget;
  } catch (const Error& e) {
    err << "qlab: " << e.what() << "\n";
    return exit_config;
  } catch (const nlohmann::json::exception& e) {
    err << "qlab: bad config value: " << e.what() << "\n";
    return exit_config;
  }
}

} // namespace qlab::cli
