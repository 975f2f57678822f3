// Command-line front end: one subcommand per analysis, plus verify and run.

#include "ramsey.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace ramsey;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A set argument is a JSON file, inline JSON, or "name:key=val,...".
LazySet load_set(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe.good() && arg.find(':') == std::string::npos) return set_from_text(read_file(arg));
  return set_from_text(arg);
}

// Commas are accepted in place of the ';' list separator; matrix rows keep ';'
// and use commas between entries.
std::string normalise(const std::string& key, std::string v) {
  for (auto& c : v) {
    if (c == ',') c = key == "matrix" ? ' ' : ';';
  }
  return v;
}

struct Invocation {
  std::string analysis;
  std::map<std::string, std::string> values;
  std::string set_arg;
};

struct Globals {
  std::optional<std::uint64_t> budget;
  std::string out;
  std::uint64_t seed = 0;
};

int execute(const Invocation& inv, const Globals& g) {
  nlohmann::json given = nlohmann::json::object();
  for (const auto& [k, v] : inv.values) {
    if (!v.empty()) given[k] = normalise(k, v);
  }
  std::optional<LazySet> set;
  if (!inv.set_arg.empty()) set = load_set(inv.set_arg);

  if (!g.out.empty()) {
    ExperimentConfig cfg;
    cfg.name = inv.analysis;
    cfg.analysis = inv.analysis;
    cfg.params = given;
    if (set) cfg.set = set->spec();
    cfg.out_dir = g.out;
    cfg.max_elements = g.budget;
    auto s = run(cfg);
    std::cout << s.summary.dump(2) << '\n';
    return 0;
  }
  std::vector<std::string> errors;
  auto params = complete_params(inv.analysis, given, errors);
  if (!errors.empty()) throw ConfigError(errors);
  Budget budget(g.budget.value_or(std::numeric_limits<std::uint64_t>::max()));
  auto res = run_analysis(inv.analysis, params, set, budget);
  // Tables and member lists go to stdout as-is; everything else as one JSON record.
  auto plain = [](const std::string& suffix) {
    return suffix.size() > 4 && (suffix.substr(suffix.size() - 4) == ".csv" || suffix.substr(suffix.size() - 4) == ".txt");
  };
  const bool validating = params.count("validate") && params.at("validate") == "true";
  if (res.artifacts.size() == 1 && plain(res.artifacts.front().suffix) && !validating) {
    std::cout << res.artifacts.front().content;
    std::cerr << "status: " << res.status << ", horizon: " << res.horizon << '\n';
    return 0;
  }
  nlohmann::json out = res.record;
  out["status"] = res.status;
  out["horizon"] = res.horizon;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int verify_command(const std::string& cert_path, const std::string& set_arg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(cert_path));
  } catch (const std::exception& e) {
    std::cerr << "malformed certificate: " << e.what() << '\n';
    return 2;
  }
  Certificate cert;
  try {
    cert = certificate_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << "malformed certificate: " << e.what() << '\n';
    return 2;
  }
  std::optional<LazySet> set;
  if (!set_arg.empty()) set = load_set(set_arg);
  auto r = verify_certificate(cert, set ? &*set : nullptr);
  std::cout << (r.ok ? "PASS " : "FAIL ") << r.kind << ": " << r.message << '\n';
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Largeness, density and pattern experiments over N, Z and finite fields"};
  app.require_subcommand(1);
  Globals globals;
  std::uint64_t budget = 0;
  auto* budget_opt = app.add_option("--budget", budget, "Search budget in elements scanned");
  app.add_option("--out", globals.out, "Write artifacts and a summary into this directory");
  app.add_option("--seed", globals.seed, "Seed for randomized test instances; never alters search results");

  std::vector<std::unique_ptr<Invocation>> invocations;
  Invocation* chosen = nullptr;
  std::map<std::string, CLI::App*> verbs;

  auto bind = [&](CLI::App* cmd, const std::string& analysis, const AnalysisSpec& spec,
                  const std::map<std::string, std::string>& renames) {
    invocations.push_back(std::make_unique<Invocation>());
    Invocation* inv = invocations.back().get();
    inv->analysis = analysis;
    if (spec.needs_set) cmd->add_option("set", inv->set_arg, "Set: JSON file, inline JSON or name:key=val,...")->required();
    for (const auto& [key, def] : spec.params) {
      auto it = renames.find(key);
      std::string flag = "--" + (it == renames.end() ? key : it->second);
      std::string help = def.empty() ? "required" : "default " + def;
      if (def == "false") {
        cmd->add_flag_callback(flag, [inv, key = key] { inv->values[key] = "true"; }, "switch");
      } else {
        cmd->add_option(flag, inv->values[key], help);
      }
    }
    cmd->callback([&chosen, inv] { chosen = inv; });
  };

  for (const auto& [analysis, spec] : analysis_table()) {
    auto dot = analysis.find('.');
    std::string verb = analysis.substr(0, dot);
    std::string sub = analysis.substr(dot + 1);
    if (verb == "construct") {
      auto* cmd = app.add_subcommand("construct", "Enumerate a construction, optionally validating its hypotheses");
      bind(cmd, analysis, spec, {{"upto", "emit-upto"}});
      continue;
    }
    if (!verbs.count(verb)) {
      verbs[verb] = app.add_subcommand(verb, verb + " analyses");
      verbs[verb]->require_subcommand(1);
    }
    auto* cmd = verbs[verb]->add_subcommand(sub, analysis);
    static const std::map<std::string, std::vector<std::string>> aliases = {
        {"equidist.discrepancy", {"disc", "leveque"}},
        {"equidist.dense_threshold", {"threshold"}},
        {"patterns.longest_ap", {"ap"}},
        {"patterns.longest_gp", {"gp"}},
        {"patterns.generalized_ap", {"genap"}},
        {"patterns.geometric_cube", {"geocube"}},
        {"patterns.geo_arithmetic", {"geoarith"}},
        {"patterns.line", {"hjline"}},
    };
    if (auto it = aliases.find(analysis); it != aliases.end()) {
      for (const auto& a : it->second) cmd->alias(a);
    }
    bind(cmd, analysis, spec, {});
  }

  std::string cert_path;
  std::string verify_set;
  auto* verify = app.add_subcommand("verify", "Re-check a certificate against a set; exit 0 iff every claim holds");
  verify->add_option("certificate", cert_path, "Certificate JSON file")->required();
  verify->add_option("set", verify_set, "Set: JSON file, inline JSON or name:key=val,...");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
  run_cmd->add_option("config", config_path, "Config JSON file")->required();

  CLI11_PARSE(app, argc, argv);
  if (*budget_opt) globals.budget = budget;

  try {
    if (verify->parsed()) return verify_command(cert_path, verify_set);
    if (run_cmd->parsed()) {
      auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(read_file(config_path)));
      if (!globals.out.empty()) cfg.out_dir = globals.out;
      if (globals.budget) cfg.max_elements = globals.budget;
      auto s = run(cfg);
      std::cout << s.summary.dump(2) << '\n';
      return 0;
    }
    if (!chosen) {
      std::cerr << app.help();
      return 2;
    }
    return execute(*chosen, globals);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
