#pragma once

// Declarative experiments: a validated config names a set and one analysis;
// running it yields deterministic artifacts plus a summary record. The CLI
// verbs route through run_analysis as well.

#include "arithfun.hpp"
#include "certificate.hpp"
#include "constructions.hpp"
#include "density.hpp"
#include "finitefield.hpp"
#include "groundset.hpp"
#include "largeness.hpp"
#include "normform.hpp"
#include "numeric.hpp"
#include "patterns.hpp"
#include "set_registry.hpp"
#include "verify.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramsey {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Module versions reported in every summary.
inline nlohmann::json module_versions() {
  return {{"groundset", "1.0"}, {"largeness", "1.0"}, {"density", "1.0"}, {"patterns", "1.0"},
          {"constructions", "1.0"}, {"arithfun", "1.0"}, {"finitefield", "1.0"}, {"normform", "1.0"},
          {"cli", kLibraryVersion}};
}

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> errors)
      : std::invalid_argument(join(errors)), errors_(std::move(errors)) {}
  [[nodiscard]] const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& e) {
    std::string s = "invalid config:";
    for (const auto& x : e) s += "\n  " + x;
    return s;
  }
  std::vector<std::string> errors_;
};

// ---------------------------------------------------------------------------
// Analysis table

struct AnalysisSpec {
  bool needs_set = false;
  std::vector<std::pair<std::string, std::string>> params;  // key, default ("" = required)
};

inline const std::map<std::string, AnalysisSpec>& analysis_table() {
  static const std::map<std::string, AnalysisSpec> table = {
      {"construct.emit", {true, {{"upto", "1000"}, {"validate", "false"}}}},
      {"density.lower_density_profile", {true, {{"n_max", "1000000"}}}},
      {"density.banach",
       {true, {{"window", "add"}, {"n", "100"}, {"m", "0"}, {"pool_lo", "0"}, {"pool_hi", "99"}}}},
      {"density.level_set", {true, {{"beta", "1/10"}, {"n", "500"}, {"pool_lo", "1"}, {"pool_hi", "100000"}}}},
      {"largeness.syndetic", {true, {{"F", ""}, {"horizon", "100000"}, {"ground", "add"}, {"lo", "1"}}}},
      {"largeness.thick_profile", {true, {{"horizon", "100000"}, {"lo", "1"}}}},
      {"largeness.mult_thick", {true, {{"F", ""}, {"bound", "1000000"}}}},
      {"largeness.piecewise_syndetic", {true, {{"F", ""}, {"horizon", "100000"}, {"ground", "add"}, {"lo", "1"}}}},
      {"largeness.ip_r", {true, {{"r", "3"}, {"ground", "add"}, {"search_bound", "1000"}}}},
      {"largeness.ip_r_star_refute", {true, {{"r", "3"}, {"ground", "add"}, {"lo", "1"}, {"hi", "1000"}}}},
      {"largeness.richness", {true, {{"matrix", ""}, {"ground", "add"}, {"s_lo", "0"}, {"s_hi", "1000"}}}},
      {"patterns.longest_ap", {true, {{"lo", "0"}, {"hi", "10000"}, {"min_len", "1"}}}},
      {"patterns.longest_gp", {true, {{"lo", "1"}, {"hi", "10000"}, {"min_len", "1"}}}},
      {"patterns.generalized_ap", {true, {{"n", "3"}, {"m", "2"}, {"s", "0:100"}, {"d", "1:50"}}}},
      {"patterns.geometric_cube", {true, {{"n", "2"}, {"m", "2"}, {"s", "1:100"}, {"d", "2:20"}}}},
      {"patterns.geo_arithmetic", {true, {{"n", "2"}, {"c", "1:20"}, {"a", "1:20"}, {"d", "1:20"}}}},
      {"patterns.line", {true, {{"n", "2"}, {"r", "2"}}}},
      {"patterns.alpha_no_3ap", {false, {{"matrix", ""}}}},
      {"equidist.discrepancy", {false, {{"poly", "sqrt2*x"}, {"n", "100;1000;10000"}, {"H", "1000"}}}},
      {"equidist.weyl", {false, {{"poly", "sqrt2*x^2"}, {"m", "0"}, {"n", "10000"}}}},
      {"equidist.dense_threshold",
       {false, {{"poly", "sqrt2*x"}, {"xi", "1"}, {"eps", "1/8"}, {"betas", "0"}, {"n_max", "100000"}}}},
      {"ff.threshold", {false, {{"n", "1"}, {"k", "2"}, {"qmin", "2"}, {"qmax", "500"}, {"fields", "prime"}}}},
      {"ff.witness", {false, {{"q", ""}, {"k", "2"}, {"set", ""}, {"coset", "1"}}}},
      {"normform.enum", {false, {{"preset", "cubic:a=2"}, {"box", "30"}, {"limit", "10000"}}}},
      {"normform.closure",
       {false, {{"preset", "cubic:a=2"}, {"box", "30"}, {"limit", "10000"}, {"samples", "100"}, {"seed", "1"}}}},
      {"normform.ap", {false, {{"preset", "cubic:a=2"}, {"box", "30"}, {"limit", "10000"}, {"target", "4"}}}},
      {"normform.prime_density",
       {false, {{"preset", "cubic:a=2"}, {"box", "30"}, {"limit", "10000"}, {"n", "10000"}}}},
  };
  return table;
}

/// Accepts JSON strings, integers and booleans as parameter values.
inline std::optional<std::string> param_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return std::nullopt;
}

/// Fills defaults; collects unknown, missing and ill-typed keys into errors.
inline std::map<std::string, std::string> complete_params(const std::string& analysis, const nlohmann::json& given,
                                                          std::vector<std::string>& errors) {
  std::map<std::string, std::string> out;
  auto it = analysis_table().find(analysis);
  if (it == analysis_table().end()) {
    errors.push_back("analysis.name: unknown analysis '" + analysis + "'");
    return out;
  }
  std::set<std::string> known;
  for (const auto& [k, def] : it->second.params) known.insert(k);
  if (!given.is_null() && !given.is_object()) {
    errors.push_back("analysis.params: must be an object");
    return out;
  }
  if (given.is_object()) {
    for (const auto& [k, v] : given.items()) {
      if (!known.count(k)) {
        errors.push_back("analysis.params." + k + ": unknown parameter for " + analysis);
        continue;
      }
      auto text = param_text(v);
      if (!text) {
        errors.push_back("analysis.params." + k + ": must be a string, integer or boolean");
        continue;
      }
      out[k] = *text;
    }
  }
  for (const auto& [k, def] : it->second.params) {
    if (out.count(k)) continue;
    if (def.empty()) {
      errors.push_back("analysis.params." + k + ": required for " + analysis);
    } else {
      out[k] = def;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Config

struct ExperimentConfig {
  std::string name;
  std::optional<nlohmann::json> set;
  std::string analysis;
  nlohmann::json params = nlohmann::json::object();
  std::string out_dir = "out";
  std::optional<std::uint64_t> max_elements;
  std::optional<double> wall_clock_hint_s;

  static ExperimentConfig from_json(const nlohmann::json& j) {
    std::vector<std::string> errors;
    ExperimentConfig c;
    if (!j.is_object()) throw ConfigError({"config: must be a JSON object"});
    static const std::set<std::string> top = {"name", "set", "analysis", "outputs", "budget"};
    for (const auto& [k, v] : j.items()) {
      if (!top.count(k)) errors.push_back(k + ": unknown field");
    }
    if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty()) {
      errors.push_back("name: required non-empty string");
    } else {
      c.name = j["name"].get<std::string>();
      if (c.name.find_first_of("/\\") != std::string::npos) errors.push_back("name: must not contain path separators");
    }
    if (!j.contains("analysis") || !j["analysis"].is_object()) {
      errors.push_back("analysis: required object {name, params}");
    } else {
      const auto& a = j["analysis"];
      for (const auto& [k, v] : a.items()) {
        if (k != "name" && k != "params") errors.push_back("analysis." + k + ": unknown field");
      }
      if (!a.contains("name") || !a["name"].is_string()) {
        errors.push_back("analysis.name: required string");
      } else {
        c.analysis = a["name"].get<std::string>();
        if (a.contains("params")) c.params = a["params"];
        complete_params(c.analysis, c.params, errors);
      }
    }
    if (j.contains("set")) {
      c.set = j["set"];
      try {
        set_from_json(*c.set);
      } catch (const std::exception& e) {
        errors.push_back(std::string("set: ") + e.what());
      }
    }
    auto spec = analysis_table().find(c.analysis);
    if (spec != analysis_table().end() && spec->second.needs_set && !c.set) {
      errors.push_back("set: required for " + c.analysis);
    }
    if (j.contains("outputs")) {
      const auto& o = j["outputs"];
      if (!o.is_object()) {
        errors.push_back("outputs: must be an object");
      } else {
        for (const auto& [k, v] : o.items()) {
          if (k != "dir") errors.push_back("outputs." + k + ": unknown field");
        }
        if (o.contains("dir")) {
          if (!o["dir"].is_string()) {
            errors.push_back("outputs.dir: must be a string");
          } else {
            c.out_dir = o["dir"].get<std::string>();
          }
        }
      }
    }
    if (j.contains("budget")) {
      const auto& b = j["budget"];
      if (!b.is_object()) {
        errors.push_back("budget: must be an object");
      } else {
        for (const auto& [k, v] : b.items()) {
          if (k == "max_elements") {
            if (!v.is_number_unsigned()) {
              errors.push_back("budget.max_elements: must be a non-negative integer");
            } else {
              c.max_elements = v.get<std::uint64_t>();
            }
          } else if (k == "wall_clock_hint_s") {
            if (!v.is_number()) {
              errors.push_back("budget.wall_clock_hint_s: must be a number");
            } else {
              c.wall_clock_hint_s = v.get<double>();
            }
          } else {
            errors.push_back("budget." + k + ": unknown field");
          }
        }
      }
    }
    if (!errors.empty()) throw ConfigError(errors);
    return c;
  }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j = {{"name", name}, {"analysis", {{"name", analysis}, {"params", params}}}};
    if (set) j["set"] = *set;
    j["outputs"] = {{"dir", out_dir}};
    if (max_elements || wall_clock_hint_s) {
      nlohmann::json b = nlohmann::json::object();
      if (max_elements) b["max_elements"] = *max_elements;
      if (wall_clock_hint_s) b["wall_clock_hint_s"] = *wall_clock_hint_s;
      j["budget"] = b;
    }
    return j;
  }
};

// ---------------------------------------------------------------------------
// Analyses

struct Artifact {
  std::string suffix;  // file name suffix, e.g. "profile.csv"
  std::string content;
};

struct AnalysisResult {
  std::string status = "ok";  // ok | not_found | inconclusive
  std::string horizon;
  nlohmann::json record = nlohmann::json::object();
  std::vector<Artifact> artifacts;
  std::vector<Certificate> certificates;
};

namespace run_detail {

inline std::string rational_text(const BigRational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, std::string>& p) : p_(p) {}
  [[nodiscard]] const std::string& str(const std::string& k) const { return p_.at(k); }
  [[nodiscard]] BigInt big(const std::string& k) const { return parse_bigint(str(k)); }
  [[nodiscard]] std::uint64_t u64(const std::string& k) const {
    BigInt v = big(k);
    if (v < 0 || !fits_u64(v)) throw std::invalid_argument(k + " must be a non-negative 64-bit integer");
    return to_u64(v);
  }
  [[nodiscard]] bool flag(const std::string& k) const {
    const auto& v = str(k);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument(k + " must be true or false");
  }
  [[nodiscard]] std::vector<BigInt> list(const std::string& k) const {
    std::vector<BigInt> out;
    if (str(k).empty()) return out;
    for (const auto& t : split(str(k), ';')) out.push_back(parse_bigint(t));
    return out;
  }
  // "a:b" is the inclusive range a..b; otherwise a ';' list.
  [[nodiscard]] std::vector<BigInt> pool(const std::string& k) const {
    auto colon = str(k).find(':');
    if (colon == std::string::npos) return list(k);
    BigInt lo = parse_bigint(str(k).substr(0, colon));
    BigInt hi = parse_bigint(str(k).substr(colon + 1));
    if (hi - lo >= BigInt(kMaxWindowSize)) throw CapacityError(k + " pool larger than 2^26");
    return integer_range(lo, hi);
  }
  [[nodiscard]] Matrix matrix(const std::string& k) const {
    Matrix m;
    for (const auto& row : split(str(k), ';')) {
      std::vector<BigInt> r;
      std::istringstream is(row);
      std::string tok;
      while (is >> tok) r.push_back(parse_bigint(tok));
      if (!r.empty()) m.push_back(std::move(r));
    }
    if (m.empty()) throw std::invalid_argument(k + " is empty");
    return m;
  }
  [[nodiscard]] GroundStructure ground(const std::string& k) const {
    const auto& v = str(k);
    if (v == "add" || v == "naturals_additive") return GroundStructure::naturals_additive();
    if (v == "mult" || v == "naturals_multiplicative") return GroundStructure::naturals_multiplicative();
    if (v == "int" || v == "integers_additive") return GroundStructure::integers_additive();
    throw std::invalid_argument(k + " must be add, mult or int");
  }

 private:
  const std::map<std::string, std::string>& p_;
};

inline std::string cert_pair_csv(const ThickProfile& t) {
  std::ostringstream os;
  os << "start,length\n";
  for (const auto& [s, l] : t.runs) os << s << ',' << l << '\n';
  return os.str();
}

inline std::string real_str(const Real& x, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::scientific << x;
  return os.str();
}

template <class C>
void add_search(AnalysisResult& r, const SearchResult<C>& s) {
  if (s.witness) {
    r.certificates.emplace_back(*s.witness);
    r.record["certificate"] = to_json(Certificate(*s.witness));
  } else {
    r.status = s.inconclusive ? "inconclusive" : "not_found";
  }
  if (!s.note.empty()) r.record["note"] = s.note;
}

inline WordSet words_from_set(const LazySet& set, std::uint32_t n, std::uint32_t r) {
  WordSet ws(n, r);
  for (const auto& v : set.enumerate_upto(BigInt(ws.cube_size()) - 1)) ws.insert_index(to_u64(v));
  return ws;
}

inline RepresentedSet represented(const Reader& rd) {
  return enumerate_represented(NormForm::preset(rd.str("preset")), rd.u64("box"), rd.u64("limit"));
}

}  // namespace run_detail

/// Runs one analysis. Params must already be completed (see complete_params).
inline AnalysisResult run_analysis(const std::string& analysis, const std::map<std::string, std::string>& params,
                                   const std::optional<LazySet>& set, Budget& budget) {
  using namespace run_detail;
  Reader rd(params);
  AnalysisResult r;
  auto need_set = [&]() -> const LazySet& {
    if (!set) throw std::invalid_argument(analysis + " needs a set");
    return *set;
  };

  if (analysis == "construct.emit") {
    const auto& a = need_set();
    BigInt upto = rd.big("upto");
    auto members = a.enumerate_upto(upto);
    std::ostringstream os;
    for (const auto& m : members) os << m << '\n';
    r.artifacts.push_back({"members.txt", os.str()});
    r.horizon = "[0," + to_dec(upto) + "]";
    r.record["count"] = members.size();
    r.record["enumerator_exact"] = a.enumerator_exact();
    if (rd.flag("validate")) {
      std::uint64_t bad = 0;
      for (const auto& m : members) bad += a.contains(m) ? 0 : 1;
      nlohmann::json v = {{"members_rechecked", members.size()}, {"membership_mismatches", bad}};
      const auto& spec = a.spec();
      std::string desc = spec.is_object() && spec.contains("descriptor") ? spec["descriptor"].get<std::string>() : "";
      if (desc == "thick_no_kxy") {
        ThickNoKxy t(std::stoull(spec["params"]["i_max"].get<std::string>()));
        nlohmann::json checks = nlohmann::json::array();
        bool all = true;
        for (const auto& g : t.growth_checks()) {
          bool ok = g.half_y_below_x && g.prev_y_squared_below_x && g.x_below_y;
          all = all && ok && g.symbolic;
          checks.push_back({{"n", g.n}, {"holds", ok}, {"symbolic", g.symbolic}});
        }
        v["growth_checks"] = checks;
        v["growth_hypothesis_symbolic"] = all;
        v["kxy_patterns"] = kxy_scan(t.elements()).size();
      } else if (desc == "divisible_union") {
        auto i_max = std::stoull(spec["params"]["i_max"].get<std::string>());
        auto variant = spec["params"]["variant"].get<std::string>();
        DivisibleUnion u(variant == "standard" ? DivisibleUnionSpec::standard(i_max)
                                               : DivisibleUnionSpec::factorial_singletons(i_max));
        v["report"] = u.report().to_json();
      }
      r.record["validation"] = v;
      if (bad) r.status = "failed";
    }
  } else if (analysis == "density.lower_density_profile") {
    auto rows = lower_density_profile(need_set(), rd.u64("n_max"));
    r.artifacts.push_back({"lower_density.csv", lower_density_csv(rows)});
    r.horizon = "[1," + rd.str("n_max") + "]";
    const auto& last = rows.back();
    r.record["final_ratio"] = rational_text(last.ratio());
    r.record["running_inf"] = rational_text(last.running_inf);
  } else if (analysis == "density.banach") {
    const auto& a = need_set();
    auto w = rd.str("window") == "add" ? FolnerWindow::additive(rd.u64("n"), rd.big("m"))
                                       : FolnerWindow::multiplicative(rd.u64("n"), rd.big("m"));
    auto g = w.kind == FolnerKind::AdditiveInterval ? GroundStructure::naturals_additive()
                                                    : GroundStructure::naturals_multiplicative();
    auto pool = integer_range(rd.big("pool_lo"), rd.big("pool_hi"));
    auto e = banach_density_lower_bound(a, w.as_multiset(), pool, g, w.descriptor(),
                                        "[" + rd.str("pool_lo") + "," + rd.str("pool_hi") + "]");
    r.artifacts.push_back({"density.csv", density_csv({e})});
    r.horizon = w.descriptor() + " shifts " + e.shift_pool;
    r.record["delta"] = rational_text(e.delta());
    r.record["best_shift"] = to_dec(e.best_shift);
  } else if (analysis == "density.level_set") {
    const auto& a = need_set();
    Rational b = parse_rational(rd.str("beta"));
    BigRational beta(BigInt(b.numerator()), BigInt(b.denominator()));
    auto window = FolnerWindow::additive(rd.u64("n"), 0);
    auto pool = integer_range(rd.big("pool_lo"), rd.big("pool_hi"));
    auto level = translate_level_set(a, window.as_multiset(), beta, pool, GroundStructure::naturals_additive());
    std::ostringstream os;
    os << "s\n";
    for (const auto& s : level) os << s << '\n';
    r.artifacts.push_back({"level_set.csv", os.str()});
    r.horizon = "pool [" + rd.str("pool_lo") + "," + rd.str("pool_hi") + "]";
    BigRational density(BigInt(level.size()), BigInt(pool.size()));
    r.record["members"] = level.size();
    r.record["density"] = rational_text(density);
  } else if (analysis == "largeness.syndetic") {
    auto out = check_syndetic(need_set(), rd.list("F"), rd.big("horizon"), rd.ground("ground"), rd.big("lo"));
    r.horizon = "[" + rd.str("lo") + "," + rd.str("horizon") + "]";
    if (out.certificate) {
      r.certificates.emplace_back(*out.certificate);
      r.record["certificate"] = to_json(Certificate(*out.certificate));
    } else {
      r.status = "not_found";
      if (out.first_failure) r.record["first_failure"] = to_dec(*out.first_failure);
    }
  } else if (analysis == "largeness.thick_profile" || analysis == "largeness.piecewise_syndetic") {
    auto t = analysis == "largeness.thick_profile"
                 ? thick_profile(need_set(), rd.big("horizon"), rd.big("lo"))
                 : check_piecewise_syndetic(need_set(), rd.list("F"), rd.big("horizon"), rd.ground("ground"),
                                            rd.big("lo"));
    r.artifacts.push_back({"runs.csv", cert_pair_csv(t)});
    r.horizon = "[" + rd.str("lo") + "," + rd.str("horizon") + "]";
    r.record["runs"] = t.runs.size();
    r.record["longest"] = to_dec(t.longest());
    if (auto c = t.longest_run_certificate()) {
      r.certificates.emplace_back(*c);
      r.record["certificate"] = to_json(Certificate(*c));
    }
  } else if (analysis == "largeness.mult_thick") {
    add_search(r, mult_thick_witness(need_set(), rd.list("F"), rd.big("bound")));
    r.horizon = "x <= " + rd.str("bound");
  } else if (analysis == "largeness.ip_r") {
    add_search(r, ip_r_certificate(need_set(), rd.u64("r"), rd.ground("ground"), rd.big("search_bound"), &budget));
    r.horizon = "generators <= " + rd.str("search_bound");
  } else if (analysis == "largeness.ip_r_star_refute") {
    add_search(r, ip_r_star_refute(need_set(), rd.u64("r"), rd.big("lo"), rd.big("hi"), rd.ground("ground"), &budget));
    r.horizon = "[" + rd.str("lo") + "," + rd.str("hi") + "]";
  } else if (analysis == "largeness.richness") {
    add_search(r, combinatorial_richness_witness(need_set(), rd.matrix("matrix"), rd.ground("ground"),
                                                 integer_range(rd.big("s_lo"), rd.big("s_hi"))));
    r.horizon = "s in [" + rd.str("s_lo") + "," + rd.str("s_hi") + "]";
  } else if (analysis == "patterns.longest_ap" || analysis == "patterns.longest_gp") {
    const auto& a = need_set();
    BigInt lo = rd.big("lo"), hi = rd.big("hi");
    if (a.domain()) {
      lo = std::max(lo, a.domain()->first);
      hi = std::max(lo, std::min(hi, a.domain()->second));
    }
    auto w = materialize(a, lo, hi);
    if (analysis == "patterns.longest_ap") {
      add_search(r, longest_ap(w, rd.u64("min_len")));
    } else {
      add_search(r, longest_gp(w, rd.u64("min_len")));
    }
    r.horizon = "[" + to_dec(lo) + "," + to_dec(hi) + ")";
  } else if (analysis == "patterns.generalized_ap") {
    add_search(r, find_generalized_ap(need_set(), rd.u64("n"), rd.u64("m"), {rd.pool("s"), {}, rd.pool("d")}, &budget));
    r.horizon = "s " + rd.str("s") + ", d " + rd.str("d");
  } else if (analysis == "patterns.geometric_cube") {
    add_search(r, find_geometric_cube(need_set(), rd.u64("n"), rd.u64("m"), {rd.pool("s"), {}, rd.pool("d")}, &budget));
    r.horizon = "s " + rd.str("s") + ", d " + rd.str("d");
  } else if (analysis == "patterns.geo_arithmetic") {
    add_search(r, find_geo_arithmetic(need_set(), rd.u64("n"), {rd.pool("c"), rd.pool("a"), rd.pool("d")}, &budget));
    r.horizon = "c " + rd.str("c") + ", a " + rd.str("a") + ", d " + rd.str("d");
  } else if (analysis == "patterns.line") {
    auto ws = words_from_set(need_set(), static_cast<std::uint32_t>(rd.u64("n")), static_cast<std::uint32_t>(rd.u64("r")));
    add_search(r, find_combinatorial_line(ws));
    r.horizon = "[" + rd.str("n") + "]^" + rd.str("r");
  } else if (analysis == "patterns.alpha_no_3ap") {
    add_search(r, alpha_no_3ap(rd.matrix("matrix")));
    r.horizon = "matrix rows";
  } else if (analysis == "equidist.discrepancy") {
    auto poly = parse_polynomial(rd.str("poly"));
    std::ostringstream os;
    os << "N,discrepancy,leveque_bound\n";
    bool decreasing = true;
    bool bounded = true;
    std::optional<Real> prev;
    for (const auto& n : rd.list("n")) {
      auto sample = TorusSample::of_polynomial(poly, to_u64(n));
      Real d = discrepancy(sample);
      Real b = leveque_bound(sample, rd.u64("H"));
      os << n << ',' << real_str(d) << ',' << real_str(b) << '\n';
      if (prev && !(d < *prev)) decreasing = false;
      if (!(d <= b)) bounded = false;
      prev = d;
    }
    r.artifacts.push_back({"discrepancy.csv", os.str()});
    r.horizon = "N in " + rd.str("n");
    r.record["strictly_decreasing"] = decreasing;
    r.record["within_leveque_bound"] = bounded;
  } else if (analysis == "equidist.weyl") {
    auto w = weyl_sum(parse_polynomial(rd.str("poly")), rd.big("m"), rd.u64("n"));
    r.record["re"] = real_str(w.re);
    r.record["im"] = real_str(w.im);
    r.record["magnitude"] = real_str(w.magnitude());
    r.record["error_bound"] = real_str(w.error_bound, 3);
    r.horizon = "n in (" + rd.str("m") + ", " + rd.str("m") + "+" + rd.str("n") + "]";
  } else if (analysis == "equidist.dense_threshold") {
    std::vector<Scalar> betas;
    for (const auto& b : split(rd.str("betas"), ';')) betas.push_back(detail::parse_factor(b));
    auto t = epsilon_dense_threshold(parse_polynomial(rd.str("poly")), detail::parse_factor(rd.str("xi")),
                                     detail::parse_factor(rd.str("eps")), betas, rd.u64("n_max"));
    r.record["threshold"] = t.n ? nlohmann::json(*t.n) : nlohmann::json(nullptr);
    r.record["per_beta"] = t.per_beta;
    r.record["pool_uniform_only"] = t.pool_uniform_only;
    if (!t.diagnostic.empty()) r.record["diagnostic"] = t.diagnostic;
    if (!t.n) r.status = "not_found";
    r.horizon = "n <= " + rd.str("n_max");
  } else if (analysis == "ff.threshold") {
    std::string fields = rd.str("fields");
    if (fields != "prime" && fields != "all") throw std::invalid_argument("fields must be prime or all");
    auto report = empirical_threshold(rd.u64("n"), rd.u64("k"), field_orders(rd.u64("qmax"), fields == "prime", rd.u64("qmin")),
                                      &budget);
    r.artifacts.push_back({"threshold.json", report.to_json().dump(2) + "\n"});
    r.record = report.to_json();
    r.horizon = "q in [" + rd.str("qmin") + "," + rd.str("qmax") + "]";
    if (report.inconclusive) {
      r.status = "inconclusive";
    } else if (!report.threshold) {
      r.status = "not_found";
    }
  } else if (analysis == "ff.witness") {
    Field f = field_of_order(rd.u64("q"));
    std::vector<std::uint64_t> F;
    for (const auto& v : rd.list("set")) F.push_back(to_u64(v));
    auto w = witness_translate(f, rd.u64("k"), F, rd.u64("coset"));
    r.horizon = f.name() + " exhaustive";
    if (w) {
      r.certificates.emplace_back(*w);
      r.record["certificate"] = to_json(Certificate(*w));
    } else {
      r.status = "not_found";
    }
  } else if (analysis == "normform.enum") {
    auto rep = represented(rd);
    r.artifacts.push_back({"represented.csv", rep.csv()});
    r.record["values"] = rep.values.size();
    r.record["under_approximate"] = rep.under_approximate;
    r.horizon = "box " + rd.str("box") + ", limit " + rd.str("limit");
  } else if (analysis == "normform.closure") {
    auto form = NormForm::preset(rd.str("preset"));
    auto rep = enumerate_represented(form, rd.u64("box"), rd.u64("limit"));
    auto c = check_closure(form, rep, rd.u64("samples"), rd.u64("seed"));
    r.record = {{"pairs", c.pairs}, {"direct", c.direct}, {"via_ring_mul", c.via_ring_mul}, {"failures", c.failures.size()},
                {"under_approximate", true}};
    if (!c.closed()) r.status = "failed";
    r.horizon = "box " + rd.str("box") + ", limit " + rd.str("limit");
  } else if (analysis == "normform.ap") {
    add_search(r, ap_search(represented(rd), rd.u64("target")));
    r.horizon = "box " + rd.str("box") + ", limit " + rd.str("limit");
  } else if (analysis == "normform.prime_density") {
    auto ratio = prime_relative_density(represented(rd), rd.u64("n"));
    r.record["ratio"] = rational_text(ratio);
    r.record["approx"] = real_str(to_real(ratio), 6);
    r.record["caveat"] = "represented set is an under-approximation";
    r.horizon = "primes <= " + rd.str("n");
  } else {
    throw std::invalid_argument("unknown analysis '" + analysis + "'");
  }
  if (budget.exhausted() && r.status == "not_found") r.status = "inconclusive";
  return r;
}

// ---------------------------------------------------------------------------
// Runner

struct RunSummary {
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;  // primary artifacts, in write order
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
}

/// Writes <dir>/<name>.<suffix> artifacts, certificates and set spec, and
/// <dir>/<name>.summary.json. Only the summary carries timestamps.
inline RunSummary run(const ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  auto params = complete_params(cfg.analysis, cfg.params, errors);
  if (!errors.empty()) throw ConfigError(errors);
  std::optional<LazySet> set;
  if (cfg.set) set = set_from_json(*cfg.set);
  Budget budget(cfg.max_elements.value_or(std::numeric_limits<std::uint64_t>::max()));

  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  AnalysisResult res = run_analysis(cfg.analysis, params, set, budget);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  RunSummary out;
  auto emit = [&](const std::string& suffix, const std::string& content) {
    auto p = dir / (cfg.name + "." + suffix);
    write_file(p, content);
    out.files.push_back(p);
    return p.filename().string();
  };
  nlohmann::json artifacts = nlohmann::json::array();
  for (const auto& a : res.artifacts) artifacts.push_back(emit(a.suffix, a.content));
  for (std::size_t i = 0; i < res.certificates.size(); ++i) {
    std::string suffix = res.certificates.size() == 1 ? "cert.json" : "cert" + std::to_string(i) + ".json";
    artifacts.push_back(emit(suffix, to_json(res.certificates[i]).dump(2) + "\n"));
  }
  if (set && !res.certificates.empty()) artifacts.push_back(emit("set.json", set->spec().dump(2) + "\n"));
  artifacts.push_back(emit("record.json", res.record.dump(2) + "\n"));

  std::time_t tt = std::chrono::system_clock::to_time_t(started);
  std::ostringstream ts;
  ts << std::put_time(std::gmtime(&tt), "%Y-%m-%dT%H:%M:%SZ");
  nlohmann::json params_json = nlohmann::json::object();
  for (const auto& [k, v] : params) params_json[k] = v;
  out.summary = {{"name", cfg.name},
                 {"analysis", cfg.analysis},
                 {"params", params_json},
                 {"status", res.status},
                 {"horizon", res.horizon},
                 {"set", set ? set->spec() : nlohmann::json(nullptr)},
                 {"artifacts", artifacts},
                 {"version", kLibraryVersion},
                 {"modules", module_versions()},
                 {"budget", {{"max_elements", cfg.max_elements ? nlohmann::json(*cfg.max_elements) : nlohmann::json(nullptr)},
                             {"used", budget.used()},
                             {"exhausted", budget.exhausted()}}},
                 {"timing", {{"started_utc", ts.str()}, {"elapsed_s", elapsed}}}};
  if (cfg.wall_clock_hint_s) out.summary["timing"]["wall_clock_hint_s"] = *cfg.wall_clock_hint_s;
  write_file(dir / (cfg.name + ".summary.json"), out.summary.dump(2) + "\n");
  return out;
}

}  // namespace ramsey
