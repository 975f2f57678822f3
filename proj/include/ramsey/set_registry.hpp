#pragma once

// Named set constructors behind a uniform description:
//   {"kind":"lazy","descriptor":"<name>","params":{"key":"value",...}}
// or a window literal {"kind":"window","lo":..,"hi":..,"bits":..}.
// Inline form for the command line: "name:key=val,key=val". List values are
// separated by ';'.

#include "arithfun.hpp"
#include "constructions.hpp"
#include "groundset.hpp"
#include "normform.hpp"
#include "numeric.hpp"
#include "patterns.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramsey {

using SetParams = std::map<std::string, std::string>;

namespace registry_detail {

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

inline std::vector<BigInt> big_list(const std::string& s) {
  std::vector<BigInt> out;
  if (s.empty()) return out;
  for (const auto& tok : split(s, ';')) out.push_back(parse_bigint(tok));
  return out;
}

class Params {
 public:
  Params(std::string name, SetParams p) : name_(std::move(name)), p_(std::move(p)) {}

  std::string get(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    auto it = p_.find(key);
    if (it == p_.end()) {
      p_[key] = fallback;
      return fallback;
    }
    return it->second;
  }
  std::string require(const std::string& key) {
    used_.insert(key);
    auto it = p_.find(key);
    if (it == p_.end()) throw std::invalid_argument(name_ + ": missing parameter '" + key + "'");
    return it->second;
  }
  std::uint64_t u64(const std::string& key, const std::string& fallback) {
    std::string v = get(key, fallback);
    try {
      std::size_t pos = 0;
      auto out = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw std::invalid_argument(name_ + ": parameter '" + key + "' is not an unsigned integer: " + v);
    }
  }
  // Rejects unknown keys; returns the completed parameter map.
  SetParams finish() const {
    for (const auto& [k, v] : p_) {
      if (!used_.count(k)) throw std::invalid_argument(name_ + ": unknown parameter '" + k + "'");
    }
    return p_;
  }

 private:
  std::string name_;
  SetParams p_;
  std::set<std::string> used_;
};

inline LazySet words_set(std::uint32_t n, std::uint32_t r, const std::string& words) {
  auto ws = std::make_shared<const WordSet>(WordSet::parse(n, r, words));
  const std::uint64_t size = ws->cube_size();
  LazySet s(
      "words[" + std::to_string(n) + "]^" + std::to_string(r),
      [ws, size](const BigInt& x) { return x >= 0 && x < size && ws->contains_index(static_cast<std::uint64_t>(x)); },
      [ws, size](const BigInt& bound) {
        std::vector<BigInt> out;
        for (std::uint64_t i = 0; i < size && BigInt(i) <= bound; ++i) {
          if (ws->contains_index(i)) out.emplace_back(i);
        }
        return out;
      },
      true);
  s.with_domain(0, BigInt(size));
  return s;
}

}  // namespace registry_detail

inline std::vector<std::string> registered_sets() {
  return {"residues",          "naturals",    "squarefree", "level_set", "thick_no_kxy", "divisible_union",
          "fg_semigroup",      "dirichlet_avoider", "intro_mixed", "norm_form", "finite", "words", "window"};
}

/// Builds a named set; the returned set carries its completed spec.
inline LazySet make_set(const std::string& name, const SetParams& params) {
  using registry_detail::big_list;
  registry_detail::Params p(name, params);
  LazySet out;
  if (name == "residues") {
    out = residue_set(parse_bigint(p.require("modulus")), big_list(p.require("residues")),
                      parse_bigint(p.get("min", "0")));
  } else if (name == "naturals") {
    out = residue_set(1, {BigInt(0)}, parse_bigint(p.get("min", "1")));
  } else if (name == "squarefree") {
    out = squarefree_set();
  } else if (name == "level_set") {
    std::string hom = p.get("hom", "omega");
    Homomorphism h;
    if (hom == "omega") {
      h.kind = HomKind::Omega;
    } else if (hom == "nu") {
      h.kind = HomKind::Nu;
      h.p = p.u64("p", "2");
    } else if (hom == "log") {
      h.kind = HomKind::Log;
    } else {
      throw std::invalid_argument("level_set: hom must be omega, nu or log");
    }
    UnitInterval interval(detail::parse_factor(p.get("lo", "0")), detail::parse_factor(p.get("hi", "1/4")));
    out = level_set(parse_polynomial(p.get("poly", "sqrt2*x")), h, interval);
  } else if (name == "thick_no_kxy") {
    out = thick_no_kxy(p.u64("i_max", "5"));
  } else if (name == "divisible_union") {
    std::string variant = p.get("variant", "standard");
    auto i_max = p.u64("i_max", "12");
    if (variant == "standard") {
      out = divisible_union(DivisibleUnionSpec::standard(i_max));
    } else if (variant == "factorial_singletons") {
      out = divisible_union(DivisibleUnionSpec::factorial_singletons(i_max));
    } else {
      throw std::invalid_argument("divisible_union: variant must be standard or factorial_singletons");
    }
  } else if (name == "fg_semigroup") {
    out = fg_mult_semigroup(big_list(p.require("gens")), parse_bigint(p.get("bound", "1000000")));
  } else if (name == "dirichlet_avoider") {
    out = dirichlet_avoider(detail::parse_factor(p.get("x", "sqrt2")), detail::parse_factor(p.get("eps", "1/3")));
  } else if (name == "intro_mixed") {
    out = intro_mixed_set(p.u64("i_max", "12"));
  } else if (name == "norm_form") {
    auto form = NormForm::preset(p.get("preset", "cubic:a=2"));
    auto r = enumerate_represented(form, p.u64("box", "30"), p.u64("limit", "10000"));
    out = r.window().as_lazy("N_Psi(" + form.descriptor() + ")");
  } else if (name == "finite") {
    out = finite_set(big_list(p.require("values")));
  } else if (name == "words") {
    out = registry_detail::words_set(static_cast<std::uint32_t>(p.u64("n", "2")),
                                     static_cast<std::uint32_t>(p.u64("r", "2")), p.require("words"));
  } else if (name == "window") {
    // Materialised residue window: lo, hi, modulus, residues.
    BigInt lo = parse_bigint(p.require("lo"));
    BigInt hi = parse_bigint(p.require("hi"));
    if (p.get("members", "").empty()) {
      BigInt modulus = parse_bigint(p.get("modulus", "1"));
      auto residues = big_list(p.get("residues", "0"));
      auto w = IntegerWindowSet::from_predicate(lo, hi, [&](const BigInt& x) {
        BigInt m = x % modulus;
        if (m < 0) m += modulus;
        return std::find(residues.begin(), residues.end(), m) != residues.end();
      });
      out = w.as_lazy();
    } else {
      out = IntegerWindowSet::from_members(lo, hi, big_list(p.get("members", ""))).as_lazy();
    }
  } else {
    throw std::invalid_argument("unknown set '" + name + "'");
  }
  nlohmann::json params_json = nlohmann::json::object();
  for (const auto& [k, v] : p.finish()) params_json[k] = v;
  out.with_spec({{"kind", "lazy"}, {"descriptor", name}, {"params", params_json}});
  return out;
}

/// "name" or "name:key=val,key=val".
inline LazySet parse_inline_set(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  SetParams params;
  if (colon != std::string::npos && colon + 1 < text.size()) {
    for (const auto& kv : registry_detail::split(text.substr(colon + 1), ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument("malformed set parameter '" + kv + "'");
      std::string key = kv.substr(0, eq);
      if (params.count(key)) throw std::invalid_argument("repeated set parameter '" + key + "'");
      params[key] = kv.substr(eq + 1);
    }
  }
  return make_set(name, params);
}

inline LazySet set_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "window") return IntegerWindowSet::from_json(j).as_lazy();
  if (kind != "lazy") throw std::invalid_argument("set kind must be 'lazy' or 'window'");
  for (const auto& [k, v] : j.items()) {
    if (k != "kind" && k != "descriptor" && k != "params") throw std::invalid_argument("unknown set field '" + k + "'");
  }
  SetParams params;
  if (j.contains("params")) {
    for (const auto& [k, v] : j.at("params").items()) {
      if (!v.is_string()) throw std::invalid_argument("set parameter '" + k + "' must be a string");
      params[k] = v.get<std::string>();
    }
  }
  return make_set(j.at("descriptor").get<std::string>(), params);
}

/// JSON text, a path-free inline spec, or a window literal.
inline LazySet set_from_text(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return set_from_json(nlohmann::json::parse(text));
  return parse_inline_set(text);
}

}  // namespace ramsey
