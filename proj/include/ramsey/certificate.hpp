#pragma once

// Verifiable witnesses and their JSON wire format. Every big integer is a
// decimal string; index sets alpha are 0-based.

#include "groundset.hpp"
#include "numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ramsey {

inline GroundKind ground_kind_from_string(const std::string& s) {
  for (auto k : {GroundKind::NaturalsAdditive, GroundKind::NaturalsMultiplicative, GroundKind::IntegersAdditive,
                 GroundKind::FiniteFieldAdditive, GroundKind::FiniteFieldMultiplicative}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown ground kind: " + s);
}

/// Ground structure for a kind over the integers; fields need finitefield.hpp.
inline GroundStructure integer_ground(GroundKind kind) {
  switch (kind) {
    case GroundKind::NaturalsAdditive: return GroundStructure::naturals_additive();
    case GroundKind::NaturalsMultiplicative: return GroundStructure::naturals_multiplicative();
    case GroundKind::IntegersAdditive: return GroundStructure::integers_additive();
    default: throw std::invalid_argument("field ground kinds need a field description");
  }
}

namespace wire {

inline nlohmann::json big_array(const std::vector<BigInt>& v) {
  auto out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(to_dec(x));
  return out;
}

inline std::vector<BigInt> big_vector(const nlohmann::json& j) {
  std::vector<BigInt> out;
  for (const auto& x : j) out.push_back(parse_bigint(x.get<std::string>()));
  return out;
}

inline BigInt big(const nlohmann::json& j, const char* key) { return parse_bigint(j.at(key).get<std::string>()); }

inline nlohmann::json matrix(const std::vector<std::vector<BigInt>>& m) {
  auto out = nlohmann::json::array();
  for (const auto& row : m) out.push_back(big_array(row));
  return out;
}

inline std::vector<std::vector<BigInt>> matrix(const nlohmann::json& j) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& row : j) out.push_back(big_vector(row));
  return out;
}

inline nlohmann::json mask_to_alpha(std::uint64_t mask) {
  auto out = nlohmann::json::array();
  for (unsigned i = 0; i < 64; ++i) {
    if ((mask >> i) & 1U) out.push_back(i);
  }
  return out;
}

inline std::uint64_t alpha_to_mask(const nlohmann::json& j) {
  std::uint64_t mask = 0;
  for (const auto& i : j) {
    auto idx = i.get<std::uint64_t>();
    if (idx >= 64) throw std::invalid_argument("alpha index out of range");
    if ((mask >> idx) & 1U) throw std::invalid_argument("repeated alpha index");
    mask |= std::uint64_t{1} << idx;
  }
  return mask;
}

}  // namespace wire

/// Every n in [range_lo, horizon] has some f in F with op(f, n) in A.
struct SyndeticCertificate {
  std::vector<BigInt> witness_F;
  BigInt range_lo = 1;
  BigInt horizon = 0;
  GroundKind ground = GroundKind::NaturalsAdditive;
};

/// {start, ..., start + length - 1} is contained in A.
struct ThickRunCertificate {
  BigInt start = 0;
  BigInt length = 0;
};

/// F * x (or F + x) is contained in A.
struct TranslateCertificate {
  std::vector<BigInt> F;
  BigInt x = 0;
  GroundKind ground = GroundKind::NaturalsMultiplicative;
};

/// All 2^r - 1 finite sums/products of the generators.
///
/// With refutes_dual set, every value lies outside A, refuting A in IP_r*.
struct IPrCertificate {
  std::vector<BigInt> generators;
  GroundKind ground = GroundKind::NaturalsAdditive;
  std::vector<std::pair<std::uint64_t, BigInt>> values;  // (alpha mask, s_alpha)
  bool refutes_dual = false;
};

struct APCertificate {
  BigInt start = 0;
  BigInt step = 1;
  std::uint64_t length = 0;
};

struct GPCertificate {
  BigInt start = 1;
  BigInt ratio = 2;
  std::uint64_t length = 0;
};

/// s + j_1 d_1 + ... + j_m d_m for j in [1,n]^m.
struct GeneralizedAPCertificate {
  BigInt s = 0;
  std::vector<BigInt> d;
  std::uint64_t n = 0;
};

/// s d_1^{j_1} ... d_m^{j_m} for j in [1,n]^m.
struct GeometricCubeCertificate {
  BigInt s = 1;
  std::vector<BigInt> d;
  std::uint64_t n = 0;
};

/// c (a + i d)^j for 1 <= i, j <= n.
struct GeoArithCertificate {
  BigInt c = 1;
  BigInt a = 1;
  BigInt d = 1;
  std::uint64_t n = 0;
};

/// op(s, M_{alpha,j}) in A for every column j.
struct RichnessCertificate {
  std::vector<std::vector<BigInt>> matrix;
  std::uint64_t alpha = 0;  // mask over rows
  BigInt s = 0;
  GroundKind ground = GroundKind::NaturalsAdditive;
};

/// Variable word over [n]; letter 0 is the wildcard.
struct LineCertificate {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> letters;
};

/// Every element of x^k + F lies in the coset g * Gamma of nonzero k-th powers.
struct FieldWitnessCertificate {
  std::uint64_t p = 0;
  std::uint64_t m = 1;
  std::vector<std::uint64_t> modulus;  // monic, low degree first; empty for prime fields
  std::uint64_t k = 1;
  std::vector<std::uint64_t> F;
  std::uint64_t x = 0;
  std::uint64_t coset_rep = 1;
};

/// Row product prod_{i in alpha} M_i has no non-constant 3-term AP.
struct No3APCertificate {
  std::vector<std::vector<BigInt>> matrix;
  std::uint64_t alpha = 0;
  std::vector<BigInt> row;
};

using Certificate =
    std::variant<SyndeticCertificate, ThickRunCertificate, TranslateCertificate, IPrCertificate, APCertificate,
                 GPCertificate, GeneralizedAPCertificate, GeometricCubeCertificate, GeoArithCertificate,
                 RichnessCertificate, LineCertificate, FieldWitnessCertificate, No3APCertificate>;

inline std::string line_word_string(const LineCertificate& c) {
  std::string s;
  for (std::size_t i = 0; i < c.letters.size(); ++i) {
    if (i) s += ' ';
    s += c.letters[i] == 0 ? std::string("*") : std::to_string(c.letters[i]);
  }
  return s;
}

inline nlohmann::json to_json(const Certificate& cert) {
  using nlohmann::json;
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SyndeticCertificate>) {
          return {{"kind", "syndetic"},
                  {"ground", to_string(c.ground)},
                  {"witness_F", wire::big_array(c.witness_F)},
                  {"range_lo", to_dec(c.range_lo)},
                  {"horizon", to_dec(c.horizon)}};
        } else if constexpr (std::is_same_v<T, ThickRunCertificate>) {
          return {{"kind", "thick_run"}, {"start", to_dec(c.start)}, {"length", to_dec(c.length)}};
        } else if constexpr (std::is_same_v<T, TranslateCertificate>) {
          return {{"kind", "translate"}, {"ground", to_string(c.ground)}, {"F", wire::big_array(c.F)},
                  {"x", to_dec(c.x)}};
        } else if constexpr (std::is_same_v<T, IPrCertificate>) {
          json values = json::array();
          for (const auto& [mask, v] : c.values) values.push_back({{"alpha", wire::mask_to_alpha(mask)}, {"value", to_dec(v)}});
          return {{"kind", c.refutes_dual ? "ip_r_star_refutation" : "ip_r"},
                  {"ground", to_string(c.ground)},
                  {"r", c.generators.size()},
                  {"generators", wire::big_array(c.generators)},
                  {"values", values}};
        } else if constexpr (std::is_same_v<T, APCertificate>) {
          return {{"kind", "ap"}, {"start", to_dec(c.start)}, {"step", to_dec(c.step)}, {"length", c.length}};
        } else if constexpr (std::is_same_v<T, GPCertificate>) {
          return {{"kind", "gp"}, {"start", to_dec(c.start)}, {"ratio", to_dec(c.ratio)}, {"length", c.length}};
        } else if constexpr (std::is_same_v<T, GeneralizedAPCertificate>) {
          return {{"kind", "generalized_ap"}, {"s", to_dec(c.s)}, {"d", wire::big_array(c.d)}, {"n", c.n}};
        } else if constexpr (std::is_same_v<T, GeometricCubeCertificate>) {
          return {{"kind", "geometric_cube"}, {"s", to_dec(c.s)}, {"d", wire::big_array(c.d)}, {"n", c.n}};
        } else if constexpr (std::is_same_v<T, GeoArithCertificate>) {
          return {{"kind", "geo_arithmetic"}, {"c", to_dec(c.c)}, {"a", to_dec(c.a)}, {"d", to_dec(c.d)}, {"n", c.n}};
        } else if constexpr (std::is_same_v<T, RichnessCertificate>) {
          return {{"kind", "combinatorial_richness"},
                  {"ground", to_string(c.ground)},
                  {"matrix", wire::matrix(c.matrix)},
                  {"alpha", wire::mask_to_alpha(c.alpha)},
                  {"s", to_dec(c.s)}};
        } else if constexpr (std::is_same_v<T, LineCertificate>) {
          return {{"kind", "combinatorial_line"}, {"n", c.n}, {"r", c.letters.size()}, {"word", line_word_string(c)}};
        } else if constexpr (std::is_same_v<T, FieldWitnessCertificate>) {
          return {{"kind", "field_witness"}, {"p", c.p},           {"m", c.m}, {"modulus", c.modulus},
                  {"k", c.k},                {"F", c.F},           {"x", c.x}, {"coset_rep", c.coset_rep}};
        } else {
          return {{"kind", "alpha_no_3ap"},
                  {"matrix", wire::matrix(c.matrix)},
                  {"alpha", wire::mask_to_alpha(c.alpha)},
                  {"row", wire::big_array(c.row)}};
        }
      },
      cert);
}

inline std::string certificate_kind(const Certificate& cert) { return to_json(cert).at("kind").get<std::string>(); }

/// Parses a certificate; throws std::invalid_argument (or json errors) when
/// malformed.
inline Certificate certificate_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "syndetic") {
    SyndeticCertificate c;
    c.ground = ground_kind_from_string(j.at("ground"));
    c.witness_F = wire::big_vector(j.at("witness_F"));
    c.range_lo = wire::big(j, "range_lo");
    c.horizon = wire::big(j, "horizon");
    return c;
  }
  if (kind == "thick_run") return ThickRunCertificate{wire::big(j, "start"), wire::big(j, "length")};
  if (kind == "translate") {
    return TranslateCertificate{wire::big_vector(j.at("F")), wire::big(j, "x"), ground_kind_from_string(j.at("ground"))};
  }
  if (kind == "ip_r" || kind == "ip_r_star_refutation") {
    IPrCertificate c;
    c.refutes_dual = kind != "ip_r";
    c.ground = ground_kind_from_string(j.at("ground"));
    c.generators = wire::big_vector(j.at("generators"));
    if (j.at("r").get<std::size_t>() != c.generators.size()) throw std::invalid_argument("r does not match generators");
    for (const auto& v : j.at("values")) c.values.emplace_back(wire::alpha_to_mask(v.at("alpha")), wire::big(v, "value"));
    return c;
  }
  if (kind == "ap") return APCertificate{wire::big(j, "start"), wire::big(j, "step"), j.at("length").get<std::uint64_t>()};
  if (kind == "gp") return GPCertificate{wire::big(j, "start"), wire::big(j, "ratio"), j.at("length").get<std::uint64_t>()};
  if (kind == "generalized_ap") {
    return GeneralizedAPCertificate{wire::big(j, "s"), wire::big_vector(j.at("d")), j.at("n").get<std::uint64_t>()};
  }
  if (kind == "geometric_cube") {
    return GeometricCubeCertificate{wire::big(j, "s"), wire::big_vector(j.at("d")), j.at("n").get<std::uint64_t>()};
  }
  if (kind == "geo_arithmetic") {
    return GeoArithCertificate{wire::big(j, "c"), wire::big(j, "a"), wire::big(j, "d"), j.at("n").get<std::uint64_t>()};
  }
  if (kind == "combinatorial_richness") {
    return RichnessCertificate{wire::matrix(j.at("matrix")), wire::alpha_to_mask(j.at("alpha")), wire::big(j, "s"),
                               ground_kind_from_string(j.at("ground"))};
  }
  if (kind == "combinatorial_line") {
    LineCertificate c;
    c.n = j.at("n").get<std::uint32_t>();
    std::string word = j.at("word").get<std::string>();
    std::size_t pos = 0;
    while (pos < word.size()) {
      std::size_t end = word.find(' ', pos);
      if (end == std::string::npos) end = word.size();
      std::string tok = word.substr(pos, end - pos);
      c.letters.push_back(tok == "*" ? 0U : static_cast<std::uint32_t>(std::stoul(tok)));
      pos = end + 1;
    }
    if (c.letters.size() != j.at("r").get<std::size_t>()) throw std::invalid_argument("word length does not match r");
    return c;
  }
  if (kind == "field_witness") {
    FieldWitnessCertificate c;
    c.p = j.at("p");
    c.m = j.at("m");
    c.modulus = j.at("modulus").get<std::vector<std::uint64_t>>();
    c.k = j.at("k");
    c.F = j.at("F").get<std::vector<std::uint64_t>>();
    c.x = j.at("x");
    c.coset_rep = j.at("coset_rep");
    return c;
  }
  if (kind == "alpha_no_3ap") {
    return No3APCertificate{wire::matrix(j.at("matrix")), wire::alpha_to_mask(j.at("alpha")), wire::big_vector(j.at("row"))};
  }
  throw std::invalid_argument("unknown certificate kind: " + kind);
}

}  // namespace ramsey
