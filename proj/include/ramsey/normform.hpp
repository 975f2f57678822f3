#pragma once

// Integral norm forms, exact coordinate multiplication for the preset
// families, enumeration of represented values with witnesses, closure
// checks, AP search and relative prime density.

#include "arithfun.hpp"
#include "certificate.hpp"
#include "groundset.hpp"
#include "numeric.hpp"
#include "patterns.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramsey {

struct FormTerm {
  BigInt coeff;
  std::vector<std::uint32_t> exps;
};

/// Multiplication constants: e_i e_j = sum_k c[i][j][k] e_k.
using StructureConstants = std::vector<std::vector<std::vector<BigInt>>>;

class NormForm {
 public:
  static NormForm from_terms(std::size_t vars, std::vector<FormTerm> terms, std::string descriptor = "custom") {
    if (vars == 0) throw std::invalid_argument("form needs at least one variable");
    if (terms.empty()) throw std::invalid_argument("form has no terms");
    NormForm f;
    f.vars_ = vars;
    f.descriptor_ = std::move(descriptor);
    std::map<std::vector<std::uint32_t>, BigInt> merged;
    for (auto& t : terms) {
      if (t.exps.size() != vars) throw std::invalid_argument("term arity mismatch");
      merged[t.exps] += t.coeff;
    }
    std::optional<std::uint32_t> degree;
    for (auto& [e, c] : merged) {
      if (c == 0) continue;
      std::uint32_t d = 0;
      for (auto x : e) d += x;
      if (degree && *degree != d) throw std::invalid_argument("form is not homogeneous");
      degree = d;
      f.terms_.push_back({c, e});
    }
    if (!degree || *degree == 0) throw std::invalid_argument("form must have positive degree");
    f.degree_ = *degree;
    return f;
  }

  /// x^2 - a y^2 with (x1,y1)(x2,y2) = (x1 x2 + a y1 y2, x1 y2 + x2 y1).
  static NormForm quadratic(const BigInt& a) {
    auto f = from_terms(2, {{1, {2, 0}}, {-a, {0, 2}}}, "quadratic:a=" + to_dec(a));
    f.ring_ = StructureConstants{{{1, 0}, {0, 1}}, {{0, 1}, {a, 0}}};
    return f;
  }

  /// x^3 + a y^3 + a^2 z^3 - 3a xyz, coordinates in the basis 1, t, t^2 with t^3 = a.
  static NormForm cubic(const BigInt& a) {
    auto f = from_terms(3, {{1, {3, 0, 0}}, {a, {0, 3, 0}}, {a * a, {0, 0, 3}}, {-3 * a, {1, 1, 1}}},
                        "cubic:a=" + to_dec(a));
    StructureConstants c(3, std::vector<std::vector<BigInt>>(3, std::vector<BigInt>(3, 0)));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        std::size_t e = i + j;
        if (e < 3) {
          c[i][j][e] = 1;
        } else {
          c[i][j][e - 3] = a;
        }
      }
    }
    f.ring_ = c;
    return f;
  }

  /// "quadratic:a=-1", "cubic:a=2".
  static NormForm preset(const std::string& text) {
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    BigInt a = name == "cubic" ? 2 : -1;
    if (colon != std::string::npos) {
      std::string rest = text.substr(colon + 1);
      if (rest.rfind("a=", 0) != 0) throw std::invalid_argument("preset parameter must be a=<integer>: " + text);
      a = parse_bigint(rest.substr(2));
    }
    if (name == "quadratic") return quadratic(a);
    if (name == "cubic") return cubic(a);
    throw std::invalid_argument("unknown norm form preset: " + name);
  }

  /// Terms such as "x1^3 + 2*x2^3 + 4*x3^3 - 6*x1*x2*x3".
  static NormForm parse(const std::string& text, std::size_t vars) {
    std::vector<FormTerm> terms;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&] {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw std::invalid_argument("expected a number in form: " + text);
      return std::stoull(text.substr(start, i - start));
    };
    skip();
    while (i < text.size()) {
      int sign = 1;
      if (text[i] == '+' || text[i] == '-') {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
        skip();
      } else if (!terms.empty()) {
        throw std::invalid_argument("expected + or - in form: " + text);
      }
      FormTerm t{BigInt(sign), std::vector<std::uint32_t>(vars, 0)};
      while (true) {
        skip();
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          std::size_t start = i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          t.coeff *= parse_bigint(text.substr(start, i - start));
        } else if (i < text.size() && text[i] == 'x') {
          ++i;
          auto idx = number();
          if (idx < 1 || idx > vars) throw std::invalid_argument("variable index out of range in form: " + text);
          std::uint32_t e = 1;
          skip();
          if (i < text.size() && text[i] == '^') {
            ++i;
            skip();
            e = static_cast<std::uint32_t>(number());
          }
          t.exps[idx - 1] += e;
        } else {
          throw std::invalid_argument("unexpected character in form: " + text);
        }
        skip();
        if (i < text.size() && text[i] == '*') {
          ++i;
          continue;
        }
        break;
      }
      terms.push_back(std::move(t));
      skip();
    }
    return from_terms(vars, std::move(terms), text);
  }

  [[nodiscard]] std::size_t vars() const { return vars_; }
  [[nodiscard]] std::uint32_t degree() const { return degree_; }
  [[nodiscard]] const std::vector<FormTerm>& terms() const { return terms_; }
  [[nodiscard]] bool has_ring() const { return ring_.has_value(); }
  [[nodiscard]] const std::string& descriptor() const { return descriptor_; }

  [[nodiscard]] BigInt eval(const std::vector<BigInt>& z) const {
    if (z.size() != vars_) throw std::invalid_argument("arity mismatch: form has " + std::to_string(vars_) + " variables");
    BigInt total = 0;
    for (const auto& t : terms_) {
      BigInt v = t.coeff;
      for (std::size_t i = 0; i < vars_; ++i) {
        for (std::uint32_t e = 0; e < t.exps[i]; ++e) v *= z[i];
      }
      total += v;
    }
    return total;
  }

  [[nodiscard]] BigInt eval(const std::vector<std::int64_t>& z) const {
    return eval(std::vector<BigInt>(z.begin(), z.end()));
  }

  [[nodiscard]] std::vector<BigInt> ring_mul(const std::vector<BigInt>& z, const std::vector<BigInt>& w) const {
    if (!ring_) throw std::logic_error("no ring structure attached to " + descriptor_);
    if (z.size() != vars_ || w.size() != vars_) throw std::invalid_argument("arity mismatch");
    std::vector<BigInt> out(vars_, 0);
    for (std::size_t i = 0; i < vars_; ++i) {
      if (z[i] == 0) continue;
      for (std::size_t j = 0; j < vars_; ++j) {
        if (w[j] == 0) continue;
        BigInt zw = z[i] * w[j];
        for (std::size_t k = 0; k < vars_; ++k) {
          if ((*ring_)[i][j][k] != 0) out[k] += (*ring_)[i][j][k] * zw;
        }
      }
    }
    return out;
  }

 private:
  NormForm() = default;

  std::size_t vars_ = 0;
  std::uint32_t degree_ = 0;
  std::vector<FormTerm> terms_;
  std::optional<StructureConstants> ring_;
  std::string descriptor_;
};

// ---------------------------------------------------------------------------
// Represented values

inline constexpr std::uint64_t kMaxFormBox = std::uint64_t{1} << 28U;

/// Values |Psi(z)| in (0, limit] over the box [-box, box]^vars. Always an
/// under-approximation of N_Psi: a value may have witnesses only outside the box.
struct RepresentedSet {
  std::string form;
  std::uint64_t box = 0;
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> values;                // ascending
  std::vector<std::vector<BigInt>> witnesses;       // parallel to values
  bool under_approximate = true;

  [[nodiscard]] bool contains(std::uint64_t v) const { return std::binary_search(values.begin(), values.end(), v); }

  [[nodiscard]] const std::vector<BigInt>& witness(std::uint64_t v) const {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) throw std::out_of_range("value not represented: " + std::to_string(v));
    return witnesses[static_cast<std::size_t>(it - values.begin())];
  }

  [[nodiscard]] IntegerWindowSet window() const {
    return IntegerWindowSet::from_members(1, BigInt(limit) + 1, std::vector<BigInt>(values.begin(), values.end()));
  }

  [[nodiscard]] LazySet as_lazy() const {
    return window().as_lazy();
  }

  [[nodiscard]] std::string csv() const {
    std::ostringstream os;
    os << "value,witness\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      os << values[i] << ',';
      for (std::size_t j = 0; j < witnesses[i].size(); ++j) os << (j ? ";" : "") << witnesses[i][j];
      os << '\n';
    }
    return os.str();
  }
};

/// The first witness in lexicographic order of z is kept for each value.
inline RepresentedSet enumerate_represented(const NormForm& f, std::uint64_t box, std::uint64_t limit) {
  const std::uint64_t side = 2 * box + 1;
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < f.vars(); ++i) {
    if (cells > kMaxFormBox / side) throw CapacityError("coordinate box larger than 2^28 points");
    cells *= side;
  }
  if (limit > kMaxWindowSize) throw CapacityError("value limit larger than 2^26");
  RepresentedSet r;
  r.form = f.descriptor();
  r.box = box;
  r.limit = limit;
  std::vector<std::int64_t> first(limit + 1, -1);  // cell index of the first witness
  std::vector<std::int64_t> z(f.vars(), -static_cast<std::int64_t>(box));
  std::vector<BigInt> zb(f.vars());
  for (std::uint64_t cell = 0; cell < cells; ++cell) {
    std::uint64_t rest = cell;
    for (std::size_t i = f.vars(); i-- > 0;) {
      z[i] = static_cast<std::int64_t>(rest % side) - static_cast<std::int64_t>(box);
      rest /= side;
    }
    for (std::size_t i = 0; i < z.size(); ++i) zb[i] = z[i];
    BigInt v = abs(f.eval(zb));
    if (v == 0 || v > limit) continue;
    auto u = static_cast<std::uint64_t>(v);
    if (first[u] < 0) first[u] = static_cast<std::int64_t>(cell);
  }
  for (std::uint64_t v = 1; v <= limit; ++v) {
    if (first[v] < 0) continue;
    r.values.push_back(v);
    std::vector<BigInt> w(f.vars());
    std::uint64_t rest = static_cast<std::uint64_t>(first[v]);
    for (std::size_t i = f.vars(); i-- > 0;) {
      w[i] = static_cast<std::int64_t>(rest % side) - static_cast<std::int64_t>(box);
      rest /= side;
    }
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

struct ClosureReport {
  std::uint64_t pairs = 0;
  std::uint64_t direct = 0;         // product already found in the box
  std::uint64_t via_ring_mul = 0;   // recovered by multiplying witnesses
  std::vector<std::pair<std::uint64_t, std::uint64_t>> failures;

  [[nodiscard]] bool closed() const { return failures.empty(); }
};

/// Samples pairs (u, v) of represented values with u v <= limit and checks the
/// product is represented, falling back to the witness product under ring_mul.
inline ClosureReport check_closure(const NormForm& f, const RepresentedSet& r, std::uint64_t samples,
                                   std::uint64_t seed = 1) {
  ClosureReport rep;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pool;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (r.values[i] < 2) continue;
    for (std::size_t j = i; j < r.values.size() && r.values[i] * r.values[j] <= r.limit; ++j) {
      pool.emplace_back(r.values[i], r.values[j]);
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > samples) pool.resize(samples);
  std::sort(pool.begin(), pool.end());
  for (auto [u, v] : pool) {
    ++rep.pairs;
    if (r.contains(u * v)) {
      ++rep.direct;
      continue;
    }
    if (f.has_ring()) {
      auto w = f.ring_mul(r.witness(u), r.witness(v));
      if (abs(f.eval(w)) == BigInt(u) * v) {
        ++rep.via_ring_mul;
        continue;
      }
    }
    rep.failures.emplace_back(u, v);
  }
  return rep;
}

/// Longest AP among the represented values, via the window scanner.
inline SearchResult<APCertificate> ap_search(const RepresentedSet& r, std::uint64_t target_len) {
  auto res = longest_ap(r.window(), target_len);
  res.note = "values from box " + std::to_string(r.box) + ", limit " + std::to_string(r.limit) +
             "; set is an under-approximation";
  return res;
}

/// |R cap P cap [1,N]| / |P cap [1,N]| over sieved primes.
inline BigRational prime_relative_density(const RepresentedSet& r, std::uint64_t n) {
  if (n > r.limit) throw std::invalid_argument("N exceeds the enumeration limit");
  const auto sieve = shared_sieve(std::max<std::uint64_t>(n, 2));
  std::uint64_t primes = 0;
  std::uint64_t hit = 0;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (!sieve->is_prime(p)) continue;
    ++primes;
    if (r.contains(p)) ++hit;
  }
  if (primes == 0) throw std::invalid_argument("no primes up to N");
  return BigRational(BigInt(hit), BigInt(primes));
}

}  // namespace ramsey
