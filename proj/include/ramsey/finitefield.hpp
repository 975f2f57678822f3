#pragma once

// Finite fields F_{p^m} with q <= 2^20, k-th power subgroups, translate
// witnesses x^k + F inside a coset of the k-th powers, and range-relative
// empirical thresholds.

#include "arithfun.hpp"
#include "certificate.hpp"
#include "groundset.hpp"
#include "numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramsey {

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20U;

/// Elements are encoded as integers in [0, q): the coefficient of t^i is the
/// i-th base-p digit.
class Field {
 public:
  static Field build(std::uint64_t p, std::uint64_t m = 1) {
    if (p < 2 || !detail::is_prime_u64(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
      if (q > kMaxFieldOrder / p) throw CapacityError("field order exceeds 2^20");
      q *= p;
    }
    Field f;
    f.p_ = p;
    f.m_ = m;
    f.q_ = q;
    if (m > 1) {
      f.modulus_ = least_irreducible(p, m);
      if (f.modulus_.empty()) throw std::logic_error("no irreducible polynomial found");
    }
    f.build_tables();
    f.spot_check();
    return f;
  }

  [[nodiscard]] std::uint64_t p() const { return p_; }
  [[nodiscard]] std::uint64_t m() const { return m_; }
  [[nodiscard]] std::uint64_t q() const { return q_; }
  /// Monic modulus, constant term first; empty for prime fields.
  [[nodiscard]] const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  [[nodiscard]] std::uint64_t primitive() const { return primitive_; }

  [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (m_ == 1) return (a + b) % p_;
    std::uint64_t out = 0;
    std::uint64_t place = 1;
    for (std::uint64_t i = 0; i < m_; ++i) {
      out += ((a % p_ + b % p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }
  [[nodiscard]] std::uint64_t neg(std::uint64_t a) const {
    if (m_ == 1) return (p_ - a % p_) % p_;
    std::uint64_t out = 0;
    std::uint64_t place = 1;
    for (std::uint64_t i = 0; i < m_; ++i) {
      out += ((p_ - a % p_) % p_) * place;
      a /= p_;
      place *= p_;
    }
    return out;
  }
  [[nodiscard]] std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

  [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  [[nodiscard]] std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  [[nodiscard]] std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * e) % (q_ - 1))];
  }
  /// Discrete log to the primitive element; a must be non-zero.
  [[nodiscard]] std::uint64_t log(std::uint64_t a) const {
    if (a == 0 || a >= q_) throw std::domain_error("log of zero or non-element");
    return log_[a];
  }
  [[nodiscard]] std::uint64_t exp(std::uint64_t i) const { return exp_[i % (q_ - 1)]; }

  [[nodiscard]] std::uint64_t multiplicative_order(std::uint64_t a) const {
    return (q_ - 1) / std::gcd(q_ - 1, log(a));
  }

  [[nodiscard]] std::string element_str(std::uint64_t a) const {
    if (m_ == 1) return std::to_string(a);
    std::string out;
    for (std::uint64_t i = 0; i < m_; ++i, a /= p_) {
      std::uint64_t c = a % p_;
      if (c == 0) continue;
      std::string term = i == 0 ? std::to_string(c) : (c == 1 ? "" : std::to_string(c)) + (i == 1 ? "t" : "t^" + std::to_string(i));
      out = out.empty() ? term : term + "+" + out;
    }
    return out.empty() ? "0" : out;
  }

  [[nodiscard]] std::string name() const {
    return m_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(p_) + "^" + std::to_string(m_);
  }

  [[nodiscard]] GroundStructure additive_ground() const {
    auto self = std::make_shared<Field>(*this);
    return GroundStructure::field(GroundKind::FiniteFieldAdditive, q_, [self](const BigInt& a, const BigInt& b) {
      return BigInt(self->add(to_u64(a), to_u64(b)));
    });
  }
  [[nodiscard]] GroundStructure multiplicative_ground() const {
    auto self = std::make_shared<Field>(*this);
    return GroundStructure::field(GroundKind::FiniteFieldMultiplicative, q_,
                                  [self](const BigInt& a, const BigInt& b) {
                                    return BigInt(self->mul(to_u64(a), to_u64(b)));
                                  });
  }

  /// Product in F_p[t]/(modulus) from coefficient vectors; used to build the tables.
  [[nodiscard]] std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) const {
    if (m_ == 1) return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    auto da = digits(a);
    auto db = digits(b);
    std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
    for (std::uint64_t i = 0; i < m_; ++i) {
      if (da[i] == 0) continue;
      for (std::uint64_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    for (std::uint64_t d = 2 * m_ - 2; d >= m_; --d) {
      std::uint64_t c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (std::uint64_t i = 0; i < m_; ++i) {
        prod[d - m_ + i] = (prod[d - m_ + i] + (p_ - modulus_[i]) % p_ * c) % p_;
      }
    }
    std::uint64_t out = 0;
    for (std::uint64_t i = m_; i-- > 0;) out = out * p_ + prod[i];
    return out;
  }

 private:
  Field() = default;

  [[nodiscard]] std::vector<std::uint64_t> digits(std::uint64_t a) const {
    std::vector<std::uint64_t> d(m_);
    for (std::uint64_t i = 0; i < m_; ++i, a /= p_) d[i] = a % p_;
    return d;
  }

  static bool divides(const std::vector<std::uint64_t>& g, std::vector<std::uint64_t> f, std::uint64_t p) {
    // g monic, both constant term first.
    const std::size_t dg = g.size() - 1;
    for (std::size_t d = f.size() - 1; d >= dg; --d) {
      const std::uint64_t c = f[d];
      if (c != 0) {
        for (std::size_t i = 0; i <= dg; ++i) f[d - dg + i] = (f[d - dg + i] + (p - g[i]) % p * c) % p;
      }
      if (d == dg) break;
    }
    return std::all_of(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(dg), [](std::uint64_t c) { return c == 0; });
  }

  static std::vector<std::uint64_t> monic_from_code(std::uint64_t code, std::uint64_t deg, std::uint64_t p) {
    std::vector<std::uint64_t> f(deg + 1);
    for (std::uint64_t i = 0; i < deg; ++i, code /= p) f[i] = code % p;
    f[deg] = 1;
    return f;
  }

  static bool irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
    const std::uint64_t m = f.size() - 1;
    for (std::uint64_t d = 1; 2 * d <= m; ++d) {
      std::uint64_t count = 1;
      for (std::uint64_t i = 0; i < d; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        if (divides(monic_from_code(code, d, p), f, p)) return false;
      }
    }
    return true;
  }

  // Least integer encoding of the lower coefficients, constant term least significant.
  static std::vector<std::uint64_t> least_irreducible(std::uint64_t p, std::uint64_t m) {
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      auto f = monic_from_code(code, m, p);
      if (f[0] != 0 && irreducible(f, p)) return f;
    }
    return {};
  }

  void build_tables() {
    const std::uint64_t n = q_ - 1;
    std::vector<std::uint64_t> prime_divisors;
    for (std::uint64_t r = 2, rest = n; rest > 1; ++r) {
      if (r * r > rest) {
        prime_divisors.push_back(rest);
        break;
      }
      if (rest % r == 0) {
        prime_divisors.push_back(r);
        while (rest % r == 0) rest /= r;
      }
    }
    auto slow_pow = [this](std::uint64_t a, std::uint64_t e) {
      std::uint64_t r = 1;
      while (e) {
        if (e & 1U) r = poly_mul(r, a);
        a = poly_mul(a, a);
        e >>= 1U;
      }
      return r;
    };
    for (std::uint64_t g = 1; g < q_; ++g) {
      if (n == 1 || std::all_of(prime_divisors.begin(), prime_divisors.end(),
                                [&](std::uint64_t r) { return slow_pow(g, n / r) != 1; })) {
        primitive_ = g;
        break;
      }
    }
    if (primitive_ == 0) throw std::logic_error("no primitive element found");
    exp_.assign(n, 0);
    log_.assign(q_, 0);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = poly_mul(x, primitive_);
    }
    if (x != 1) throw std::logic_error("primitive element order mismatch");
  }

  void spot_check() const {
    std::mt19937_64 rng(0x5eedULL + q_);
    std::uniform_int_distribution<std::uint64_t> pick(0, q_ - 1);
    for (int t = 0; t < 1000; ++t) {
      std::uint64_t a = pick(rng);
      std::uint64_t b = pick(rng);
      std::uint64_t c = pick(rng);
      bool ok = add(a, b) == add(b, a) && mul(a, b) == mul(b, a) && add(add(a, b), c) == add(a, add(b, c)) &&
                mul(mul(a, b), c) == mul(a, mul(b, c)) && mul(a, add(b, c)) == add(mul(a, b), mul(a, c)) &&
                add(a, neg(a)) == 0 && mul(a, b) == poly_mul(a, b) && (a == 0 || mul(a, inv(a)) == 1);
      if (!ok) throw std::logic_error("field axiom spot check failed in " + name());
    }
  }

  std::uint64_t p_ = 2;
  std::uint64_t m_ = 1;
  std::uint64_t q_ = 2;
  std::vector<std::uint64_t> modulus_;
  std::uint64_t primitive_ = 0;
  std::vector<std::uint64_t> exp_;
  std::vector<std::uint64_t> log_;
};

/// Prime powers q with q_min <= q <= q_max, optionally primes only, ascending.
inline std::vector<std::uint64_t> field_orders(std::uint64_t q_max, bool primes_only, std::uint64_t q_min = 2) {
  if (q_max > kMaxFieldOrder) throw CapacityError("field order exceeds 2^20");
  std::vector<std::uint64_t> out;
  const auto& sieve = shared_sieve(std::max<std::uint64_t>(q_max, 2));
  for (std::uint64_t q = std::max<std::uint64_t>(q_min, 2); q <= q_max; ++q) {
    std::uint64_t p = sieve->spf(q);
    std::uint64_t r = q;
    while (r % p == 0) r /= p;
    if (r == 1 && (!primes_only || p == q)) out.push_back(q);
  }
  return out;
}

inline Field field_of_order(std::uint64_t q) {
  if (q < 2 || q > kMaxFieldOrder) throw std::invalid_argument("field order out of range");
  const auto& sieve = shared_sieve(q);
  std::uint64_t p = sieve->spf(q);
  std::uint64_t m = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return Field::build(p, m);
}

// ---------------------------------------------------------------------------
// k-th powers

struct PowerSubgroup {
  std::uint64_t k = 1;
  std::uint64_t q = 2;
  std::uint64_t index = 1;
  std::vector<std::uint64_t> elements;  // ascending encodings
  std::vector<bool> member;

  [[nodiscard]] bool contains(std::uint64_t x) const { return x < member.size() && member[x]; }
};

inline PowerSubgroup kth_power_subgroup(const Field& f, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  PowerSubgroup g;
  g.k = k;
  g.q = f.q();
  g.index = std::gcd(k, f.q() - 1);
  g.member.assign(f.q(), false);
  for (std::uint64_t i = 0; i < f.q() - 1; i += g.index) g.member[f.exp(i)] = true;
  for (std::uint64_t x = 1; x < f.q(); ++x) {
    if (g.member[x]) g.elements.push_back(x);
  }
  return g;
}

/// Least x != 0 (by encoding) with x^k + F inside coset_rep * Gamma.
inline std::optional<FieldWitnessCertificate> witness_translate(const Field& f, std::uint64_t k,
                                                                const std::vector<std::uint64_t>& F,
                                                                std::uint64_t coset_rep = 1) {
  if (coset_rep == 0 || coset_rep >= f.q()) throw std::invalid_argument("coset representative must be non-zero");
  for (auto v : F) {
    if (v >= f.q()) throw std::invalid_argument("set element outside the field");
  }
  const std::uint64_t index = std::gcd(k, f.q() - 1);
  const std::uint64_t shift = f.log(coset_rep) % index;
  auto in_coset = [&](std::uint64_t y) { return y != 0 && f.log(y) % index == shift; };
  for (std::uint64_t x = 1; x < f.q(); ++x) {
    const std::uint64_t xk = f.pow(x, k);
    if (std::all_of(F.begin(), F.end(), [&](std::uint64_t v) { return in_coset(f.add(xk, v)); })) {
      return FieldWitnessCertificate{f.p(), f.m(), f.modulus(), k, F, x, coset_rep};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Empirical thresholds

inline constexpr std::uint64_t kMaxThresholdOrder = std::uint64_t{1} << 14U;

struct FieldFailure {
  std::uint64_t q = 0;
  std::vector<std::uint64_t> F;
};

struct ThresholdReport {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::vector<std::uint64_t> fields;  // orders examined, ascending
  std::optional<std::uint64_t> threshold;
  std::vector<FieldFailure> failures;  // first failing F per failing field
  std::uint64_t sets_checked = 0;
  bool inconclusive = false;

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& e : failures) fails.push_back({{"q", e.q}, {"F", e.F}});
    nlohmann::json out = {{"n", n},
                          {"k", k},
                          {"q_min", fields.empty() ? 0 : fields.front()},
                          {"q_max", fields.empty() ? 0 : fields.back()},
                          {"fields_examined", fields.size()},
                          {"threshold", threshold ? nlohmann::json(*threshold) : nlohmann::json(nullptr)},
                          {"failures", fails},
                          {"sets_checked", sets_checked},
                          {"inconclusive", inconclusive},
                          {"range_relative", true}};
    return out;
  }
};

namespace detail {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6U] |= std::uint64_t{1} << (i & 63U); }
  [[nodiscard]] std::size_t words() const { return w_.size(); }
  [[nodiscard]] std::uint64_t word(std::size_t i) const { return w_[i]; }
  std::uint64_t* data() { return w_.data(); }
  [[nodiscard]] const std::uint64_t* data() const { return w_.data(); }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> w_;
};

// Does some y in Gamma satisfy y + v in Gamma for all v in F?
// shifted[v] holds {y : y + v in Gamma}; shifted[0] is Gamma itself.
class FieldChecker {
 public:
  FieldChecker(const Field& f, const PowerSubgroup& g) : f_(f), g_(g), shifted_(f.q()), built_(f.q(), false) {}
  const Bits& shifted(std::uint64_t v) {
    if (!built_[v]) {
      Bits b(f_.q());
      for (std::uint64_t y = 0; y < f_.q(); ++y) {
        if (g_.contains(f_.add(y, v))) b.set(y);
      }
      shifted_[v] = std::move(b);
      built_[v] = true;
    }
    return shifted_[v];
  }

 private:
  const Field& f_;
  const PowerSubgroup& g_;
  std::vector<Bits> shifted_;
  std::vector<bool> built_;
};

}  // namespace detail

/// Whether every F of size min(n, q) has a translate witness, scanning canonical
/// representatives. Subsets inherit witnesses, so smaller F need no separate pass.
///
/// Scaling: if c = u^k and y = x^k, then c(y + F) = (ux)^k + cF, so F and cF are
/// solvable together. Every F with a non-zero element v can be scaled by
/// c = rep / v in Gamma so that it contains the coset representative
/// rep = g^(log v mod index). The scan therefore covers {0} and every F
/// containing one of the index coset representatives.
inline std::optional<std::vector<std::uint64_t>> first_unsolvable(const Field& f, const PowerSubgroup& g,
                                                                  std::uint64_t n, std::uint64_t& checked,
                                                                  Budget* budget) {
  const std::uint64_t q = f.q();
  const std::uint64_t size = std::min(n, q);
  if (size == 0) return std::nullopt;
  detail::FieldChecker checker(f, g);
  const std::size_t words = checker.shifted(0).words();
  std::vector<std::vector<std::uint64_t>> acc(size + 1, std::vector<std::uint64_t>(words));
  std::copy(checker.shifted(0).data(), checker.shifted(0).data() + words, acc[0].begin());
  std::vector<std::uint64_t> chosen;
  std::optional<std::vector<std::uint64_t>> failure;
  bool stopped = false;

  auto nonempty = [&](const std::vector<std::uint64_t>& a) {
    return std::any_of(a.begin(), a.end(), [](std::uint64_t w) { return w != 0; });
  };
  auto push = [&](std::uint64_t v) {
    chosen.push_back(v);
    const auto* s = checker.shifted(v).data();
    auto& dst = acc[chosen.size()];
    const auto& src = acc[chosen.size() - 1];
    for (std::size_t i = 0; i < words; ++i) dst[i] = src[i] & s[i];
  };

  // Extend chosen with ascending elements from `from`, skipping `skip`.
  std::function<void(std::uint64_t, std::uint64_t)> extend = [&](std::uint64_t from, std::uint64_t skip) {
    if (failure || stopped) return;
    if (chosen.size() == size) {
      ++checked;
      if (budget && !budget->spend()) {
        stopped = true;
        return;
      }
      if (!nonempty(acc[size])) {
        auto F = chosen;
        std::sort(F.begin(), F.end());
        failure = F;
      }
      return;
    }
    // Once a prefix already has no witness every superset fails too.
    if (!nonempty(acc[chosen.size()])) {
      auto F = chosen;
      for (std::uint64_t v = 0; F.size() < size && v < q; ++v) {
        if (std::find(F.begin(), F.end(), v) == F.end()) F.push_back(v);
      }
      std::sort(F.begin(), F.end());
      ++checked;
      failure = F;
      return;
    }
    for (std::uint64_t v = from; v < q && !failure && !stopped; ++v) {
      if (v == skip) continue;
      if (q - v < size - chosen.size()) break;
      push(v);
      extend(v + 1, skip);
      chosen.pop_back();
    }
  };

  if (size == 1) {
    push(0);
    extend(0, q);
    chosen.clear();
  }
  for (std::uint64_t i = 0; i < g.index && !failure && !stopped; ++i) {
    const std::uint64_t rep = f.exp(i);
    push(rep);
    extend(0, rep);
    chosen.clear();
  }
  if (stopped) throw CapacityError("budget exhausted");
  return failure;
}

/// Least Q among the given field orders such that every examined field with
/// order >= Q solves all F with |F| <= n. Range-relative, never the true N(n,k).
inline ThresholdReport empirical_threshold(std::uint64_t n, std::uint64_t k, const std::vector<std::uint64_t>& orders,
                                           Budget* budget = nullptr) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  ThresholdReport r;
  r.n = n;
  r.k = k;
  r.fields = orders;
  std::sort(r.fields.begin(), r.fields.end());
  r.fields.erase(std::unique(r.fields.begin(), r.fields.end()), r.fields.end());
  if (!r.fields.empty() && r.fields.back() > kMaxThresholdOrder)
    throw CapacityError("threshold scan supports q <= 2^14");
  std::vector<bool> pass(r.fields.size(), false);
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    Field f = field_of_order(r.fields[i]);
    auto g = kth_power_subgroup(f, k);
    try {
      auto bad = first_unsolvable(f, g, n, r.sets_checked, budget);
      pass[i] = !bad;
      if (bad) r.failures.push_back({f.q(), *bad});
    } catch (const CapacityError&) {
      r.inconclusive = true;
      r.fields.resize(i);
      pass.resize(i);
      break;
    }
  }
  for (std::size_t i = r.fields.size(); i-- > 0;) {
    if (!pass[i]) break;
    r.threshold = r.fields[i];
  }
  return r;
}

}  // namespace ramsey
