#pragma once

// Set representations (bitmap windows and lazily evaluated sets) and the
// ambient semigroups they live in.

#include "numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ramsey {

enum class GroundKind {
  NaturalsAdditive,
  NaturalsMultiplicative,
  IntegersAdditive,
  FiniteFieldAdditive,
  FiniteFieldMultiplicative,
};

inline std::string to_string(GroundKind kind) {
  switch (kind) {
    case GroundKind::NaturalsAdditive: return "naturals_additive";
    case GroundKind::NaturalsMultiplicative: return "naturals_multiplicative";
    case GroundKind::IntegersAdditive: return "integers_additive";
    case GroundKind::FiniteFieldAdditive: return "finite_field_additive";
    case GroundKind::FiniteFieldMultiplicative: return "finite_field_multiplicative";
  }
  return "unknown";
}

/// A commutative semigroup on integer-encoded elements.
///
/// Finite-field kinds encode field elements as integers in [0, q). Prime
/// fields use modular arithmetic directly; extension fields install their
/// operation through finitefield.hpp.
class GroundStructure {
 public:
  using BinaryOp = std::function<BigInt(const BigInt&, const BigInt&)>;

  static GroundStructure naturals_additive() { return GroundStructure(GroundKind::NaturalsAdditive); }
  static GroundStructure naturals_multiplicative() {
    return GroundStructure(GroundKind::NaturalsMultiplicative);
  }
  static GroundStructure integers_additive() { return GroundStructure(GroundKind::IntegersAdditive); }

  static GroundStructure prime_field_additive(std::uint64_t p) {
    GroundStructure g(GroundKind::FiniteFieldAdditive);
    g.q_ = p;
    g.op_ = [p](const BigInt& a, const BigInt& b) { return BigInt((a + b) % p); };
    return g;
  }
  static GroundStructure prime_field_multiplicative(std::uint64_t p) {
    GroundStructure g(GroundKind::FiniteFieldMultiplicative);
    g.q_ = p;
    g.op_ = [p](const BigInt& a, const BigInt& b) { return BigInt((a * b) % p); };
    return g;
  }
  static GroundStructure field(GroundKind kind, std::uint64_t q, BinaryOp op) {
    GroundStructure g(kind);
    g.q_ = q;
    g.op_ = std::move(op);
    return g;
  }

  [[nodiscard]] GroundKind kind() const { return kind_; }
  [[nodiscard]] std::uint64_t field_order() const { return q_; }
  [[nodiscard]] bool is_additive() const {
    return kind_ == GroundKind::NaturalsAdditive || kind_ == GroundKind::IntegersAdditive ||
           kind_ == GroundKind::FiniteFieldAdditive;
  }
  [[nodiscard]] bool is_field() const {
    return kind_ == GroundKind::FiniteFieldAdditive || kind_ == GroundKind::FiniteFieldMultiplicative;
  }
  // Every listed kind is cancellative except multiplication by 0 in a field.
  [[nodiscard]] bool has_cancellation() const { return kind_ != GroundKind::FiniteFieldMultiplicative; }

  [[nodiscard]] BigInt identity() const { return is_additive() ? BigInt(0) : BigInt(1); }

  [[nodiscard]] BigInt op(const BigInt& a, const BigInt& b) const {
    if (op_) return op_(a, b);
    return is_additive() ? BigInt(a + b) : BigInt(a * b);
  }

  /// Throws std::invalid_argument when x is not an element of this structure.
  void require_element(const BigInt& x) const {
    switch (kind_) {
      case GroundKind::NaturalsAdditive:
        if (x < 0) throw std::invalid_argument("negative element in (N,+): " + to_dec(x));
        break;
      case GroundKind::NaturalsMultiplicative:
        if (x < 1) throw std::invalid_argument("non-positive element in (N,*): " + to_dec(x));
        break;
      case GroundKind::IntegersAdditive:
        break;
      case GroundKind::FiniteFieldAdditive:
      case GroundKind::FiniteFieldMultiplicative:
        if (x < 0 || x >= q_) throw std::invalid_argument("not a field element encoding: " + to_dec(x));
        break;
    }
  }

  [[nodiscard]] std::string name() const {
    return is_field() ? to_string(kind_) + "(" + std::to_string(q_) + ")" : to_string(kind_);
  }

 private:
  explicit GroundStructure(GroundKind kind) : kind_(kind) {}

  GroundKind kind_;
  std::uint64_t q_ = 0;
  BinaryOp op_;
};

inline constexpr std::uint64_t kMaxWindowSize = std::uint64_t{1} << 26U;

class LazySet;

/// Exact membership bitmap over the half-open window [lo, hi).
class IntegerWindowSet {
 public:
  IntegerWindowSet() = default;

  IntegerWindowSet(BigInt lo, BigInt hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("window with hi < lo");
    BigInt width = hi_ - lo_;
    if (width > kMaxWindowSize) throw CapacityError("window wider than 2^26: " + to_dec(width));
    size_ = width.convert_to<std::uint64_t>();
    words_.assign((size_ + 63) / 64, 0);
  }

  template <class Pred>
  static IntegerWindowSet from_predicate(const BigInt& lo, const BigInt& hi, Pred&& pred) {
    IntegerWindowSet w(lo, hi);
    BigInt x = lo;
    for (std::uint64_t i = 0; i < w.size_; ++i, ++x) {
      if (pred(x)) w.set_offset(i);
    }
    return w;
  }

  static IntegerWindowSet from_members(const BigInt& lo, const BigInt& hi, const std::vector<BigInt>& members) {
    IntegerWindowSet w(lo, hi);
    for (const auto& m : members) {
      if (m < lo || m >= hi) throw RangeError("member outside window: " + to_dec(m));
      w.set_offset((m - lo).convert_to<std::uint64_t>());
    }
    return w;
  }

  [[nodiscard]] const BigInt& lo() const { return lo_; }
  [[nodiscard]] const BigInt& hi() const { return hi_; }
  [[nodiscard]] std::uint64_t size() const { return size_; }

  [[nodiscard]] bool in_window(const BigInt& x) const { return x >= lo_ && x < hi_; }

  [[nodiscard]] bool contains(const BigInt& x) const {
    if (!in_window(x))
      throw RangeError("membership of " + to_dec(x) + " outside window [" + to_dec(lo_) + "," + to_dec(hi_) + ")");
    return test_offset((x - lo_).convert_to<std::uint64_t>());
  }

  [[nodiscard]] bool test_offset(std::uint64_t i) const { return (words_[i >> 6U] >> (i & 63U)) & 1U; }
  void set_offset(std::uint64_t i, bool value = true) {
    if (value) {
      words_[i >> 6U] |= std::uint64_t{1} << (i & 63U);
    } else {
      words_[i >> 6U] &= ~(std::uint64_t{1} << (i & 63U));
    }
  }

  [[nodiscard]] std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
  }

  [[nodiscard]] std::vector<std::uint64_t> member_offsets() const {
    std::vector<std::uint64_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        out.push_back(wi * 64 + static_cast<std::uint64_t>(__builtin_ctzll(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  [[nodiscard]] std::vector<BigInt> members() const {
    std::vector<BigInt> out;
    for (auto off : member_offsets()) out.push_back(lo_ + off);
    return out;
  }

  [[nodiscard]] IntegerWindowSet complement() const {
    IntegerWindowSet c = *this;
    for (auto& w : c.words_) w = ~w;
    if (size_ % 64 != 0 && !c.words_.empty()) c.words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    return c;
  }

  // Bitmap bytes: bit i of the window is bit (i % 8) of byte i / 8, LSB first.
  [[nodiscard]] std::vector<std::uint8_t> bytes() const {
    std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
    }
    return out;
  }

  static IntegerWindowSet from_bytes(const BigInt& lo, const BigInt& hi, const std::vector<std::uint8_t>& bytes) {
    IntegerWindowSet w(lo, hi);
    if (bytes.size() != (w.size_ + 7) / 8) throw std::invalid_argument("bitmap length does not match window");
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      w.words_[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (i % 8));
    }
    if (w.size_ % 64 != 0 && !w.words_.empty()) {
      std::uint64_t mask = (std::uint64_t{1} << (w.size_ % 64)) - 1;
      if (w.words_.back() & ~mask) throw std::invalid_argument("bitmap has bits beyond the window");
    }
    return w;
  }

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"kind", "window"}, {"lo", to_dec(lo_)}, {"hi", to_dec(hi_)}, {"bits", base64::encode(bytes())}};
  }

  static IntegerWindowSet from_json(const nlohmann::json& j) {
    if (j.at("kind") != "window") throw std::invalid_argument("not a window set");
    BigInt lo = parse_bigint(j.at("lo").get<std::string>());
    BigInt hi = parse_bigint(j.at("hi").get<std::string>());
    return from_bytes(lo, hi, base64::decode(j.at("bits").get<std::string>()));
  }

  [[nodiscard]] LazySet as_lazy(std::string descriptor = {}) const;

  friend bool operator==(const IntegerWindowSet& a, const IntegerWindowSet& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.words_ == b.words_;
  }

 private:
  BigInt lo_ = 0;
  BigInt hi_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Membership oracle plus optional ordered enumerator for a (possibly
/// infinite) set of integers.
///
/// The enumerator returns every non-negative member <= bound in increasing
/// order when it is declared exact; otherwise it may omit members.
class LazySet {
 public:
  using Member = std::function<bool(const BigInt&)>;
  using Enumerator = std::function<std::vector<BigInt>(const BigInt&)>;

  LazySet() = default;
  LazySet(std::string descriptor, Member member, Enumerator enumerate = {}, bool exact = false)
      : descriptor_(std::move(descriptor)),
        member_(std::move(member)),
        enumerate_(std::move(enumerate)),
        exact_(exact && static_cast<bool>(enumerate_)) {}

  [[nodiscard]] bool contains(const BigInt& x) const { return member_(x); }
  [[nodiscard]] bool enumerable() const { return static_cast<bool>(enumerate_); }
  [[nodiscard]] bool enumerator_exact() const { return exact_; }

  [[nodiscard]] std::vector<BigInt> enumerate_upto(const BigInt& bound) const {
    if (!enumerate_) throw std::logic_error("set has no enumerator: " + descriptor_);
    return enumerate_(bound);
  }

  [[nodiscard]] const std::string& descriptor() const { return descriptor_; }

  /// Reconstructible description ({"kind":"lazy",...} or a window literal).
  [[nodiscard]] const nlohmann::json& spec() const { return spec_; }
  LazySet& with_spec(nlohmann::json spec) {
    spec_ = std::move(spec);
    return *this;
  }

  /// Half-open range on which membership is defined, when restricted.
  [[nodiscard]] const std::optional<std::pair<BigInt, BigInt>>& domain() const { return domain_; }
  LazySet& with_domain(BigInt lo, BigInt hi) {
    domain_ = std::make_pair(std::move(lo), std::move(hi));
    return *this;
  }

 private:
  std::string descriptor_;
  Member member_;
  Enumerator enumerate_;
  bool exact_ = false;
  nlohmann::json spec_;
  std::optional<std::pair<BigInt, BigInt>> domain_;
};

inline LazySet IntegerWindowSet::as_lazy(std::string descriptor) const {
  auto shared = std::make_shared<const IntegerWindowSet>(*this);
  if (descriptor.empty()) descriptor = "window[" + to_dec(lo_) + "," + to_dec(hi_) + ")";
  LazySet set(
      std::move(descriptor), [shared](const BigInt& x) { return shared->contains(x); },
      [shared](const BigInt& bound) {
        std::vector<BigInt> out;
        for (auto off : shared->member_offsets()) {
          BigInt v = shared->lo() + off;
          if (v > bound) break;
          if (v >= 0) out.push_back(std::move(v));
        }
        return out;
      },
      // Exact only when the window covers every candidate in [0, bound].
      shared->lo() <= 0);
  set.with_domain(lo_, hi_).with_spec(to_json());
  return set;
}

/// Finite multiset: sorted distinct support with positive multiplicities.
class FiniteMultiset {
 public:
  FiniteMultiset() = default;

  explicit FiniteMultiset(std::vector<std::pair<BigInt, std::uint64_t>> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [value, mult] : entries) {
      if (mult == 0) throw std::invalid_argument("multiset multiplicity must be positive");
      if (!support_.empty() && support_.back() == value) {
        multiplicity_.back() += mult;
      } else {
        support_.push_back(value);
        multiplicity_.push_back(mult);
      }
      total_ += mult;
    }
  }

  static FiniteMultiset from_list(const std::vector<BigInt>& values) {
    std::vector<std::pair<BigInt, std::uint64_t>> entries;
    entries.reserve(values.size());
    for (const auto& v : values) entries.emplace_back(v, 1);
    return FiniteMultiset(std::move(entries));
  }

  /// {first, ..., last}, each with multiplicity one.
  static FiniteMultiset interval(const BigInt& first, const BigInt& last) {
    std::vector<std::pair<BigInt, std::uint64_t>> entries;
    for (BigInt x = first; x <= last; ++x) entries.emplace_back(x, 1);
    return FiniteMultiset(std::move(entries));
  }

  [[nodiscard]] const std::vector<BigInt>& support() const { return support_; }
  [[nodiscard]] const std::vector<std::uint64_t>& multiplicities() const { return multiplicity_; }
  [[nodiscard]] std::uint64_t total() const { return total_; }
  [[nodiscard]] std::uint64_t multiplicity(const BigInt& x) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), x);
    if (it == support_.end() || *it != x) return 0;
    return multiplicity_[static_cast<std::size_t>(it - support_.begin())];
  }
  [[nodiscard]] bool empty() const { return support_.empty(); }

 private:
  std::vector<BigInt> support_;
  std::vector<std::uint64_t> multiplicity_;
  std::uint64_t total_ = 0;
};

/// {x : op(s, x) in A}: A - s for additive kinds, A / s for multiplicative.
inline LazySet quotient_set(const LazySet& a, const BigInt& s, const GroundStructure& g) {
  g.require_element(s);
  std::string descriptor =
      "(" + a.descriptor() + ")" + (g.is_additive() ? " - " : " / ") + to_dec(s);
  LazySet::Member member = [a, s, g](const BigInt& x) { return a.contains(g.op(s, x)); };
  LazySet::Enumerator enumerate;
  bool exact = a.enumerator_exact();
  if (a.enumerable() && !g.is_field()) {
    if (g.is_additive() && s >= 0) {
      enumerate = [a, s](const BigInt& bound) {
        std::vector<BigInt> out;
        for (const auto& m : a.enumerate_upto(bound + s)) {
          if (m - s >= 0) out.push_back(m - s);
        }
        return out;
      };
    } else if (!g.is_additive() && s >= 1) {
      enumerate = [a, s](const BigInt& bound) {
        std::vector<BigInt> out;
        for (const auto& m : a.enumerate_upto(bound * s)) {
          if (m % s == 0) out.push_back(m / s);
        }
        return out;
      };
    }
  }
  LazySet out(std::move(descriptor), std::move(member), std::move(enumerate), exact);
  if (a.domain() && !g.is_field()) {
    // Preimage of the window under x -> op(s, x), intersected with the integers.
    const auto& [lo, hi] = *a.domain();
    if (g.is_additive()) {
      out.with_domain(lo - s, hi - s);
    } else if (s >= 1) {
      BigInt qlo = lo <= 0 ? BigInt(0) : BigInt((lo + s - 1) / s);
      BigInt qhi = hi <= 0 ? BigInt(0) : BigInt((hi + s - 1) / s);
      out.with_domain(qlo, qhi);
    }
  }
  return out;
}

/// Sum of multiplicities of f in F with op(f, s) in A.
inline std::uint64_t multiset_translate_count(const FiniteMultiset& f, const LazySet& a, const BigInt& s,
                                              const GroundStructure& g) {
  std::uint64_t count = 0;
  const auto& support = f.support();
  const auto& mult = f.multiplicities();
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (a.contains(g.op(support[i], s))) count += mult[i];
  }
  return count;
}

/// Membership with values outside A's defined window counted as non-members.
inline bool contains_or_false(const LazySet& a, const BigInt& x) {
  if (a.domain() && (x < a.domain()->first || x >= a.domain()->second)) return false;
  return a.contains(x);
}

/// Sorted members of A in [lo, hi]: from the exact enumerator when there is
/// one, otherwise by scanning at most 2^26 candidates.
inline std::vector<BigInt> members_between(const LazySet& a, const BigInt& lo, const BigInt& hi) {
  std::vector<BigInt> out;
  if (hi < lo) return out;
  if (a.enumerator_exact() && lo >= 0) {
    for (auto& m : a.enumerate_upto(hi)) {
      if (m >= lo) out.push_back(std::move(m));
    }
    return out;
  }
  BigInt from = lo, to = hi;
  if (a.domain()) {
    from = std::max(from, a.domain()->first);
    to = std::min(to, BigInt(a.domain()->second - 1));
  }
  if (to - from + 1 > kMaxWindowSize)
    throw CapacityError("scan of " + a.descriptor() + " over more than 2^26 values; set needs an exact enumerator");
  for (BigInt x = from; x <= to; ++x) {
    if (a.contains(x)) out.push_back(x);
  }
  return out;
}

/// Exact bitmap of A on [lo, hi), using the enumerator when it is exact.
inline IntegerWindowSet materialize(const LazySet& a, const BigInt& lo, const BigInt& hi) {
  if (a.enumerator_exact() && lo >= 0) {
    IntegerWindowSet w(lo, hi);
    if (hi > lo) {
      for (const auto& m : a.enumerate_upto(hi - 1)) {
        if (m >= lo) w.set_offset((m - lo).convert_to<std::uint64_t>());
      }
    }
    return w;
  }
  return IntegerWindowSet::from_predicate(lo, hi, [&a](const BigInt& x) { return a.contains(x); });
}

}  // namespace ramsey
