#pragma once

// Exact generators for the explicit sets: a thick set with no {kx, ky, kxy},
// divisible block unions, finitely generated multiplicative semigroups,
// level sets of polynomials of Omega / nu_p / log, Dirichlet avoiders, the
// mixed residue/finite-sums set, and the row-product alpha selection that
// destroys 3-term progressions.

#include "arithfun.hpp"
#include "certificate.hpp"
#include "groundset.hpp"
#include "numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ramsey {

// ---------------------------------------------------------------------------
// Exponent expressions

inline constexpr std::uint64_t kMaxMaterializedBits = std::uint64_t{1} << 24U;

/// base^exponent + offset with base >= 2, exponent >= 0, offset >= 0.
struct ExpExpr {
  BigInt base = 2;
  BigInt exponent = 0;
  BigInt offset = 0;

  /// Bounds on log2(value) from exponent arithmetic alone.
  [[nodiscard]] std::pair<Real, Real> log2_bounds() const {
    Real lb = log2(Real(base));
    Real main = Real(exponent) * lb;
    if (offset == 0) return {main, main};
    Real off = log2(Real(offset));
    Real hi = std::max(main, off) + 1;  // log2(u + v) <= max(log2 u, log2 v) + 1
    return {std::max(main, off), hi};
  }

  [[nodiscard]] std::uint64_t bit_length_upper() const {
    return static_cast<std::uint64_t>(floor(log2_bounds().second).convert_to<long double>()) + 2;
  }

  [[nodiscard]] BigInt materialize() const {
    if (bit_length_upper() > kMaxMaterializedBits) throw CapacityError("exponent expression above 2^24 bits");
    return pow_big(base, to_u64(exponent)) + offset;
  }

  [[nodiscard]] std::string str() const {
    std::string s = to_dec(base) + "^" + to_dec(exponent);
    if (offset != 0) s += "+" + to_dec(offset);
    return s;
  }
};

/// Strict comparison x < y decided on log2 bounds when they separate,
/// otherwise by materializing both sides.
inline bool exp_less(const ExpExpr& x, const ExpExpr& y, bool* symbolic = nullptr) {
  auto [xl, xh] = x.log2_bounds();
  auto [yl, yh] = y.log2_bounds();
  if (xh < yl) {
    if (symbolic) *symbolic = true;
    return true;
  }
  if (yh <= xl && !(yh == xl && xh == yl)) {
    if (symbolic) *symbolic = true;
    return false;
  }
  if (x.base == y.base && x.exponent == y.exponent) {
    if (symbolic) *symbolic = true;
    return x.offset < y.offset;
  }
  if (symbolic) *symbolic = false;
  return x.materialize() < y.materialize();
}

// ---------------------------------------------------------------------------
// Thick set without {kx, ky, kxy}

struct GrowthCheck {
  std::uint64_t n = 0;
  bool half_y_below_x = false;       // y_n / 2 < x_n
  bool prev_y_squared_below_x = false;  // y_{n-1}^2 < x_n
  bool x_below_y = false;            // x_n < y_n
  bool symbolic = true;
};

/// Blocks [x_n, x_n + n] with x_n = 4^{4^n}, n = 1..i_max.
class ThickNoKxy {
 public:
  explicit ThickNoKxy(std::uint64_t i_max) : i_max_(i_max) {
    if (i_max == 0 || i_max > 6) throw std::invalid_argument("thick_no_kxy supports 1 <= i_max <= 6");
    for (std::uint64_t n = 1; n <= i_max; ++n) {
      ExpExpr x{4, pow_big(4, n), 0};
      x_.push_back(x);
      x_value_.push_back(x.materialize());
    }
  }

  [[nodiscard]] std::uint64_t i_max() const { return i_max_; }
  [[nodiscard]] ExpExpr x_expr(std::uint64_t n) const { return x_.at(n - 1); }
  [[nodiscard]] ExpExpr y_expr(std::uint64_t n) const {
    ExpExpr y = x_.at(n - 1);
    y.offset = n;
    return y;
  }
  [[nodiscard]] const BigInt& x(std::uint64_t n) const { return x_value_.at(n - 1); }
  [[nodiscard]] BigInt y(std::uint64_t n) const { return x(n) + n; }

  [[nodiscard]] bool contains(const BigInt& q) const {
    for (std::uint64_t n = 1; n <= i_max_; ++n) {
      const BigInt& xn = x_value_[n - 1];
      if (q < xn) return false;
      if (q <= xn + n) return true;
    }
    return false;
  }

  [[nodiscard]] std::vector<BigInt> enumerate_upto(const BigInt& bound) const {
    std::vector<BigInt> out;
    for (std::uint64_t n = 1; n <= i_max_; ++n) {
      for (std::uint64_t j = 0; j <= n; ++j) {
        BigInt v = x_value_[n - 1] + j;
        if (v > bound) return out;
        out.push_back(std::move(v));
      }
    }
    return out;
  }

  [[nodiscard]] std::vector<BigInt> elements() const { return enumerate_upto(y(i_max_)); }

  /// max(y_n / 2, y_{n-1}^2) < x_n < y_n on exponent expressions.
  [[nodiscard]] std::vector<GrowthCheck> growth_checks() const {
    std::vector<GrowthCheck> out;
    for (std::uint64_t n = 1; n <= i_max_; ++n) {
      GrowthCheck c;
      c.n = n;
      ExpExpr xn = x_expr(n), yn = y_expr(n);
      bool sym = true;
      c.x_below_y = exp_less(xn, yn, &sym);
      c.symbolic = c.symbolic && sym;
      // y_n / 2 < x_n  <=>  offset n < x_n.
      c.half_y_below_x = exp_less(ExpExpr{2, 0, BigInt(n) - 1}, xn, &sym);
      c.symbolic = c.symbolic && sym;
      if (n == 1) {
        c.prev_y_squared_below_x = true;  // y_0 is undefined; the condition is vacuous
      } else {
        ExpExpr prev = y_expr(n - 1);
        // log2(y^2) = 2 log2(y).
        if (2 * prev.log2_bounds().second < xn.log2_bounds().first) {
          c.prev_y_squared_below_x = true;
        } else {
          c.symbolic = false;
          BigInt yv = prev.materialize();
          c.prev_y_squared_below_x = yv * yv < xn.materialize();
        }
      }
      out.push_back(c);
    }
    return out;
  }

 private:
  std::uint64_t i_max_;
  std::vector<ExpExpr> x_;
  std::vector<BigInt> x_value_;
};

struct KxyPattern {
  BigInt k, x, y;
};

/// All (k, x, y) with x, y >= 2 and {kx, ky, kxy} inside the given sorted
/// element list. Scans triples (u, v, w) = (kx, ky, kxy): k = uv / w must
/// divide both u and v, which is the divisor condition without factoring.
inline std::vector<KxyPattern> kxy_scan(const std::vector<BigInt>& elements) {
  std::vector<KxyPattern> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i; j < elements.size(); ++j) {
      BigInt uv = elements[i] * elements[j];
      for (const auto& w : elements) {
        if (uv % w != 0) continue;
        BigInt k = uv / w;
        if (elements[i] % k != 0 || elements[j] % k != 0) continue;
        BigInt x = elements[i] / k, y = elements[j] / k;
        if (x >= 2 && y >= 2) out.push_back({k, x, y});
      }
    }
  }
  return out;
}

inline LazySet thick_no_kxy(std::uint64_t i_max) {
  auto t = std::make_shared<const ThickNoKxy>(i_max);
  LazySet s(
      "thick_no_kxy(i_max=" + std::to_string(i_max) + ")", [t](const BigInt& q) { return t->contains(q); },
      [t](const BigInt& bound) { return t->enumerate_upto(bound); }, true);
  s.with_spec({{"kind", "lazy"}, {"descriptor", "thick_no_kxy"}, {"params", {{"i_max", std::to_string(i_max)}}}});
  return s;
}

// ---------------------------------------------------------------------------
// Divisible unions

struct DivisibleUnionSpec {
  std::vector<BigInt> d;                     // d_1..d_imax
  std::vector<std::vector<BigInt>> blocks;   // A_1..A_imax

  /// d_i = 2^{2^i}, A_i = {1..i}.
  static DivisibleUnionSpec standard(std::uint64_t i_max) {
    DivisibleUnionSpec s;
    for (std::uint64_t i = 1; i <= i_max; ++i) {
      s.d.push_back(pow_big(2, to_u64(pow_big(2, i))));
      std::vector<BigInt> block;
      for (std::uint64_t j = 1; j <= i; ++j) block.emplace_back(j);
      s.blocks.push_back(std::move(block));
    }
    return s;
  }

  /// d_i = i!, A_i = {1}.
  static DivisibleUnionSpec factorial_singletons(std::uint64_t i_max) {
    DivisibleUnionSpec s;
    BigInt f = 1;
    for (std::uint64_t i = 1; i <= i_max; ++i) {
      f *= i;
      s.d.push_back(f);
      s.blocks.push_back({BigInt(1)});
    }
    return s;
  }
};

struct DivisibleUnionReport {
  bool growth_increasing = false;            // d_{i+1} - max(prefix) - d_i max A_i strictly increasing
  std::vector<BigInt> growth_terms;
  bool divisibility_chain = false;           // d_i | d_j for i <= j
  std::vector<BigInt> block_gaps;            // min B_{i+1} - max B_i
  bool block_gaps_increasing = false;
  std::uint64_t max_difference_multiplicity = 0;  // over positive differences a - b

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"growth_increasing", growth_increasing},
            {"growth_terms", wire::big_array(growth_terms)},
            {"divisibility_chain", divisibility_chain},
            {"block_gaps", wire::big_array(block_gaps)},
            {"block_gaps_increasing", block_gaps_increasing},
            {"max_difference_multiplicity", max_difference_multiplicity}};
  }
};

class DivisibleUnion {
 public:
  explicit DivisibleUnion(DivisibleUnionSpec spec) : spec_(std::move(spec)) {
    if (spec_.d.size() != spec_.blocks.size() || spec_.d.empty())
      throw std::invalid_argument("divisible union needs matching non-empty d and A sequences");
    for (std::size_t i = 0; i < spec_.d.size(); ++i) {
      if (spec_.d[i] < 1) throw std::invalid_argument("d_i must be positive");
      if (spec_.blocks[i].empty()) throw std::invalid_argument("A_i must be non-empty");
      std::sort(spec_.blocks[i].begin(), spec_.blocks[i].end());
      for (const auto& a : spec_.blocks[i]) {
        if (a < 1) throw std::invalid_argument("A_i must contain positive integers");
        elements_.push_back(spec_.d[i] * a);
      }
    }
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  [[nodiscard]] const std::vector<BigInt>& elements() const { return elements_; }
  [[nodiscard]] const DivisibleUnionSpec& spec() const { return spec_; }

  [[nodiscard]] bool contains(const BigInt& x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  [[nodiscard]] std::vector<BigInt> enumerate_upto(const BigInt& bound) const {
    auto end = std::upper_bound(elements_.begin(), elements_.end(), bound);
    return {elements_.begin(), end};
  }

  [[nodiscard]] DivisibleUnionReport report() const {
    DivisibleUnionReport r;
    const auto& d = spec_.d;
    const auto& a = spec_.blocks;
    const std::size_t m = d.size();
    BigInt prefix_max = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      prefix_max = std::max(prefix_max, BigInt(d[i] * a[i].back()));
      r.growth_terms.push_back(d[i + 1] - prefix_max - d[i] * a[i].back());
    }
    r.growth_increasing = true;
    for (std::size_t i = 0; i + 1 < r.growth_terms.size(); ++i) {
      if (!(r.growth_terms[i] < r.growth_terms[i + 1])) r.growth_increasing = false;
    }
    r.divisibility_chain = true;
    for (std::size_t i = 0; i < m && r.divisibility_chain; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        if (d[j] % d[i] != 0) {
          r.divisibility_chain = false;
          break;
        }
      }
    }
    for (std::size_t i = 0; i + 1 < m; ++i) r.block_gaps.push_back(d[i + 1] * a[i + 1].front() - d[i] * a[i].back());
    r.block_gaps_increasing = true;
    for (std::size_t i = 0; i + 1 < r.block_gaps.size(); ++i) {
      if (!(r.block_gaps[i] < r.block_gaps[i + 1])) r.block_gaps_increasing = false;
    }
    std::map<BigInt, std::uint64_t> diffs;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) ++diffs[elements_[i] - elements_[j]];
    }
    for (const auto& [v, c] : diffs) r.max_difference_multiplicity = std::max(r.max_difference_multiplicity, c);
    return r;
  }

 private:
  DivisibleUnionSpec spec_;
  std::vector<BigInt> elements_;
};

inline LazySet divisible_union(const DivisibleUnionSpec& spec, std::string descriptor = "divisible_union") {
  auto u = std::make_shared<const DivisibleUnion>(spec);
  return LazySet(
      std::move(descriptor), [u](const BigInt& x) { return u->contains(x); },
      [u](const BigInt& bound) { return u->enumerate_upto(bound); }, true);
}

// ---------------------------------------------------------------------------
// Finitely generated multiplicative semigroups

class FgMultSemigroup {
 public:
  FgMultSemigroup(std::vector<BigInt> generators, BigInt bound) : gens_(std::move(generators)), bound_(std::move(bound)) {
    if (gens_.empty()) throw std::invalid_argument("semigroup needs generators");
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    for (const auto& g : gens_) {
      if (g < 2) throw std::invalid_argument("generators must be >= 2");
    }
  }

  [[nodiscard]] const std::vector<BigInt>& generators() const { return gens_; }
  [[nodiscard]] const BigInt& bound() const { return bound_; }

  /// x = prod g_i^{e_i} with some e_i > 0 and x <= bound.
  [[nodiscard]] bool contains(const BigInt& x) const {
    if (x < 2 || x > bound_) return false;
    std::set<BigInt> seen;
    std::vector<BigInt> stack{x};
    while (!stack.empty()) {
      BigInt v = stack.back();
      stack.pop_back();
      if (v == 1) return true;
      if (!seen.insert(v).second) continue;
      for (const auto& g : gens_) {
        if (v % g == 0) stack.push_back(v / g);
      }
    }
    return false;
  }

  /// Members <= min(bound, limit) in increasing order via a min-heap.
  [[nodiscard]] std::vector<BigInt> enumerate_upto(const BigInt& limit) const {
    BigInt top = std::min(limit, bound_);
    std::vector<BigInt> out;
    std::priority_queue<BigInt, std::vector<BigInt>, std::greater<>> heap;
    std::set<BigInt> queued;
    for (const auto& g : gens_) {
      if (g <= top && queued.insert(g).second) heap.push(g);
    }
    while (!heap.empty()) {
      BigInt v = heap.top();
      heap.pop();
      out.push_back(v);
      for (const auto& g : gens_) {
        BigInt w = v * g;
        if (w <= top && queued.insert(w).second) heap.push(w);
      }
    }
    return out;
  }

 private:
  std::vector<BigInt> gens_;
  BigInt bound_;
};

inline LazySet fg_mult_semigroup(const std::vector<BigInt>& generators, const BigInt& bound) {
  auto s = std::make_shared<const FgMultSemigroup>(generators, bound);
  std::string desc = "fg_semigroup<";
  for (std::size_t i = 0; i < s->generators().size(); ++i) desc += (i ? "," : "") + to_dec(s->generators()[i]);
  desc += ">, <=" + to_dec(bound);
  return LazySet(
      desc, [s](const BigInt& x) { return s->contains(x); },
      [s](const BigInt& limit) { return s->enumerate_upto(limit); }, true);
}

// ---------------------------------------------------------------------------
// Alpha selection against 3-term progressions

using Matrix = std::vector<std::vector<BigInt>>;

struct ApTriple {
  std::size_t i, j, k;  // positions with v_i < v_j < v_k and v_i + v_k = 2 v_j
  friend bool operator<(const ApTriple& a, const ApTriple& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  }
  friend bool operator==(const ApTriple& a, const ApTriple& b) { return a.i == b.i && a.j == b.j && a.k == b.k; }
};

/// Lexicographically least position triple carrying a non-constant 3-AP.
inline std::optional<ApTriple> least_ap_triple(const std::vector<BigInt>& row) {
  const std::size_t n = row.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !(row[i] < row[j])) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j || !(row[j] < row[k])) continue;
        if (row[i] + row[k] == 2 * row[j]) return ApTriple{i, j, k};
      }
    }
  }
  return std::nullopt;
}

struct AlphaSelection {
  std::uint64_t alpha = 0;
  std::vector<BigInt> row;
  std::size_t rounds = 0;
};

/// Iterated pigeonhole: while every current row carries a 3-AP, keep the rows
/// sharing the most common least triple, pair row t with row t + r' and
/// multiply them entrywise. Returns the first AP-free row's index set.
inline SearchResult<No3APCertificate> alpha_no_3ap(const Matrix& m) {
  if (m.empty()) throw std::invalid_argument("matrix has no rows");
  if (m.size() > 64) throw CapacityError("alpha selection supports r <= 64");
  const std::size_t cols = m.front().size();
  if (cols > 8) throw CapacityError("alpha selection supports n <= 8");
  for (const auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
    for (const auto& x : row) {
      if (x < 1) throw std::invalid_argument("entries must be >= 1");
    }
  }
  struct Row {
    std::uint64_t alpha;
    std::vector<BigInt> values;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < m.size(); ++i) rows.push_back({std::uint64_t{1} << i, m[i]});
  SearchResult<No3APCertificate> out;
  for (std::size_t round = 0;; ++round) {
    std::vector<ApTriple> triples;
    for (const auto& r : rows) {
      auto t = least_ap_triple(r.values);
      if (!t) {
        out.witness = No3APCertificate{m, r.alpha, r.values};
        out.note = "rounds=" + std::to_string(round);
        return out;
      }
      triples.push_back(*t);
    }
    std::map<ApTriple, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < rows.size(); ++i) groups[triples[i]].push_back(i);
    const std::vector<std::size_t>* best = nullptr;
    for (const auto& [t, idx] : groups) {
      if (!best || idx.size() > best->size()) best = &idx;
    }
    const std::size_t half = best->size() / 2;
    if (half == 0) {
      out.note = "rows exhausted after " + std::to_string(round) + " rounds";
      return out;
    }
    std::vector<Row> next;
    for (std::size_t t = 0; t < half; ++t) {
      const Row& a = rows[(*best)[t]];
      const Row& b = rows[(*best)[t + half]];
      Row c{a.alpha | b.alpha, a.values};
      for (std::size_t j = 0; j < cols; ++j) c.values[j] *= b.values[j];
      next.push_back(std::move(c));
    }
    rows = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Level sets

enum class HomKind { Omega, Nu, Log };

struct Homomorphism {
  HomKind kind = HomKind::Omega;
  std::uint64_t p = 2;  // for Nu

  [[nodiscard]] std::string str() const {
    switch (kind) {
      case HomKind::Omega: return "Omega";
      case HomKind::Nu: return "nu_" + std::to_string(p);
      case HomKind::Log: return "log";
    }
    return "?";
  }
};

/// {n >= 1 : {p(hom(n))} in I}. Membership near an endpoint of I (within
/// 2^-64, for inexact values) throws BoundaryAmbiguity.
class LevelSet {
 public:
  static constexpr unsigned kCachedValues = 256;

  LevelSet(Polynomial p, Homomorphism hom, UnitInterval interval)
      : p_(std::move(p)), hom_(hom), interval_(std::move(interval)) {
    if (p_.degree() < 1) throw std::invalid_argument("level set polynomial must be non-constant");
    if (hom_.kind == HomKind::Nu && hom_.p < 2) throw std::invalid_argument("nu_p needs p >= 2");
    if (hom_.kind != HomKind::Log) {
      for (unsigned h = 0; h < kCachedValues; ++h) {
        try {
          cache_.push_back(interval_.contains(frac(p_(Scalar(static_cast<std::int64_t>(h))))) ? 1 : 0);
        } catch (const BoundaryAmbiguity&) {
          cache_.push_back(-1);
        }
      }
    }
  }

  [[nodiscard]] std::string descriptor() const {
    return "{n : {" + p_.str() + " at " + hom_.str() + "(n)} in " + interval_.str() + "}";
  }

  [[nodiscard]] bool member_for_value(std::uint64_t h) const {
    if (h < cache_.size()) {
      if (cache_[h] < 0) throw BoundaryAmbiguity("level set: value " + std::to_string(h) + " lies on the 2^-64 band");
      return cache_[h] == 1;
    }
    return interval_.contains(frac(p_(Scalar(static_cast<std::int64_t>(h)))));
  }

  [[nodiscard]] bool contains(const BigInt& n) const {
    if (n < 1) return false;
    switch (hom_.kind) {
      case HomKind::Omega: return member_for_value(big_omega(n));
      case HomKind::Nu: return member_for_value(nu_p(n, hom_.p));
      case HomKind::Log: {
        Scalar v = n == 1 ? Scalar(0) : Scalar::irrational(log(Real(n)));
        return interval_.contains(frac(p_(v)));
      }
    }
    return false;
  }

  [[nodiscard]] std::vector<BigInt> enumerate_upto(const BigInt& bound) const {
    std::vector<BigInt> out;
    if (bound < 1) return out;
    if (bound > kMaxSieveLimit) throw CapacityError("level set enumeration above 2^26");
    const std::uint64_t top = bound.convert_to<std::uint64_t>();
    if (hom_.kind == HomKind::Omega) {
      auto omega = shared_sieve(top)->omega_table(top);
      for (std::uint64_t n = 1; n <= top; ++n) {
        if (member_for_value(omega[n])) out.emplace_back(n);
      }
      return out;
    }
    for (std::uint64_t n = 1; n <= top; ++n) {
      if (contains(BigInt(n))) out.emplace_back(n);
    }
    return out;
  }

  [[nodiscard]] const Polynomial& polynomial() const { return p_; }
  [[nodiscard]] const Homomorphism& hom() const { return hom_; }
  [[nodiscard]] const UnitInterval& interval() const { return interval_; }

 private:
  Polynomial p_;
  Homomorphism hom_;
  UnitInterval interval_;
  std::vector<int> cache_;
};

inline LazySet level_set(const Polynomial& p, Homomorphism hom, const UnitInterval& interval) {
  auto s = std::make_shared<const LevelSet>(p, hom, interval);
  return LazySet(
      s->descriptor(), [s](const BigInt& n) { return s->contains(n); },
      [s](const BigInt& bound) { return s->enumerate_upto(bound); }, true);
}

// ---------------------------------------------------------------------------
// Dirichlet avoider

/// {n >= 1 : ||n x|| > eps / 2}.
inline LazySet dirichlet_avoider(const Scalar& x, const Scalar& eps) {
  if (!(eps.approx > 0 && eps.approx < 1)) throw std::invalid_argument("eps must lie in (0,1)");
  Scalar half_eps = eps * Scalar::rational(BigRational(1, 2));
  auto member = [x, half_eps](const BigInt& n) {
    if (n < 1) return false;
    Scalar t = frac(scalar_of(n) * x);
    Scalar dist = t.exact ? (*t.exact <= BigRational(1, 2) ? t : Scalar(1) - t)
                          : Scalar::irrational(std::min(t.approx, Real(1 - t.approx)));
    return compare_checked(dist, half_eps) > 0;
  };
  auto enumerate = [member](const BigInt& bound) {
    if (bound > kMaxSieveLimit) throw CapacityError("avoider enumeration above 2^26");
    std::vector<BigInt> out;
    for (BigInt n = 1; n <= bound; ++n) {
      if (member(n)) out.push_back(n);
    }
    return out;
  };
  return LazySet("{n : ||n*" + x.str() + "|| > " + eps.str() + "/2}", member, enumerate, true);
}

// ---------------------------------------------------------------------------
// Mixed residue / finite-sums set

/// (4N - 2) union FS(2^{2^i} : 1 <= i <= i_max).
inline LazySet intro_mixed_set(std::uint64_t i_max = 12) {
  if (i_max == 0 || i_max > 20) throw std::invalid_argument("intro set supports 1 <= i_max <= 20");
  std::vector<std::uint64_t> positions;
  for (std::uint64_t i = 1; i <= i_max; ++i) positions.push_back(std::uint64_t{1} << i);
  auto in_fs = [positions](const BigInt& n) {
    if (n < 1) return false;
    BigInt rest = n;
    for (auto pos : positions) {
      if (boost::multiprecision::bit_test(rest, pos)) boost::multiprecision::bit_unset(rest, pos);
    }
    return rest == 0;
  };
  auto member = [in_fs](const BigInt& n) { return n >= 1 && (n % 4 == 2 || in_fs(n)); };
  auto enumerate = [positions](const BigInt& bound) {
    if (bound > (BigInt(1) << 28U)) throw CapacityError("intro set enumeration above 2^28");
    std::vector<BigInt> out;
    for (BigInt n = 2; n <= bound; n += 4) out.push_back(n);
    const std::size_t k = positions.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      BigInt v = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if ((mask >> i) & 1U) boost::multiprecision::bit_set(v, positions[i]);
      }
      if (v <= bound) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return LazySet("(4N-2) u FS(2^2^i, i<=" + std::to_string(i_max) + ")", member, enumerate, true);
}

// ---------------------------------------------------------------------------
// Residue classes

/// {x >= min_value : x mod modulus in residues}.
inline LazySet residue_set(const BigInt& modulus, std::vector<BigInt> residues, const BigInt& min_value = 0) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  for (auto& r : residues) {
    r %= modulus;
    if (r < 0) r += modulus;
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  std::string desc = "{x >= " + to_dec(min_value) + " : x mod " + to_dec(modulus) + " in {";
  for (std::size_t i = 0; i < residues.size(); ++i) desc += (i ? "," : "") + to_dec(residues[i]);
  desc += "}}";
  auto member = [modulus, residues, min_value](const BigInt& x) {
    if (x < min_value) return false;
    BigInt r = x % modulus;
    if (r < 0) r += modulus;
    return std::binary_search(residues.begin(), residues.end(), r);
  };
  auto enumerate = [modulus, residues, min_value, member](const BigInt& bound) {
    std::vector<BigInt> out;
    BigInt start = std::max(min_value, BigInt(0));
    if (bound - start > (BigInt(1) << 28U)) throw CapacityError("residue enumeration above 2^28 values");
    BigInt base = start - start % modulus;
    for (BigInt b = base; b <= bound; b += modulus) {
      for (const auto& r : residues) {
        BigInt v = b + r;
        if (v >= start && v <= bound) out.push_back(v);
      }
    }
    return out;
  };
  return LazySet(desc, member, enumerate, true);
}

/// Squarefree positive integers.
inline LazySet squarefree_set() {
  auto member = [](const BigInt& x) {
    if (x < 1) return false;
    if (x <= kMaxSieveLimit) {
      auto sieve = shared_sieve(std::max<std::uint64_t>(x.convert_to<std::uint64_t>(), 1U << 20U));
      std::uint64_t n = x.convert_to<std::uint64_t>();
      std::uint64_t prev = 0;
      while (n > 1) {
        std::uint64_t p = sieve->spf(n);
        if (p == prev) return false;
        prev = p;
        n /= p;
      }
      return true;
    }
    for (BigInt p = 2; p * p <= x; ++p) {
      if (x % (p * p) == 0) return false;
      if (p > 1000000) throw RangeError("squarefree test beyond trial-division range");
    }
    return true;
  };
  auto enumerate = [](const BigInt& bound) {
    std::vector<BigInt> out;
    if (bound < 1) return out;
    if (bound > kMaxSieveLimit) throw CapacityError("squarefree enumeration above 2^26");
    std::uint64_t top = bound.convert_to<std::uint64_t>();
    std::vector<bool> bad(top + 1, false);
    for (std::uint64_t p = 2; p * p <= top; ++p) {
      for (std::uint64_t q = p * p; q <= top; q += p * p) bad[q] = true;
    }
    for (std::uint64_t n = 1; n <= top; ++n) {
      if (!bad[n]) out.emplace_back(n);
    }
    return out;
  };
  return LazySet("squarefree", member, enumerate, true);
}

/// Explicit finite set.
inline LazySet finite_set(std::vector<BigInt> values, std::string descriptor = "finite") {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  auto shared = std::make_shared<const std::vector<BigInt>>(std::move(values));
  return LazySet(
      std::move(descriptor),
      [shared](const BigInt& x) { return std::binary_search(shared->begin(), shared->end(), x); },
      [shared](const BigInt& bound) {
        std::vector<BigInt> out;
        for (const auto& v : *shared) {
          if (v > bound) break;
          if (v >= 0) out.push_back(v);
        }
        return out;
      },
      true);
}

}  // namespace ramsey
