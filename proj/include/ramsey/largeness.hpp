#pragma once

// Finite-horizon certifiers and refuters for syndetic, thick, piecewise
// syndetic, IP_r and combinatorially rich sets.

#include "certificate.hpp"
#include "groundset.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ramsey {

inline constexpr std::size_t kMaxIpRank = 20;

// ---------------------------------------------------------------------------
// Syndeticity

struct SyndeticOutcome {
  std::optional<SyndeticCertificate> certificate;
  std::optional<BigInt> first_failure;
};

namespace detail {

// Membership oracle for A on [lo, hi], backed by a bitmap when the span is
// small enough to materialize.
class RangeOracle {
 public:
  RangeOracle(const LazySet& a, const BigInt& lo, const BigInt& hi) : a_(a) {
    bool can_enumerate = a.enumerator_exact() && lo >= 0;
    bool in_domain = a.domain() && lo >= a.domain()->first && hi < a.domain()->second;
    if (hi >= lo && hi - lo < kMaxWindowSize && (can_enumerate || in_domain)) {
      window_ = materialize(a, lo, hi + 1);
    }
  }

  [[nodiscard]] bool operator()(const BigInt& x) const {
    if (window_ && window_->in_window(x)) return window_->contains(x);
    return contains_or_false(a_, x);
  }

 private:
  const LazySet& a_;
  std::optional<IntegerWindowSet> window_;
};

}  // namespace detail

/// Checks that every n in [range_lo, horizon] has some f in F with
/// op(f, n) in A; otherwise reports the least failing n.
inline SyndeticOutcome check_syndetic(const LazySet& a, const std::vector<BigInt>& f, const BigInt& horizon,
                                      const GroundStructure& g, const BigInt& range_lo = 1) {
  if (f.empty()) throw std::invalid_argument("check_syndetic needs a non-empty F");
  if (horizon - range_lo + 1 > kMaxWindowSize) throw CapacityError("syndetic horizon wider than 2^26");
  for (const auto& x : f) g.require_element(x);
  BigInt lo = g.op(f.front(), range_lo), hi = lo;
  for (const auto& x : f) {
    for (const auto& n : {range_lo, horizon}) {
      BigInt v = g.op(x, n);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  detail::RangeOracle in_a(a, lo, hi);
  SyndeticOutcome out;
  for (BigInt n = range_lo; n <= horizon; ++n) {
    bool covered = std::any_of(f.begin(), f.end(), [&](const BigInt& x) { return in_a(g.op(x, n)); });
    if (!covered) {
      out.first_failure = n;
      return out;
    }
  }
  out.certificate = SyndeticCertificate{f, range_lo, horizon, g.kind()};
  return out;
}

// ---------------------------------------------------------------------------
// Thickness

struct ThickProfile {
  BigInt lo = 1;
  BigInt horizon = 0;
  std::vector<std::pair<BigInt, BigInt>> runs;  // (start, length), sorted, maximal

  [[nodiscard]] BigInt longest() const {
    BigInt best = 0;
    for (const auto& r : runs) best = std::max(best, r.second);
    return best;
  }

  /// Longest run lying entirely in [lo, n].
  [[nodiscard]] BigInt longest_upto(const BigInt& n) const {
    BigInt best = 0;
    for (const auto& [start, len] : runs) {
      if (start > n) break;
      best = std::max(best, std::min(len, BigInt(n - start + 1)));
    }
    return best;
  }

  [[nodiscard]] std::optional<ThickRunCertificate> longest_run_certificate() const {
    const std::pair<BigInt, BigInt>* best = nullptr;
    for (const auto& r : runs) {
      if (!best || r.second > best->second) best = &r;
    }
    if (!best) return std::nullopt;
    return ThickRunCertificate{best->first, best->second};
  }
};

inline ThickProfile runs_of_sorted(const std::vector<BigInt>& members, const BigInt& lo, const BigInt& horizon) {
  ThickProfile p;
  p.lo = lo;
  p.horizon = horizon;
  for (const auto& m : members) {
    if (m < lo || m > horizon) continue;
    if (!p.runs.empty() && p.runs.back().first + p.runs.back().second == m) {
      p.runs.back().second += 1;
    } else if (p.runs.empty() || p.runs.back().first + p.runs.back().second < m) {
      p.runs.emplace_back(m, 1);
    }
  }
  return p;
}

/// All maximal runs of consecutive members of A in [lo, horizon].
inline ThickProfile thick_profile(const LazySet& a, const BigInt& horizon, const BigInt& lo = 1) {
  return runs_of_sorted(members_between(a, lo, horizon), lo, horizon);
}

/// Least x <= bound with op(f, x) in A for every f in F, or absent.
///
/// Any witness satisfies op(min F, x) in A, so candidates come from the
/// members of A when A has an exact enumerator.
inline SearchResult<TranslateCertificate> mult_thick_witness(const LazySet& a, std::vector<BigInt> f,
                                                             const BigInt& bound,
                                                             const GroundStructure& g =
                                                                 GroundStructure::naturals_multiplicative()) {
  SearchResult<TranslateCertificate> out;
  if (f.empty()) {
    out.witness = TranslateCertificate{f, g.is_additive() ? BigInt(0) : BigInt(1), g.kind()};
    return out;
  }
  std::sort(f.begin(), f.end());
  for (const auto& x : f) g.require_element(x);
  const BigInt x_min = g.is_additive() ? BigInt(0) : BigInt(1);
  auto fits = [&](const BigInt& x) {
    return std::all_of(f.begin(), f.end(), [&](const BigInt& y) { return contains_or_false(a, g.op(y, x)); });
  };
  if (a.enumerator_exact() && !g.is_field() && f.front() >= (g.is_additive() ? 0 : 1)) {
    const BigInt& f0 = f.front();
    BigInt top = g.op(f0, bound);
    for (const auto& m : a.enumerate_upto(top)) {
      BigInt x;
      if (g.is_additive()) {
        x = m - f0;
      } else {
        if (m % f0 != 0) continue;
        x = m / f0;
      }
      if (x < x_min || x > bound) continue;
      if (fits(x)) {
        out.witness = TranslateCertificate{f, x, g.kind()};
        return out;
      }
    }
    out.note = "no witness <= " + to_dec(bound);
    return out;
  }
  if (bound - x_min + 1 > kMaxWindowSize) throw CapacityError("witness scan wider than 2^26 without an enumerator");
  for (BigInt x = x_min; x <= bound; ++x) {
    if (fits(x)) {
      out.witness = TranslateCertificate{f, x, g.kind()};
      return out;
    }
  }
  out.note = "no witness <= " + to_dec(bound);
  return out;
}

/// Run profile of B = union over f in F of quotient_set(A, f).
inline ThickProfile check_piecewise_syndetic(const LazySet& a, const std::vector<BigInt>& f, const BigInt& horizon,
                                             const GroundStructure& g, const BigInt& lo = 1) {
  if (f.empty()) throw std::invalid_argument("piecewise syndetic check needs a non-empty F");
  std::vector<BigInt> all;
  for (const auto& x : f) {
    auto part = members_between(quotient_set(a, x, g), lo, horizon);
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return runs_of_sorted(all, lo, horizon);
}

// ---------------------------------------------------------------------------
// IP_r search

namespace detail {

// Depth-first search for strictly increasing generators (as candidate
// indices) whose finite sums/products all satisfy `in`. fs[mask] holds
// s_alpha for the generators placed so far.
template <class V, class In, class Op>
bool ip_extend(const std::vector<V>& cands, std::size_t r, const In& in, const Op& op, Budget& budget,
               std::vector<std::size_t>& chosen, std::vector<V>& fs) {
  std::size_t k = chosen.size();
  if (k == r) return true;
  std::size_t first = k == 0 ? 0 : chosen.back() + 1;
  const std::uint64_t half = std::uint64_t{1} << k;
  for (std::size_t ci = first; ci + (r - k) <= cands.size(); ++ci) {
    if (!budget.spend(half)) return false;
    const V& c = cands[ci];
    bool ok = true;
    fs[half] = c;
    if (!in(c)) continue;
    for (std::uint64_t m = 1; m < half; ++m) {
      std::optional<V> v = op(fs[m], c);
      if (!v || !in(*v)) {
        ok = false;
        break;
      }
      fs[half | m] = *v;
    }
    if (!ok) continue;
    chosen.push_back(ci);
    if (ip_extend(cands, r, in, op, budget, chosen, fs)) return true;
    chosen.pop_back();
    if (budget.exhausted()) return false;
  }
  return false;
}

template <class V, class In, class Op>
std::optional<std::vector<std::size_t>> ip_search(const std::vector<V>& cands, std::size_t r, const In& in,
                                                  const Op& op, Budget& budget) {
  std::vector<std::size_t> chosen;
  std::vector<V> fs(std::size_t{1} << r);
  if (ip_extend(cands, r, in, op, budget, chosen, fs)) return chosen;
  return std::nullopt;
}

inline IPrCertificate ip_certificate_from(const std::vector<BigInt>& gens, const GroundStructure& g, bool dual) {
  IPrCertificate c;
  c.generators = gens;
  c.ground = g.kind();
  c.refutes_dual = dual;
  const std::uint64_t total = std::uint64_t{1} << gens.size();
  std::vector<BigInt> fs(total);
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    unsigned low = static_cast<unsigned>(__builtin_ctzll(mask));
    std::uint64_t rest = mask & (mask - 1);
    fs[mask] = rest == 0 ? gens[low] : g.op(gens[low], fs[rest]);
    c.values.emplace_back(mask, fs[mask]);
  }
  return c;
}

// Generator search over explicit big-integer candidates with an arbitrary
// membership predicate. Candidates must be sorted ascending.
template <class In>
SearchResult<IPrCertificate> ip_over_candidates(const std::vector<BigInt>& cands, std::size_t r,
                                                const GroundStructure& g, const In& in, Budget& budget, bool dual) {
  if (r == 0 || r > kMaxIpRank) throw CapacityError("IP_r search supports 1 <= r <= 20");
  SearchResult<IPrCertificate> out;
  auto op = [&g](const BigInt& x, const BigInt& y) -> std::optional<BigInt> { return g.op(x, y); };
  auto found = ip_search(cands, r, in, op, budget);
  if (found) {
    std::vector<BigInt> gens;
    for (auto i : *found) gens.push_back(cands[i]);
    out.witness = ip_certificate_from(gens, g, dual);
  } else {
    out.inconclusive = budget.exhausted();
    out.note = out.inconclusive ? "budget exhausted" : "no certificate among the candidates";
  }
  return out;
}

// Same search on 64-bit values inside [lo, hi) with a bitmap predicate.
inline SearchResult<IPrCertificate> ip_over_bitmap(const IntegerWindowSet& target, std::size_t r,
                                                   const GroundStructure& g, const BigInt& search_bound,
                                                   Budget& budget, bool dual) {
  if (r == 0 || r > kMaxIpRank) throw CapacityError("IP_r search supports 1 <= r <= 20");
  const std::uint64_t lo = to_u64(target.lo());
  const std::uint64_t hi = to_u64(target.hi());
  const std::uint64_t min_gen = g.is_additive() ? 1 : 2;
  std::vector<std::uint64_t> cands;
  for (auto off : target.member_offsets()) {
    std::uint64_t v = lo + off;
    if (v >= min_gen && BigInt(v) <= search_bound) cands.push_back(v);
  }
  auto in = [&](std::uint64_t v) { return v >= lo && v < hi && target.test_offset(v - lo); };
  auto op = [&g](std::uint64_t x, std::uint64_t y) -> std::optional<std::uint64_t> {
    std::uint64_t out = 0;
    bool overflow = g.is_additive() ? __builtin_add_overflow(x, y, &out) : __builtin_mul_overflow(x, y, &out);
    if (overflow) return std::nullopt;
    return out;
  };
  SearchResult<IPrCertificate> res;
  auto found = ip_search(cands, r, in, op, budget);
  if (found) {
    std::vector<BigInt> gens;
    for (auto i : *found) gens.emplace_back(cands[i]);
    res.witness = ip_certificate_from(gens, g, dual);
  } else {
    res.inconclusive = budget.exhausted();
    res.note = res.inconclusive ? "budget exhausted" : "no certificate with generators <= " + to_dec(search_bound);
  }
  return res;
}

}  // namespace detail

/// Lexicographically least strictly increasing generators s_1 < ... < s_r
/// <= search_bound with every finite sum (additive G) or product
/// (multiplicative G) in A. Values outside A's window count as non-members.
/// The identity is never a generator.
inline SearchResult<IPrCertificate> ip_r_certificate(const LazySet& a, std::size_t r, const GroundStructure& g,
                                                     const BigInt& search_bound, Budget* budget = nullptr) {
  Budget unlimited;
  Budget& b = budget ? *budget : unlimited;
  if (r == 0 || r > kMaxIpRank) throw CapacityError("IP_r search supports 1 <= r <= 20");
  if (g.is_field()) throw std::invalid_argument("IP_r search runs over the integers");
  const BigInt min_gen = g.is_additive() ? 1 : 2;
  // Window-backed sets: every value must land inside the window.
  if (a.domain() && a.domain()->first >= 0 && a.domain()->second - a.domain()->first <= kMaxWindowSize) {
    auto window = materialize(a, a.domain()->first, a.domain()->second);
    return detail::ip_over_bitmap(window, r, g, search_bound, b, false);
  }
  auto cands = members_between(a, min_gen, search_bound);
  return detail::ip_over_candidates(cands, r, g, [&a](const BigInt& v) { return contains_or_false(a, v); }, b,
                                    false);
}

/// IP_r search where generators range over an explicit sorted list (for
/// sparse sets with huge elements).
inline SearchResult<IPrCertificate> ip_r_certificate_among(const LazySet& a, std::size_t r, const GroundStructure& g,
                                                           std::vector<BigInt> candidates, Budget* budget = nullptr) {
  Budget unlimited;
  Budget& b = budget ? *budget : unlimited;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  const BigInt min_gen = g.is_additive() ? 1 : 2;
  candidates.erase(std::remove_if(candidates.begin(), candidates.end(), [&](const BigInt& c) { return c < min_gen; }),
                   candidates.end());
  return detail::ip_over_candidates(candidates, r, g, [&a](const BigInt& v) { return contains_or_false(a, v); }, b,
                                    false);
}

/// Searches [lo, hi) for an IP_r set disjoint from A. A hit refutes
/// A in IP_r*; absence is inconclusive.
inline SearchResult<IPrCertificate> ip_r_star_refute(const LazySet& a, std::size_t r, const BigInt& lo,
                                                     const BigInt& hi, const GroundStructure& g,
                                                     Budget* budget = nullptr) {
  Budget unlimited;
  Budget& b = budget ? *budget : unlimited;
  if (lo < 0) throw std::invalid_argument("refutation window must be non-negative");
  auto complement = IntegerWindowSet::from_predicate(lo, hi, [&a](const BigInt& x) { return !a.contains(x); });
  auto res = detail::ip_over_bitmap(complement, r, g, hi - 1, b, true);
  if (!res.witness) {
    res.inconclusive = true;
    res.note = "no disjoint IP_" + std::to_string(r) + " set in [" + to_dec(lo) + "," + to_dec(hi) +
               "); A may still fail to be IP_r*";
  }
  return res;
}

// ---------------------------------------------------------------------------
// Combinatorial richness

/// Subsets of {0..r-1} in lexicographic order of their sorted index lists.
inline std::vector<std::uint64_t> lex_subsets(std::size_t r) {
  std::vector<std::uint64_t> out;
  std::vector<std::size_t> cur;
  // Each prefix is emitted before its extensions.
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    for (std::size_t i = start; i < r; ++i) {
      cur.push_back(i);
      std::uint64_t mask = 0;
      for (auto j : cur) mask |= std::uint64_t{1} << j;
      out.push_back(mask);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Combined column values M_{alpha,j} (sum or product over rows in alpha).
inline std::vector<BigInt> combine_rows(const std::vector<std::vector<BigInt>>& m, std::uint64_t alpha,
                                        const GroundStructure& g) {
  std::vector<BigInt> out;
  if (m.empty()) return out;
  out.assign(m.front().size(), BigInt(0));
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!((alpha >> i) & 1U)) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = first ? m[i][j] : g.op(out[j], m[i][j]);
    first = false;
  }
  return out;
}

/// Least (alpha, s) with op(s, M_{alpha,j}) in A for every column j; alpha in
/// lexicographic order of index lists, then s in pool order.
inline SearchResult<RichnessCertificate> combinatorial_richness_witness(const LazySet& a,
                                                                        const std::vector<std::vector<BigInt>>& m,
                                                                        const GroundStructure& g,
                                                                        const std::vector<BigInt>& s_pool) {
  if (m.empty()) throw std::invalid_argument("matrix has no rows");
  if (m.size() > kMaxIpRank) throw CapacityError("richness search supports r <= 20");
  for (const auto& row : m) {
    if (row.size() != m.front().size()) throw std::invalid_argument("ragged matrix");
    for (const auto& x : row) g.require_element(x);
  }
  SearchResult<RichnessCertificate> out;
  for (auto alpha : lex_subsets(m.size())) {
    auto cols = combine_rows(m, alpha, g);
    for (const auto& s : s_pool) {
      bool ok = std::all_of(cols.begin(), cols.end(), [&](const BigInt& c) { return contains_or_false(a, g.op(s, c)); });
      if (ok) {
        out.witness = RichnessCertificate{m, alpha, s, g.kind()};
        return out;
      }
    }
  }
  out.note = "no (alpha, s) with s in the pool";
  return out;
}

}  // namespace ramsey
