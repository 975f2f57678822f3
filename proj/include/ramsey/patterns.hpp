#pragma once

// Finders for arithmetic and geometric progressions, generalized APs,
// geometric cubes, geo-arithmetic configurations, FS/FP sets and
// combinatorial lines.

#include "certificate.hpp"
#include "groundset.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ramsey {

inline constexpr std::uint64_t kMaxApWindow = std::uint64_t{1} << 22U;

// ---------------------------------------------------------------------------
// Progressions in windows

/// Longest AP inside the window; ties go to the least start, then the least
/// step. Steps are scanned in increasing order and the scan stops once no
/// step can reach the current best length.
inline SearchResult<APCertificate> longest_ap(const IntegerWindowSet& a, std::uint64_t min_len = 1) {
  if (a.size() > kMaxApWindow) throw CapacityError("longest_ap window larger than 2^22");
  SearchResult<APCertificate> out;
  auto offsets = a.member_offsets();
  if (offsets.empty()) {
    out.note = "empty set";
    return out;
  }
  std::uint64_t best_len = 1, best_start = offsets.front(), best_step = 1;
  const std::uint64_t w = a.size();
  for (std::uint64_t d = 1; d < w; ++d) {
    if ((w - 1) / d + 1 < best_len) break;
    for (auto x : offsets) {
      if (x >= d && a.test_offset(x - d)) continue;
      std::uint64_t len = 1;
      for (std::uint64_t y = x + d; y < w && a.test_offset(y); y += d) ++len;
      if (len > best_len || (len == best_len && len > 1 && (x < best_start || (x == best_start && d < best_step)))) {
        best_len = len;
        best_start = x;
        best_step = d;
      }
    }
  }
  if (best_len < min_len) {
    out.note = "longest AP has length " + std::to_string(best_len);
    return out;
  }
  out.witness = APCertificate{a.lo() + best_start, BigInt(best_step), best_len};
  return out;
}

/// Longest GP x, xq, xq^2, ... with integer ratio q >= 2 and x >= 1 inside the
/// window; ties to the least start, then the least ratio.
inline SearchResult<GPCertificate> longest_gp(const IntegerWindowSet& a, std::uint64_t min_len = 1) {
  if (a.size() > kMaxApWindow) throw CapacityError("longest_gp window larger than 2^22");
  SearchResult<GPCertificate> out;
  std::optional<GPCertificate> best;
  const BigInt& hi = a.hi();
  for (const auto& x : a.members()) {
    if (x < 1) continue;
    for (BigInt q = 2; x * q < hi || q == 2; ++q) {
      std::uint64_t len = 1;
      for (BigInt y = x * q; y < hi && a.in_window(y) && a.contains(y); y *= q) ++len;
      if (!best || len > best->length) best = GPCertificate{x, q, len};
      if (x * q >= hi) break;
    }
  }
  if (!best || best->length < min_len) {
    out.note = best ? "longest GP has length " + std::to_string(best->length) : "no positive members";
    return out;
  }
  out.witness = best;
  return out;
}

// ---------------------------------------------------------------------------
// Cube-type configurations

struct PatternPools {
  std::vector<BigInt> s;  // base values (s or c)
  std::vector<BigInt> a;  // offsets for geo-arithmetic
  std::vector<BigInt> d;  // steps or ratios
};

namespace detail {

// Calls visit(tuple) for nondecreasing index tuples of length m over [0, k)
// in lexicographic order until it returns true.
template <class Visit>
bool nondecreasing_tuples(std::size_t k, std::size_t m, Budget& budget, const Visit& visit) {
  if (k == 0) return false;
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    if (!budget.spend()) return false;
    if (visit(idx)) return true;
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == k - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[i - 1];
  }
}

inline void check_cube_size(std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("cube needs n, m >= 1");
  long double size = std::pow(static_cast<long double>(n), static_cast<long double>(m));
  if (size > static_cast<long double>(1U << 20U)) throw CapacityError("n^m above 2^20");
}

// Every point of [1,n]^m mapped through `point` lies in A.
template <class Point>
bool all_points(std::uint64_t n, std::uint64_t m, const LazySet& a, const Point& point) {
  std::vector<std::uint64_t> j(m, 1);
  while (true) {
    if (!contains_or_false(a, point(j))) return false;
    std::size_t i = 0;
    while (i < m && j[i] == n) j[i++] = 1;
    if (i == m) return true;
    ++j[i];
  }
}

}  // namespace detail

/// Least (s, d_1 <= ... <= d_m) with s + sum j_i d_i in A for all j in [1,n]^m.
inline SearchResult<GeneralizedAPCertificate> find_generalized_ap(const LazySet& a, std::uint64_t n, std::uint64_t m,
                                                                  const PatternPools& pools,
                                                                  Budget* budget = nullptr) {
  detail::check_cube_size(n, m);
  Budget unlimited;
  Budget& b = budget ? *budget : unlimited;
  SearchResult<GeneralizedAPCertificate> out;
  for (const auto& s : pools.s) {
    std::vector<BigInt> d;
    bool hit = detail::nondecreasing_tuples(pools.d.size(), m, b, [&](const std::vector<std::size_t>& idx) {
      d.clear();
      for (auto i : idx) d.push_back(pools.d[i]);
      return detail::all_points(n, m, a, [&](const std::vector<std::uint64_t>& j) {
        BigInt v = s;
        for (std::size_t i = 0; i < m; ++i) v += j[i] * d[i];
        return v;
      });
    });
    if (hit) {
      out.witness = GeneralizedAPCertificate{s, d, n};
      return out;
    }
    if (b.exhausted()) break;
  }
  out.inconclusive = b.exhausted();
  out.note = out.inconclusive ? "budget exhausted" : "absent within pools";
  return out;
}

/// Least (s, d_1 <= ... <= d_m), d_i >= 2, with s d_1^{j_1}...d_m^{j_m} in A.
inline SearchResult<GeometricCubeCertificate> find_geometric_cube(const LazySet& a, std::uint64_t n, std::uint64_t m,
                                                                  const PatternPools& pools,
                                                                  Budget* budget = nullptr) {
  detail::check_cube_size(n, m);
  Budget unlimited;
  Budget& b = budget ? *budget : unlimited;
  std::vector<BigInt> ratios;
  for (const auto& d : pools.d) {
    if (d >= 2) ratios.push_back(d);
  }
  SearchResult<GeometricCubeCertificate> out;
  for (const auto& s : pools.s) {
    if (s < 1) continue;
    std::vector<BigInt> d;
    bool hit = detail::nondecreasing_tuples(ratios.size(), m, b, [&](const std::vector<std::size_t>& idx) {
      d.clear();
      for (auto i : idx) d.push_back(ratios[i]);
      return detail::all_points(n, m, a, [&](const std::vector<std::uint64_t>& j) {
        BigInt v = s;
        for (std::size_t i = 0; i < m; ++i) v *= pow_big(d[i], j[i]);
        return v;
      });
    });
    if (hit) {
      out.witness = GeometricCubeCertificate{s, d, n};
      return out;
    }
    if (b.exhausted()) break;
  }
  out.inconclusive = b.exhausted();
  out.note = out.inconclusive ? "budget exhausted" : "absent within pools";
  return out;
}

/// Least (c, a, d) in pool order with c (a + i d)^j in A for 1 <= i, j <= n.
inline SearchResult<GeoArithCertificate> find_geo_arithmetic(const LazySet& set, std::uint64_t n,
                                                             const PatternPools& pools, Budget* budget = nullptr) {
  if (n == 0 || n > 1024) throw std::invalid_argument("geo-arithmetic search needs 1 <= n <= 1024");
  Budget unlimited;
  Budget& b = budget ? *budget : unlimited;
  SearchResult<GeoArithCertificate> out;
  for (const auto& c : pools.s) {
    for (const auto& a : pools.a) {
      for (const auto& d : pools.d) {
        if (!b.spend()) {
          out.inconclusive = true;
          out.note = "budget exhausted";
          return out;
        }
        bool ok = true;
        for (std::uint64_t i = 1; i <= n && ok; ++i) {
          BigInt base = a + i * d;
          BigInt power = 1;
          for (std::uint64_t j = 1; j <= n && ok; ++j) {
            power *= base;
            ok = contains_or_false(set, c * power);
          }
        }
        if (ok) {
          out.witness = GeoArithCertificate{c, a, d, n};
          return out;
        }
      }
    }
  }
  out.note = "absent within pools";
  return out;
}

// ---------------------------------------------------------------------------
// Finite sums and products

struct FsFpTable {
  std::vector<std::pair<std::uint64_t, BigInt>> values;   // (alpha mask, s_alpha), masks ascending
  std::vector<std::vector<std::uint64_t>> duplicates;     // groups of masks sharing a value
};

inline constexpr std::size_t kMaxFsRank = 24;

/// All 2^r - 1 values s_alpha, combining generators in increasing index order.
inline FsFpTable fs_fp_enumerate(const std::vector<BigInt>& gens, const GroundStructure& g) {
  if (gens.empty() || gens.size() > kMaxFsRank) throw CapacityError("FS/FP enumeration supports 1 <= r <= 24");
  FsFpTable t;
  const std::uint64_t total = std::uint64_t{1} << gens.size();
  std::vector<BigInt> fs(total);
  t.values.reserve(total - 1);
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    unsigned low = static_cast<unsigned>(__builtin_ctzll(mask));
    std::uint64_t rest = mask & (mask - 1);
    fs[mask] = rest == 0 ? gens[low] : g.op(gens[low], fs[rest]);
    t.values.emplace_back(mask, fs[mask]);
  }
  std::map<BigInt, std::vector<std::uint64_t>> by_value;
  for (const auto& [mask, v] : t.values) by_value[v].push_back(mask);
  for (auto& [v, masks] : by_value) {
    if (masks.size() > 1) t.duplicates.push_back(std::move(masks));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Combinatorial lines

inline constexpr std::uint64_t kMaxCubeWords = std::uint64_t{1} << 22U;

/// A subset of [n]^r; word letters are 1..n, the first letter most
/// significant in the index.
class WordSet {
 public:
  WordSet(std::uint32_t n, std::uint32_t r) : n_(n), r_(r) {
    if (n == 0 || r == 0) throw std::invalid_argument("word cube needs n, r >= 1");
    long double size = std::pow(static_cast<long double>(n), static_cast<long double>(r));
    if (size > static_cast<long double>(kMaxCubeWords)) throw CapacityError("n^r above 2^22");
    size_ = static_cast<std::uint64_t>(size + 0.5L);
    bits_.assign(size_, false);
  }

  [[nodiscard]] std::uint32_t n() const { return n_; }
  [[nodiscard]] std::uint32_t r() const { return r_; }
  [[nodiscard]] std::uint64_t cube_size() const { return size_; }

  [[nodiscard]] std::uint64_t index(const std::vector<std::uint32_t>& word) const {
    if (word.size() != r_) throw std::invalid_argument("word has wrong length");
    std::uint64_t idx = 0;
    for (auto letter : word) {
      if (letter < 1 || letter > n_) throw std::invalid_argument("letter outside [1,n]");
      idx = idx * n_ + (letter - 1);
    }
    return idx;
  }

  [[nodiscard]] std::vector<std::uint32_t> word(std::uint64_t idx) const {
    std::vector<std::uint32_t> w(r_);
    for (std::size_t i = r_; i-- > 0;) {
      w[i] = static_cast<std::uint32_t>(idx % n_) + 1;
      idx /= n_;
    }
    return w;
  }

  void insert(const std::vector<std::uint32_t>& w) { bits_[index(w)] = true; }
  void insert_index(std::uint64_t idx) { bits_.at(idx) = true; }
  [[nodiscard]] bool contains(const std::vector<std::uint32_t>& w) const { return bits_[index(w)]; }
  [[nodiscard]] bool contains_index(std::uint64_t idx) const { return bits_.at(idx); }

  [[nodiscard]] std::uint64_t count() const {
    return static_cast<std::uint64_t>(std::count(bits_.begin(), bits_.end(), true));
  }

  /// Parses "12 21" or "12,21" style lists (one digit per letter, n <= 9) or
  /// dotted words "1.10.3".
  static WordSet parse(std::uint32_t n, std::uint32_t r, const std::string& text) {
    WordSet s(n, r);
    std::string tok;
    auto flush = [&]() {
      if (tok.empty()) return;
      std::vector<std::uint32_t> w;
      if (tok.find('.') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= tok.size()) {
          auto end = tok.find('.', pos);
          if (end == std::string::npos) end = tok.size();
          w.push_back(static_cast<std::uint32_t>(std::stoul(tok.substr(pos, end - pos))));
          pos = end + 1;
        }
      } else {
        for (char c : tok) {
          if (c < '0' || c > '9') throw std::invalid_argument("bad letter in word " + tok);
          w.push_back(static_cast<std::uint32_t>(c - '0'));
        }
      }
      s.insert(w);
      tok.clear();
    };
    for (char c : text) {
      if (c == ',' || c == ' ' || c == ';' || c == '\n') {
        flush();
      } else {
        tok += c;
      }
    }
    flush();
    return s;
  }

 private:
  std::uint32_t n_;
  std::uint32_t r_;
  std::uint64_t size_ = 0;
  std::vector<bool> bits_;
};

/// Points of the line given by a variable word (letter 0 is the wildcard).
inline std::vector<std::vector<std::uint32_t>> line_points(const LineCertificate& line) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t x = 1; x <= line.n; ++x) {
    auto w = line.letters;
    for (auto& l : w) {
      if (l == 0) l = x;
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// First combinatorial line inside S: wildcard position sets in colex order
/// (as bitmasks ascending, position 0 the lowest bit), then the constant
/// letters in lexicographic order.
inline SearchResult<LineCertificate> find_combinatorial_line(const WordSet& s) {
  const std::uint32_t n = s.n(), r = s.r();
  if (r > 63) throw CapacityError("word length above 63");
  SearchResult<LineCertificate> out;
  for (std::uint64_t stars = 1; stars < (std::uint64_t{1} << r); ++stars) {
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < r; ++i) {
      if (!((stars >> i) & 1U)) fixed.push_back(i);
    }
    std::vector<std::uint32_t> consts(fixed.size(), 1);
    while (true) {
      LineCertificate line{n, std::vector<std::uint32_t>(r, 0)};
      for (std::size_t k = 0; k < fixed.size(); ++k) line.letters[fixed[k]] = consts[k];
      bool all = true;
      for (const auto& w : line_points(line)) {
        if (!s.contains(w)) {
          all = false;
          break;
        }
      }
      if (all) {
        out.witness = line;
        return out;
      }
      std::size_t k = fixed.size();
      while (k > 0 && consts[k - 1] == n) consts[--k] = 1;
      if (k == 0) break;
      ++consts[k - 1];
    }
  }
  out.note = "no combinatorial line (exhaustive)";
  return out;
}

}  // namespace ramsey
