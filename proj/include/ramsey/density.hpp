#pragma once

// Upper Banach density lower bounds via best-translate counts, Folner
// windows for (N,+) and (N,*), and lower-density profiles.

#include "arithfun.hpp"
#include "groundset.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ramsey {

// ---------------------------------------------------------------------------
// Folner windows

enum class FolnerKind { AdditiveInterval, MultiplicativeBox };

struct FolnerWindow {
  FolnerKind kind = FolnerKind::AdditiveInterval;
  std::uint64_t n = 0;
  BigInt m = 0;
  std::vector<BigInt> elements;  // sorted

  /// {m+1, ..., m+n}.
  static FolnerWindow additive(std::uint64_t n, const BigInt& m) {
    if (n > kMaxWindowSize) throw CapacityError("additive window larger than 2^26");
    FolnerWindow w{FolnerKind::AdditiveInterval, n, m, {}};
    w.elements.reserve(n);
    for (std::uint64_t i = 1; i <= n; ++i) w.elements.push_back(m + i);
    return w;
  }

  /// {m p_1^{e_1} ... p_n^{e_n} : e_i in [1, n]} over the first n primes.
  static FolnerWindow multiplicative(std::uint64_t n, const BigInt& m) {
    if (n == 0 || n > 7) throw CapacityError("multiplicative box supports 1 <= n <= 7");
    if (m < 1) throw std::invalid_argument("multiplicative box needs m >= 1");
    FolnerWindow w{FolnerKind::MultiplicativeBox, n, m, {}};
    auto primes = first_primes(n);
    std::vector<std::uint64_t> e(n, 1);
    while (true) {
      BigInt v = m;
      for (std::size_t i = 0; i < n; ++i) v *= pow_big(primes[i], e[i]);
      w.elements.push_back(v);
      std::size_t i = 0;
      while (i < n && e[i] == n) e[i++] = 1;
      if (i == n) break;
      ++e[i];
    }
    std::sort(w.elements.begin(), w.elements.end());
    auto distinct = std::unique(w.elements.begin(), w.elements.end()) - w.elements.begin();
    if (static_cast<std::size_t>(distinct) != w.elements.size())
      throw std::logic_error("multiplicative box has repeated elements");
    return w;
  }

  [[nodiscard]] std::string descriptor() const {
    return std::string(kind == FolnerKind::AdditiveInterval ? "add:" : "mult:") + std::to_string(n) + "," + to_dec(m);
  }

  [[nodiscard]] FiniteMultiset as_multiset() const { return FiniteMultiset::from_list(elements); }
};

/// |sF symmetric-difference F| / |F|.
inline BigRational folner_drift(const FolnerWindow& f, const BigInt& s, const GroundStructure& g) {
  if (f.elements.empty()) throw std::invalid_argument("empty Folner window");
  std::vector<BigInt> moved;
  moved.reserve(f.elements.size());
  for (const auto& x : f.elements) moved.push_back(g.op(s, x));
  std::sort(moved.begin(), moved.end());
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < moved.size() && j < f.elements.size();) {
    if (moved[i] < f.elements[j]) {
      ++i;
    } else if (f.elements[j] < moved[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  std::size_t sym = 2 * (f.elements.size() - common);
  return BigRational(BigInt(sym), BigInt(f.elements.size()));
}

// ---------------------------------------------------------------------------
// Translate counts

namespace detail {

inline std::optional<std::pair<BigInt, BigInt>> op_range(const FiniteMultiset& f, const std::vector<BigInt>& pool,
                                                         const GroundStructure& g) {
  if (f.empty() || pool.empty() || g.is_field()) return std::nullopt;
  auto [pmin, pmax] = std::minmax_element(pool.begin(), pool.end());
  const BigInt& fmin = f.support().front();
  const BigInt& fmax = f.support().back();
  if (!g.is_additive() && (fmin < 0 || *pmin < 0)) return std::nullopt;
  return std::make_pair(g.op(fmin, *pmin), g.op(fmax, *pmax));
}

}  // namespace detail

/// |F cap A s^{-1}| for every s in the pool, in pool order.
inline std::vector<std::uint64_t> translate_counts(const LazySet& a, const FiniteMultiset& f,
                                                   const std::vector<BigInt>& pool, const GroundStructure& g) {
  std::vector<std::uint64_t> out;
  out.reserve(pool.size());
  for (const auto& s : pool) g.require_element(s);
  auto range = detail::op_range(f, pool, g);
  bool materializable = range && range->first >= 0 && range->second - range->first < kMaxWindowSize &&
                        (a.enumerator_exact() ||
                         (a.domain() && range->first >= a.domain()->first && range->second < a.domain()->second));
  if (materializable) {
    auto window = materialize(a, range->first, range->second + 1);
    const std::uint64_t base = to_u64(range->first);
    const auto& support = f.support();
    const auto& mult = f.multiplicities();
    std::vector<std::uint64_t> fs;
    fs.reserve(support.size());
    for (const auto& x : support) fs.push_back(to_u64(x));
    for (const auto& s_big : pool) {
      std::uint64_t s = to_u64(s_big);
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        std::uint64_t v = g.is_additive() ? fs[i] + s : fs[i] * s;
        if (window.test_offset(v - base)) c += mult[i];
      }
      out.push_back(c);
    }
    return out;
  }
  for (const auto& s : pool) out.push_back(multiset_translate_count(f, a, s, g));
  return out;
}

struct DensityEstimate {
  std::uint64_t count = 0;
  std::uint64_t total = 0;
  BigInt best_shift = 0;
  std::string window;
  std::string shift_pool;

  [[nodiscard]] BigRational delta() const { return BigRational(BigInt(count), BigInt(total)); }
};

/// max over s in the pool of |F cap A s^{-1}| / |F|, ties to the least shift.
/// A lower bound for the upper Banach density when the pool lies in S.
inline DensityEstimate banach_density_lower_bound(const LazySet& a, const FiniteMultiset& f,
                                                  const std::vector<BigInt>& pool, const GroundStructure& g,
                                                  std::string window_descriptor = "multiset",
                                                  std::string pool_descriptor = "pool") {
  if (pool.empty()) throw std::invalid_argument("shift pool is empty");
  if (f.total() == 0) throw std::invalid_argument("multiset is empty");
  auto counts = translate_counts(a, f, pool, g);
  DensityEstimate e;
  e.total = f.total();
  e.window = std::move(window_descriptor);
  e.shift_pool = std::move(pool_descriptor);
  bool first = true;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (first || counts[i] > e.count || (counts[i] == e.count && pool[i] < e.best_shift)) {
      e.count = counts[i];
      e.best_shift = pool[i];
      first = false;
    }
  }
  return e;
}

/// Pool elements s with |F cap A s^{-1}| >= beta |F|.
inline std::vector<BigInt> translate_level_set(const LazySet& a, const FiniteMultiset& f, const BigRational& beta,
                                               const std::vector<BigInt>& pool, const GroundStructure& g) {
  if (beta < 0 || beta > 1) throw std::invalid_argument("beta must lie in [0,1]");
  auto counts = translate_counts(a, f, pool, g);
  std::vector<BigInt> out;
  const BigInt num = boost::multiprecision::numerator(beta);
  const BigInt den = boost::multiprecision::denominator(beta);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (BigInt(counts[i]) * den >= num * f.total()) out.push_back(pool[i]);
  }
  return out;
}

inline std::vector<BigInt> integer_range(const BigInt& first, const BigInt& last) {
  std::vector<BigInt> out;
  for (BigInt x = first; x <= last; ++x) out.push_back(x);
  return out;
}

/// RFC 4180 quoting for fields holding commas, quotes or newlines.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string density_csv(const std::vector<DensityEstimate>& rows) {
  std::ostringstream os;
  os << "window_descriptor,best_shift,numerator,denominator\n";
  for (const auto& e : rows) {
    BigRational d = e.delta();
    os << csv_field(e.window) << ',' << to_dec(e.best_shift) << ',' << boost::multiprecision::numerator(d) << ','
       << boost::multiprecision::denominator(d) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Lower density

struct DensityCheckpoint {
  std::uint64_t n = 0;
  std::uint64_t count = 0;
  BigRational running_inf;  // min of count/n over checkpoints so far

  [[nodiscard]] BigRational ratio() const { return BigRational(BigInt(count), BigInt(n)); }
};

/// 1, 2, 5, 10, 20, 50, ... below n_max, then n_max itself.
inline std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t scale = 1; scale <= n_max; scale *= 10) {
    for (std::uint64_t k : {1U, 2U, 5U}) {
      if (scale * k < n_max) out.push_back(scale * k);
    }
    if (scale > n_max / 10) break;
  }
  out.push_back(n_max);
  return out;
}

/// Exact |A cap [1,N]| / N at the geometric checkpoints up to n_max.
inline std::vector<DensityCheckpoint> lower_density_profile(const LazySet& a, std::uint64_t n_max) {
  if (n_max == 0) throw std::invalid_argument("n_max must be positive");
  auto members = members_between(a, 1, n_max);
  std::vector<DensityCheckpoint> out;
  std::size_t idx = 0;
  for (auto n : geometric_checkpoints(n_max)) {
    while (idx < members.size() && members[idx] <= n) ++idx;
    DensityCheckpoint c;
    c.n = n;
    c.count = idx;
    c.running_inf = out.empty() ? c.ratio() : std::min(out.back().running_inf, c.ratio());
    out.push_back(c);
  }
  return out;
}

inline std::string lower_density_csv(const std::vector<DensityCheckpoint>& rows) {
  std::ostringstream os;
  os << "n,count,ratio,running_inf\n";
  for (const auto& r : rows) os << r.n << ',' << r.count << ',' << r.ratio() << ',' << r.running_inf << '\n';
  return os.str();
}

}  // namespace ramsey
