#pragma once

// Sieve-backed arithmetic functions and the equidistribution toolkit:
// exact/irrational scalars, polynomials, Weyl sums, discrepancy, LeVeque's
// bound and epsilon-density thresholds.

#include "numeric.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ramsey {

using BigRational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Sieve

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 26U;

/// Smallest-prime-factor table on [0, limit].
class SieveTable {
 public:
  explicit SieveTable(std::uint64_t limit) : limit_(limit) {
    if (limit > kMaxSieveLimit) throw CapacityError("sieve limit above 2^26");
    spf_.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) continue;
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }

  [[nodiscard]] std::uint64_t limit() const { return limit_; }

  [[nodiscard]] std::uint32_t spf(std::uint64_t n) const {
    check(n);
    return spf_[n];
  }
  [[nodiscard]] bool is_prime(std::uint64_t n) const { return n >= 2 && spf(n) == n; }
  [[nodiscard]] const std::vector<std::uint32_t>& primes() const { return primes_; }

  [[nodiscard]] unsigned big_omega(std::uint64_t n) const {
    check(n);
    if (n == 0) throw std::invalid_argument("Omega(0) is undefined");
    unsigned c = 0;
    while (n > 1) {
      n /= spf_[n];
      ++c;
    }
    return c;
  }

  /// Omega(n) for every n in [0, upto]; entry 0 is unused.
  [[nodiscard]] std::vector<std::uint8_t> omega_table(std::uint64_t upto) const {
    check(upto);
    std::vector<std::uint8_t> out(upto + 1, 0);
    for (std::uint64_t n = 2; n <= upto; ++n) out[n] = static_cast<std::uint8_t>(out[n / spf_[n]] + 1);
    return out;
  }

 private:
  void check(std::uint64_t n) const {
    if (n > limit_) throw RangeError("value " + std::to_string(n) + " beyond sieve limit " + std::to_string(limit_));
  }

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Process-wide sieve covering at least [0, at_least]; grows by doubling.
inline std::shared_ptr<const SieveTable> shared_sieve(std::uint64_t at_least = 1U << 20U) {
  static std::mutex mu;
  static std::shared_ptr<const SieveTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->limit() < at_least) {
    std::uint64_t want = std::max<std::uint64_t>(at_least, table ? 2 * table->limit() : (1U << 20U));
    table = std::make_shared<const SieveTable>(std::min(want, std::max(at_least, kMaxSieveLimit)));
  }
  return table;
}

inline std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < count; ++n) {
    bool prime = true;
    for (auto p : out) {
      if (p * p > n) break;
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 64-bit factorization fallback

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

// Deterministic for all 64-bit inputs with these bases.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Pollard-Brent; n must be composite and odd.
inline std::uint64_t find_factor(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline unsigned omega_u64(std::uint64_t n) {
  unsigned c = 0;
  for (std::uint64_t p = 2; p < 64 && n > 1; ++p) {
    while (n % p == 0) {
      n /= p;
      ++c;
    }
  }
  if (n == 1) return c;
  std::vector<std::uint64_t> stack{n};
  while (!stack.empty()) {
    std::uint64_t m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime_u64(m)) {
      ++c;
      continue;
    }
    std::uint64_t d = find_factor(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  return c;
}

}  // namespace detail

/// Omega(n): prime factors counted with multiplicity.
///
/// Uses the shared sieve up to its limit; larger n have small primes stripped
/// and the cofactor factored as a 64-bit integer.
inline unsigned big_omega(const BigInt& n) {
  if (n < 1) throw RangeError("Omega requires n >= 1, got " + to_dec(n));
  auto sieve = shared_sieve();
  if (n <= sieve->limit()) return sieve->big_omega(n.convert_to<std::uint64_t>());
  BigInt m = n;
  unsigned c = 0;
  for (std::uint32_t p : sieve->primes()) {
    if (fits_u64(m)) break;
    if (p > 1000) break;
    while (m % p == 0) {
      m /= p;
      ++c;
    }
  }
  if (!fits_u64(m)) throw RangeError("Omega: cofactor beyond 64 bits for " + to_dec(n));
  return c + detail::omega_u64(m.convert_to<std::uint64_t>());
}

/// p-adic valuation of n >= 1.
inline unsigned nu_p(BigInt n, const BigInt& p) {
  if (n < 1) throw RangeError("nu_p requires n >= 1, got " + to_dec(n));
  if (p < 2) throw std::invalid_argument("nu_p requires p >= 2");
  unsigned c = 0;
  while (n % p == 0) {
    n /= p;
    ++c;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Scalars: exact rationals or high-precision approximations of irrationals

inline Real to_real(const BigRational& r) {
  return Real(boost::multiprecision::numerator(r)) / Real(boost::multiprecision::denominator(r));
}

/// A real number that is either known exactly (rational) or approximated to
/// Real precision.
struct Scalar {
  Real approx = 0;
  std::optional<BigRational> exact = BigRational(0);

  Scalar() = default;
  Scalar(std::int64_t v) : approx(v), exact(BigRational(v)) {}  // NOLINT(google-explicit-constructor)
  static Scalar rational(const BigRational& r) {
    Scalar s;
    s.approx = to_real(r);
    s.exact = r;
    return s;
  }
  static Scalar rational(const BigInt& num, const BigInt& den) { return rational(BigRational(num, den)); }
  static Scalar irrational(const Real& v) {
    Scalar s;
    s.approx = v;
    s.exact.reset();
    return s;
  }
  static Scalar sqrt_of(std::uint64_t k) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(k)));
    while (r * r > k) --r;
    while ((r + 1) * (r + 1) <= k) ++r;
    if (r * r == k) return Scalar(static_cast<std::int64_t>(r));
    return irrational(sqrt(Real(k)));
  }

  [[nodiscard]] bool is_exact() const { return exact.has_value(); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar s;
    s.approx = a.approx + b.approx;
    if (a.exact && b.exact) {
      s.exact = *a.exact + *b.exact;
      s.approx = to_real(*s.exact);
    } else {
      s.exact.reset();
    }
    return s;
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar s;
    if (a.exact && b.exact) {
      s.exact = *a.exact * *b.exact;
      s.approx = to_real(*s.exact);
    } else if ((a.exact && *a.exact == 0) || (b.exact && *b.exact == 0)) {
      s.exact = BigRational(0);
      s.approx = 0;
    } else {
      s.approx = a.approx * b.approx;
      s.exact.reset();
    }
    return s;
  }
  friend Scalar operator-(const Scalar& a) { return Scalar(-1) * a; }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  [[nodiscard]] std::string str() const {
    if (exact) return exact->str();
    std::ostringstream os;
    os.precision(40);
    os << approx;
    return os.str();
  }
};

inline Scalar scalar_of(const BigInt& v) { return Scalar::rational(BigRational(v)); }

/// Fractional part in [0, 1).
inline Scalar frac(const Scalar& x) {
  if (x.exact) {
    BigInt num = boost::multiprecision::numerator(*x.exact);
    BigInt den = boost::multiprecision::denominator(*x.exact);
    BigInt r = num % den;
    if (r < 0) r += den;
    return Scalar::rational(r, den);
  }
  return Scalar::irrational(frac(x.approx));
}

/// -1, 0, +1 for x < y, x == y, x > y. Throws BoundaryAmbiguity when an
/// inexact side lies within the band of the other.
inline int compare_checked(const Scalar& x, const Scalar& y) {
  if (x.exact && y.exact) return *x.exact < *y.exact ? -1 : (*x.exact == *y.exact ? 0 : 1);
  Real d = x.approx - y.approx;
  if (abs(d) < boundary_band()) {
    throw BoundaryAmbiguity("comparison " + x.str() + " vs " + y.str() + " inside the 2^-64 band");
  }
  return d < 0 ? -1 : 1;
}

/// Half-open interval [lo, hi) inside [0, 1).
struct UnitInterval {
  Scalar lo;
  Scalar hi;

  UnitInterval() : lo(0), hi(1) {}
  UnitInterval(Scalar l, Scalar h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.approx < 0 || hi.approx > 1 || !(lo.approx < hi.approx))
      throw std::invalid_argument("interval must satisfy 0 <= lo < hi <= 1");
  }

  [[nodiscard]] Real length() const { return hi.approx - lo.approx; }

  /// Membership of a fractional part; fails loudly near inexact endpoints.
  [[nodiscard]] bool contains(const Scalar& f) const {
    // 0 and 1 coincide on the torus, so an inexact f near 0 is also ambiguous
    // when the interval touches either end.
    if (!f.exact && (lo.exact && *lo.exact == 0) != (hi.exact && *hi.exact == 1)) {
      if (f.approx < boundary_band() || 1 - f.approx < boundary_band())
        throw BoundaryAmbiguity("fractional part " + f.str() + " within 2^-64 of 0 mod 1");
    }
    return compare_checked(f, lo) >= 0 && compare_checked(f, hi) < 0;
  }

  [[nodiscard]] std::string str() const { return "[" + lo.str() + "," + hi.str() + ")"; }
};

// ---------------------------------------------------------------------------
// Polynomials with scalar coefficients

class Polynomial {
 public:
  Polynomial() = default;
  /// coefficients[i] multiplies x^i.
  explicit Polynomial(std::vector<Scalar> coefficients) : c_(std::move(coefficients)) {
    while (!c_.empty() && c_.back().is_exact() && *c_.back().exact == 0) c_.pop_back();
  }

  static Polynomial monomial(const Scalar& coeff, std::size_t degree) {
    std::vector<Scalar> c(degree + 1, Scalar(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<Scalar>& coefficients() const { return c_; }
  [[nodiscard]] bool is_exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_exact(); });
  }

  [[nodiscard]] Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Largest |x| for which evaluation keeps at least 100 fractional bits.
  [[nodiscard]] Real max_safe_argument() const {
    if (degree() <= 0) return Real(1e300);
    return pow(Real(2), Real(80) / degree());
  }

  [[nodiscard]] std::string str() const {
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_exact() && *c_[i].exact == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].str() + ")";
      if (i >= 1) out += "*x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<Scalar> c_;
};

namespace detail {

inline Scalar parse_factor(const std::string& tok) {
  if (tok == "pi") return Scalar::irrational(pi_real());
  if (tok == "e") return Scalar::irrational(exp(Real(1)));
  if (tok.rfind("sqrt", 0) == 0) {
    std::string arg = tok.substr(4);
    if (!arg.empty() && arg.front() == '(' && arg.back() == ')') arg = arg.substr(1, arg.size() - 2);
    if (arg.empty()) throw std::invalid_argument("sqrt without argument");
    return Scalar::sqrt_of(std::stoull(arg));
  }
  Rational r = parse_rational(tok);
  return Scalar::rational(BigInt(r.numerator()), BigInt(r.denominator()));
}

}  // namespace detail

/// Parses sums of terms such as "sqrt2*x^2 - 1/3*x + 0.5" or "x/2".
///
/// Factors: integers, decimals, a/b, sqrt(k) or sqrtK, pi, e, x, x^k, and a
/// trailing "/k" divisor on a term.
inline Polynomial parse_polynomial(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  std::map<std::size_t, Scalar> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    int depth = 0;
    while (j < s.size() && (depth > 0 || (s[j] != '+' && s[j] != '-') || j == i)) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')') --depth;
      ++j;
    }
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("malformed polynomial: " + text);
    Scalar coeff(sign);
    std::size_t degree = 0;
    std::size_t k = 0;
    bool divide_next = false;
    while (k <= term.size()) {
      std::size_t m = k;
      while (m < term.size() && term[m] != '*' && !(term[m] == '/' && m > k && !std::isdigit(static_cast<unsigned char>(term[m - 1])) )) ++m;
      std::string factor = term.substr(k, m - k);
      if (factor.empty()) throw std::invalid_argument("malformed polynomial term: " + term);
      Scalar value(1);
      if (factor == "x") {
        degree += 1;
      } else if (factor.rfind("x^", 0) == 0) {
        degree += std::stoul(factor.substr(2));
      } else {
        value = detail::parse_factor(factor);
      }
      if (divide_next) {
        if (!value.exact || *value.exact == 0) throw std::invalid_argument("divisor must be a non-zero rational");
        value = Scalar::rational(1 / *value.exact);
      }
      coeff = coeff * value;
      if (m >= term.size()) break;
      divide_next = term[m] == '/';
      k = m + 1;
    }
    auto [it, inserted] = terms.try_emplace(degree, coeff);
    if (!inserted) it->second = it->second + coeff;
    i = j;
  }
  std::size_t top = terms.empty() ? 0 : terms.rbegin()->first;
  std::vector<Scalar> c(top + 1, Scalar(0));
  for (auto& [d, v] : terms) c[d] = v;
  return Polynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// Continued fractions

struct ContinuedFraction {
  std::vector<BigInt> partial_quotients;
  std::vector<std::pair<BigInt, BigInt>> convergents;  // (p_k, q_k)
  bool terminated = false;                             // exact rational reached
};

/// Expansion of x, stopping after max_terms or when the remainder vanishes
/// (exactly for rationals, below 2^-100 for approximations).
inline ContinuedFraction continued_fraction(const Scalar& x, std::size_t max_terms) {
  ContinuedFraction cf;
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  auto push = [&](const BigInt& a) {
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    cf.partial_quotients.push_back(a);
    cf.convergents.emplace_back(p, q);
  };
  if (x.exact) {
    BigInt num = boost::multiprecision::numerator(*x.exact);
    BigInt den = boost::multiprecision::denominator(*x.exact);
    while (cf.partial_quotients.size() < max_terms) {
      BigInt a = num / den;
      if (num % den != 0 && num < 0) a -= 1;
      push(a);
      BigInt r = num - a * den;
      if (r == 0) {
        cf.terminated = true;
        break;
      }
      num = den;
      den = r;
    }
    return cf;
  }
  Real v = x.approx;
  const Real tiny = boost::multiprecision::ldexp(Real(1), -100);
  while (cf.partial_quotients.size() < max_terms) {
    Real a = floor(v);
    push(BigInt(a.convert_to<BigInt>()));
    Real r = v - a;
    if (r < tiny) break;
    v = 1 / r;
  }
  return cf;
}

// ---------------------------------------------------------------------------
// Weyl sums

struct WeylValue {
  Real re = 0;
  Real im = 0;
  Real error_bound = 0;

  [[nodiscard]] Real magnitude() const { return sqrt(re * re + im * im); }
};

/// (1/N) sum_{n=M+1}^{M+N} e^{2 pi i f(n)} with compensated summation.
inline WeylValue weyl_sum(const Polynomial& f, const BigInt& m, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("weyl_sum requires N >= 1");
  Real limit = f.max_safe_argument();
  if (Real(abs(m) + n) > limit) throw CapacityError("weyl_sum argument too large for 100 fractional bits");
  const Real two_pi = 2 * pi_real();
  Real sr = 0, cr = 0, si = 0, ci = 0;
  auto kahan = [](Real& sum, Real& comp, const Real& v) {
    Real y = v - comp;
    Real t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  for (std::uint64_t k = 1; k <= n; ++k) {
    Scalar value = f(scalar_of(m + k));
    Real phase = frac(value).approx * two_pi;
    kahan(sr, cr, cos(phase));
    kahan(si, ci, sin(phase));
  }
  WeylValue w;
  w.re = sr / n;
  w.im = si / n;
  w.error_bound = Real(n) * boost::multiprecision::ldexp(Real(1), -100);
  return w;
}

// ---------------------------------------------------------------------------
// Torus samples and discrepancy

struct TorusSample {
  std::vector<Real> points;
  std::string descriptor;

  static TorusSample from_points(std::vector<Real> pts, std::string descriptor = "points") {
    for (const auto& p : pts) {
      if (p < 0 || p >= 1) throw std::invalid_argument("torus sample point outside [0,1)");
    }
    return {std::move(pts), std::move(descriptor)};
  }

  /// {f(n)} for n = 1..count.
  static TorusSample of_polynomial(const Polynomial& f, std::uint64_t count) {
    TorusSample s;
    s.descriptor = "{" + f.str() + "}, n=1.." + std::to_string(count);
    s.points.reserve(count);
    for (std::uint64_t k = 1; k <= count; ++k) s.points.push_back(frac(f(Scalar(static_cast<std::int64_t>(k)))).approx);
    return s;
  }

  [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// Extreme discrepancy sup_{0<=a<b<=1} |#{x_n in [a,b)}/N - (b-a)|.
///
/// With sorted points x_(1) <= ... <= x_(N):
/// D_N = 1/N + max_i (i/N - x_(i)) - min_i (i/N - x_(i)).
inline Real discrepancy(const TorusSample& sample) {
  if (sample.points.empty()) throw std::invalid_argument("discrepancy of empty sample");
  std::vector<Real> x = sample.points;
  std::sort(x.begin(), x.end());
  const Real n = Real(x.size());
  Real hi = -2, lo = 2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Real v = Real(i + 1) / n - x[i];
    if (v > hi) hi = v;
    if (v < lo) lo = v;
  }
  return 1 / n + hi - lo;
}

/// |S_h|^2 for h = 1..H where S_h = (1/N) sum_n e^{2 pi i h x_n}.
inline std::vector<long double> weyl_magnitudes_squared(const TorusSample& sample, std::uint64_t h_max) {
  const long double two_pi = 6.283185307179586476925286766559L;
  std::size_t n = sample.points.size();
  std::vector<std::complex<long double>> base(n), cur(n, {1.0L, 0.0L});
  for (std::size_t i = 0; i < n; ++i) base[i] = std::polar(1.0L, two_pi * sample.points[i].convert_to<long double>());
  std::vector<long double> out;
  out.reserve(h_max);
  for (std::uint64_t h = 1; h <= h_max; ++h) {
    std::complex<long double> s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      // Exact recomputation every 64 steps keeps the rotation drift negligible.
      cur[i] = (h % 64 == 0) ? std::polar(1.0L, two_pi * static_cast<long double>(h) *
                                                     sample.points[i].convert_to<long double>())
                             : cur[i] * base[i];
      s += cur[i];
    }
    s /= static_cast<long double>(n);
    out.push_back(std::norm(s));
  }
  return out;
}

/// LeVeque's inequality truncated at H, with the tail sum_{h>H} 1/h^2 < 1/H
/// folded in; clamped to 1 since D_N <= 1.
inline Real leveque_bound(const TorusSample& sample, std::uint64_t h_max) {
  if (h_max == 0) throw std::invalid_argument("leveque_bound requires H >= 1");
  if (sample.points.empty()) throw std::invalid_argument("leveque_bound of empty sample");
  auto mags = weyl_magnitudes_squared(sample, h_max);
  long double acc = 0;
  for (std::uint64_t h = 1; h <= h_max; ++h) {
    long double hh = static_cast<long double>(h);
    acc += mags[h - 1] / (hh * hh);
  }
  const long double six_over_pi2 = 0.6079271018540266286632767982697L;
  long double inside = six_over_pi2 * (acc + 1.0L / static_cast<long double>(h_max));
  // Relative slack covering long double rounding in the sums.
  long double bound = std::cbrt(inside) * (1.0L + 1e-12L) + 1e-15L;
  return Real(std::min(bound, 1.0L));
}

// ---------------------------------------------------------------------------
// epsilon-density thresholds

struct DenseThreshold {
  std::optional<std::uint64_t> n;             // max over the pool of per-beta minima
  std::vector<std::uint64_t> per_beta;        // 0 where the search bound was hit
  std::string diagnostic;
  bool pool_uniform_only = true;              // never certifies all real beta
};

namespace detail {

// Tracks max circular gap of a growing point set on [0,1).
class GapTracker {
 public:
  void insert(const Scalar& p) {
    if (points_.empty()) {
      points_.push_back(p);
      return;
    }
    auto pos = std::lower_bound(points_.begin(), points_.end(), p,
                                [](const Scalar& a, const Scalar& b) { return less(a, b); });
    if (pos != points_.end() && equal(*pos, p)) return;
    points_.insert(pos, p);
  }

  [[nodiscard]] std::size_t distinct() const { return points_.size(); }

  /// True when every circular gap is < eps.
  [[nodiscard]] bool dense(const Scalar& eps) const {
    if (points_.empty()) return false;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      if (compare_checked(points_[i + 1] - points_[i], eps) >= 0) return false;
    }
    Scalar wrap = points_.front() + Scalar(1) - points_.back();
    return compare_checked(wrap, eps) < 0;
  }

 private:
  static bool equal(const Scalar& a, const Scalar& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    return false;
  }
  static bool less(const Scalar& a, const Scalar& b) {
    if (a.exact && b.exact) return *a.exact < *b.exact;
    return a.approx < b.approx;
  }

  std::vector<Scalar> points_;
};

}  // namespace detail

/// Least N such that {p(n xi + beta)}_{n=1..N} has every circular gap < eps,
/// maximized over beta in the pool. Density only improves with N, so the
/// per-beta minimum is found by a linear scan up to n_max.
inline DenseThreshold epsilon_dense_threshold(const Polynomial& p, const Scalar& xi, const Scalar& eps,
                                              const std::vector<Scalar>& beta_pool, std::uint64_t n_max) {
  if (!(eps.approx > 0 && eps.approx < 1)) throw std::invalid_argument("eps must lie in (0,1)");
  if (beta_pool.empty()) throw std::invalid_argument("beta pool is empty");
  DenseThreshold out;
  std::uint64_t worst = 0;
  bool all_found = true;
  for (const auto& beta : beta_pool) {
    detail::GapTracker tracker;
    std::uint64_t found = 0;
    // Gaps shrink only when a new distinct value arrives, and there are at
    // least ceil(1/eps) points before the set can be dense.
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      std::size_t before = tracker.distinct();
      tracker.insert(frac(p(Scalar(static_cast<std::int64_t>(n)) * xi + beta)));
      if (tracker.distinct() != before && Real(tracker.distinct()) * eps.approx > 1 && tracker.dense(eps)) {
        found = n;
        break;
      }
    }
    out.per_beta.push_back(found);
    if (found == 0) {
      all_found = false;
      out.diagnostic = "beta=" + beta.str() + ": not eps-dense within N=" + std::to_string(n_max) + " (" +
                       std::to_string(tracker.distinct()) + " distinct values)";
      break;
    }
    worst = std::max(worst, found);
  }
  if (all_found) {
    out.n = worst;
    out.diagnostic = "uniform over the finite beta pool only";
  }
  return out;
}

}  // namespace ramsey
