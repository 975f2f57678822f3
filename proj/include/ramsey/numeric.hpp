#pragma once

// Big integers, high-precision reals, exact rationals and the error types
// shared by every module.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ramsey {

using BigInt = boost::multiprecision::cpp_int;

// 192 binary digits: leaves >= 128 fractional bits for values below 2^64.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<192, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

using Rational = boost::rational<std::int64_t>;

/// Membership was requested outside the range on which a set is defined.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A real-valued comparison fell inside the declared error band.
class BoundaryAmbiguity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested computation exceeds a documented size cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Caps the number of elementary steps a search may take. Exhaustion turns
/// an answer into "inconclusive" rather than a negative.
class Budget {
 public:
  explicit Budget(std::uint64_t limit = std::numeric_limits<std::uint64_t>::max()) : limit_(limit) {}

  bool spend(std::uint64_t steps = 1) {
    if (exhausted_) return false;
    if (steps > limit_ - used_) {
      used_ = limit_;
      exhausted_ = true;
      return false;
    }
    used_ += steps;
    return true;
  }
  [[nodiscard]] bool exhausted() const { return exhausted_; }
  [[nodiscard]] std::uint64_t used() const { return used_; }
  [[nodiscard]] std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
};

/// Outcome of a bounded search: a witness, or none with an explicit
/// inconclusive flag when the budget ran out first.
template <class T>
struct SearchResult {
  std::optional<T> witness;
  bool inconclusive = false;
  std::string note;

  explicit operator bool() const { return witness.has_value(); }
};

// Decisions closer than this to an interval endpoint are refused.
inline const Real& boundary_band() {
  static const Real band = boost::multiprecision::ldexp(Real(1), -64);
  return band;
}

inline std::string to_dec(const BigInt& v) { return v.str(); }

inline BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("malformed integer: " + std::string(text));
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9')
      throw std::invalid_argument("malformed integer: " + std::string(text));
  }
  return BigInt(std::string(text));
}

inline bool fits_u64(const BigInt& v) {
  return v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

inline std::uint64_t to_u64(const BigInt& v) {
  if (!fits_u64(v)) throw RangeError("value does not fit in 64 bits: " + to_dec(v));
  return v.convert_to<std::uint64_t>();
}

inline BigInt pow_big(BigInt base, std::uint64_t exp) {
  BigInt out = 1;
  while (exp) {
    if (exp & 1U) out *= base;
    exp >>= 1U;
    if (exp) base *= base;
  }
  return out;
}

/// Number of bits in |v| (0 for v == 0).
inline std::uint64_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

inline Real frac(const Real& x) { return x - floor(x); }

/// Distance from x to the nearest integer.
inline Real torus_norm(const Real& x) {
  Real f = frac(x);
  Real g = 1 - f;
  return f < g ? f : g;
}

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

inline std::string rational_str(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "a/b", "a" or a finite decimal such as "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto num = std::stoll(std::string(text.substr(0, slash)));
    auto den = std::stoll(std::string(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
    return {num, den};
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(std::stoll(std::string(text)));
  std::string digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
  std::int64_t den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) {
    if (den > std::numeric_limits<std::int64_t>::max() / 10)
      throw std::invalid_argument("too many decimals: " + std::string(text));
    den *= 10;
  }
  return {std::stoll(digits), den};
}

inline Real to_real(const Rational& r) { return Real(r.numerator()) / Real(r.denominator()); }

// Standard base64 (RFC 4648) for window bitmaps.
namespace base64 {

inline std::string encode(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    std::uint32_t v = (bytes[i] << 16U) | (bytes[i + 1] << 8U) | bytes[i + 2];
    out += kAlphabet[(v >> 18U) & 63U];
    out += kAlphabet[(v >> 12U) & 63U];
    out += kAlphabet[(v >> 6U) & 63U];
    out += kAlphabet[v & 63U];
  }
  if (i + 1 == bytes.size()) {
    std::uint32_t v = bytes[i] << 16U;
    out += kAlphabet[(v >> 18U) & 63U];
    out += kAlphabet[(v >> 12U) & 63U];
    out += "==";
  } else if (i + 2 == bytes.size()) {
    std::uint32_t v = (bytes[i] << 16U) | (bytes[i + 1] << 8U);
    out += kAlphabet[(v >> 18U) & 63U];
    out += kAlphabet[(v >> 12U) & 63U];
    out += kAlphabet[(v >> 6U) & 63U];
    out += '=';
  }
  return out;
}

inline std::vector<std::uint8_t> decode(std::string_view text) {
  auto value = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  if (text.size() % 4 != 0) throw std::invalid_argument("base64 length not a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int pad = 0;
    std::uint32_t v = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      char c = text[i + j];
      if (c == '=') {
        if (i + 4 != text.size() || j < 2) throw std::invalid_argument("misplaced base64 padding");
        ++pad;
        v <<= 6U;
        continue;
      }
      if (pad) throw std::invalid_argument("misplaced base64 padding");
      int x = value(c);
      if (x < 0) throw std::invalid_argument("invalid base64 character");
      v = (v << 6U) | static_cast<std::uint32_t>(x);
    }
    out.push_back(static_cast<std::uint8_t>(v >> 16U));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>(v >> 8U));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

}  // namespace base64

}  // namespace ramsey
