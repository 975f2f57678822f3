#pragma once

// Independent certificate checker. Recomputes every claim from the raw
// certificate and the set's membership test; it deliberately uses none of
// the search code.

#include "certificate.hpp"
#include "groundset.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ramsey {

struct VerifyResult {
  bool ok = true;
  std::string kind;
  std::uint64_t checks = 0;
  std::string message;

  explicit operator bool() const { return ok; }
};

namespace verify_detail {

inline std::string alpha_str(std::uint64_t mask) {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < 64; ++i) {
    if ((mask >> i) & 1U) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
  }
  return s + "}";
}

inline std::string list_str(const std::vector<BigInt>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_dec(v[i]);
  return s + ")";
}

class Checker {
 public:
  Checker(const LazySet* set, std::string kind) : set_(set) { r_.kind = std::move(kind); }

  bool fail(std::string msg) {
    if (r_.ok) {
      r_.ok = false;
      r_.message = std::move(msg);
    }
    return false;
  }

  void count() { ++r_.checks; }
  [[nodiscard]] bool ok() const { return r_.ok; }

  std::optional<bool> query(const BigInt& x, const std::string& where = "query") {
    if (!set_) {
      fail("certificate needs a set to check against");
      return std::nullopt;
    }
    try {
      return set_->contains(x);
    } catch (const RangeError&) {
      fail(where + ": " + to_dec(x) + " lies outside the set's window");
      return std::nullopt;
    }
  }

  // Membership claim; `where` names the offending index in failures.
  bool member(const BigInt& x, const std::string& where, bool expected = true) {
    ++r_.checks;
    auto in = query(x, where);
    if (!in) return false;
    if (*in != expected) {
      return fail(where + ": " + to_dec(x) + (expected ? " is not in the set" : " is in the set"));
    }
    return true;
  }

  VerifyResult done() {
    if (r_.ok) r_.message = "all " + std::to_string(r_.checks) + " claims hold";
    return r_;
  }

 private:
  const LazySet* set_;
  VerifyResult r_;
};

inline BigInt combine(GroundKind g, const BigInt& a, const BigInt& b) {
  switch (g) {
    case GroundKind::NaturalsAdditive:
    case GroundKind::IntegersAdditive: return a + b;
    case GroundKind::NaturalsMultiplicative: return a * b;
    default: throw std::invalid_argument("verification over field ground structures is not supported");
  }
}

inline bool is_element(GroundKind g, const BigInt& x) {
  switch (g) {
    case GroundKind::NaturalsAdditive: return x >= 0;
    case GroundKind::NaturalsMultiplicative: return x >= 1;
    case GroundKind::IntegersAdditive: return true;
    default: return false;
  }
}

inline bool next_tuple(std::vector<std::uint64_t>& j, std::uint64_t n) {
  for (std::size_t i = j.size(); i-- > 0;) {
    if (j[i] < n) {
      ++j[i];
      return true;
    }
    j[i] = 1;
  }
  return false;
}

// Polynomials over F_p, constant term first, trimmed.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - m[i]) * c) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(c, m, p);
}

inline Poly poly_pow(Poly a, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  while (e) {
    if (e & 1U) r = poly_mul(r, a, m, p);
    a = poly_mul(a, a, m, p);
    e >>= 1U;
  }
  return r;
}

inline Poly decode(std::uint64_t x, std::uint64_t p, std::uint64_t m) {
  Poly a;
  for (std::uint64_t i = 0; i < m; ++i, x /= p) a.push_back(x % p);
  trim(a);
  return a;
}

inline bool prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Irreducible iff no monic polynomial of degree 1..m/2 leaves remainder zero.
inline bool irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g = decode(code, p, d);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

}  // namespace verify_detail

/// Checks a certificate against a set. Field witnesses and alpha selections
/// are self-contained; pass set = nullptr for them.
inline VerifyResult verify_certificate(const Certificate& cert, const LazySet* set) {
  using namespace verify_detail;
  Checker ck(set, certificate_kind(cert));
  return std::visit(
      [&](const auto& c) -> VerifyResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SyndeticCertificate>) {
          if (c.witness_F.empty()) ck.fail("witness_F is empty");
          if (c.horizon - c.range_lo >= BigInt(kMaxWindowSize)) ck.fail("range larger than 2^26");
          for (BigInt n = c.range_lo; n <= c.horizon && ck.ok(); ++n) {
            bool covered = false;
            for (const auto& f : c.witness_F) {
              auto in = ck.query(combine(c.ground, f, n));
              if (!in) break;
              if (*in) {
                covered = true;
                break;
              }
            }
            ck.count();
            if (!covered) ck.fail("n=" + to_dec(n) + ": no f in F maps n into the set");
          }
        } else if constexpr (std::is_same_v<T, ThickRunCertificate>) {
          if (c.length < 1) ck.fail("length must be positive");
          if (c.length > BigInt(kMaxWindowSize)) ck.fail("run longer than 2^26");
          for (BigInt i = 0; i < c.length && ck.ok(); ++i) ck.member(c.start + i, "i=" + to_dec(i));
        } else if constexpr (std::is_same_v<T, TranslateCertificate>) {
          for (std::size_t i = 0; i < c.F.size() && ck.ok(); ++i) {
            ck.member(combine(c.ground, c.F[i], c.x), "F[" + std::to_string(i) + "]");
          }
        } else if constexpr (std::is_same_v<T, IPrCertificate>) {
          const std::size_t r = c.generators.size();
          if (r == 0 || r > 30) ck.fail("generator count must be in [1,30]");
          for (std::size_t i = 0; i < r && ck.ok(); ++i) {
            if (!is_element(c.ground, c.generators[i]) || c.generators[i] == (c.ground == GroundKind::NaturalsMultiplicative ? 1 : 0))
              ck.fail("generator " + std::to_string(i) + " is the identity or not an element");
            if (i > 0 && !(c.generators[i - 1] < c.generators[i])) ck.fail("generators are not strictly increasing");
          }
          std::map<std::uint64_t, BigInt> claimed;
          for (const auto& [mask, v] : c.values) {
            if (mask == 0 || (r < 64 && (mask >> r) != 0)) ck.fail("alpha " + alpha_str(mask) + " out of range");
            if (!claimed.emplace(mask, v).second) ck.fail("alpha " + alpha_str(mask) + " listed twice");
          }
          if (ck.ok() && claimed.size() != (std::uint64_t{1} << r) - 1) ck.fail("value list is incomplete");
          for (const auto& [mask, v] : claimed) {
            if (!ck.ok()) break;
            BigInt s = c.ground == GroundKind::NaturalsMultiplicative ? 1 : 0;
            for (std::size_t i = 0; i < r; ++i) {
              if ((mask >> i) & 1U) s = combine(c.ground, s, c.generators[i]);
            }
            if (s != v) {
              ck.fail("alpha " + alpha_str(mask) + ": claimed " + to_dec(v) + " but generators give " + to_dec(s));
              break;
            }
            ck.member(s, "alpha " + alpha_str(mask), !c.refutes_dual);
          }
        } else if constexpr (std::is_same_v<T, APCertificate>) {
          if (c.step < 1) ck.fail("step must be >= 1");
          for (std::uint64_t i = 0; i < c.length && ck.ok(); ++i) ck.member(c.start + c.step * i, "i=" + std::to_string(i));
        } else if constexpr (std::is_same_v<T, GPCertificate>) {
          if (c.ratio < 2 || c.start < 1) ck.fail("needs start >= 1 and ratio >= 2");
          BigInt v = c.start;
          for (std::uint64_t i = 0; i < c.length && ck.ok(); ++i, v *= c.ratio) ck.member(v, "i=" + std::to_string(i));
        } else if constexpr (std::is_same_v<T, GeneralizedAPCertificate>) {
          if (c.d.empty() || c.n == 0) ck.fail("empty progression");
          for (const auto& d : c.d) {
            if (d < 1) ck.fail("differences must be >= 1");
          }
          std::vector<std::uint64_t> j(c.d.size(), 1);
          if (ck.ok()) {
            do {
              BigInt v = c.s;
              for (std::size_t i = 0; i < j.size(); ++i) v += c.d[i] * j[i];
              ck.member(v, "j=" + list_str(std::vector<BigInt>(j.begin(), j.end())));
            } while (ck.ok() && next_tuple(j, c.n));
          }
        } else if constexpr (std::is_same_v<T, GeometricCubeCertificate>) {
          if (c.d.empty() || c.n == 0) ck.fail("empty cube");
          for (const auto& d : c.d) {
            if (d < 2) ck.fail("ratios must be >= 2");
          }
          std::vector<std::uint64_t> j(c.d.size(), 1);
          if (ck.ok()) {
            do {
              BigInt v = c.s;
              for (std::size_t i = 0; i < j.size(); ++i) v *= pow_big(c.d[i], j[i]);
              ck.member(v, "j=" + list_str(std::vector<BigInt>(j.begin(), j.end())));
            } while (ck.ok() && next_tuple(j, c.n));
          }
        } else if constexpr (std::is_same_v<T, GeoArithCertificate>) {
          if (c.c < 1 || c.a < 1 || c.d < 1 || c.n == 0) ck.fail("needs c, a, d, n >= 1");
          for (std::uint64_t i = 1; i <= c.n && ck.ok(); ++i) {
            BigInt base = c.a + c.d * i;
            BigInt v = c.c;
            for (std::uint64_t j = 1; j <= c.n && ck.ok(); ++j) {
              v *= base;
              ck.member(v, "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
          }
        } else if constexpr (std::is_same_v<T, RichnessCertificate>) {
          const std::size_t rows = c.matrix.size();
          if (rows == 0 || c.alpha == 0 || (rows < 64 && (c.alpha >> rows) != 0)) ck.fail("alpha " + alpha_str(c.alpha) + " out of range");
          const std::size_t cols = rows ? c.matrix.front().size() : 0;
          for (const auto& row : c.matrix) {
            if (row.size() != cols) ck.fail("ragged matrix");
          }
          for (std::size_t j = 0; j < cols && ck.ok(); ++j) {
            BigInt v = c.ground == GroundKind::NaturalsMultiplicative ? 1 : 0;
            for (std::size_t i = 0; i < rows; ++i) {
              if ((c.alpha >> i) & 1U) v = combine(c.ground, v, c.matrix[i][j]);
            }
            ck.member(combine(c.ground, c.s, v), "alpha " + alpha_str(c.alpha) + ", column " + std::to_string(j));
          }
        } else if constexpr (std::is_same_v<T, LineCertificate>) {
          // Words are encoded base n with the first letter most significant, letter l as digit l-1.
          bool wildcard = false;
          for (auto l : c.letters) {
            if (l > c.n) ck.fail("letter " + std::to_string(l) + " exceeds alphabet size");
            wildcard = wildcard || l == 0;
          }
          if (!wildcard) ck.fail("word has no wildcard");
          for (std::uint32_t sub = 1; sub <= c.n && ck.ok(); ++sub) {
            BigInt idx = 0;
            for (auto l : c.letters) idx = idx * c.n + ((l == 0 ? sub : l) - 1);
            ck.member(idx, "point with * = " + std::to_string(sub));
          }
        } else if constexpr (std::is_same_v<T, FieldWitnessCertificate>) {
          if (!prime_u64(c.p) || c.m < 1) {
            ck.fail("field parameters p=" + std::to_string(c.p) + ", m=" + std::to_string(c.m) + " are invalid");
            return ck.done();
          }
          std::uint64_t q = 1;
          for (std::uint64_t i = 0; i < c.m; ++i) {
            if (q > (std::uint64_t{1} << 20U) / c.p) {
              ck.fail("field order exceeds 2^20");
              return ck.done();
            }
            q *= c.p;
          }
          Poly modulus = c.m == 1 ? Poly{0, 1} : Poly(c.modulus.begin(), c.modulus.end());
          if (modulus.size() != c.m + 1 || modulus.back() != 1 ||
              std::any_of(modulus.begin(), modulus.end(), [&](std::uint64_t v) { return v >= c.p; }) ||
              !irreducible(modulus, c.p)) {
            ck.fail("modulus is not a monic irreducible polynomial of degree m");
            return ck.done();
          }
          auto elem = [&](std::uint64_t v, const char* what) {
            if (v >= q) ck.fail(std::string(what) + " " + std::to_string(v) + " is not a field element");
            return decode(v, c.p, c.m);
          };
          Poly x = elem(c.x, "x");
          Poly g = elem(c.coset_rep, "coset_rep");
          if (x.empty() || g.empty()) ck.fail("x and coset_rep must be non-zero");
          if (!ck.ok()) return ck.done();
          // y lies in g * Gamma iff (y / g)^((q-1)/d) = 1 with d = gcd(k, q-1).
          const std::uint64_t d = gcd_u64(c.k, q - 1);
          Poly g_inv = poly_pow(g, q - 2, modulus, c.p);
          Poly xk = poly_pow(x, c.k, modulus, c.p);
          for (std::size_t i = 0; i < c.F.size() && ck.ok(); ++i) {
            Poly f = elem(c.F[i], "F element");
            Poly y = xk;
            y.resize(std::max(y.size(), f.size()), 0);
            for (std::size_t t = 0; t < f.size(); ++t) y[t] = (y[t] + f[t]) % c.p;
            trim(y);
            ck.count();
            if (y.empty()) {
              ck.fail("F[" + std::to_string(i) + "]: x^k + f is zero");
              break;
            }
            Poly test = poly_pow(poly_mul(y, g_inv, modulus, c.p), (q - 1) / d, modulus, c.p);
            if (test != Poly{1}) ck.fail("F[" + std::to_string(i) + "]: x^k + f is not in the coset of k-th powers");
          }
        } else {
          const auto& mtx = c.matrix;
          if (mtx.empty() || c.alpha == 0 || (mtx.size() < 64 && (c.alpha >> mtx.size()) != 0)) {
            ck.fail("alpha " + alpha_str(c.alpha) + " out of range");
            return ck.done();
          }
          const std::size_t cols = mtx.front().size();
          std::vector<BigInt> row(cols, 1);
          for (std::size_t i = 0; i < mtx.size(); ++i) {
            if (mtx[i].size() != cols) {
              ck.fail("ragged matrix");
              return ck.done();
            }
            if ((c.alpha >> i) & 1U) {
              for (std::size_t j = 0; j < cols; ++j) row[j] *= mtx[i][j];
            }
          }
          if (row != c.row) {
            ck.fail("alpha " + alpha_str(c.alpha) + ": row product differs from the claimed row");
            return ck.done();
          }
          for (std::size_t a = 0; a < cols && ck.ok(); ++a) {
            for (std::size_t b = 0; b < cols && ck.ok(); ++b) {
              for (std::size_t e = 0; e < cols; ++e) {
                ck.count();
                if (row[a] < row[b] && row[b] < row[e] && row[a] + row[e] == 2 * row[b]) {
                  ck.fail("alpha " + alpha_str(c.alpha) + ": entries " + std::to_string(a) + "," + std::to_string(b) + "," +
                          std::to_string(e) + " form a 3-term AP");
                  break;
                }
              }
            }
          }
        }
        return ck.done();
      },
      cert);
}

inline VerifyResult verify_certificate(const Certificate& cert, const LazySet& set) {
  return verify_certificate(cert, &set);
}

}  // namespace ramsey
