#include "ramsey/constructions.hpp"
#include "ramsey/patterns.hpp"
#include "ramsey/verify.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ramsey;

namespace {

const auto kAdd = GroundStructure::naturals_additive();
const auto kMul = GroundStructure::naturals_multiplicative();

IntegerWindowSet window_of(std::int64_t lo, std::int64_t hi, const std::vector<std::int64_t>& members) {
  std::vector<BigInt> m(members.begin(), members.end());
  return IntegerWindowSet::from_members(lo, hi, m);
}

// Longest AP by trying every (start, step) pair.
std::tuple<std::int64_t, std::int64_t, std::uint64_t> longest_ap_brute(const IntegerWindowSet& w) {
  const auto lo = w.lo().convert_to<std::int64_t>(), hi = w.hi().convert_to<std::int64_t>();
  std::tuple<std::int64_t, std::int64_t, std::uint64_t> best{0, 1, 0};
  for (std::int64_t s = lo; s < hi; ++s) {
    if (!w.contains(s)) continue;
    if (std::get<2>(best) == 0) best = {s, 1, 1};
    for (std::int64_t d = 1; s + d < hi; ++d) {
      std::uint64_t len = 0;
      for (std::int64_t x = s; x < hi && w.contains(x); x += d) ++len;
      if (len > std::get<2>(best)) best = {s, d, len};
    }
  }
  return best;
}

// Lines of [n]^r by direct enumeration of all variable words.
std::vector<LineCertificate> all_lines(std::uint32_t n, std::uint32_t r) {
  std::vector<LineCertificate> out;
  std::vector<std::uint32_t> w(r, 0);
  while (true) {
    if (std::find(w.begin(), w.end(), 0U) != w.end()) out.push_back({n, w});
    std::size_t i = 0;
    while (i < r && w[i] == n) w[i++] = 0;
    if (i == r) break;
    ++w[i];
  }
  return out;
}

bool has_line_brute(const WordSet& s) {
  for (const auto& line : all_lines(s.n(), s.r())) {
    bool all = true;
    for (const auto& p : line_points(line)) all = all && s.contains(p);
    if (all) return true;
  }
  return false;
}

std::vector<BigInt> range(std::int64_t a, std::int64_t b) {
  std::vector<BigInt> out;
  for (std::int64_t x = a; x <= b; ++x) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Ap, OddRun) {
  auto res = longest_ap(window_of(0, 10, {1, 3, 5, 7}));
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->start, 1);
  EXPECT_EQ(res.witness->step, 2);
  EXPECT_EQ(res.witness->length, 4U);
}

TEST(Ap, PowersOfTwoHaveOnlyPairs) {
  std::vector<std::int64_t> powers;
  for (std::int64_t p = 1; p <= 1000000; p *= 2) powers.push_back(p);
  auto res = longest_ap(window_of(1, 1000001, powers));
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->length, 2U);
  EXPECT_EQ(res.witness->start, 1);
  EXPECT_EQ(res.witness->step, 1);
}

TEST(Ap, EvensInLargeWindow) {
  auto w = IntegerWindowSet::from_predicate(0, 10000, [](const BigInt& x) { return x % 2 == 0; });
  auto res = longest_ap(w);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(std::make_tuple(res.witness->start, res.witness->step, res.witness->length),
            std::make_tuple(BigInt(0), BigInt(2), std::uint64_t{5000}));
}

TEST(Ap, AgreesWithBruteForce) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    std::bernoulli_distribution coin(0.2 + 0.01 * trial);
    auto w = IntegerWindowSet::from_predicate(-20, 130, [&](const BigInt&) { return coin(rng); });
    auto res = longest_ap(w);
    auto [s, d, len] = longest_ap_brute(w);
    if (len == 0) {
      EXPECT_FALSE(res.witness);
      continue;
    }
    ASSERT_TRUE(res.witness);
    EXPECT_EQ(res.witness->length, len);
    EXPECT_EQ(res.witness->start, s);
    EXPECT_EQ(res.witness->step, d);
    EXPECT_TRUE(verify_certificate(*res.witness, w.as_lazy()).ok);
  }
}

TEST(Ap, UnionIsNoShorter) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = IntegerWindowSet::from_predicate(0, 500, [&](const BigInt&) { return rng() % 6 == 0; });
    auto b = IntegerWindowSet::from_predicate(0, 500, [&](const BigInt&) { return rng() % 5 == 0; });
    auto u = IntegerWindowSet::from_predicate(0, 500, [&](const BigInt& x) { return a.contains(x) || b.contains(x); });
    auto la = longest_ap(a), lb = longest_ap(b), lu = longest_ap(u);
    ASSERT_TRUE(lu.witness);
    EXPECT_GE(lu.witness->length, std::max(la.witness ? la.witness->length : 0, lb.witness ? lb.witness->length : 0));
  }
}

TEST(Gp, DoublingRun) {
  auto res = longest_gp(window_of(0, 30, {3, 6, 12, 24}));
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->start, 3);
  EXPECT_EQ(res.witness->ratio, 2);
  EXPECT_EQ(res.witness->length, 4U);
}

TEST(Gp, OddsCarryPowersOfThree) {
  auto w = IntegerWindowSet::from_predicate(1, 100001, [](const BigInt& x) { return x % 2 == 1; });
  auto res = longest_gp(w);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->start, 1);
  EXPECT_EQ(res.witness->ratio, 3);
  EXPECT_EQ(res.witness->length, 11U);  // 3^10 = 59049 < 10^5 < 3^11
  EXPECT_TRUE(verify_certificate(*res.witness, w.as_lazy()).ok);
}

TEST(Gp, ThickBlocksHoldNoProgression) {
  ThickNoKxy t(4);
  for (std::uint64_t n = 1; n <= 4; ++n) {
    auto w = materialize(thick_no_kxy(4), t.x(n), t.y(n) + 1);
    EXPECT_EQ(w.count(), n + 1);
    auto res = longest_gp(w);
    ASSERT_TRUE(res.witness);
    EXPECT_EQ(res.witness->length, 1U);
  }
}

TEST(GeneralizedAp, NaturalsAlwaysSucceed) {
  auto a = residue_set(1, {0}, 1);
  for (std::uint64_t n = 1; n <= 4; ++n) {
    for (std::uint64_t m = 1; m <= 3; ++m) {
      auto res = find_generalized_ap(a, n, m, {range(1, 5), {}, range(1, 5)});
      ASSERT_TRUE(res.witness);
      EXPECT_EQ(res.witness->s, 1);
      EXPECT_EQ(res.witness->d, std::vector<BigInt>(m, BigInt(1)));
    }
  }
}

TEST(GeneralizedAp, EvensTwoByTwo) {
  auto a = residue_set(2, {0});
  auto res = find_generalized_ap(a, 2, 2, {range(1, 20), {}, range(1, 20)});
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->s, 2);
  EXPECT_EQ(res.witness->d, (std::vector<BigInt>{2, 2}));
  EXPECT_TRUE(verify_certificate(*res.witness, a).ok);
}

TEST(GeneralizedAp, SquarefreeThreeByTwo) {
  auto a = squarefree_set();
  auto res = find_generalized_ap(a, 3, 2, {range(1, 200), {}, range(1, 200)});
  ASSERT_TRUE(res.witness);
  EXPECT_TRUE(verify_certificate(*res.witness, a).ok);
  // Independent recomputation of all nine points.
  for (int j1 = 1; j1 <= 3; ++j1) {
    for (int j2 = 1; j2 <= 3; ++j2) {
      auto v = (res.witness->s + j1 * res.witness->d[0] + j2 * res.witness->d[1]).convert_to<std::uint64_t>();
      for (std::uint64_t p = 2; p * p <= v; ++p) ASSERT_NE(v % (p * p), 0U);
    }
  }
}

TEST(GeometricCube, EvensMultiplicative) {
  auto a = residue_set(2, {0});
  auto res = find_geometric_cube(a, 2, 2, {range(1, 10), {}, range(1, 10)});
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(res.witness->s, 1);
  EXPECT_EQ(res.witness->d, (std::vector<BigInt>{2, 2}));
  GeometricCubeCertificate listed{2, {2, 2}, 2};
  EXPECT_TRUE(verify_certificate(listed, a).ok);
}

TEST(GeometricCube, EvenOmega) {
  LazySet a("omega_even", [](const BigInt& n) { return n >= 1 && big_omega(n) % 2 == 0; });
  auto res = find_geometric_cube(a, 2, 1, {range(1, 50), {}, range(1, 50)});
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(big_omega(res.witness->s) % 2, 0U);
  EXPECT_EQ(big_omega(res.witness->d[0]) % 2, 0U);
  EXPECT_TRUE(verify_certificate(*res.witness, a).ok);
}

TEST(GeometricCube, OmegaLevelSet) {
  auto a = level_set(parse_polynomial("sqrt2*x"), Homomorphism{HomKind::Omega, 2},
                     UnitInterval(Scalar(0), Scalar::rational(1, 2)));
  auto res = find_geometric_cube(a, 2, 2, {range(1, 1000), {}, range(2, 1000)});
  ASSERT_TRUE(res.witness);
  EXPECT_TRUE(verify_certificate(*res.witness, a).ok);
  for (int j1 = 1; j1 <= 2; ++j1) {
    for (int j2 = 1; j2 <= 2; ++j2) {
      BigInt v = res.witness->s * pow_big(res.witness->d[0], j1) * pow_big(res.witness->d[1], j2);
      EXPECT_LE(v, 1000000000000LL);
      double f = std::sqrt(2.0) * big_omega(v);
      EXPECT_LT(f - std::floor(f), 0.5);
    }
  }
}

TEST(GeoArithmetic, Naturals) {
  auto res = find_geo_arithmetic(residue_set(1, {0}, 1), 3, {range(1, 3), range(1, 3), range(1, 3)});
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(std::make_tuple(res.witness->c, res.witness->a, res.witness->d), std::make_tuple(BigInt(1), BigInt(1), BigInt(1)));
}

TEST(GeoArithmetic, MultiplesOfFour) {
  auto a = residue_set(4, {0});
  EXPECT_TRUE(verify_certificate(GeoArithCertificate{4, 1, 1, 2}, a).ok);
  auto res = find_geo_arithmetic(a, 2, {range(1, 8), range(1, 8), range(1, 8)});
  ASSERT_TRUE(res.witness);
  // Oracle: first (c, a, d) in pool order with every c (a + i d)^j = 0 mod 4.
  std::optional<std::array<int, 3>> expected;
  for (int c = 1; c <= 8 && !expected; ++c) {
    for (int x = 1; x <= 8 && !expected; ++x) {
      for (int d = 1; d <= 8 && !expected; ++d) {
        bool ok = true;
        for (int i = 1; i <= 2; ++i) {
          for (int j = 1; j <= 2; ++j) ok = ok && (c * static_cast<int>(std::pow(x + i * d, j))) % 4 == 0;
        }
        if (ok) expected = std::array<int, 3>{c, x, d};
      }
    }
  }
  ASSERT_TRUE(expected);
  EXPECT_EQ(res.witness->c, (*expected)[0]);
  EXPECT_EQ(res.witness->a, (*expected)[1]);
  EXPECT_EQ(res.witness->d, (*expected)[2]);
}

TEST(GeoArithmetic, EvenOmega) {
  LazySet a("omega_even", [](const BigInt& n) { return n >= 1 && big_omega(n) % 2 == 0; });
  auto res = find_geo_arithmetic(a, 2, {range(1, 30), range(1, 30), range(1, 30)});
  ASSERT_TRUE(res.witness);
  EXPECT_TRUE(verify_certificate(*res.witness, a).ok);
}

TEST(FsFp, DistinctBinarySums) {
  auto t = fs_fp_enumerate({1, 2, 4}, kAdd);
  std::vector<BigInt> values;
  for (const auto& [mask, v] : t.values) {
    EXPECT_EQ(v, static_cast<std::int64_t>(mask));
    values.push_back(v);
  }
  EXPECT_EQ(values.size(), 7U);
  EXPECT_TRUE(t.duplicates.empty());
}

TEST(FsFp, DuplicatesFlagged) {
  auto t = fs_fp_enumerate({2, 2}, kAdd);
  ASSERT_EQ(t.duplicates.size(), 1U);
  EXPECT_EQ(t.duplicates[0], (std::vector<std::uint64_t>{1, 2}));
}

TEST(FsFp, TowerOfSquares) {
  auto t = fs_fp_enumerate({4, 16, 256}, kAdd);
  std::vector<BigInt> got;
  for (const auto& [mask, v] : t.values) got.push_back(v);
  EXPECT_EQ(got, (std::vector<BigInt>{4, 16, 20, 256, 260, 272, 276}));
  for (const auto& v : got) EXPECT_EQ(v % 4, 0);
}

TEST(FsFp, EqualGenerators) {
  for (std::size_t r = 1; r <= 6; ++r) {
    std::vector<BigInt> gens(r, BigInt(3));
    std::set<BigInt> add, mul;
    for (const auto& [mask, v] : fs_fp_enumerate(gens, kAdd).values) add.insert(v);
    for (const auto& [mask, v] : fs_fp_enumerate(gens, kMul).values) mul.insert(v);
    std::set<BigInt> add_expected, mul_expected;
    for (std::size_t k = 1; k <= r; ++k) {
      add_expected.insert(BigInt(3 * k));
      mul_expected.insert(pow_big(3, k));
    }
    EXPECT_EQ(add, add_expected);
    EXPECT_EQ(mul, mul_expected);
  }
  EXPECT_THROW(fs_fp_enumerate(std::vector<BigInt>(25, 1), kAdd), CapacityError);
}

TEST(Words, IndexPutsFirstLetterHighest) {
  WordSet s(3, 2);
  EXPECT_EQ(s.index({1, 1}), 0U);
  EXPECT_EQ(s.index({1, 2}), 1U);
  EXPECT_EQ(s.index({2, 1}), 3U);
  EXPECT_EQ(s.word(5), (std::vector<std::uint32_t>{2, 3}));
  auto p = WordSet::parse(10, 2, "1.10 10.1");
  EXPECT_TRUE(p.contains({10, 1}));
  EXPECT_EQ(p.count(), 2U);
}

TEST(Lines, FullCubeAndDiagonal) {
  auto full = WordSet::parse(2, 2, "11 12 21 22");
  auto res = find_combinatorial_line(full);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(line_points(*res.witness).size(), 2U);
  auto diag = WordSet::parse(2, 2, "11 22");
  auto d = find_combinatorial_line(diag);
  ASSERT_TRUE(d.witness);
  EXPECT_EQ(d.witness->letters, (std::vector<std::uint32_t>{0, 0}));
  EXPECT_EQ(line_word_string(*d.witness), "* *");
  EXPECT_FALSE(find_combinatorial_line(WordSet::parse(2, 2, "12 21")).witness);
}

TEST(Lines, ExhaustiveAgreementForBinaryCubes) {
  for (std::uint32_t r = 1; r <= 3; ++r) {
    const std::uint64_t size = std::uint64_t{1} << r;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << size); ++subset) {
      WordSet s(2, r);
      for (std::uint64_t i = 0; i < size; ++i) {
        if (subset >> i & 1U) s.insert_index(i);
      }
      auto res = find_combinatorial_line(s);
      ASSERT_EQ(res.witness.has_value(), has_line_brute(s)) << "r=" << r << " subset=" << subset;
      if (res.witness) {
        for (const auto& p : line_points(*res.witness)) EXPECT_TRUE(s.contains(p));
      }
    }
  }
}

TEST(Lines, ThreeQuartersOfTheSquare) {
  for (std::uint64_t skip = 0; skip < 4; ++skip) {
    WordSet s(2, 2);
    for (std::uint64_t i = 0; i < 4; ++i) {
      if (i != skip) s.insert_index(i);
    }
    EXPECT_TRUE(find_combinatorial_line(s).witness) << "without index " << skip;
  }
}

TEST(Lines, LargestLineFreeBinarySetsAreSpernerFamilies) {
  // A line in [2]^r is a pair u < v differing on a common set of positions,
  // so line-free sets are antichains and the largest has C(r, r/2) words.
  const std::vector<std::uint64_t> sperner = {1, 2, 3, 6};
  for (std::uint32_t r = 1; r <= 4; ++r) {
    const std::uint64_t size = std::uint64_t{1} << r;
    std::uint64_t largest = 0;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << size); ++subset) {
      auto c = static_cast<std::uint64_t>(__builtin_popcountll(subset));
      if (c <= largest) continue;
      WordSet s(2, r);
      for (std::uint64_t i = 0; i < size; ++i) {
        if (subset >> i & 1U) s.insert_index(i);
      }
      if (!find_combinatorial_line(s).witness) largest = c;
    }
    EXPECT_EQ(largest, sperner[r - 1]) << "r=" << r;
  }
}

TEST(Lines, AllColoringsOfTheSquareHaveMonochromaticLine) {
  for (std::uint64_t coloring = 0; coloring < 16; ++coloring) {
    WordSet red(2, 2), blue(2, 2);
    for (std::uint64_t i = 0; i < 4; ++i) {
      if (coloring >> i & 1U) {
        red.insert_index(i);
      } else {
        blue.insert_index(i);
      }
    }
    EXPECT_TRUE(find_combinatorial_line(red).witness || find_combinatorial_line(blue).witness) << coloring;
  }
}
