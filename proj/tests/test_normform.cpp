#include "ramsey/normform.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ramsey;

namespace {

bool sum_of_two_squares(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (p % 4 == 3 && e % 2 == 1) return false;
  }
  return n % 4 != 3;
}

std::vector<BigInt> random_vec(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::vector<BigInt> v(n);
  for (auto& x : v) x = static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)) + lo;
  return v;
}

}  // namespace

TEST(NormForm, CubicValues) {
  auto f = NormForm::cubic(2);
  EXPECT_EQ(f.degree(), 3U);
  EXPECT_EQ(f.eval(std::vector<std::int64_t>{1, 0, 0}), 1);
  EXPECT_EQ(f.eval(std::vector<std::int64_t>{0, 1, 0}), 2);
  EXPECT_EQ(f.eval(std::vector<std::int64_t>{0, 0, 1}), 4);
  EXPECT_EQ(f.eval(std::vector<std::int64_t>{1, 1, 1}), 1);
  EXPECT_THROW(f.eval(std::vector<std::int64_t>{1, 1}), std::invalid_argument);
}

TEST(NormForm, ParsedFormMatchesPreset) {
  auto parsed = NormForm::parse("x1^3 + 2*x2^3 + 4*x3^3 - 6*x1*x2*x3", 3);
  auto preset = NormForm::preset("cubic:a=2");
  std::mt19937_64 rng(71);
  for (int i = 0; i < 200; ++i) {
    auto z = random_vec(rng, 3, -30, 30);
    EXPECT_EQ(parsed.eval(z), preset.eval(z));
  }
  EXPECT_FALSE(parsed.has_ring());
  EXPECT_THROW(NormForm::parse("x1^2 + x2", 2), std::invalid_argument);
  EXPECT_THROW(NormForm::preset("quartic:a=2"), std::invalid_argument);
}

TEST(NormForm, Homogeneity) {
  std::mt19937_64 rng(72);
  for (const auto& f : {NormForm::cubic(2), NormForm::cubic(5), NormForm::quadratic(-1), NormForm::quadratic(3)}) {
    for (int i = 0; i < 200; ++i) {
      auto z = random_vec(rng, f.vars(), -50, 50);
      BigInt t = static_cast<int>(rng() % 41) - 20;
      auto tz = z;
      for (auto& x : tz) x *= t;
      EXPECT_EQ(f.eval(tz), pow_big(abs(t), f.degree()) * (t < 0 && f.degree() % 2 ? -1 : 1) * f.eval(z));
    }
  }
}

TEST(RingMul, BasisProducts) {
  auto f = NormForm::cubic(2);
  std::vector<BigInt> one{1, 0, 0}, t{0, 1, 0}, t2{0, 0, 1};
  std::mt19937_64 rng(73);
  auto w = random_vec(rng, 3, -9, 9);
  EXPECT_EQ(f.ring_mul(one, w), w);
  EXPECT_EQ(f.ring_mul(t, t), t2);
  EXPECT_EQ(f.ring_mul(t, t2), (std::vector<BigInt>{2, 0, 0}));
  EXPECT_THROW(NormForm::parse("x1^2 + x2^2", 2).ring_mul({1, 0}, {0, 1}), std::logic_error);
}

TEST(RingMul, NormIsMultiplicativeOnSmallBoxes) {
  for (const auto& f : {NormForm::cubic(2), NormForm::cubic(3), NormForm::quadratic(-1), NormForm::quadratic(2),
                        NormForm::quadratic(-5)}) {
    const int b = f.vars() == 3 ? 2 : 5;
    std::vector<std::vector<BigInt>> box;
    std::vector<BigInt> z(f.vars(), -b);
    while (true) {
      box.push_back(z);
      std::size_t i = 0;
      while (i < z.size() && z[i] == b) z[i++] = -b;
      if (i == z.size()) break;
      ++z[i];
    }
    for (const auto& u : box) {
      for (const auto& v : box) ASSERT_EQ(f.eval(f.ring_mul(u, v)), f.eval(u) * f.eval(v)) << f.descriptor();
    }
  }
}

TEST(RingMul, RandomCubicPairs) {
  auto f = NormForm::cubic(2);
  std::mt19937_64 rng(74);
  for (int i = 0; i < 2000; ++i) {
    auto z = random_vec(rng, 3, -5, 5), w = random_vec(rng, 3, -5, 5);
    EXPECT_EQ(f.eval(f.ring_mul(z, w)), f.eval(z) * f.eval(w));
  }
}

TEST(Represented, SumsOfTwoSquares) {
  auto r = enumerate_represented(NormForm::quadratic(-1), 10, 50);
  for (std::uint64_t v : {1, 2, 4, 5, 8, 9, 10, 13, 50}) EXPECT_TRUE(r.contains(v)) << v;
  for (std::uint64_t v : {3, 6, 7, 11, 12, 21}) EXPECT_FALSE(r.contains(v)) << v;
  EXPECT_TRUE(r.under_approximate);
}

TEST(Represented, ExactWhenBoxCoversTheLimit) {
  auto r = enumerate_represented(NormForm::quadratic(-1), 100, 10000);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    if (sum_of_two_squares(n)) expected.push_back(n);
  }
  EXPECT_EQ(r.values, expected);
}

TEST(Represented, CubicContainsCubesAndTwo) {
  auto f = NormForm::cubic(2);
  auto r = enumerate_represented(f, 20, 100);
  for (std::uint64_t x = 1; x * x * x <= 100; ++x) EXPECT_TRUE(r.contains(x * x * x));
  EXPECT_TRUE(r.contains(2));
  for (std::size_t i = 0; i < r.values.size(); ++i) EXPECT_EQ(abs(f.eval(r.witnesses[i])), r.values[i]);
  auto csv = r.csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "value,witness");
}

TEST(Represented, MonotoneInBoxAndLimit) {
  auto f = NormForm::cubic(2);
  auto small = enumerate_represented(f, 6, 500);
  auto wider = enumerate_represented(f, 9, 500);
  auto higher = enumerate_represented(f, 6, 2000);
  for (auto v : small.values) {
    EXPECT_TRUE(wider.contains(v));
    EXPECT_TRUE(higher.contains(v));
  }
  EXPECT_THROW(enumerate_represented(f, 400, 100), CapacityError);
}

TEST(Closure, ProductsRecoveredThroughRingMul) {
  auto f = NormForm::cubic(2);
  auto r = enumerate_represented(f, 12, 5000);
  auto rep = check_closure(f, r, 100, 7);
  EXPECT_EQ(rep.pairs, 100U);
  EXPECT_TRUE(rep.closed());
  EXPECT_EQ(rep.direct + rep.via_ring_mul, rep.pairs);
}

TEST(Closure, QuadraticClosed) {
  auto f = NormForm::quadratic(-1);
  auto r = enumerate_represented(f, 40, 1600);
  EXPECT_TRUE(check_closure(f, r, 200, 3).closed());
}

TEST(ApSearch, TrivialInterval) {
  RepresentedSet r;
  r.limit = 10;
  for (std::uint64_t v = 1; v <= 10; ++v) {
    r.values.push_back(v);
    r.witnesses.push_back({BigInt(v)});
  }
  auto res = ap_search(r, 1);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(std::make_tuple(res.witness->start, res.witness->step, res.witness->length),
            std::make_tuple(BigInt(1), BigInt(1), std::uint64_t{10}));
}

TEST(ApSearch, CubicAndQuadraticValues) {
  auto cubic = enumerate_represented(NormForm::cubic(2), 20, 10000);
  auto c = ap_search(cubic, 3);
  ASSERT_TRUE(c.witness);
  EXPECT_GE(c.witness->length, 3U);
  for (std::uint64_t i = 0; i < c.witness->length; ++i) {
    EXPECT_TRUE(cubic.contains((c.witness->start + i * c.witness->step).convert_to<std::uint64_t>()));
  }
  auto quad = enumerate_represented(NormForm::quadratic(-1), 100, 10000);
  auto q = ap_search(quad, 4);
  ASSERT_TRUE(q.witness);
  EXPECT_GE(q.witness->length, 4U);
  EXPECT_FALSE(ap_search(quad, 100000).witness);
}

TEST(PrimeDensity, SumsOfTwoSquaresHitHalfThePrimes) {
  auto quad = enumerate_represented(NormForm::quadratic(-1), 100, 10000);
  auto d = prime_relative_density(quad, 10000);
  double ratio = boost::rational_cast<double>(boost::rational<std::int64_t>(
      numerator(d).convert_to<std::int64_t>(), denominator(d).convert_to<std::int64_t>()));
  EXPECT_NEAR(ratio, 0.5, 0.05);
  EXPECT_EQ(numerator(d), 1 + 609);  // 2 and the 609 primes 1 mod 4 below 10^4
  EXPECT_THROW(prime_relative_density(quad, 10001), std::invalid_argument);
}

TEST(PrimeDensity, FullIntervalAndCubic) {
  RepresentedSet all;
  all.limit = 1000;
  for (std::uint64_t v = 1; v <= 1000; ++v) {
    all.values.push_back(v);
    all.witnesses.push_back({BigInt(v)});
  }
  EXPECT_EQ(prime_relative_density(all, 1000), BigRational(1));
  auto cubic = enumerate_represented(NormForm::cubic(2), 20, 10000);
  EXPECT_GT(prime_relative_density(cubic, 10000), BigRational(0));
}
