#include "ramsey/numeric.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ramsey;

TEST(Numeric, DecimalRoundTrip) {
  BigInt big = pow_big(4, 256) + 17;
  EXPECT_EQ(parse_bigint(to_dec(big)), big);
  EXPECT_EQ(parse_bigint("-42"), BigInt(-42));
  EXPECT_THROW(parse_bigint("12a"), std::invalid_argument);
  EXPECT_THROW(parse_bigint(""), std::invalid_argument);
}

TEST(Numeric, PowerAndBitLength) {
  EXPECT_EQ(pow_big(2, 64), BigInt("18446744073709551616"));
  EXPECT_EQ(bit_length(BigInt(255)), 8U);
  EXPECT_EQ(bit_length(pow_big(2, 100)), 101U);
  EXPECT_TRUE(fits_u64(pow_big(2, 64) - 1));
  EXPECT_FALSE(fits_u64(pow_big(2, 64)));
  EXPECT_THROW(to_u64(pow_big(2, 64)), RangeError);
}

TEST(Numeric, Rationals) {
  EXPECT_EQ(parse_rational("1/4"), Rational(1, 4));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(rational_str(Rational(2, 6)), "1/3");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Numeric, TorusNorm) {
  EXPECT_EQ(torus_norm(Real("0.75")), Real("0.25"));
  EXPECT_LT(abs(torus_norm(Real("2.1")) - Real("0.1")), Real(1e-50));
  EXPECT_LT(abs(torus_norm(Real("-2.9")) - Real("0.1")), Real(1e-50));
  EXPECT_EQ(frac(Real(-0.25)), Real(0.75));
}

TEST(Numeric, BudgetExhausts) {
  Budget b(10);
  EXPECT_TRUE(b.spend(4));
  EXPECT_TRUE(b.spend(6));
  EXPECT_FALSE(b.spend());
  EXPECT_TRUE(b.exhausted());
  EXPECT_EQ(b.used(), 10U);
}

TEST(Numeric, Base64RoundTrip) {
  std::mt19937_64 rng(5);
  for (std::size_t len = 0; len < 40; ++len) {
    std::vector<std::uint8_t> bytes(len);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    EXPECT_EQ(base64::decode(base64::encode(bytes)), bytes);
  }
  EXPECT_EQ(base64::encode({'M', 'a', 'n'}), "TWFu");
  EXPECT_EQ(base64::encode({'M'}), "TQ==");
}
