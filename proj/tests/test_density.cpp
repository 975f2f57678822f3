#include "ramsey/constructions.hpp"
#include "ramsey/density.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ramsey;

namespace {

const auto kAdd = GroundStructure::naturals_additive();
const auto kMul = GroundStructure::naturals_multiplicative();

LazySet window_union(const IntegerWindowSet& a, const IntegerWindowSet& b) {
  return IntegerWindowSet::from_predicate(a.lo(), a.hi(), [&](const BigInt& x) { return a.contains(x) || b.contains(x); })
      .as_lazy();
}

}  // namespace

TEST(Folner, AdditiveIntervalElements) {
  auto w = FolnerWindow::additive(5, 10);
  EXPECT_EQ(w.elements, (std::vector<BigInt>{11, 12, 13, 14, 15}));
  EXPECT_EQ(w.descriptor(), "add:5,10");
}

TEST(Folner, MultiplicativeBoxHasExactlyNToTheN) {
  for (std::uint64_t n = 1; n <= 5; ++n) {
    auto w = FolnerWindow::multiplicative(n, 1);
    std::uint64_t expected = 1;
    for (std::uint64_t i = 0; i < n; ++i) expected *= n;
    EXPECT_EQ(w.elements.size(), expected);
    std::set<BigInt> distinct(w.elements.begin(), w.elements.end());
    EXPECT_EQ(distinct.size(), expected);
  }
  auto two = FolnerWindow::multiplicative(2, 1);
  EXPECT_EQ(two.elements, (std::vector<BigInt>{6, 12, 18, 36}));
}

TEST(Folner, Drift) {
  EXPECT_EQ(folner_drift(FolnerWindow::additive(100, 0), 1, kAdd), BigRational(2, 100));
  EXPECT_EQ(folner_drift(FolnerWindow::multiplicative(4, 1), 2, kMul), BigRational(1, 2));
  EXPECT_EQ(folner_drift(FolnerWindow::additive(37, 5), 0, kAdd), BigRational(0));
  EXPECT_EQ(folner_drift(FolnerWindow::multiplicative(3, 7), 1, kMul), BigRational(0));
}

TEST(Banach, MultiplesOfThree) {
  auto e = banach_density_lower_bound(residue_set(3, {0}), FiniteMultiset::interval(1, 300), integer_range(0, 2), kAdd);
  EXPECT_EQ(e.delta(), BigRational(1, 3));
  EXPECT_EQ(e.best_shift, 0);
}

TEST(Banach, EvensAreMultiplicativelyFull) {
  auto box = FolnerWindow::multiplicative(2, 1);
  auto e = banach_density_lower_bound(residue_set(2, {0}), box.as_multiset(), {1}, kMul);
  EXPECT_EQ(e.delta(), BigRational(1));
}

TEST(Banach, SquarefreeNearSixOverPiSquared) {
  auto e = banach_density_lower_bound(squarefree_set(), FiniteMultiset::interval(1, 10000), integer_range(0, 1000), kAdd);
  double d = static_cast<double>(e.count) / static_cast<double>(e.total);
  EXPECT_NEAR(d, 0.6079, 0.01);
  // Direct count at the reported shift.
  std::uint64_t c = 0;
  for (std::uint64_t x = 1; x <= 10000; ++x) {
    std::uint64_t n = x + e.best_shift.convert_to<std::uint64_t>();
    bool sf = true;
    for (std::uint64_t p = 2; p * p <= n && sf; ++p) sf = n % (p * p) != 0;
    c += sf ? 1 : 0;
  }
  EXPECT_EQ(c, e.count);
}

TEST(Banach, PeriodicSetsHitOneOverA) {
  for (int a = 1; a <= 12; ++a) {
    for (int b = 0; b < a; ++b) {
      auto e = banach_density_lower_bound(residue_set(a, {b}), FolnerWindow::additive(100 * a, 0).as_multiset(),
                                          integer_range(0, a - 1), kAdd);
      EXPECT_EQ(e.delta(), BigRational(1, a)) << a << "N+" << b;
    }
  }
}

TEST(Banach, NoPoolShiftBeatsTheEstimate) {
  std::mt19937_64 rng(31);
  auto w = IntegerWindowSet::from_predicate(0, 3000, [&](const BigInt&) { return rng() % 5 == 0; });
  auto f = FiniteMultiset::interval(1, 200);
  auto pool = integer_range(0, 500);
  auto e = banach_density_lower_bound(w.as_lazy(), f, pool, kAdd);
  for (const auto& s : pool) {
    auto c = multiset_translate_count(f, w.as_lazy(), s, kAdd);
    EXPECT_LE(c, e.count);
    if (c == e.count) {
      EXPECT_GE(s, e.best_shift);
    }
  }
}

TEST(Banach, Subadditive) {
  std::mt19937_64 rng(32);
  auto f = FiniteMultiset::interval(1, 150);
  auto pool = integer_range(0, 300);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = IntegerWindowSet::from_predicate(0, 500, [&](const BigInt&) { return rng() % 7 == 0; });
    auto b = IntegerWindowSet::from_predicate(0, 500, [&](const BigInt&) { return rng() % 4 == 0; });
    auto da = banach_density_lower_bound(a.as_lazy(), f, pool, kAdd).delta();
    auto db = banach_density_lower_bound(b.as_lazy(), f, pool, kAdd).delta();
    auto du = banach_density_lower_bound(window_union(a, b), f, pool, kAdd).delta();
    EXPECT_LE(du, da + db);
  }
}

TEST(Banach, ShiftInvariance) {
  std::mt19937_64 rng(33);
  auto w = IntegerWindowSet::from_predicate(0, 2000, [&](const BigInt&) { return rng() % 3 == 0; });
  auto f = FiniteMultiset::interval(1, 100);
  for (int s : {0, 5, 77}) {
    auto pool = integer_range(0, 400);
    std::vector<BigInt> shifted;
    for (const auto& p : pool) shifted.push_back(p + s);
    auto q = quotient_set(w.as_lazy(), s, kAdd);
    EXPECT_EQ(banach_density_lower_bound(q, f, pool, kAdd).delta(),
              banach_density_lower_bound(w.as_lazy(), f, shifted, kAdd).delta());
  }
}

TEST(LevelSet, BetaZeroKeepsWholePool) {
  auto pool = integer_range(0, 50);
  EXPECT_EQ(translate_level_set(residue_set(7, {3}), FiniteMultiset::interval(1, 10), BigRational(0), pool, kAdd), pool);
}

TEST(LevelSet, EvensAtOneHalf) {
  auto pool = integer_range(0, 99);
  EXPECT_EQ(translate_level_set(residue_set(2, {0}), FiniteMultiset::interval(1, 100), BigRational(1, 2), pool, kAdd),
            pool);
  EXPECT_THROW(translate_level_set(residue_set(2, {0}), FiniteMultiset::interval(1, 4), BigRational(3, 2), pool, kAdd),
               std::invalid_argument);
}

TEST(LevelSet, MultiplesOfFiveBoundFromBelow) {
  auto s = translate_level_set(residue_set(5, {0}), FiniteMultiset::interval(1, 500), BigRational(1, 10),
                               integer_range(1, 10000), kAdd);
  BigRational d(BigInt(s.size()), BigInt(10000));
  EXPECT_GE(d, BigRational(1, 9));
}

TEST(LowerDensity, EvensAreHalf) {
  auto rows = lower_density_profile(residue_set(2, {0}), 100000);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.back().n, 100000U);
  for (const auto& r : rows) {
    if (r.n % 2 == 0) {
      EXPECT_EQ(r.ratio(), BigRational(1, 2));
    }
  }
  EXPECT_EQ(rows.back().running_inf, BigRational(0));
  auto csv = lower_density_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,count,ratio,running_inf");
}

TEST(LowerDensity, RunningInfimumIsMonotone) {
  auto rows = lower_density_profile(squarefree_set(), 200000);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].running_inf, rows[i - 1].running_inf);
    EXPECT_LE(rows[i].running_inf, rows[i].ratio());
  }
}

TEST(LowerDensity, DivisibleUnionThinsOut) {
  auto rows = lower_density_profile(divisible_union(DivisibleUnionSpec::standard(12)), 1000000);
  EXPECT_LT(rows.back().ratio(), BigRational(1, 1000));
}

TEST(LowerDensity, OmegaLevelSetStaysPositive) {
  auto a = level_set(parse_polynomial("sqrt2*x"), Homomorphism{HomKind::Omega, 2},
                     UnitInterval(Scalar(0), Scalar::rational(1, 4)));
  auto rows = lower_density_profile(a, 1000000);
  // Skip the degenerate prefix: 1 is in A, 2 and 3 are not.
  BigRational tail_inf = rows.back().ratio();
  for (const auto& r : rows) {
    if (r.n >= 1000) tail_inf = std::min(tail_inf, r.ratio());
  }
  EXPECT_GT(tail_inf, BigRational(0));
}

TEST(Csv, DensityColumns) {
  auto e = banach_density_lower_bound(residue_set(4, {1}), FiniteMultiset::interval(1, 8), integer_range(0, 3), kAdd,
                                      "add:8,0", "0..3");
  auto csv = density_csv({e});
  EXPECT_EQ(csv, "window_descriptor,best_shift,numerator,denominator\n\"add:8,0\",0,1,4\n");
}
