#include "ramsey/constructions.hpp"
#include "ramsey/finitefield.hpp"
#include "ramsey/set_registry.hpp"
#include "ramsey/verify.hpp"

#include <gtest/gtest.h>

using namespace ramsey;

namespace {

const LazySet kEvens = residue_set(2, {0});

struct Case {
  std::string name;
  Certificate good;
  Certificate bad;
  LazySet set;
  std::string expect_in_message;
};

IPrCertificate ip_cert(std::vector<BigInt> gens, GroundKind g, bool dual = false) {
  IPrCertificate c;
  c.generators = gens;
  c.ground = g;
  c.refutes_dual = dual;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << gens.size()); ++mask) {
    BigInt v = g == GroundKind::NaturalsMultiplicative ? 1 : 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if ((mask >> i) & 1U) v = g == GroundKind::NaturalsMultiplicative ? BigInt(v * gens[i]) : BigInt(v + gens[i]);
    }
    c.values.emplace_back(mask, v);
  }
  return c;
}

std::vector<Case> cases() {
  std::vector<Case> out;
  out.push_back({"syndetic", SyndeticCertificate{{0, 1}, 1, 100, GroundKind::NaturalsAdditive},
                 SyndeticCertificate{{0}, 1, 100, GroundKind::NaturalsAdditive}, kEvens, "n=1"});
  out.push_back({"thick_run", ThickRunCertificate{256, 2}, ThickRunCertificate{256, 3}, thick_no_kxy(2), "i=2"});
  out.push_back({"translate", TranslateCertificate{{1, 2, 3}, 2, GroundKind::NaturalsMultiplicative},
                 TranslateCertificate{{1, 2, 3}, 3, GroundKind::NaturalsMultiplicative}, kEvens, "F[0]"});
  auto ip = ip_cert({2, 4, 8}, GroundKind::NaturalsAdditive);
  auto ip_bad = ip;
  ip_bad.values[4].second += 2;  // alpha {0,2}
  out.push_back({"ip_r", ip, ip_bad, kEvens, "alpha {0,2}"});
  auto dual = ip_cert({2, 4}, GroundKind::NaturalsAdditive, true);
  auto dual_bad = ip_cert({1, 4}, GroundKind::NaturalsAdditive, true);
  out.push_back({"ip_r_star", dual, dual_bad, residue_set(2, {1}), "alpha {0}: 1 is in the set"});
  out.push_back({"ap", APCertificate{0, 2, 5}, APCertificate{0, 3, 5}, kEvens, "i=1"});
  out.push_back({"gp", GPCertificate{3, 2, 4}, GPCertificate{3, 2, 5}, finite_set({3, 6, 12, 24}), "i=4"});
  out.push_back({"generalized_ap", GeneralizedAPCertificate{2, {2, 2}, 2}, GeneralizedAPCertificate{3, {2, 2}, 2},
                 kEvens, "j=(1,1)"});
  out.push_back({"geometric_cube", GeometricCubeCertificate{1, {2, 2}, 2}, GeometricCubeCertificate{1, {2, 3}, 2},
                 residue_set(4, {0}), "j=(1,1)"});
  out.push_back({"geo_arithmetic", GeoArithCertificate{4, 1, 1, 2}, GeoArithCertificate{2, 1, 1, 2},
                 residue_set(4, {0}), "(i,j)=(2,1)"});
  Matrix m = {{2, 4}, {1, 3}};
  out.push_back({"richness", RichnessCertificate{m, 0b01, 0, GroundKind::NaturalsAdditive},
                 RichnessCertificate{m, 0b10, 0, GroundKind::NaturalsAdditive}, kEvens, "alpha {1}, column 0"});
  out.push_back({"line", LineCertificate{2, {0, 0}}, LineCertificate{2, {1, 0}},
                 registry_detail::words_set(2, 2, "11 22"), "* = 2"});
  auto f7 = Field::build(7);
  auto fw = *witness_translate(f7, 2, {0, 1});
  auto fw_bad = fw;
  fw_bad.x = 3;  // 9 + 1 = 3 is not a square mod 7
  out.push_back({"field_witness", fw, fw_bad, LazySet(), "F[1]"});
  Matrix sq = {{1, 2, 3}, {1, 2, 3}};
  out.push_back({"alpha_no_3ap", No3APCertificate{sq, 0b11, {1, 4, 9}}, No3APCertificate{sq, 0b01, {1, 2, 3}},
                 LazySet(), "3-term AP"});
  return out;
}

const LazySet* set_ptr(const Case& c) { return c.set.descriptor().empty() ? nullptr : &c.set; }

}  // namespace

TEST(Verify, EveryKindAcceptsItsWitness) {
  for (const auto& c : cases()) {
    auto r = verify_certificate(c.good, set_ptr(c));
    EXPECT_TRUE(r.ok) << c.name << ": " << r.message;
    EXPECT_GT(r.checks, 0U) << c.name;
  }
}

TEST(Verify, EveryKindRejectsAMutation) {
  for (const auto& c : cases()) {
    auto r = verify_certificate(c.bad, set_ptr(c));
    EXPECT_FALSE(r.ok) << c.name;
    EXPECT_NE(r.message.find(c.expect_in_message), std::string::npos) << c.name << ": " << r.message;
  }
}

TEST(Verify, JsonRoundTripPreservesVerdicts) {
  for (const auto& c : cases()) {
    for (const auto* cert : {&c.good, &c.bad}) {
      auto j = to_json(*cert);
      auto back = certificate_from_json(nlohmann::json::parse(j.dump()));
      EXPECT_EQ(to_json(back), j) << c.name;
      EXPECT_EQ(verify_certificate(back, set_ptr(c)).ok, verify_certificate(*cert, set_ptr(c)).ok) << c.name;
    }
  }
}

TEST(Verify, StructuralDefects) {
  auto ip = ip_cert({2, 4}, GroundKind::NaturalsAdditive);
  ip.values.pop_back();
  EXPECT_EQ(verify_certificate(ip, kEvens).message, "value list is incomplete");
  auto unsorted = ip_cert({4, 2}, GroundKind::NaturalsAdditive);
  EXPECT_FALSE(verify_certificate(unsorted, kEvens).ok);
  auto identity = ip_cert({1, 2}, GroundKind::NaturalsMultiplicative);
  EXPECT_FALSE(verify_certificate(identity, residue_set(1, {0}, 1)).ok);
  EXPECT_FALSE(verify_certificate(LineCertificate{2, {1, 2}}, registry_detail::words_set(2, 2, "12")).ok);
  EXPECT_FALSE(verify_certificate(GeometricCubeCertificate{1, {1}, 2}, kEvens).ok);
  EXPECT_FALSE(verify_certificate(APCertificate{0, 2, 3}, nullptr).ok);
}

TEST(Verify, FieldCertificateChecksItsField) {
  auto f9 = Field::build(3, 2);
  auto w = witness_translate(f9, 2, {0, 1});
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_certificate(*w, nullptr).ok);
  auto reducible = *w;
  reducible.modulus = {0, 0, 1};
  EXPECT_NE(verify_certificate(reducible, nullptr).message.find("irreducible"), std::string::npos);
  auto composite = *w;
  composite.p = 4;
  EXPECT_FALSE(verify_certificate(composite, nullptr).ok);
  auto outside = *w;
  outside.F = {9};
  EXPECT_FALSE(verify_certificate(outside, nullptr).ok);
}

TEST(Verify, CosetCertificates) {
  auto f13 = Field::build(13);
  for (std::uint64_t rep = 1; rep < 13; ++rep) {
    auto w = witness_translate(f13, 3, {0, 5}, rep);
    if (w) {
      EXPECT_TRUE(verify_certificate(*w, nullptr).ok) << rep;
      auto wrong = *w;
      wrong.coset_rep = f13.mul(rep, f13.primitive());
      EXPECT_FALSE(verify_certificate(wrong, nullptr).ok) << rep;
    }
  }
}

TEST(Verify, WindowBoundsAreReported) {
  auto window = IntegerWindowSet::from_predicate(0, 10, [](const BigInt& x) { return x % 2 == 0; }).as_lazy();
  auto r = verify_certificate(APCertificate{0, 2, 6}, window);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.message.find("outside the set's window"), std::string::npos);
}
