#include <gtest/gtest.h>

#include <random>

#include "prophecke/module.hpp"
#include "prophecke/parabolic.hpp"
#include "prophecke/setup.hpp"

using namespace prophecke;

namespace {

struct Case {
  const char* group;
  int q;
};

std::vector<std::vector<int>> all_subsets(int r) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << r); ++mask) {
    std::vector<int> J;
    for (int i = 0; i < r; ++i)
      if (mask >> i & 1) J.push_back(i);
    out.push_back(J);
  }
  return out;
}

class Parabolic : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override { s = make_setup(GetParam().group, GetParam().q); }
  AlgebraSetup s;
};

std::string name_of(const ::testing::TestParamInfo<Case>& i) {
  return std::string(i.param.group) + "_q" + std::to_string(i.param.q);
}

const JVariant kVariants[] = {JVariant::kPlus, JVariant::kPlusStar, JVariant::kMinus, JVariant::kMinusStar};

}  // namespace

TEST(ParabolicBasics, ParseVariant) {
  EXPECT_EQ(parse_variant("+"), JVariant::kPlus);
  EXPECT_EQ(parse_variant("+*"), JVariant::kPlusStar);
  EXPECT_EQ(parse_variant("-"), JVariant::kMinus);
  EXPECT_EQ(parse_variant("-*"), JVariant::kMinusStar);
  EXPECT_THROW(parse_variant("*"), std::invalid_argument);
}

TEST(ParabolicBasics, InvalidSubsetRejected) {
  AlgebraSetup s = make_setup("SL2", 3);
  EXPECT_THROW(levi_algebra(*s.H, {1}), std::invalid_argument);
}

TEST(ParabolicBasics, OutsideRegionThrows) {
  AlgebraSetup s = make_setup("SL2", 3);
  LeviData ld = levi_algebra(*s.H, {});
  W1 dom = s.W->lambda(s.rs->regular_dominant());
  EXPECT_THROW(j_map(ld, *s.H, JVariant::kPlus, ld.H->T(dom)), std::invalid_argument);
  EXPECT_NO_THROW(j_map(ld, *s.H, JVariant::kMinus, ld.H->T(dom)));
}

TEST_P(Parabolic, LeviEmbeddingIsAGroupHomomorphism) {
  for (const auto& J : all_subsets(s.rs->rank_ss())) {
    LeviData ld = levi_algebra(*s.H, J);
    auto els = ld.W->elements_up_to_length(3, 1, true);
    for (const W1& a : els)
      for (const W1& b : els)
        ASSERT_EQ(ld.to_ambient_elem(ld.W->mul(a, b)), s.W->mul(ld.to_ambient_elem(a), ld.to_ambient_elem(b)));
  }
}

TEST_P(Parabolic, JMapsAreMultiplicative) {
  for (const auto& J : all_subsets(s.rs->rank_ss())) {
    LeviData ld = levi_algebra(*s.H, J);
    auto els = ld.W->elements_up_to_length(3, 1, true);
    for (JVariant v : kVariants) {
      const int sign = variant_is_plus(v) ? 1 : -1;
      std::vector<W1> reg;
      for (const W1& a : els)
        if (plus_minus_membership(ld, a, sign)) reg.push_back(a);
      ASSERT_FALSE(reg.empty());
      auto basis = [&](const W1& w) { return variant_is_star(v) ? ld.H->t_star(w) : ld.H->T(w); };
      for (std::size_t i = 0; i < reg.size(); i += 3)
        for (std::size_t j = 0; j < reg.size(); j += 3) {
          HeckeElement x = basis(reg[i]), y = basis(reg[j]);
          EXPECT_EQ(j_map(ld, *s.H, v, ld.H->mul(x, y)), s.H->mul(j_map(ld, *s.H, v, x), j_map(ld, *s.H, v, y)));
        }
    }
  }
}

TEST_P(Parabolic, LocalizationByCentralElement) {
  for (const auto& J : all_subsets(s.rs->rank_ss())) {
    LeviData ld = levi_algebra(*s.H, J);
    W1 l0 = levi_central_element(*s.W, J);
    LocalizationCheck lc = levi_localization_check(ld, l0, 4);
    EXPECT_TRUE(lc.ok) << lc.witness;
    EXPECT_GT(lc.checked, 0);
  }
}

TEST_P(Parabolic, LeviChamberSubalgebraEmbedsViaMinusStar) {
  const RootSystem& R = *s.rs;
  for (const auto& J : all_subsets(R.rank_ss())) {
    LeviData ld = levi_algebra(*s.H, J);
    int wJ = R.longest_element(J);
    int seen = 0;
    for (const W1& lam : s.W->lambdas_up_to_height(4, true)) {
      if (!R.in_chamber(wJ, lam.mu)) continue;
      ++seen;
      EXPECT_EQ(j_map(ld, *s.H, JVariant::kMinusStar, ld.H->e_of(lam)), s.H->e_of(lam));
    }
    EXPECT_GT(seen, 0);
  }
}

TEST_P(Parabolic, EmptyLeviImages) {
  const RootSystem& R = *s.rs;
  LeviData ld = levi_algebra(*s.H, {});
  for (const W1& lam : s.W->lambdas_up_to_height(4, true)) {
    HeckeElement x = ld.H->T(lam);
    if (R.in_chamber(R.longest(), lam.mu)) {
      EXPECT_TRUE(plus_minus_membership(ld, lam, 1));
      EXPECT_EQ(j_map(ld, *s.H, JVariant::kPlus, x), s.H->e_of(lam));
    } else {
      EXPECT_FALSE(plus_minus_membership(ld, lam, 1));
    }
    if (R.in_chamber(0, lam.mu)) {
      EXPECT_TRUE(plus_minus_membership(ld, lam, -1));
      EXPECT_EQ(j_map(ld, *s.H, JVariant::kMinusStar, ld.H->t_star(lam)), s.H->e_of(lam));
    } else {
      EXPECT_FALSE(plus_minus_membership(ld, lam, -1));
    }
  }
}

TEST_P(Parabolic, ExtensionFromLeviChamber) {
  const RootSystem& R = *s.rs;
  std::mt19937_64 rng(1);
  for (const auto& J : all_subsets(R.rank_ss())) {
    LeviData ld = levi_algebra(*s.H, J);
    int wJ = R.longest_element(J);
    FinAModule m = twist(module_from_lattice_rep(s.W, s.F, 0, random_lattice_rep(*s.W, *s.F, 2, rng)), wJ);
    ASSERT_EQ(support_of(m), wJ);
    W1 l0 = levi_central_element(*s.W, J);
    W1 l1 = J.size() == static_cast<std::size_t>(R.rank_ss()) ? l0 : levi_central_element(*s.W, J, 1);
    FinAModule e0 = extend_to_levi(m, wJ, J, ld.W, l0), e1 = extend_to_levi(m, wJ, J, ld.W, l1);
    EXPECT_FALSE(e0.validate().has_value());
    for (const W1& lam : e0.seeds()) EXPECT_EQ(e0.action(lam), e1.action(lam));
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, Parabolic,
                         ::testing::Values(Case{"SL2", 3}, Case{"GL2", 3}, Case{"SL3", 3}, Case{"Sp4", 3}), name_of);
