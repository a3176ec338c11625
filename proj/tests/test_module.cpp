#include <gtest/gtest.h>

#include <random>

#include "prophecke/module.hpp"
#include "prophecke/parabolic.hpp"
#include "prophecke/setup.hpp"

using namespace prophecke;

namespace {

LatticeRep trivial_rep(const ProPWeyl& W, int dim) {
  LatticeRep r{dim, std::vector<Mat>(W.n(), Mat::identity(dim)),
               std::vector<Mat>(W.zk().generators().size(), Mat::identity(dim))};
  return r;
}

// E(lambda) -> 1 on Lambda^+(1), 0 elsewhere.
FinAModule chi(const AlgebraSetup& s) { return module_from_lattice_rep(s.W, s.F, 0, trivial_rep(*s.W, 1)); }

bool same_on_seeds(const FinAModule& a, const FinAModule& b) {
  for (const W1& lam : a.seeds())
    if (!(a.action(lam) == b.action(lam))) return false;
  return true;
}

// A_X E = E B_X for every generator X.
bool equivariant(const FinHModule& a, const FinHModule& b, const Mat& E) {
  const Field& F = a.F();
  for (std::size_t g = 0; g < a.generator_matrices().size(); ++g)
    if (!(mat_mul(F, a.generator_matrices()[g], E) == mat_mul(F, E, b.generator_matrices()[g]))) return false;
  return true;
}

struct Case {
  const char* group;
  int q;
};

class Modules : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override { s = make_setup(GetParam().group, GetParam().q); }
  AlgebraSetup s;
};

std::string name_of(const ::testing::TestParamInfo<Case>& i) {
  return std::string(i.param.group) + "_q" + std::to_string(i.param.q);
}

}  // namespace

TEST(ModuleExamples, ChiModuleSupportAndTwists) {
  AlgebraSetup s = make_setup("SL2", 3);
  FinAModule m = chi(s);
  EXPECT_FALSE(m.validate().has_value());
  EXPECT_EQ(support_of(m), 0);
  EXPECT_EQ(support_of(twist(m, 1)), 1);
  EXPECT_FALSE(support_of(direct_sum(m, twist(m, 1))).has_value());
  EXPECT_TRUE(same_on_seeds(twist(m, 0), m));
}

TEST(ModuleExamples, CategoryCDetection) {
  AlgebraSetup s = make_setup("SL2", 3);
  int inside = 0, outside = 0;
  std::vector<FinHModule> chars = characters(s.H);
  for (const FinHModule& a : chars) {
    in_category_c(a) ? ++inside : ++outside;
    for (const FinHModule& b : chars)
      EXPECT_EQ(in_category_c(direct_sum(a, b)), in_category_c(a) && in_category_c(b));
  }
  // The two supersingular characters per Z_kappa character lie outside C.
  EXPECT_GT(inside, 0);
  EXPECT_GT(outside, 0);
  for (const FinHModule& a : chars)
    if (!in_category_c(a)) EXPECT_THROW(decompose_by_support(a), std::invalid_argument);
}

TEST(ModuleExamples, SL2InducedChiSplitsIntoTwoLines) {
  AlgebraSetup s = make_setup("SL2", 3);
  InducedModule t = tensor_h(chi(s), 0, s.H);
  ASSERT_EQ(t.module.dim(), 2);
  auto comps = decompose_by_support(t.module);
  ASSERT_EQ(comps.size(), 2u);
  for (const auto& c : comps) {
    EXPECT_EQ(c.basis.rows, 1);
    EXPECT_EQ(support_of(c.module), c.w);
  }
}

TEST(ModuleExamples, IsotypicPieces) {
  AlgebraSetup s = make_setup("SL2", 3);
  EXPECT_EQ(isotypic(chi(s)).size(), 1u);
  LatticeRep r = trivial_rep(*s.W, 2);
  r.zk[0](1, 1) = s.F->neg(1);
  FinAModule m = module_from_lattice_rep(s.W, s.F, 0, r);
  auto pieces = isotypic(m);
  ASSERT_EQ(pieces.size(), 2u);
  for (const auto& p : pieces) {
    EXPECT_EQ(p.basis.rows, 1);
    for (const W1& lam : m.seeds()) EXPECT_TRUE(rows_in_span(*s.F, p.basis, mat_mul(*s.F, p.basis, m.action(lam))));
  }
  LatticeRep bad = trivial_rep(*s.W, 2);
  bad.zk[0](0, 1) = 1;
  EXPECT_THROW(isotypic(module_from_lattice_rep(s.W, s.F, 0, bad)), std::invalid_argument);
}

TEST(ModuleExamples, HomTensorIsomorphismForSums) {
  AlgebraSetup s = make_setup("SL2", 3);
  FinAModule m = chi(s);
  IsoResult one = check_iso_hom_tensor(m, s.H);
  EXPECT_TRUE(one.found);
  EXPECT_EQ(one.P.rows, 2);
  IsoResult two = check_iso_hom_tensor(direct_sum(m, m), s.H);
  EXPECT_TRUE(two.found);
  EXPECT_GE(two.space_dim, 4);
}

TEST(ModuleExamples, DualOfCharacterAndDoubleDual) {
  AlgebraSetup s = make_setup("SL2", 3);
  for (const FinHModule& c : characters(s.H)) {
    FinHModule d = dual(c);
    EXPECT_FALSE(d.validate().has_value());
    EXPECT_EQ(dual(d).generator_matrices(), c.generator_matrices());
  }
  FinAModule m = chi(s);
  FinAModule dm = dual(m);
  EXPECT_EQ(dm.dim(), 1);
  EXPECT_EQ(support_of(dm), s.rs->longest());
  EXPECT_TRUE(same_on_seeds(dual(dm), m));
}

TEST(ModuleExamples, DoubleTwistAlongLengthAdditivePairs) {
  AlgebraSetup s = make_setup("SL3", 3);
  std::mt19937_64 rng(9);
  FinAModule m = module_from_lattice_rep(s.W, s.F, 0, random_lattice_rep(*s.W, *s.F, 2, rng));
  const RootSystem& R = *s.rs;
  for (int a = 0; a < R.order(); ++a)
    for (int b = 0; b < R.order(); ++b) {
      if (R.length(R.mul(b, a)) != R.length(a) + R.length(b)) continue;
      EXPECT_TRUE(same_on_seeds(twist(twist(m, a), b), twist(m, R.mul(b, a))));
      EXPECT_EQ(support_of(twist(twist(m, a), b)), R.mul(b, a));
    }
}

TEST_P(Modules, RandomSupportedModulesValidate) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    int v = static_cast<int>(rng() % s.rs->order());
    FinAModule m = module_from_lattice_rep(s.W, s.F, v, random_lattice_rep(*s.W, *s.F, 1 + trial % 3, rng));
    EXPECT_FALSE(m.validate().has_value());
    EXPECT_EQ(support_of(m), v);
    EXPECT_EQ(support_of(dual(m)), opposite_chamber(*s.rs, v));
  }
}

TEST_P(Modules, InducedAndCoinducedModules) {
  std::mt19937_64 rng(5);
  const int n = s.rs->order();
  for (int v = 0; v < n; ++v) {
    FinAModule m = module_from_lattice_rep(s.W, s.F, v, random_lattice_rep(*s.W, *s.F, 1 + v % 2, rng));
    InducedModule t = tensor_h(m, v, s.H);
    EXPECT_EQ(t.module.dim(), n * m.dim());
    EXPECT_FALSE(t.module.validate(2).has_value());
    EXPECT_EQ(rank(*s.F, t.unit), m.dim());
    // The unit is A-linear.
    FinAModule res = restrict_to_a(t.module);
    for (const W1& lam : m.seeds())
      EXPECT_EQ(mat_mul(*s.F, m.action(lam), t.unit), mat_mul(*s.F, t.unit, res.action(lam)));
    FinHModule h = hom_from_h(m, v, s.H);
    EXPECT_EQ(h.dim(), n * m.dim());
    EXPECT_FALSE(h.validate(2).has_value());
  }
}

TEST_P(Modules, SupportDecompositionIsFunctorial) {
  std::mt19937_64 rng(8);
  FinAModule m = module_from_lattice_rep(s.W, s.F, 0, random_lattice_rep(*s.W, *s.F, 1, rng));
  FinHModule N = tensor_h(m, 0, s.H).module;
  ASSERT_TRUE(in_category_c(N));
  auto comps = decompose_by_support(N);
  int total = 0;
  for (const auto& c : comps) {
    total += c.basis.rows;
    if (c.basis.rows) EXPECT_EQ(support_of(c.module), c.w);
  }
  EXPECT_EQ(total, N.dim());
  for (int trial = 0; trial < 3; ++trial) {
    Mat P = random_endomorphism(N, rng);
    for (const auto& c : comps) EXPECT_TRUE(rows_in_span(*s.F, c.basis, mat_mul(*s.F, c.basis, P)));
  }
}

TEST_P(Modules, HomEmbeddingOfCharacters) {
  for (const FinHModule& c : characters(s.H)) {
    if (!in_category_c(c)) continue;
    auto v = support_of(restrict_to_a(c));
    ASSERT_TRUE(v.has_value());
    FinHModule h = hom_from_h(restrict_to_a(c), *v, s.H);
    Mat E = hom_embedding(c, *v);
    EXPECT_EQ(rank(*s.F, E), 1);
    EXPECT_TRUE(equivariant(c, h, E));
  }
}

TEST_P(Modules, SwitchLemmaSystemsCoincide) {
  std::mt19937_64 rng(4);
  const int L = s.rs->rank_ss() == 1 ? 6 : 4;
  for (int v : {0, s.rs->longest()}) {
    FinAModule m = module_from_lattice_rep(s.W, s.F, v, random_lattice_rep(*s.W, *s.F, 1, rng));
    SwitchResult r = switch_check(m, v, *s.H, L, 2);
    EXPECT_TRUE(r.coincide()) << r.rank_chamber << " vs " << r.rank_full;
    EXPECT_GT(r.extra_equations, 0);
  }
}

TEST_P(Modules, LeviExtensionIsUnique) {
  const RootSystem& R = *s.rs;
  std::mt19937_64 rng(12);
  for (int mask = 0; mask < (1 << R.rank_ss()); ++mask) {
    std::vector<int> J;
    for (int i = 0; i < R.rank_ss(); ++i)
      if (mask >> i & 1) J.push_back(i);
    LeviData ld = levi_algebra(*s.H, J);
    int wJ = R.longest_element(J);
    FinAModule m = module_from_lattice_rep(s.W, s.F, wJ, random_lattice_rep(*s.W, *s.F, 2, rng));
    W1 l0 = levi_central_element(*s.W, J, 0);
    W1 l1 = W1{vec_scale(3, l0.mu), 0, 0};
    if (static_cast<int>(J.size()) < R.rank_ss()) l1 = levi_central_element(*s.W, J, 1);
    FinAModule e0 = extend_to_levi(m, wJ, J, ld.W, l0), e1 = extend_to_levi(m, wJ, J, ld.W, l1);
    EXPECT_FALSE(e0.validate().has_value());
    EXPECT_TRUE(same_on_seeds(e0, e1));
    for (const W1& lam : m.seeds())
      if (R.in_chamber(wJ, lam.mu)) EXPECT_EQ(e0.action(lam), m.action(lam));
    if (static_cast<int>(J.size()) == R.rank_ss()) EXPECT_TRUE(same_on_seeds(e0, m));
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, Modules,
                         ::testing::Values(Case{"SL2", 3}, Case{"GL2", 3}, Case{"SL3", 3}, Case{"SL2", 4}),
                         name_of);
