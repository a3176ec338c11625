#include <gtest/gtest.h>

#include <random>

#include "prophecke/setup.hpp"

using namespace prophecke;

namespace {

struct Case {
  const char* group;
  int q;
};

class Hecke : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override { s = make_setup(GetParam().group, GetParam().q); }
  const HeckeAlgebra& H() const { return *s.H; }
  const ProPWeyl& W() const { return *s.W; }
  const RootSystem& R() const { return *s.rs; }
  const Field& F() const { return *s.F; }
  AlgebraSetup s;
};

std::string name_of(const ::testing::TestParamInfo<Case>& i) {
  return std::string(i.param.group) + "_q" + std::to_string(i.param.q);
}

bool lower_terms_below(const ProPWeyl& W, const HeckeElement& x, const W1& top) {
  if (x.coeff(top) != 1) return false;
  for (const auto& [v, c] : x.terms())
    if (!(v == top) && !W.bruhat_lt(v, top)) return false;
  return true;
}

}  // namespace

TEST_P(Hecke, QuadraticRelation) {
  for (int s = 0; s < W().num_affine_simple(); ++s) {
    HeckeElement t = H().T(W().affine_lift(s));
    EXPECT_EQ(H().mul(t, t), H().mul(H().c_s(s), t));
  }
}

TEST_P(Hecke, AssociativityShortTriples) {
  auto els = W().elements_up_to_length(2, 1, true);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    HeckeElement a = H().T(els[rng() % els.size()]), b = H().T(els[rng() % els.size()]),
                 c = H().T(els[rng() % els.size()]);
    EXPECT_EQ(H().mul(H().mul(a, b), c), H().mul(a, H().mul(b, c)));
  }
}

TEST_P(Hecke, BraidRelationsOfAffineSimples) {
  // Products along two reduced words of the same element agree.
  for (const W1& x : W().elements_up_to_length(4, 0, false)) {
    ProPWeyl::Peeled p = W().peel(x);
    HeckeElement prod = H().T(p.u);
    for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) prod = H().mul(H().T(W().affine_lift(*it)), prod);
    EXPECT_EQ(prod, H().T(x));
    // Same element through the right descents.
    HeckeElement right = H().one();
    W1 y = x;
    std::vector<int> rword;
    while (W().length(y) > 0) {
      int found = -1;
      for (int s = 0; s < W().num_affine_simple() && found < 0; ++s)
        if (W().length(W().mul(y, W().affine_lift_inv(s))) < W().length(y)) found = s;
      ASSERT_GE(found, 0);
      rword.push_back(found);
      y = W().mul(y, W().affine_lift_inv(found));
    }
    right = H().T(y);
    for (auto it = rword.rbegin(); it != rword.rend(); ++it) right = H().mul(right, H().T(W().affine_lift(*it)));
    EXPECT_EQ(right, H().T(x));
  }
}

TEST_P(Hecke, StarBasisTriangularAndBraid) {
  auto els = W().elements_up_to_length(3, 1, true);
  for (const W1& w : els) EXPECT_TRUE(lower_terms_below(W(), H().t_star(w), w)) << W().to_string(w);
  for (const W1& a : els)
    for (const W1& b : els)
      if (W().length(W().mul(a, b)) == W().length(a) + W().length(b))
        EXPECT_EQ(H().mul(H().t_star(a), H().t_star(b)), H().t_star(W().mul(a, b)));
}

TEST_P(Hecke, EBasisTriangularAndDecompositionIndependent) {
  const int wd = R().longest();
  auto lams = W().lambdas_up_to_height(3, true);
  for (const W1& lam : lams) {
    HeckeElement e = H().e_of(lam);
    EXPECT_TRUE(lower_terms_below(W(), e, lam)) << W().to_string(lam);
    if (R().in_chamber(wd, lam.mu)) EXPECT_EQ(e, H().T(lam));
    if (R().is_dominant(lam.mu)) EXPECT_EQ(e, H().t_star(lam));
    for (const W1& a : lams) {
      W1 b = W().mul(W().inv(a), lam);
      if (!R().in_chamber(wd, a.mu) || !R().is_dominant(b.mu)) continue;
      if (W().length(lam) != W().length(a) + W().length(b)) continue;
      EXPECT_EQ(H().e_by_decomposition(a, b), e) << W().to_string(lam) << " = " << W().to_string(a) << " * "
                                                  << W().to_string(b);
    }
  }
}

TEST_P(Hecke, AProductMatchesIwahoriMatsumotoProduct) {
  auto lams = W().lambdas_up_to_height(2, true);
  for (const W1& a : lams)
    for (const W1& b : lams) {
      AElement prod = H().a_mul(AElement::basis(a), AElement::basis(b));
      EXPECT_EQ(H().a_to_h(prod), H().mul(H().e_of(a), H().e_of(b)));
    }
}

TEST_P(Hecke, LeftProductRuleForE) {
  // E(lam) E(y) = E(lam y) if lengths add, 0 otherwise.
  auto lams = W().lambdas_up_to_height(2, false);
  for (const W1& lam : lams)
    for (const W1& y : W().elements_up_to_length(3, 1, false)) {
      HeckeElement p = H().mul(H().e_of(lam), H().e_of(y));
      W1 ly = W().mul(lam, y);
      if (W().length(ly) == W().length(lam) + W().length(y))
        EXPECT_EQ(p, H().e_of(ly));
      else
        EXPECT_TRUE(p.is_zero());
    }
}

TEST_P(Hecke, CoordinatesRoundTrip) {
  std::mt19937_64 rng(5);
  auto els = W().elements_up_to_length(3, 1, true);
  for (int i = 0; i < 50; ++i) {
    HeckeElement x;
    for (int k = 0; k < 4; ++k) x.add_term(F(), els[rng() % els.size()], static_cast<Fe>(1 + rng() % (F().order() - 1)));
    HeckeElement e = H().e_coords(x), st = H().star_coords(x), back1, back2;
    for (const auto& [y, c] : e.terms()) back1.add(F(), H().e_of(y), c);
    for (const auto& [y, c] : st.terms()) back2.add(F(), H().t_star(y), c);
    EXPECT_EQ(back1, x);
    EXPECT_EQ(back2, x);
  }
}

TEST_P(Hecke, CenterCommutesWithGenerators) {
  std::vector<HeckeElement> gens;
  for (int s = 0; s < W().num_affine_simple(); ++s) gens.push_back(H().T(W().affine_lift(s)));
  for (const auto& g : W().omega_generators()) gens.push_back(H().T(g.lift));
  for (int t : W().zk().generators()) gens.push_back(H().T(W().from_t(t)));
  for (const W1& lam : W().lambdas_up_to_height(2, false)) {
    HeckeElement z = H().z_of(lam);
    for (const auto& g : gens) EXPECT_EQ(H().mul(z, g), H().mul(g, z)) << W().to_string(lam);
  }
}

TEST_P(Hecke, CentralElementsMultiply) {
  auto lams = W().lambdas_up_to_height(3, false);
  for (const W1& a : lams) {
    if (!R().is_regular(a.mu)) continue;
    for (const W1& b : lams) {
      if (!H().same_closed_chamber(a.mu, b.mu)) continue;
      EXPECT_EQ(H().mul(H().z_of(a), H().z_of(b)), H().z_of(W().mul(a, b)));
    }
  }
}

TEST_P(Hecke, Involutions) {
  auto els = W().elements_up_to_length(3, 1, true);
  for (const W1& w : els) {
    HeckeElement t = H().T(w);
    EXPECT_EQ(H().iota(H().iota(t)), t);
    EXPECT_EQ(H().f_inv(H().f_inv(t)), t);
  }
  for (int s = 0; s < W().num_affine_simple(); ++s) {
    HeckeElement t = H().T(W().affine_lift(s));
    EXPECT_EQ(H().iota(t), H().sub(H().c_s(s), t));
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    HeckeElement a = H().T(els[rng() % els.size()]), b = H().T(els[rng() % els.size()]);
    EXPECT_EQ(H().zeta(H().mul(a, b)), H().mul(H().zeta(b), H().zeta(a)));
    EXPECT_EQ(H().iota(H().mul(a, b)), H().mul(H().iota(a), H().iota(b)));
  }
  for (const W1& lam : W().lambdas_up_to_height(3, true)) {
    HeckeElement rhs = H().e_of(W().inv(lam));
    if (W().length(lam) % 2) rhs = H().scale(F().neg(1), rhs);
    EXPECT_EQ(H().f_inv(H().e_of(lam)), rhs);
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, Hecke,
                         ::testing::Values(Case{"SL2", 2}, Case{"SL2", 3}, Case{"SL2", 4}, Case{"GL2", 3},
                                           Case{"SL3", 3}, Case{"Sp4", 3}),
                         name_of);

TEST(HeckeExamples, SL2StarOfSimple) {
  AlgebraSetup s = make_setup("SL2", 3);
  const HeckeAlgebra& H = *s.H;
  const ProPWeyl& W = *s.W;
  W1 n = W.canonical_lift(1);
  HeckeElement expect = H.T(n);
  expect.add_term(*s.F, W.identity(), s.F->neg(1));
  expect.add_term(*s.F, W.from_t(1), s.F->neg(1));
  EXPECT_EQ(H.t_star(n), expect);
}

TEST(HeckeExamples, DominantTimesAntiDominantVanishes) {
  AlgebraSetup s = make_setup("SL2", 3);
  Vec a{}, b{};
  a[0] = 1;
  b[0] = -1;
  EXPECT_TRUE(s.H->mul(s.H->e_of(s.W->lambda(a)), s.H->e_of(s.W->lambda(b))).is_zero());
}

TEST(HeckeExamples, CentralTranslationIsInvertible) {
  AlgebraSetup s = make_setup("GL2", 3);
  Vec c{};
  c[0] = 1;
  c[1] = 1;
  W1 lam = s.W->lambda(c);
  EXPECT_EQ(s.H->mul(s.H->e_of(lam), s.H->e_of(s.W->inv(lam))), s.H->one());
}

TEST(HeckeExamples, CenterOrbitSizes) {
  AlgebraSetup s2 = make_setup("SL2", 3);
  Vec a{};
  a[0] = 1;
  EXPECT_EQ(s2.H->z_of_a(s2.W->lambda(a)).size(), 2u);
  AlgebraSetup s3 = make_setup("SL3", 3);
  EXPECT_EQ(s3.H->z_of_a(s3.W->lambda(s3.rs->regular_dominant())).size(), 6u);
  EXPECT_EQ(s3.H->z_of(s3.W->identity()), s3.H->one());
}
