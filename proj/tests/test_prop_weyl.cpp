#include <gtest/gtest.h>

#include <cstdlib>

#include "prophecke/setup.hpp"

using namespace prophecke;

namespace {

struct Case {
  const char* group;
  int q;
};

class WOne : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override { s = make_setup(GetParam().group, GetParam().q); }
  const ProPWeyl& W() const { return *s.W; }
  const RootSystem& R() const { return *s.rs; }
  AlgebraSetup s;
};

std::string name_of(const ::testing::TestParamInfo<Case>& i) {
  return std::string(i.param.group) + "_q" + std::to_string(i.param.q);
}

}  // namespace

TEST_P(WOne, GroupAxioms) {
  auto els = W().elements_up_to_length(2, 1, true);
  for (const W1& x : els) {
    EXPECT_EQ(W().mul(x, W().inv(x)), W().identity());
    EXPECT_EQ(W().mul(W().identity(), x), x);
  }
  for (std::size_t i = 0; i < els.size(); i += 3)
    for (std::size_t j = 0; j < els.size(); j += 5)
      for (std::size_t k = 0; k < els.size(); k += 7)
        EXPECT_EQ(W().mul(W().mul(els[i], els[j]), els[k]), W().mul(els[i], W().mul(els[j], els[k])));
}

TEST_P(WOne, LengthMatchesPeeledWord) {
  for (const W1& x : W().elements_up_to_length(4, 1, true)) {
    ProPWeyl::Peeled p = W().peel(x);
    EXPECT_EQ(static_cast<int>(p.word.size()), W().length(x));
    EXPECT_EQ(W().length(p.u), 0);
    W1 y = p.u;
    for (auto it = p.word.rbegin(); it != p.word.rend(); ++it) y = W().mul(W().affine_lift(*it), y);
    EXPECT_EQ(y, x);
  }
}

TEST_P(WOne, LengthSymmetries) {
  for (const W1& x : W().elements_up_to_length(4, 1, true)) {
    const int l = W().length(x);
    EXPECT_EQ(W().length(W().inv(x)), l);
    for (int t = 0; t < W().zk().size(); ++t) EXPECT_EQ(W().length(W().mul(W().from_t(t), x)), l);
    for (int s = 0; s < W().num_affine_simple(); ++s) {
      EXPECT_EQ(std::abs(W().length(W().mul(W().affine_lift(s), x)) - l), 1);
      EXPECT_EQ(std::abs(W().length(W().mul(x, W().affine_lift(s))) - l), 1);
    }
  }
}

TEST_P(WOne, TranslationLengthIsSumOverPositiveRoots) {
  for (const W1& lam : W().lambdas_up_to_height(4, false)) {
    long long l = 0;
    for (int k = 0; k < R().num_positive(); ++k) l += std::llabs(pairing(lam.mu, R().root(k), R().lattice_rank()));
    EXPECT_EQ(W().length(lam), l);
  }
}

TEST_P(WOne, AffineSimpleReflectionsHaveLengthOne) {
  for (int s = 0; s < W().num_affine_simple(); ++s) {
    EXPECT_EQ(W().length(W().affine_lift(s)), 1);
    EXPECT_EQ(W().mul(W().affine_lift(s), W().affine_lift_inv(s)), W().identity());
    EXPECT_EQ(static_cast<int>(W().c_s_terms(s).size()), GetParam().q - 1);
  }
}

TEST_P(WOne, SimpleLiftSquares) {
  for (int i = 0; i < R().rank_ss(); ++i) {
    W1 n = W().canonical_lift(R().simple(i));
    EXPECT_EQ(W().mul(n, n), W().from_t(W().zk().coroot_minus_one(i)));
  }
}

TEST_P(WOne, ConjugationActsOnNu) {
  for (int w = 0; w < R().order(); ++w)
    for (const W1& lam : W().lambdas_up_to_height(2, true)) {
      W1 c = W().conjugate(W().canonical_lift(w), lam);
      EXPECT_EQ(c.w, 0);
      EXPECT_EQ(c.mu, R().act(w, lam.mu));
    }
}

TEST_P(WOne, BruhatOrder) {
  auto els = W().elements_up_to_length(3, 1, false);
  for (const W1& x : els) {
    EXPECT_TRUE(W().bruhat_leq(x, x));
    for (int s = 0; s < W().num_affine_simple(); ++s) {
      W1 y = W().mul(W().affine_lift(s), x);
      if (W().length(y) > W().length(x)) EXPECT_TRUE(W().bruhat_lt(x, y));
    }
  }
  for (const W1& x : els)
    for (const W1& y : els) {
      if (W().bruhat_lt(x, y)) {
        EXPECT_LT(W().length(x), W().length(y));
        EXPECT_FALSE(W().bruhat_leq(y, x));
      }
    }
}

TEST_P(WOne, OrbitsOfRegularElements) {
  Vec rho = R().regular_dominant();
  W1 lam = W().lambda(rho);
  auto orb = W().orbit(lam);
  EXPECT_EQ(static_cast<int>(orb.size()), R().order());
  for (const W1& x : orb) {
    EXPECT_EQ(R().dominant_rep(x.mu), rho);
    EXPECT_EQ(W().length(x), W().length(lam));
  }
  for (int w = 0; w < R().order(); ++w)
    EXPECT_TRUE(std::binary_search(orb.begin(), orb.end(), W().conjugate(W().canonical_lift(w), lam)));
}

TEST_P(WOne, LambdaPrimeAlphaContainsCorootImages) {
  for (int i = 0; i < R().rank_ss(); ++i) {
    LambdaPrimeAlpha lp = W().lambda_prime_alpha(i);
    EXPECT_EQ(lp.translation.mu, R().coroot(R().simple_root_index(i)));
    for (int t : W().zk().coroot_values(i)) EXPECT_TRUE(std::binary_search(lp.finite.begin(), lp.finite.end(), t));
  }
}

TEST_P(WOne, OmegaDecompositionReconstructs) {
  for (const auto& g : W().omega_generators()) EXPECT_EQ(W().length(g.lift), 0);
  for (const W1& x : W().elements_up_to_length(3, 1, true)) {
    W1 u = W().peel(x).u;
    ProPWeyl::OmegaWord ow = W().omega_decompose(u);
    W1 y = W().identity();
    for (std::size_t j = 0; j < ow.exps.size(); ++j) y = W().mul(y, W().pow(W().omega_generators()[j].lift, ow.exps[j]));
    EXPECT_EQ(W().mul(y, W().from_t(ow.t)), u);
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, WOne,
                         ::testing::Values(Case{"SL2", 2}, Case{"SL2", 3}, Case{"GL2", 3}, Case{"SL3", 3},
                                           Case{"Sp4", 3}, Case{"GL2", 4}),
                         name_of);

TEST(ProPWeyl, SL2LengthOracle) {
  AlgebraSetup s = make_setup("SL2", 3);
  const ProPWeyl& W = *s.W;
  for (int k = -4; k <= 4; ++k) {
    Vec mu{};
    mu[0] = k;
    EXPECT_EQ(W.length(W.lambda(mu)), 2 * std::abs(k));
    EXPECT_EQ(W.length(W.mul(W.lambda(mu), W.canonical_lift(1))), std::abs(2 * k - 1));
  }
}

TEST(ProPWeyl, SL2ElementCount) {
  AlgebraSetup s = make_setup("SL2", 2);
  for (int L = 0; L <= 6; ++L) EXPECT_EQ(static_cast<int>(s.W->elements_up_to_length(L).size()), 2 * L + 1);
}

TEST(ProPWeyl, ZKappaOrders) {
  EXPECT_EQ(make_setup("SL2", 3).W->zk().size(), 2);
  EXPECT_EQ(make_setup("SL3", 4).W->zk().size(), 9);
  EXPECT_EQ(make_setup("GL2", 2).W->zk().size(), 1);
}
