#include <gtest/gtest.h>

#include <random>

#include "prophecke/setup.hpp"
#include "prophecke/universal.hpp"

using namespace prophecke;

namespace {

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

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

std::vector<int> delta(const RootSystem& R) {
  std::vector<int> d;
  for (int i = 0; i < R.rank_ss(); ++i) d.push_back(i);
  return d;
}

GroupElt random_series(const UniversalModule& U, std::mt19937_64& rng, int terms, int height) {
  const ProPWeyl& W = U.H().W();
  auto lams = W.lambdas_up_to_height(height, true);
  GroupElt f;
  for (int k = 0; k < terms; ++k)
    f.add_term(U.H().F(), lams[rng() % lams.size()], static_cast<Fe>(1 + rng() % (U.H().F().order() - 1)));
  return U.omega().project(f);
}

// A random element of X_J: sum_u f_u g_u with small random f_u.
XElement random_in_xj(const UniversalModule& U, const std::vector<int>& J, std::mt19937_64& rng) {
  XElement x = U.zero();
  for (const XElement& g : U.free_generators(J)) x = U.add(x, U.left(random_series(U, rng, 2, 1), g));
  return x;
}

struct Case {
  const char* group;
  int q;
};

class Universal : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override {
    s = make_setup(GetParam().group, GetParam().q);
    U = std::make_unique<UniversalModule>(s.H, 0);
  }
  AlgebraSetup s;
  std::unique_ptr<UniversalModule> U;
};

std::string name_of(const ::testing::TestParamInfo<Case>& i) {
  return std::string(i.param.group) + "_q" + std::to_string(i.param.q);
}

}  // namespace

TEST(ChiTilde, Examples) {
  AlgebraSetup s = make_setup("SL2", 3);
  const ProPWeyl& W = *s.W;
  EXPECT_EQ(chi_tilde(*s.H, AElement::basis(W.identity())), GroupElt::basis(W.identity()));
  W1 anti = W.lambda(vec_neg(s.rs->regular_dominant()));
  EXPECT_TRUE(chi_tilde(*s.H, AElement::basis(anti)).is_zero());
}

TEST(ChiTilde, IsAnAlgebraHomomorphism) {
  for (const char* g : {"SL2", "GL2", "SL3"}) {
    AlgebraSetup s = make_setup(g, 3);
    OmegaAlgebra C(s.W, s.F, 0);
    auto lams = s.W->lambdas_up_to_height(2, true);
    for (std::size_t i = 0; i < lams.size(); i += 2)
      for (std::size_t j = 0; j < lams.size(); j += 3) {
        AElement a = AElement::basis(lams[i]), b = AElement::basis(lams[j]);
        EXPECT_EQ(chi_tilde(*s.H, s.H->a_mul(a, b)), C.mul(chi_tilde(*s.H, a), chi_tilde(*s.H, b)));
      }
  }
}

TEST(OmegaAlgebra, IdempotentsAreOrthogonalAndComplete) {
  AlgebraSetup s = make_setup("GL2", 3);
  const int n = s.W->zk().size();
  OmegaAlgebra C(s.W, s.F, 0);
  GroupElt total;
  for (int a = 0; a < n; ++a) {
    GroupElt ea = C.idempotent(a);
    total.add(*s.F, ea);
    for (int b = 0; b < n; ++b) EXPECT_EQ(C.mul(ea, C.idempotent(b)), a == b ? ea : GroupElt{});
  }
  EXPECT_EQ(total, GroupElt::basis(s.W->identity()));
}

TEST(OmegaAlgebra, LeftAndRightDescriptionsAgree) {
  AlgebraSetup s = make_setup("SL3", 3);
  std::mt19937_64 rng(2);
  auto lams = s.W->lambdas_up_to_height(2, true);
  for (int psi = 0; psi < s.W->zk().size(); ++psi) {
    OmegaAlgebra C(s.W, s.F, psi);
    EXPECT_EQ(C.orbit(), std::vector<int>{psi});
    for (int trial = 0; trial < 20; ++trial) {
      GroupElt f;
      for (int k = 0; k < 5; ++k) f.add_term(*s.F, lams[rng() % lams.size()], 1 + rng() % 2);
      GroupElt p = C.project(f);
      EXPECT_TRUE(C.in_omega_left(p));
      EXPECT_TRUE(C.in_omega_right(p));
      EXPECT_EQ(C.in_omega_left(f), C.in_omega_right(f));
      // Two-sided ideal.
      EXPECT_TRUE(C.in_omega_left(C.mul(f, p)));
    }
  }
}

TEST(OmegaAlgebra, SpecializationRoundTrip) {
  AlgebraSetup s = make_setup("GL2", 3);
  std::mt19937_64 rng(6);
  auto lams = s.W->lambdas_up_to_height(2, true);
  OmegaAlgebra C(s.W, s.F, 2);
  for (int trial = 0; trial < 20; ++trial) {
    GroupElt f, g;
    for (int k = 0; k < 4; ++k) {
      f.add_term(*s.F, lams[rng() % lams.size()], 1);
      g.add_term(*s.F, lams[rng() % lams.size()], 2);
    }
    f = C.project(f);
    g = C.project(g);
    EXPECT_EQ(C.lift(2, C.specialize(2, f)), f);
    EXPECT_EQ(C.specialize(2, C.mul(f, g)), lpoly_mul(*s.F, C.specialize(2, f), C.specialize(2, g)));
  }
}

TEST(LaurentDivision, ExactAndInexact) {
  Field F(5);
  Vec e{}, x = e, y = e;
  x[0] = 1;
  y[1] = 1;
  LPoly one_minus_x{{e, 1}, {x, 4}}, one_minus_y{{e, 1}, {y, 4}};
  LPoly prod = lpoly_mul(F, one_minus_x, one_minus_y);
  auto q = lpoly_divide(F, prod, one_minus_y);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, one_minus_x);
  EXPECT_FALSE(lpoly_divide(F, one_minus_x, one_minus_y).has_value());
  LPoly shifted{{vec_neg(x), 3}};
  EXPECT_EQ(lpoly_divide(F, lpoly_mul(F, shifted, one_minus_x), shifted), one_minus_x);
}

TEST(TauAlpha, TrivialZKappaCollapses) {
  AlgebraSetup s = make_setup("SL2", 2);
  ASSERT_EQ(s.W->zk().size(), 1);
  UniversalModule U(s.H, 0);
  EXPECT_EQ(U.tau_alpha(0), GroupElt::basis(s.W->lambda_prime_alpha(0).translation));
}

TEST(TauAlpha, SL2TwoTermAverage) {
  AlgebraSetup s = make_setup("SL2", 3);
  UniversalModule U(s.H, 0);
  W1 a = s.W->lambda_prime_alpha(0).translation;
  GroupElt expect;
  const Fe half = s.F->inv(2);
  for (int t = 0; t < 2; ++t) expect.add_term(*s.F, s.W->mul(a, s.W->from_t(t)), half);
  EXPECT_EQ(U.tau_alpha(0), expect);
  EXPECT_EQ(U.c_w(0), U.omega().sub(U.omega().one(), expect));
  EXPECT_EQ(U.omega().specialize(0, U.c_w(0)).size(), 2u);
}

TEST(TauAlpha, RejectsCharactersNontrivialOnTheCorootTorus) {
  AlgebraSetup s = make_setup("SL2", 3);
  UniversalModule U(s.H, 1);
  EXPECT_EQ(U.hypothesis_violation(), 0);
  EXPECT_THROW(U.tau_alpha(0), std::invalid_argument);
}

TEST_P(Universal, TauAlphaIsLiftIndependent) {
  for (int i = 0; i < s.rs->rank_ss(); ++i)
    for (int k = 0; k < U->num_lifts(i); ++k) EXPECT_EQ(U->tau_alpha(i, k), U->tau_alpha(i, 0));
}

TEST_P(Universal, CwProducts) {
  const RootSystem& R = *s.rs;
  EXPECT_TRUE(U->c_factors_commute());
  EXPECT_EQ(U->c_w(R.longest()), U->omega().one());
  GroupElt all = U->omega().one();
  for (int i = 0; i < R.rank_ss(); ++i) all = U->omega().mul(all, U->omega().sub(U->omega().one(), U->tau_alpha(i)));
  EXPECT_EQ(U->c_w(0), all);
}

TEST_P(Universal, CwIsRegular) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    GroupElt f = random_series(*U, rng, 5, 2);
    if (f.is_zero()) continue;
    int w = static_cast<int>(rng() % s.rs->order());
    RegularCheck rc = c_w_regular_check(*U, w, f);
    EXPECT_TRUE(rc.nonzero);
    EXPECT_TRUE(rc.leading_matches);
  }
  EXPECT_THROW(c_w_regular_check(*U, 0, GroupElt{}), std::invalid_argument);
}

TEST_P(Universal, GeneratorExamples) {
  const RootSystem& R = *s.rs;
  XElement g0 = U->generator({});
  EXPECT_EQ(g0, U->basis(0, U->omega().one()));
  XElement gd = U->generator(delta(R));
  auto y = U->y_components(gd);
  for (int w = 0; w < R.order(); ++w) EXPECT_EQ(y[w], w == R.longest() ? U->omega().one() : GroupElt{});
  if (R.order() == 2) {
    EXPECT_FALSE(gd.comps[0].is_zero());
    EXPECT_FALSE(gd.comps[1].is_zero());
  }
}

TEST_P(Universal, RightActionIsAnActionCommutingWithTheLeftOne) {
  std::mt19937_64 rng(5);
  auto els = s.W->elements_up_to_length(2, 1, true);
  for (int trial = 0; trial < 10; ++trial) {
    XElement x = random_in_xj(*U, {}, rng);
    EXPECT_EQ(U->act(x, s.H->one()), x);
    HeckeElement a = s.H->T(els[rng() % els.size()]), b = s.H->T(els[rng() % els.size()]);
    EXPECT_EQ(U->act(U->act(x, a), b), U->act(x, s.H->mul(a, b)));
    GroupElt f = random_series(*U, rng, 2, 1);
    EXPECT_EQ(U->left(f, U->act(x, a)), U->act(U->left(f, x), a));
  }
}

TEST_P(Universal, CentralElementsActByShifts) {
  W1 lam = s.W->lambda(s.rs->regular_dominant());
  HeckeElement z = s.H->z_of(lam);
  for (const auto& J : all_subsets(s.rs->rank_ss()))
    for (const XElement& g : U->free_generators(J)) EXPECT_EQ(U->act(g, z), U->left(U->omega().tau(lam), g));
}

TEST_P(Universal, YDecomposition) {
  const RootSystem& R = *s.rs;
  std::mt19937_64 rng(8);
  // Y_w is the support component w^{-1} w_Delta.
  for (int w = 0; w < R.order(); ++w) {
    XElement y = U->star_basis(w, U->omega().one());
    for (int v = 0; v < R.order(); ++v) {
      XElement r = U->act(y, s.H->e_of(s.W->lambda(R.act(v, R.regular_dominant()))));
      EXPECT_EQ(r.is_zero(), v != R.mul(R.inv(w), R.longest()));
    }
  }
  for (const auto& J : all_subsets(R.rank_ss())) {
    XElement x = random_in_xj(*U, J, rng);
    auto q = U->y_components(x);
    XElement back = U->zero();
    for (int w = 0; w < R.order(); ++w) {
      XElement part = U->star_basis(w, q[w]);
      back = U->add(back, part);
      EXPECT_EQ(U->member(part, J, 6).verdict, Verdict::kPass);
    }
    EXPECT_EQ(back, x);
  }
}

TEST_P(Universal, XJMonotonicity) {
  for (const auto& J : all_subsets(s.rs->rank_ss()))
    for (const auto& J2 : all_subsets(s.rs->rank_ss())) {
      Membership m = U->member(U->generator(J2), J, 3);
      EXPECT_EQ(m.verdict, subset(J, J2) ? Verdict::kPass : Verdict::kFail) << m.witness;
    }
}

TEST_P(Universal, MembershipCoordinatesReconstruct) {
  std::mt19937_64 rng(11);
  for (const auto& J : all_subsets(s.rs->rank_ss())) {
    XElement x = random_in_xj(*U, J, rng);
    Membership m = U->member(x, J, 3);
    ASSERT_EQ(m.verdict, Verdict::kPass);
    XElement back = U->zero();
    for (std::size_t u = 0; u < m.coords.size(); ++u) back = U->add(back, U->left(m.coords[u], U->free_generators(J)[u]));
    EXPECT_EQ(back, x);
  }
  EXPECT_EQ(U->member(U->zero(), delta(*s.rs), 0).verdict, Verdict::kPass);
}

TEST_P(Universal, SmallWindowIsInconclusiveNotFalse) {
  Vec far = vec_scale(4, s.rs->regular_dominant());
  XElement x = U->left(U->omega().tau(s.W->lambda(far)), U->free_generators({})[0]);
  Membership m = U->member(x, {}, 0);
  EXPECT_EQ(m.verdict, Verdict::kInconclusive);
  EXPECT_FALSE(m.witness.empty());
  EXPECT_EQ(U->member(x, {}, 20).verdict, Verdict::kPass);
}

TEST_P(Universal, FiltrationQuotients) {
  const RootSystem& R = *s.rs;
  auto chain = filtration_chain(R);
  ASSERT_EQ(static_cast<int>(chain.size()), R.order());
  const int h = R.order() > 6 ? 5 : 3;
  for (const auto& A : chain) {
    QuotientCheck qc = U->quotient_identity_check(A, h);
    EXPECT_EQ(qc.verdict, Verdict::kPass) << qc.witness;
    EXPECT_GT(qc.truncated_elements, 0);
    // The section lies in X_Delta and vanishes outside A.
    EXPECT_EQ(U->member(qc.section, delta(R), h).verdict, Verdict::kPass);
    auto idx = U->filtration_indices(A);
    for (int v = 0; v < R.order(); ++v)
      if (!std::binary_search(idx.begin(), idx.end(), v)) EXPECT_TRUE(qc.section.comps[v].is_zero());
  }
}

TEST(Filtration, RejectsSetsThatAreNotUpwardClosed) {
  AlgebraSetup s = make_setup("SL2", 3);
  EXPECT_THROW(check_upward_closed(*s.rs, {0}), std::invalid_argument);
  EXPECT_NO_THROW(check_upward_closed(*s.rs, {1}));
  UniversalModule U(s.H, 0);
  EXPECT_THROW(U.quotient_identity_check({0}, 3), std::invalid_argument);
}

TEST(Filtration, TinyWindowIsInconclusive) {
  AlgebraSetup s = make_setup("SL3", 3);
  UniversalModule U(s.H, 0);
  QuotientCheck qc = U.quotient_identity_check({s.rs->longest()}, 0);
  EXPECT_EQ(qc.verdict, Verdict::kInconclusive);
  EXPECT_FALSE(qc.witness.empty());
}

TEST(TensorWithModule, MatchesInductionForCorpusModules) {
  for (const char* g : {"SL2", "SL3", "GL2"}) {
    AlgebraSetup s = make_setup(g, 3);
    std::mt19937_64 rng(31);
    for (int psi = 0; psi < s.W->zk().size(); ++psi) {
      UniversalModule U(s.H, psi);
      for (int dim = 1; dim <= 2; ++dim) {
        FinAModule m = module_from_lattice_rep(s.W, s.F, 0, random_lattice_rep(*s.W, *s.F, dim, rng, psi));
        TensorWithModule t = tensor_with_module(m, U, 3);
        EXPECT_EQ(t.module.dim(), s.rs->order() * dim);
        EXPECT_EQ(rank(*s.F, t.unit), dim);
        EXPECT_TRUE(t.iso.found) << g << " psi " << psi;
        EXPECT_EQ(t.filtration_injective, !U.hypothesis_violation().has_value()) << t.diagnostic;
      }
    }
  }
}

TEST(TensorWithModule, RejectsWrongSupportAndComponent) {
  AlgebraSetup s = make_setup("SL2", 3);
  std::mt19937_64 rng(1);
  UniversalModule U(s.H, 0);
  FinAModule wrong_support = module_from_lattice_rep(s.W, s.F, 1, random_lattice_rep(*s.W, *s.F, 1, rng, 0));
  EXPECT_THROW(tensor_with_module(wrong_support, U, 3), std::invalid_argument);
  FinAModule wrong_char = module_from_lattice_rep(s.W, s.F, 0, random_lattice_rep(*s.W, *s.F, 1, rng, 1));
  EXPECT_THROW(tensor_with_module(wrong_char, U, 3), std::invalid_argument);
}

TEST(TensorWithModule, ZeroModule) {
  AlgebraSetup s = make_setup("SL2", 3);
  UniversalModule U(s.H, 0);
  FinAModule z = module_from_lattice_rep(s.W, s.F, 0, LatticeRep{0, std::vector<Mat>(1, Mat(0, 0)), std::vector<Mat>(1, Mat(0, 0))});
  EXPECT_EQ(tensor_with_module(z, U, 3).module.dim(), 0);
}

INSTANTIATE_TEST_SUITE_P(Groups, Universal,
                         ::testing::Values(Case{"SL2", 3}, Case{"SL2", 4}, Case{"GL2", 3}, Case{"SL3", 3},
                                           Case{"Sp4", 3}),
                         name_of);
