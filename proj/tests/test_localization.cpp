#include <gtest/gtest.h>

#include "prophecke/localization.hpp"
#include "prophecke/setup.hpp"

using namespace prophecke;

namespace {

struct Case {
  const char* group;
  int q;
  int max_length;
};

class Localization : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override { s = make_setup(GetParam().group, GetParam().q); }
  AlgebraSetup s;
};

std::string name_of(const ::testing::TestParamInfo<Case>& i) {
  return std::string(i.param.group) + "_q" + std::to_string(i.param.q);
}

}  // namespace

// E(lambda_0)^k x = sum_w E(lambda_0^k nu) b_w c on the left, mirrored on the right.
TEST_P(Localization, CoordinatesReconstructAfterClearingDenominators) {
  const HeckeAlgebra& H = *s.H;
  const ProPWeyl& W = *s.W;
  const int k = 2;
  for (int v = 0; v < s.rs->order(); ++v)
    for (Side side : {Side::kLeft, Side::kRight}) {
      ChamberLocalization L(s.H, v, side);
      HeckeElement Ek = H.one();
      for (int i = 0; i < k; ++i) Ek = H.mul(Ek, H.e_of(L.lambda0()));
      W1 l0k = W.pow(L.lambda0(), k);
      for (const W1& x : W.elements_up_to_length(GetParam().max_length, 1, true)) {
        std::vector<AElement> a = L.coords(H.T(x));
        HeckeElement lhs = side == Side::kLeft ? H.mul(Ek, H.T(x)) : H.mul(H.T(x), Ek);
        HeckeElement rhs;
        for (int w = 0; w < s.rs->order(); ++w)
          for (const auto& [nu, c] : a[w].terms()) {
            HeckeElement e = H.e_of(W.mul(l0k, nu));
            rhs.add(*s.F, side == Side::kLeft ? H.mul(e, L.basis(w)) : H.mul(L.basis(w), e), c);
          }
        EXPECT_EQ(lhs, rhs) << "chamber " << v << " side " << static_cast<int>(side) << " x " << W.to_string(x);
      }
    }
}

TEST_P(Localization, BasisIsTheIdentityCoordinateVector) {
  for (int v = 0; v < s.rs->order(); ++v)
    for (Side side : {Side::kLeft, Side::kRight}) {
      ChamberLocalization L(s.H, v, side);
      for (int w = 0; w < s.rs->order(); ++w) {
        std::vector<AElement> a = L.coords(L.basis(w));
        for (int u = 0; u < s.rs->order(); ++u) {
          if (u == w)
            EXPECT_EQ(a[u], AElement::basis(s.W->identity()));
          else
            EXPECT_TRUE(a[u].is_zero());
        }
      }
    }
}

TEST(Localization, AntiDominantLeftBasisIsIwahoriMatsumoto) {
  AlgebraSetup s = make_setup("SL3", 3);
  ChamberLocalization L(s.H, s.rs->longest(), Side::kLeft);
  for (int w = 0; w < s.rs->order(); ++w) EXPECT_EQ(L.basis(w), s.H->T(s.W->canonical_lift(w)));
}

INSTANTIATE_TEST_SUITE_P(Groups, Localization,
                         ::testing::Values(Case{"SL2", 3, 3}, Case{"GL2", 3, 2}, Case{"SL3", 3, 2}, Case{"Sp4", 3, 1}),
                         name_of);
