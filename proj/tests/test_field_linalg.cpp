#include <gtest/gtest.h>

#include <random>

#include "prophecke/field.hpp"
#include "prophecke/linalg.hpp"

using namespace prophecke;

class FieldAxioms : public ::testing::TestWithParam<int> {};

TEST_P(FieldAxioms, Exhaustive) {
  Field F(GetParam());
  const Fe q = F.order();
  for (Fe a = 0; a < q; ++a) {
    EXPECT_EQ(F.add(a, F.neg(a)), 0u);
    if (a != 0) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
    for (Fe b = 0; b < q; ++b) {
      EXPECT_EQ(F.add(a, b), F.add(b, a));
      EXPECT_EQ(F.mul(a, b), F.mul(b, a));
      for (Fe c = 0; c < q; c += 1 + q / 5) EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
}

TEST_P(FieldAxioms, GeneratorIsPrimitive) {
  Field F(GetParam());
  Fe g = F.generator();
  Fe x = 1;
  for (std::uint32_t i = 1; i < F.order() - 1; ++i) {
    x = F.mul(x, g);
    EXPECT_NE(x, 1u) << "order divides " << i;
  }
  EXPECT_EQ(F.mul(x, g), 1u);
}

INSTANTIATE_TEST_SUITE_P(Orders, FieldAxioms, ::testing::Values(2, 3, 4, 5, 8, 9, 16, 25, 27));

TEST(Field, RootOfUnityHasExactOrder) {
  Field F(9);
  for (std::uint32_t d : {1u, 2u, 4u, 8u}) {
    Fe z = F.root_of_unity(d);
    EXPECT_EQ(F.pow(z, d), 1u);
    for (std::uint32_t e = 1; e < d; ++e) EXPECT_NE(F.pow(z, e), 1u);
  }
  EXPECT_THROW(F.root_of_unity(3), std::invalid_argument);
}

TEST(Field, MinimalDegree) {
  EXPECT_EQ(Field::minimal_degree(3, 2), 1u);
  EXPECT_EQ(Field::minimal_degree(2, 3), 2u);
  EXPECT_EQ(Field::minimal_degree(3, 8), 2u);
}

TEST(Field, RejectsNonPrimePowers) {
  EXPECT_THROW(Field(6), std::invalid_argument);
  EXPECT_THROW(Field(1), std::invalid_argument);
}

namespace {

Mat random_mat(const Field& F, int r, int c, std::mt19937_64& rng) {
  Mat A(r, c);
  for (auto& x : A.a) x = static_cast<Fe>(rng() % F.order());
  return A;
}

}  // namespace

TEST(Linalg, InverseAndDeterminant) {
  Field F(5);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    Mat A = random_mat(F, 4, 4, rng);
    auto inv = inverse(F, A);
    EXPECT_EQ(inv.has_value(), det(F, A) != 0);
    if (inv) EXPECT_EQ(mat_mul(F, A, *inv), Mat::identity(4));
  }
}

TEST(Linalg, DeterminantIsMultiplicative) {
  Field F(9);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    Mat A = random_mat(F, 3, 3, rng), B = random_mat(F, 3, 3, rng);
    EXPECT_EQ(det(F, mat_mul(F, A, B)), F.mul(det(F, A), det(F, B)));
  }
}

TEST(Linalg, NullspaceAndRank) {
  Field F(3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Mat A = random_mat(F, 3, 6, rng);
    Mat N = nullspace(F, A);
    EXPECT_EQ(N.rows + rank(F, A), 6);
    EXPECT_TRUE(mat_mul(F, A, transpose(N)).is_zero());
  }
}

TEST(Linalg, SolveFindsSolutionsExactlyWhenConsistent) {
  Field F(7);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    Mat A = random_mat(F, 4, 3, rng);
    Mat x = random_mat(F, 3, 1, rng);
    Mat b = mat_mul(F, A, x);
    auto s = solve(F, A, b.a);
    ASSERT_TRUE(s.has_value());
    Mat sx(3, 1);
    sx.a = *s;
    EXPECT_EQ(mat_mul(F, A, sx), b);
  }
}

TEST(Linalg, RestrictToStableRows) {
  Field F(5);
  Mat X(3, 3);
  X(0, 0) = 2;
  X(0, 1) = 1;
  X(1, 1) = 3;
  X(2, 2) = 4;
  Mat B(2, 3);
  B(0, 0) = 1;
  B(1, 1) = 1;
  Mat Y = restrict_to_rows(F, B, X);
  EXPECT_EQ(mat_mul(F, B, X), mat_mul(F, Y, B));
  Mat C(1, 3);
  C(0, 1) = 1;
  C(0, 2) = 1;
  EXPECT_THROW(restrict_to_rows(F, C, X), std::runtime_error);
}
