#include <gtest/gtest.h>

#include "support.hpp"

using namespace cmdef;
using namespace testing_support;

TEST(Field, PrimeArithmetic) {
  Field k = Field::prime(7);
  EXPECT_EQ(k.mul(k.from_int(3), k.inv(k.from_int(3))), k.one());
  EXPECT_EQ(k.to_string(k.from_int(6)), "-1");
  EXPECT_THROW(Field::prime(8), Error);
}

TEST(Field, RationalOverflowIsLimit) {
  Field q = Field::rationals();
  Scalar a = q.from_fraction(1, 3);
  EXPECT_EQ(q.add(a, a), q.from_fraction(2, 3));
  Scalar big = q.from_int(std::int64_t(1) << 40);
  EXPECT_THROW(q.mul(big, big), LimitError);
}

TEST(Poly, ParseAndPrint) {
  auto S = poly_ring({"z0", "z1", "z2"});
  Poly f = S->parse("z1^2 - z0*z2");
  EXPECT_EQ(S->to_string(f), "z1^2 - z0*z2");
  EXPECT_THROW(S->parse("z1^2 - z0*z3"), Error);
  EXPECT_TRUE(S->is_homogeneous(f));
  EXPECT_FALSE(S->is_homogeneous(S->parse("z0 + 1")));
}

TEST(Groebner, SingleQuadric) {
  auto A = ring(poly_ring({"z0", "z1", "z2"}), {"z1^2 - z0*z2"});
  ASSERT_EQ(A->gb().size(), 1u);
  const PolyRing& S = A->S();
  EXPECT_EQ(S.to_string(A->nf(S.parse("z1^4"))), "z0^2*z2^2");
  EXPECT_TRUE(A->nf(Poly{}).empty());
  Poly r = A->nf(S.parse("z1^3*z2"));
  EXPECT_EQ(S.to_string(r), "z0*z1*z2^2");
}

TEST(Groebner, VeroneseMinorsGenerateAndReduce) {
  auto A = veronese(3);
  for (const auto& f : A->ideal()) EXPECT_TRUE(A->nf(f).empty());
  // Cone over the twisted cubic: Hilbert function 3d+1.
  Module F = Module::free(A, {0});
  for (int d = 0; d <= 5; ++d) EXPECT_EQ(F.gb().dim(d), 3 * d + 1) << d;
}

TEST(Groebner, ZeroIdeal) {
  auto A = ring(poly_ring({"x", "y"}), {});
  EXPECT_TRUE(A->is_polynomial_ring());
}

TEST(Groebner, InhomogeneousRejected) {
  auto S = poly_ring({"x", "y"});
  EXPECT_THROW(ring(S, {"x^2 - y"}), Error);
}

TEST(Module, HilbertFunctionAgainstBruteForce) {
  auto A = veronese(2);
  Module F = Module::free(A, {0});
  std::vector<int> want{1, 3, 5, 7};
  for (int d = 0; d < 4; ++d) EXPECT_EQ(F.gb().dim(d), want[d]);
  Module m = maximal_ideal(A);
  Module k = residue_field(A);
  for (int d = 0; d <= 4; ++d) {
    EXPECT_EQ(m.gb().dim(d), brute_hf(m, d)) << d;
    EXPECT_EQ(k.gb().dim(d), d == 0 ? 1 : 0);
  }
}

TEST(Module, SyzygiesComposeToZero) {
  auto A = veronese(2);
  Matrix row = mat(*A, {{"z0", "z1", "z2"}}, {0}, {1, 1, 1});
  Matrix syz = syzygy_matrix(*A, row);
  EXPECT_TRUE(is_zero_matrix(*A, compose(*A, row, syz)));
  // Minimal syzygies of the maximal ideal of A(2): 4 linear ones.
  EXPECT_EQ(syz.cols(), 4);
  for (int d : syz.src) EXPECT_EQ(d, 2);
}

TEST(Module, SyzygyOverPolynomialAndQuotient) {
  auto S = poly_ring({"x"});
  auto P = ring(S, {});
  EXPECT_EQ(syzygy_matrix(*P, mat(*P, {{"x"}}, {0}, {1})).cols(), 0);
  auto B = ring(S, {"x^2"});
  Matrix s = syzygy_matrix(*B, mat(*B, {{"x"}}, {0}, {1}));
  ASSERT_EQ(s.cols(), 1);
  EXPECT_EQ(S->to_string(matrix_entry(*S, s, 0, 0)), "x");
}

TEST(Module, PruneRemovesUnitRelations) {
  auto A = veronese(2);
  // coker [[1, z0],[0, z1]] is A/(z1).
  Module M(A, mat(*A, {{"1", "z0"}, {"0", "z1"}}, {0, 0}, {0, 1}));
  Pruned p = prune(M);
  EXPECT_EQ(p.M.ngens(), 1);
  for (int d = 0; d < 4; ++d) EXPECT_EQ(p.M.gb().dim(d), M.gb().dim(d));
}
