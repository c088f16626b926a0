#include <gtest/gtest.h>

#include <random>

#include "cmdef/mf.hpp"
#include "support.hpp"

using namespace cmdef;
using namespace testing_support;

namespace {

std::string entry(const MatrixFactorization& mf, const Matrix& m, int i, int j) {
  return mf.Q->S().to_string(matrix_entry(mf.Q->S(), m, i, j));
}

std::vector<std::vector<std::string>> entries(const MatrixFactorization& mf, const Matrix& m) {
  return matrix_strings(mf.Q->S(), m);
}

// Ranks of F[0..] of a resolution.
std::vector<int> ranks(const FreeComplex& C) {
  std::vector<int> r;
  for (const auto& f : C.F) r.push_back(int(f.size()));
  return r;
}

}  // namespace

TEST(MfFromModule, DualNumbers) {
  auto B = ring(poly_ring({"x"}), {"x^2"});
  MatrixFactorization mf = mf_from_module(residue_field(B));
  ASSERT_EQ(mf.n(), 1);
  EXPECT_EQ(entry(mf, mf.phi, 0, 0), "x");
  EXPECT_EQ(entry(mf, mf.psi, 0, 0), "x");
  EXPECT_TRUE(is_matrix_factorization(mf));
}

TEST(MfFromModule, TruncatedPolynomialRing) {
  auto B = ring(poly_ring({"x"}), {"x^3"});
  MatrixFactorization mf = mf_from_module(residue_field(B));
  ASSERT_EQ(mf.n(), 1);
  EXPECT_EQ(entry(mf, mf.phi, 0, 0), "x");
  EXPECT_EQ(entry(mf, mf.psi, 0, 0), "x^2");
}

TEST(MfFromModule, QuadricCone) {
  auto A = veronese(2);
  Module J = image(ModuleMap{Module::free(A, {1, 1}), Module::free(A, {0}), mat(*A, {{"z0", "z1"}}, {0}, {1, 1})}).M;
  MatrixFactorization mf = mf_from_module(J);
  EXPECT_EQ(mf.n(), 2);
  EXPECT_TRUE(is_matrix_factorization(mf));
  EXPECT_TRUE(same_hilbert_series(Module(mf.Q, mf.phi), J));
  EXPECT_FALSE(has_unit_entry(mf.phi));
}

TEST(MfFromModule, FreeAndErrors) {
  auto B = ring(poly_ring({"x", "y"}), {"x*y"});
  MatrixFactorization mf = mf_from_module(Module::free(B, {0}));
  EXPECT_EQ(mf.n(), 1);
  EXPECT_EQ(entry(mf, mf.psi, 0, 0), "1");
  EXPECT_THROW(mf_from_module(residue_field(B)), Error);
  EXPECT_THROW(mf_from_module(residue_field(veronese(3))), Error);
}

TEST(Knorrer, NodeBlocks) {
  auto Q = ring(poly_ring({"x"}), {});
  const PolyRing& S = Q->S();
  MatrixFactorization mf = factorization_from_entries(Q, S.parse("x^2"), {{S.parse("x")}}, {{S.parse("x")}});
  MatrixFactorization K = knorrer(mf);
  using Rows = std::vector<std::vector<std::string>>;
  EXPECT_EQ(entries(K, K.phi), (Rows{{"x", "t"}, {"-t", "x"}}));
  EXPECT_EQ(entries(K, K.psi), (Rows{{"x", "-t"}, {"t", "x"}}));
  EXPECT_EQ(K.Q->S().to_string(K.f), "x^2 + t^2");
  EXPECT_TRUE(is_matrix_factorization(K));
}

TEST(Knorrer, CuspBlocksDoubleTheGrading) {
  auto Q = ring(poly_ring({"x"}), {});
  const PolyRing& S = Q->S();
  MatrixFactorization mf = factorization_from_entries(Q, S.parse("x^3"), {{S.parse("x")}}, {{S.parse("x^2")}});
  KnorrerRings R = knorrer_rings(Q, mf.f);
  EXPECT_EQ(R.scale, 2);
  EXPECT_EQ(R.Qt->S().degrees(), (std::vector<int>{2, 3}));
  MatrixFactorization K = knorrer(mf, R);
  using Rows = std::vector<std::vector<std::string>>;
  EXPECT_EQ(entries(K, K.phi), (Rows{{"x", "t"}, {"-t", "x^2"}}));
  EXPECT_TRUE(is_matrix_factorization(K));
}

TEST(Knorrer, RandomDeterminantalPairs) {
  auto Q = ring(poly_ring({"x", "y", "z"}), {});
  const PolyRing& S = Q->S();
  std::mt19937 rng(11);
  auto linear = [&] {
    Poly p;
    for (int i = 0; i < 3; ++i) p = S.add(p, S.scale(S.field().from_int(int(rng() % 7) - 3), S.variable(i)));
    return p;
  };
  for (int trial = 0; trial < 5; ++trial) {
    Poly a = linear(), b = linear(), c = linear(), d = linear();
    Poly f = S.sub(S.mul(a, d), S.mul(b, c));
    if (f.empty()) continue;
    MatrixFactorization mf =
        factorization_from_entries(Q, f, {{a, b}, {c, d}}, {{d, S.neg(b)}, {S.neg(c), a}});
    MatrixFactorization K = knorrer(mf);
    EXPECT_TRUE(is_matrix_factorization(K));
    EXPECT_EQ(K.n(), 4);
    MatrixFactorization KK = knorrer(K);
    EXPECT_TRUE(is_matrix_factorization(KK));
    EXPECT_EQ(KK.n(), 8);
  }
}

TEST(Knorrer, RejectsCharacteristicTwo) {
  auto Q = ring(poly_ring({"x"}, {}, Field::prime(2)), {});
  const PolyRing& S = Q->S();
  MatrixFactorization mf = factorization_from_entries(Q, S.parse("x^2"), {{S.parse("x")}}, {{S.parse("x")}});
  EXPECT_THROW(knorrer(mf), Error);
}

TEST(Knorrer, FactorizationEntryChecks) {
  auto Q = ring(poly_ring({"x", "y"}), {});
  const PolyRing& S = Q->S();
  EXPECT_THROW(factorization_from_entries(Q, S.parse("x*y"), {{S.parse("x")}}, {{S.parse("x")}}), Error);
  EXPECT_THROW(factorization_from_entries(Q, S.parse("x*y"), {{S.parse("x + y^2")}}, {{S.parse("y")}}), Error);
}

TEST(Eisenbud, NodeIsPeriodicAndExact) {
  auto Q = ring(poly_ring({"x"}), {});
  const PolyRing& S = Q->S();
  MatrixFactorization mf = factorization_from_entries(Q, S.parse("x^2"), {{S.parse("x")}}, {{S.parse("x")}});
  KnorrerRings R = knorrer_rings(Q, mf.f);
  FreeResolution r = knorrer_resolution(mf, R, 4);
  EXPECT_EQ(ranks(r), (std::vector<int>{1, 2, 2, 2, 2}));
  EXPECT_TRUE(squares_to_zero(r));
  EXPECT_TRUE(certify_exact(r, 10).exact);
  EXPECT_TRUE(same_hf(r.M, restrict_scalars(residue_field(R.B), R.A), -2, 8));
  EXPECT_EQ(matrix_strings(R.A->S(), r.d[3]), matrix_strings(R.A->S(), r.d[1]));
}

TEST(Eisenbud, CuspResolvesResidueField) {
  auto Q = ring(poly_ring({"x"}), {});
  const PolyRing& S = Q->S();
  MatrixFactorization mf = factorization_from_entries(Q, S.parse("x^3"), {{S.parse("x")}}, {{S.parse("x^2")}});
  KnorrerRings R = knorrer_rings(Q, mf.f);
  FreeResolution r = knorrer_resolution(mf, R, 6);
  EXPECT_TRUE(squares_to_zero(r));
  EXPECT_TRUE(certify_exact(r, 12).exact);
  EXPECT_TRUE(same_hf(r.M, restrict_scalars(residue_field(R.B), R.A), -2, 10));
  EXPECT_EQ(matrix_strings(R.A->S(), r.d[5]), matrix_strings(R.A->S(), r.d[3]));
  FreeResolution shortest = knorrer_resolution(mf, R, 2);
  EXPECT_TRUE(squares_to_zero(shortest));
  EXPECT_THROW(knorrer_resolution(mf, R, 1), Error);
}

TEST(Eisenbud, BaseResolutionMatchesMinimalResolution) {
  auto A = veronese(2);
  Module J = image(ModuleMap{Module::free(A, {1, 1}), Module::free(A, {0}), mat(*A, {{"z0", "z1"}}, {0}, {1, 1})}).M;
  MatrixFactorization mf = mf_from_module(J);
  FreeResolution e = eisenbud_resolution(mf, 5);
  FreeResolution r = resolve(J, 5);
  EXPECT_TRUE(certify_exact(e, 10).exact);
  EXPECT_EQ(betti(e).to_string(), betti(r).to_string());
}

class KnorrerApproxCase : public ::testing::TestWithParam<std::string> {};

TEST_P(KnorrerApproxCase, ExtDecomposition) {
  auto B = ring(poly_ring({"x"}), {GetParam()});
  Module k = residue_field(B);
  KnorrerApprox ka = knorrer_approx(k);
  Certificate c = certify(ka.triple);
  EXPECT_TRUE(c.ok()) << c.failure;
  EXPECT_TRUE(ka.free_kernel);
  EXPECT_EQ(ka.kernel_rank, 1);
  EXPECT_TRUE(certify_exact(ka.res, 10).exact);
  std::int64_t e1 = ext_dim(1, ka.N, ka.N), e2 = ext_dim(2, ka.N, ka.N);
  EXPECT_EQ(e1, 1);
  EXPECT_EQ(e2, 1);
  EXPECT_EQ(ext_dim(1, ka.triple.M, ka.triple.M), e1 + e2);
  // The general codimension-one approximation agrees.
  ApproxTriple g = mcm_approx_cm(ka.triple.N, 1);
  EXPECT_TRUE(find_isomorphism(g.M, ka.triple.M).has_value());
}

INSTANTIATE_TEST_SUITE_P(Hypersurfaces, KnorrerApproxCase, ::testing::Values("x^2", "x^3"));

TEST(KnorrerApprox, FreeInput) {
  auto B = ring(poly_ring({"x"}), {"x^2"});
  KnorrerApprox ka = knorrer_approx(Module::free(B, {0}));
  Certificate c = certify(ka.triple);
  EXPECT_TRUE(c.ok()) << c.failure;
  EXPECT_EQ(mu(ka.triple.M), 1);
  EXPECT_EQ(prune(ka.triple.M).M.pres().cols(), 0);
  EXPECT_TRUE(ka.free_kernel);
}

TEST(MfStats, Examples) {
  auto Q1 = ring(poly_ring({"x"}), {});
  const PolyRing& S1 = Q1->S();
  MfStats a = mf_stats(factorization_from_entries(Q1, S1.parse("x^2"), {{S1.parse("x")}}, {{S1.parse("x")}}));
  EXPECT_EQ(a.n, 1);
  EXPECT_FALSE(a.rank.has_value());
  EXPECT_FALSE(a.note.empty());

  auto B = ring(poly_ring({"x", "y"}), {"x*y"});
  MatrixFactorization nx = mf_from_module(cyclic(B, {"x"}));
  MfStats b = mf_stats(nx);
  EXPECT_EQ(b.n, 1);
  EXPECT_EQ(b.e, (Rational{2, 1}));
  EXPECT_FALSE(b.rank.has_value());

  auto C = ring(poly_ring({"x", "y"}, {3, 2}), {"x^2 + y^3"});
  MfStats c = mf_stats(mf_from_module(maximal_ideal(C)));
  EXPECT_EQ(c.n, 2);
  EXPECT_EQ(c.e, (Rational{2, 1}));
  ASSERT_TRUE(c.rank.has_value());
  EXPECT_EQ(*c.rank, 1);
}
