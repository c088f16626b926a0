#include <gtest/gtest.h>

#include "cmdef/cmapprox.hpp"
#include "support.hpp"

using namespace cmdef;
using namespace testing_support;

namespace {

void expect_certified(const ApproxTriple& t) {
  Certificate c = certify(t);
  EXPECT_TRUE(c.ok()) << c.failure;
}

void expect_certified(const HullTriple& t) {
  Certificate c = certify(t);
  EXPECT_TRUE(c.ok()) << c.failure;
}

}  // namespace

class VeroneseApprox : public ::testing::TestWithParam<int> {};

TEST_P(VeroneseApprox, ResidueFieldInvariants) {
  const int m = GetParam();
  auto A = veronese(m);
  Module k = residue_field(A);
  ApproxTriple t = mcm_approx_cm(k, 2);
  expect_certified(t);
  EXPECT_TRUE(t.minimal);
  const int beta1 = mu(maximal_ideal(A));
  const int type = mu(canonical_module(A));
  EXPECT_EQ(beta1, m + 1);
  EXPECT_EQ(mu(t.M), m * m);
  EXPECT_EQ(module_rank(t.M), (Rational{m, 1}));
  EXPECT_EQ(module_rank(t.M), (Rational{beta1 - 1, 1}));
  EXPECT_EQ(mu(t.M), type * beta1 + 1);
  EXPECT_EQ(ext_dim(1, t.M, t.M), (m - 1) * m * m);
}

TEST_P(VeroneseApprox, TwoConstructionsAgree) {
  auto A = veronese(GetParam());
  ApproxTriple a = mcm_approx_cm(residue_field(A), 2);
  ApproxTriple b = approx_residue_field_dim2(A);
  expect_certified(b);
  EXPECT_TRUE(same_hf(a.M, b.M, -3, 8));
  EXPECT_TRUE(same_hf(a.L, b.L, -3, 8));
  EXPECT_EQ(mu(a.M), mu(b.M));
  EXPECT_EQ(module_rank(a.M), module_rank(b.M));
  EXPECT_EQ(betti(resolve(a.M, 3)).to_string(), betti(resolve(b.M, 3)).to_string());
  EXPECT_TRUE(find_isomorphism(a.M, b.M).has_value());
}

INSTANTIATE_TEST_SUITE_P(M, VeroneseApprox, ::testing::Values(2, 3));

TEST(Approx, PaddingWithOmegaIsNotMinimal) {
  auto A = veronese(2);
  ApproxTriple t = mcm_approx_cm(residue_field(A), 2);
  ASSERT_FALSE(has_common_omega_summand(t));
  const PolyRing& S = A->S();
  Module w = canonical_module(A);
  ApproxTriple u;
  u.N = t.N;
  u.L = direct_sum({t.L, w});
  u.M = direct_sum({t.M, w});
  u.rho = ModuleMap{u.L, u.M, block_diagonal(S, t.rho.mat, identity_matrix(S, w.gen_deg()))};
  Matrix pi = t.pi.mat;
  pi.src = u.M.gen_deg();
  pi.col.resize(u.M.ngens());
  u.pi = ModuleMap{u.M, u.N, pi};
  u.Lres = omega_resolution(u.L);
  expect_certified(u);
  EXPECT_TRUE(has_common_omega_summand(u));
}

TEST(Approx, McmInputIsItsOwnApproximation) {
  auto A = veronese(2);
  Module I = maximal_ideal(A);
  Module J = image(ModuleMap{Module::free(A, {1, 1}), Module::free(A, {0}), mat(*A, {{"z0", "z1"}}, {0}, {1, 1})}).M;
  ApproxTriple t = mcm_approx_cm(J, 0);
  expect_certified(t);
  EXPECT_TRUE(t.L.is_zero());
  EXPECT_TRUE(same_hf(t.M, J, -2, 6));
  EXPECT_THROW(mcm_approx_cm(I, 0), Error);
}

TEST(Approx, RegularRingGivesKoszulCover) {
  auto A = ring(poly_ring({"x", "y"}), {});
  ApproxTriple t = mcm_approx_cm(residue_field(A), 2);
  expect_certified(t);
  EXPECT_EQ(mu(t.M), 1);
  EXPECT_EQ(t.M.pres().cols(), 0);
  EXPECT_EQ(mu(t.L), 2);
  ApproxTriple u = approx_residue_field_dim2(A);
  expect_certified(u);
  EXPECT_TRUE(same_hf(u.M, t.M, -2, 6));
}

TEST(Approx, Errors) {
  auto A = veronese(2);
  EXPECT_THROW(mcm_approx_cm(residue_field(A), 1), Error);
  EXPECT_THROW(approx_residue_field_dim2(ring(poly_ring({"x"}), {})), Error);
  auto bad = ring(poly_ring({"x", "y"}), {"x^2", "x*y"});
  EXPECT_THROW(mcm_approx_cm(residue_field(bad), 1), Error);
}

TEST(Approx, DualOfApproximationByBruteForce) {
  auto A = veronese(2);
  ApproxTriple t = mcm_approx_cm(residue_field(A), 2);
  Module w = canonical_module(A);
  Module D = omega_dual(t.M);
  EXPECT_TRUE(is_mcm(D));
  EXPECT_EQ(module_rank(D), module_rank(t.M));
  for (int d = -3; d <= 3; ++d) EXPECT_EQ(D.gb().dim(d), brute_hom_dim(t.M, w, d)) << d;
}

TEST(OmegaCover, Trivial) {
  auto A = veronese(3);
  Module w = canonical_module(A);
  OmegaCover c = omega_cover(w);
  EXPECT_EQ(c.n(), 1);
  EXPECT_TRUE(c.Mp.is_zero());
  auto H = ring(poly_ring({"x", "t"}), {"x^2 + t^2"});
  OmegaCover h = omega_cover(Module::free(H, {0}));
  EXPECT_EQ(h.n(), 1);
  EXPECT_TRUE(h.Mp.is_zero());
  EXPECT_THROW(omega_cover(residue_field(A)), Error);
}

TEST(OmegaCover, OfApproximation) {
  auto A = veronese(2);
  ApproxTriple t = mcm_approx_cm(residue_field(A), 2);
  OmegaCover c = omega_cover(t.M);
  EXPECT_EQ(c.n(), mu(omega_dual(t.M)));
  EXPECT_TRUE(is_exact(ShortExact{c.inc, c.proj}));
  EXPECT_TRUE(c.Mp.is_zero() || is_mcm(c.Mp));
}

TEST(Hull, CanonicalModuleIsItsOwnHull) {
  auto A = veronese(3);
  Module w = canonical_module(A);
  HullTriple h = fid_hull(mcm_approx_cm(w, 0));
  expect_certified(h);
  EXPECT_TRUE(h.Mp.is_zero());
  EXPECT_TRUE(is_surjective(h.iota));
  EXPECT_TRUE(is_injective(h.iota));
}

TEST(Hull, McmInputUsesItsOmegaCover) {
  auto A = veronese(2);
  Module J = image(ModuleMap{Module::free(A, {1, 1}), Module::free(A, {0}), mat(*A, {{"z0", "z1"}}, {0}, {1, 1})}).M;
  HullTriple h = fid_hull(mcm_approx_cm(J, 0));
  expect_certified(h);
  OmegaCover c = omega_cover(J);
  EXPECT_TRUE(same_hf(h.Lp, c.W, -2, 6));
  EXPECT_TRUE(same_hf(h.Mp, c.Mp, -2, 6));
}

TEST(Hull, ResidueField) {
  auto A = veronese(2);
  Module k = residue_field(A);
  HullTriple h = fid_hull(mcm_approx_cm(k, 2));
  expect_certified(h);
  // HF(L') = HF(k) + HF(M') degreewise.
  for (int d = -3; d <= 6; ++d) EXPECT_EQ(h.Lp.gb().dim(d), k.gb().dim(d) + h.Mp.gb().dim(d)) << d;
}

TEST(QPrime, Examples) {
  auto A = veronese(2);
  Module w = canonical_module(A);
  QPrime q = q_prime(w);
  EXPECT_EQ(q.pd(), 0);
  EXPECT_TRUE(same_hf(q.Q, Module::free(A, {0}), -3, 6));
  QPrime q2 = q_prime(direct_sum({w, twist(w, -1)}));
  EXPECT_EQ(q2.pd(), 0);
  EXPECT_EQ(q2.Q.pres().cols(), 0);
  EXPECT_TRUE(same_hf(q2.Q, Module::free(A, {0, 1}), -3, 6));
  EXPECT_THROW(q_prime(residue_field(A)), Error);
}

TEST(QPrime, FromHullHasFiniteResolution) {
  auto A = veronese(2);
  HullTriple h = fid_hull(mcm_approx_cm(residue_field(A), 2));
  QPrime q = q_prime(h.Lp, h.Lres);
  EXPECT_TRUE(squares_to_zero(q.res));
  EXPECT_LE(q.pd(), 2);
  FreeResolution r = resolve(q.Q, 4);
  EXPECT_FALSE(r.truncated);
  EXPECT_EQ(r.length(), q.pd());
  Module cok = q.res.length() > 0 ? Module(A, q.res.d[0]) : Module::free(A, q.res.F[0]);
  EXPECT_TRUE(same_hf(cok, q.Q, -4, 8));
  EXPECT_TRUE(certify_exact(q.res, -4, 8).exact);
}

class FundamentalModule : public ::testing::TestWithParam<int> {};

TEST_P(FundamentalModule, Invariants) {
  const int m = GetParam();
  auto A = veronese(m);
  Fundamental f = fundamental_module(A);
  EXPECT_TRUE(is_exact(f.seq));
  EXPECT_TRUE(is_mcm(f.E));
  EXPECT_EQ(module_rank(f.E), (Rational{2, 1}));
  EXPECT_EQ(mu(f.E), 2 * m);
  EXPECT_EQ(ext_dim(1, f.E, f.E), 4 * (m - 1));
  ExtSpace space(resolution_ptr(maximal_ideal(A), 2), f.seq.alpha.src, 1, 0);
  EXPECT_FALSE(svec_is_zero(three_term_class(f.seq, space)));
}

INSTANTIATE_TEST_SUITE_P(M, FundamentalModule, ::testing::Values(2, 3));

TEST(Fundamental, RegularPlaneIsKoszul) {
  auto A = ring(poly_ring({"x", "y"}), {});
  Fundamental f = fundamental_module(A);
  EXPECT_TRUE(is_exact(f.seq));
  EXPECT_EQ(mu(f.E), 2);
  EXPECT_EQ(f.E.pres().cols(), 0);
}

TEST(Fundamental, Errors) {
  EXPECT_THROW(fundamental_module(ring(poly_ring({"x"}), {})), Error);
  auto not_cm = ring(poly_ring({"x", "y", "z"}), {"x*z", "y*z"});
  EXPECT_THROW(fundamental_module(not_cm), Error);
}
