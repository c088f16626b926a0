#include <gtest/gtest.h>

#include "cmdef/invariants.hpp"
#include "cmdef/resolve.hpp"
#include "support.hpp"

using namespace cmdef;
using namespace testing_support;

namespace {

std::int64_t binom(int n, int k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Dimension, Examples) {
  EXPECT_EQ(krull_dim(veronese(2)), 2);
  EXPECT_EQ(krull_dim(residue_field(veronese(2))), 0);
  auto C = ring(poly_ring({"x", "t"}), {"x^2 + t^2"});
  EXPECT_EQ(krull_dim(C), 1);
  Module zero = Module(veronese(2), identity_matrix(veronese(2)->S(), {0}));
  EXPECT_EQ(krull_dim(zero), -1);
}

TEST(Dimension, CombinatorialAgreesWithPoleOrder) {
  std::vector<Module> cases;
  auto A2 = veronese(2), A3 = veronese(3);
  cases.push_back(Module::free(A2, {0}));
  cases.push_back(maximal_ideal(A3));
  cases.push_back(residue_field(A3));
  cases.push_back(cyclic(A3, {"z0", "z1"}));
  cases.push_back(cyclic(ring(poly_ring({"x", "y", "z"}), {}), {"x*y", "x*z"}));
  for (const auto& M : cases) EXPECT_EQ(krull_dim(M), hilbert_series(M).pole_order());
}

TEST(Hilbert, FunctionExamples) {
  EXPECT_EQ(hilbert_function(Module::free(veronese(2), {0}), 0, 3), (std::vector<std::int64_t>{1, 3, 5, 7}));
  EXPECT_EQ(hilbert_function(residue_field(veronese(2)), 0, 2), (std::vector<std::int64_t>{1, 0, 0}));
  auto B = ring(poly_ring({"x"}), {"x^3"});
  EXPECT_EQ(hilbert_function(Module::free(B, {0}), 0, 3), (std::vector<std::int64_t>{1, 1, 1, 0}));
}

TEST(Hilbert, HypersurfaceFormula) {
  auto S = poly_ring({"a", "b", "c", "d"});
  for (std::string f : {"a^3 + b*c*d - d^3", "a*b - c*d", "a^4 - b^4 + c^2*d^2"}) {
    auto A = ring(S, {f});
    int e = S->degree(S->parse(f));
    Module F = Module::free(A, {0});
    for (int d = 0; d <= 8; ++d) EXPECT_EQ(F.gb().dim(d), binom(d + 3, 3) - binom(d - e + 3, 3)) << f << " " << d;
  }
}

TEST(Hilbert, SeriesExpansionMatchesFunction) {
  auto A3 = veronese(3);
  for (const auto& M : {maximal_ideal(A3), residue_field(A3), Module::free(A3, {-1, 2})}) {
    HilbertSeries hs = hilbert_series(M);
    auto coeffs = hs.expand(8);
    for (int i = 0; i < 8; ++i) EXPECT_EQ(coeffs[i], M.gb().dim(hs.shift + i));
  }
}

TEST(Rank, VeroneseIdeals) {
  auto A3 = veronese(3);
  EXPECT_EQ(module_rank(maximal_ideal(A3)), (Rational{1, 1}));
  EXPECT_EQ(module_rank(residue_field(A3)), (Rational{0, 1}));
  EXPECT_EQ(module_rank(Module::free(A3, {0, 0, 1})), (Rational{3, 1}));
  EXPECT_EQ(multiplicity(Module::free(A3, {0})), (Rational{3, 1}));
}

TEST(Depth, Examples) {
  auto A = veronese(2);
  EXPECT_EQ(depth(maximal_ideal(A)), 1);
  EXPECT_EQ(depth(Module::free(A, {0})), 2);
  EXPECT_EQ(depth(residue_field(A)), 0);
  Module zero = Module(A, identity_matrix(A->S(), {0}));
  EXPECT_THROW(depth(zero), Error);
}

TEST(Depth, BoundedByDimension) {
  auto A3 = veronese(3);
  for (const auto& M : {maximal_ideal(A3), residue_field(A3), cyclic(A3, {"z0"}), cyclic(A3, {"z0", "z1"})}) {
    EXPECT_LE(depth(M), krull_dim(M));
    EXPECT_LE(krull_dim(M), krull_dim(A3));
  }
}

TEST(Mcm, Examples) {
  auto A = veronese(2);
  Module I = image(ModuleMap{Module::free(A, {1, 1}), Module::free(A, {0}), mat(*A, {{"z0", "z1"}}, {0}, {1, 1})}).M;
  EXPECT_TRUE(is_mcm(I));
  EXPECT_FALSE(is_mcm(residue_field(A)));
  EXPECT_TRUE(is_mcm(Module::free(A, {0})));
  auto bad = ring(poly_ring({"x", "y"}), {"x^2", "x*y"});
  EXPECT_THROW(is_mcm(Module::free(bad, {0})), Error);
}

TEST(Hom, FromFreeIsTarget) {
  auto A = veronese(2);
  Module N = maximal_ideal(A);
  HomModule h = module_hom(Module::free(A, {0}), N);
  EXPECT_TRUE(same_hf(h.H, N, -1, 6));
}

TEST(Hom, ResidueFieldEndomorphisms) {
  auto A = veronese(2);
  Module k = residue_field(A);
  HomModule h = module_hom(k, k);
  EXPECT_TRUE(same_hf(h.H, k, -2, 4));
  EXPECT_EQ(hom_basis(h, 0).size(), 1u);
}

TEST(Hom, DualOfMaximalIdealAgainstBruteForce) {
  auto A = veronese(2);
  Module m = maximal_ideal(A);
  Module F = Module::free(A, {0});
  HomModule h = module_hom(m, F);
  EXPECT_EQ(module_rank(h.H), (Rational{1, 1}));
  for (int d = -1; d <= 3; ++d) EXPECT_EQ(h.H.gb().dim(d), brute_hom_dim(m, F, d)) << d;
  for (const auto& f : hom_basis(h, 0)) EXPECT_TRUE(is_well_defined(ModuleMap{m, F, f}));
}

TEST(Hom, ExplicitMatricesAreWellDefined) {
  auto A3 = veronese(3);
  Module M = maximal_ideal(A3), N = cyclic(A3, {"z0", "z1"});
  HomModule h = module_hom(M, N);
  auto maps = hom_maps(M, N);
  EXPECT_EQ(int(maps.size()), brute_hom_dim(M, N, 0));
  for (const auto& f : maps) EXPECT_TRUE(is_well_defined(f));
}

TEST(BaseChange, RegularSequences) {
  auto P = ring(poly_ring({"x"}), {});
  auto r = base_change_regular(Module::free(P, {0}), {P->S().parse("x^2")});
  EXPECT_EQ(hilbert_function(r.Mbar, 0, 3), (std::vector<std::int64_t>{1, 1, 0, 0}));

  auto A = ring(poly_ring({"x", "t"}), {"x^2 + t^2"});
  auto r2 = base_change_regular(Module::free(A, {0}), {A->S().parse("t")});
  EXPECT_EQ(hilbert_function(r2.Mbar, 0, 3), (std::vector<std::int64_t>{1, 1, 0, 0}));

  auto B = ring(poly_ring({"x"}), {"x^2"});
  EXPECT_THROW(base_change_regular(Module::free(B, {0}), {B->S().parse("x")}), Error);
}

TEST(BaseChange, FunctorialOnMaps) {
  auto A = veronese(2);
  const PolyRing& S = A->S();
  Module H = Module::free(A, {2, 3});
  Matrix f = mat(*A, {{"z0", "z1"}}, {0}, {1, 1});
  Matrix g = mat(*A, {{"z2", "z1^2"}, {"z0", "z0*z1 - z2^2"}}, {1, 1}, {2, 3});
  ModuleMap fm{Module::free(A, {1, 1}), Module::free(A, {0}), f}, gm{H, Module::free(A, {1, 1}), g};
  std::vector<Poly> J{S.parse("z0"), S.parse("z2")};
  auto red = base_change_regular(Module::free(A, {0}), J);
  ModuleMap lhs = change_ring(compose(fm, gm), red.B);
  ModuleMap rhs = compose(change_ring(fm, red.B), change_ring(gm, red.B));
  EXPECT_TRUE(same_matrix(*red.B, lhs.mat, rhs.mat));
}
