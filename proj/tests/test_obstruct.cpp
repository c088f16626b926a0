#include <gtest/gtest.h>

#include <random>

#include "cmdef/mf.hpp"
#include "cmdef/obstruct.hpp"
#include "support.hpp"

using namespace cmdef;
using namespace testing_support;

namespace {

Module coker(const RingPtr& R, const std::vector<std::vector<std::string>>& rows, std::vector<int> tgt,
             std::vector<int> src) {
  return Module(R, mat(*R, rows, std::move(tgt), std::move(src)));
}

// k[x]/(x^3) -> k[x]/(x^2).
SmallExtension truncation(int n) {
  auto S = poly_ring({"x"});
  return small_extension(ring(S, {"x^" + std::to_string(n + 1)}), {S->parse("x^" + std::to_string(n))});
}

// A (x) k[e]/(e^(n+1)) -> A (x) k[e]/(e^n).
SmallExtension eps_extension(const RingPtr& A, int n) {
  auto Rp = ring(poly_ring({"e"}), {"e^" + std::to_string(n + 1)});
  return artin_extension(A, Rp, {Rp->S().parse("e^" + std::to_string(n))});
}

struct Case {
  std::string name;
  SmallExtension q;
  Module N;
  bool lifts;
};

std::vector<Case> corpus() {
  std::vector<Case> out;
  {
    auto q = truncation(2);
    out.push_back({"k over x^3", q, residue_field(q.B), false});
    out.push_back({"free over x^3", q, Module::free(q.B, {0}), true});
    out.push_back({"k^2 over x^3", q, direct_sum({residue_field(q.B), residue_field(q.B)}), false});
  }
  {
    auto S = poly_ring({"x", "y"});
    auto q = small_extension(ring(S, {"x^2", "y^2"}), {S->parse("x*y")});
    out.push_back({"k over x^2,y^2", q, residue_field(q.B), false});
  }
  {
    auto A = ring(poly_ring({"x"}), {"x^2"});
    auto q = eps_extension(A, 1);
    out.push_back({"k over dual numbers, first order", q, coker(q.B, {{"x"}}, {0}, {1}), true});
    auto q2 = eps_extension(A, 2);
    out.push_back({"x - e over dual numbers", q2, coker(q2.B, {{"x - e"}}, {0}, {1}), false});
    out.push_back({"x over dual numbers, second order", q2, coker(q2.B, {{"x"}}, {0}, {1}), true});
  }
  {
    auto A = ring(poly_ring({"x"}), {"x^3"});
    auto q = eps_extension(A, 2);
    out.push_back({"x - e over x^3", q, coker(q.B, {{"x - e"}}, {0}, {1}), true});
  }
  return out;
}

}  // namespace

TEST(Extension, ArtinAlgebraBasis) {
  auto R = ring(poly_ring({"u", "v"}), {"u^2", "v^2"});
  ArtinAlgebra a = artin_algebra(R);
  EXPECT_EQ(a.dim(), 4);
  EXPECT_EQ(a.hilbert, (std::vector<std::int64_t>{1, 2, 1}));
  EXPECT_THROW(artin_algebra(ring(poly_ring({"u", "v"}), {"u^2"})), Error);
}

TEST(Extension, Validation) {
  auto S = poly_ring({"x"});
  EXPECT_THROW(small_extension(ring(S, {"x^3"}), {S->parse("x")}), Error);  // x^2 != 0
  EXPECT_THROW(small_extension(ring(S, {"x^3"}), {S->parse("x^3")}), Error);
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto Rp = ring(poly_ring({"e"}), {"e^3"});
  EXPECT_THROW(artin_extension(A, Rp, {Rp->S().parse("e")}), Error);  // e * e != 0
  auto q = artin_extension(A, Rp, {Rp->S().parse("e^2")});
  EXPECT_EQ(q.nx, 1);
  EXPECT_EQ(q.B->S().to_string(from_coefficients(q, Rp->S().parse("e^2"))), "e^2");
}

TEST(Extension, FlatnessCertificate) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto q = eps_extension(A, 1);
  EXPECT_TRUE(certify_flat(q, coker(q.B, {{"x - e"}}, {0}, {1})).ok());
  // k[x,e]/(x^2, e) is not flat over k[e]/(e^2).
  auto q2 = eps_extension(A, 2);
  FlatnessReport bad = certify_flat(q2, coker(q2.B, {{"e"}}, {0}, {1}));
  EXPECT_FALSE(bad.ok());
  EXPECT_FALSE(bad.hilbert);
  EXPECT_THROW(lifting_problem(q2, coker(q2.B, {{"e"}}, {0}, {1})), Error);
}

// Obstruction vanishes exactly when a lifting exists, checked against the exhaustive structure search.
TEST(Obstruction, MatchesBruteForce) {
  for (const auto& c : corpus()) {
    SCOPED_TRACE(c.name);
    LiftingProblem P = lifting_problem(c.q, c.N);
    LiftResult r = lift_module(P);
    BruteForceLifting bf = brute_force_lifting(c.q, c.N);
    EXPECT_EQ(r.ob.zero(), c.lifts);
    EXPECT_EQ(bf.exists, c.lifts);
    EXPECT_EQ(r.lifting.has_value(), c.lifts);
    if (r.lifting) {
      EXPECT_TRUE(certify_lifting(P, *r.lifting).ok());
      EXPECT_EQ(bf.classes_dim(), P.ext1->dim());
    }
    if (c.q.coefficient()) EXPECT_TRUE(P.fibre_dims_match);
  }
}

TEST(Obstruction, FourTermAgrees) {
  for (const auto& c : corpus()) {
    SCOPED_TRACE(c.name);
    LiftingProblem P = lifting_problem(c.q, c.N);
    EXPECT_EQ(four_term_ob(P).coords, obstruction(P).coords);
  }
}

TEST(Obstruction, IndependentOfLifts) {
  std::mt19937 rng(7);
  for (const auto& c : corpus()) {
    SCOPED_TRACE(c.name);
    LiftingProblem P = lifting_problem(c.q, c.N);
    if (P.F->length() < 2) continue;
    const Field& k = c.q.B->field();
    ObstructionClass base = obstruction(P);
    for (int trial = 0; trial < 3; ++trial) {
      // Perturb both differentials by kernel-valued cochains of the right degrees.
      auto perturb = [&](const Matrix& d) {
        Matrix c0{d.src, P.NJ.gen_deg(), {}};
        for (std::size_t j = 0; j < d.src.size(); ++j) {
          Vec v;
          for (int g = 0; g < P.NJ.ngens(); ++g) {
            int deg = d.src[j] - P.NJ.gen_deg()[g];
            if (deg < 0) continue;
            for (const auto& m : monomials_of_degree(c.q.B->S(), deg))
              v = c.q.B->S().vadd(v, c.q.B->S().from_poly(c.q.B->S().monomial(m, k.from_int(rng() % 5)), g));
          }
          c0.col.push_back(v);
        }
        return add(*c.q.Bp, d, kernel_lift(P, c0));
      };
      ObstructionClass ob = obstruction(P, perturb(P.F->d[0]), perturb(P.F->d[1]));
      EXPECT_EQ(ob.coords, base.coords);
    }
  }
}

TEST(Obstruction, TruncatedPolynomialResidueField) {
  auto q = truncation(2);
  LiftingProblem P = lifting_problem(q, residue_field(q.B));
  EXPECT_EQ(P.ext2->dim(), 1);
  EXPECT_FALSE(obstruction(P).zero());
}

TEST(Obstruction, FibreCoordinates) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto q = eps_extension(A, 2);
  LiftingProblem P = lifting_problem(q, coker(q.B, {{"x - e"}}, {0}, {1}));
  ObstructionClass ob = obstruction(P);
  ASSERT_EQ(ob.fibre.size(), 1u);
  EXPECT_EQ(ob.fibre[0].size(), 1u);
  EXPECT_FALSE(svec_is_zero(ob.fibre[0]));
}

TEST(Torsor, ActionAndDifference) {
  std::mt19937 rng(3);
  for (const auto& c : corpus()) {
    if (!c.lifts) continue;
    SCOPED_TRACE(c.name);
    LiftingProblem P = lifting_problem(c.q, c.N);
    Module X = *lift_module(P).lifting;
    const Field& k = c.q.B->field();
    const int n = P.ext1->dim();
    auto random_class = [&] {
      SVec v(n, k.zero());
      for (auto& x : v) x = k.from_int(rng() % 7);
      return v;
    };
    EXPECT_TRUE(lifting_difference(P, X, X).zero());
    for (int trial = 0; trial < 3; ++trial) {
      SVec a = random_class(), b = random_class();
      Module Xa = torsor_act(P, X, a);
      EXPECT_TRUE(certify_lifting(P, Xa).ok());
      EXPECT_EQ(lifting_difference(P, Xa, X).coords, a);
      EXPECT_EQ(lifting_difference(P, X, Xa).coords, svec_scale(k, k.neg(k.one()), a));
      Module Xab = torsor_act(P, Xa, b);
      EXPECT_TRUE(lifting_difference(P, Xab, torsor_act(P, X, svec_add(k, a, b))).zero());
    }
  }
}

// The first-order deformations coker(x - a e) of k over k[x]/(x^2): classes separate isomorphism types.
TEST(Torsor, DualNumberOrbit) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto q = eps_extension(A, 1);
  LiftingProblem P = lifting_problem(q, coker(q.B, {{"x"}}, {0}, {1}));
  ASSERT_EQ(P.ext1->dim(), 1);
  const Field& k = q.B->field();
  std::vector<Module> fam;
  for (int a = 0; a < 3; ++a) fam.push_back(coker(q.Bp, {{"x - " + std::to_string(a) + "*e"}}, {0}, {1}));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      LiftingDifference d = lifting_difference(P, fam[a], fam[b]);
      EXPECT_EQ(d.zero(), a == b);
      EXPECT_EQ(find_isomorphism(fam[a], fam[b]).has_value(), a == b);
      if (a != b) {
        LiftingDifference d1 = lifting_difference(P, fam[1], fam[0]);
        EXPECT_EQ(d.coords, svec_scale(k, k.from_int(a - b), d1.coords));
      }
    }
}

TEST(Torsor, RejectsNonLiftings) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto q = eps_extension(A, 1);
  LiftingProblem P = lifting_problem(q, coker(q.B, {{"x"}}, {0}, {1}));
  EXPECT_THROW(torsor_act(P, coker(q.Bp, {{"x + e"}, {"e"}}, {0, 1}, {1}), {q.B->field().one()}), Error);
  EXPECT_THROW(lifting_difference(P, coker(q.Bp, {{"x"}}, {0}, {1}), coker(q.Bp, {{"x", "e"}}, {0}, {1, 1})), Error);
}

TEST(BruteForce, CapAndFiniteLength) {
  auto S = poly_ring({"x", "y"});
  auto q = small_extension(ring(S, {"x^2", "y^2"}), {S->parse("x*y")});
  EXPECT_THROW(brute_force_lifting(q, Module::free(q.B, {0, 0}), 6), LimitError);
  auto q2 = small_extension(ring(S, {"x^2"}), {S->parse("x")});
  EXPECT_THROW(brute_force_lifting(q2, Module::free(q2.B, {0})), Error);
}

TEST(BaseChange, ScalingCoefficient) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto Rp = ring(poly_ring({"u", "v"}), {"u^2", "v^2"});
  auto q = artin_extension(A, Rp, {Rp->S().parse("u*v")});
  Module N = coker(q.B, {{"x - u - 2*v"}}, {0}, {1});
  std::vector<Poly> tau{Rp->S().parse("2*u"), Rp->S().parse("v")};
  BaseChangeReport r = base_change_ob(q, q, tau, N);
  EXPECT_EQ(r.kernel_map.at(0, 0), q.B->field().from_int(2));
  ASSERT_EQ(r.pushed.size(), 1u);
  EXPECT_FALSE(svec_is_zero(r.pushed[0]));
  EXPECT_TRUE(r.ob_equal);
}

TEST(BaseChange, KillsObstruction) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto Rp = ring(poly_ring({"u"}), {"u^3"});
  auto q = artin_extension(A, Rp, {Rp->S().parse("u^2")});
  auto Sp = ring(poly_ring({"e"}), {"e^2"});
  auto q2 = artin_extension(A, Sp, {Sp->S().parse("e")});
  Module N = coker(q.B, {{"x - u"}}, {0}, {1});
  EXPECT_FALSE(obstruction(lifting_problem(q, N)).zero());
  BaseChangeReport r = base_change_ob(q, q2, {Sp->S().parse("e")}, N);
  EXPECT_TRUE(r.kernel_map.at(0, 0).is_zero());
  EXPECT_TRUE(svec_is_zero(r.recomputed[0]));
  EXPECT_TRUE(r.ob_equal);
}

TEST(BaseChange, TorsorCompatibility) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto Rp = ring(poly_ring({"u"}), {"u^2"});
  auto q = artin_extension(A, Rp, {Rp->S().parse("u")});
  auto Sp = ring(poly_ring({"e"}), {"e^2"});
  auto q2 = artin_extension(A, Sp, {Sp->S().parse("e")});
  Module N = coker(q.B, {{"x"}}, {0}, {1});
  Module X = coker(q.Bp, {{"x + u"}}, {0}, {1});
  const Field& k = A->field();
  BaseChangeReport r = base_change_ob(q, q2, {Sp->S().parse("2*e")}, N, std::make_pair(X, SVec{k.from_int(3)}));
  EXPECT_TRUE(r.ob_equal);
  EXPECT_TRUE(r.torsor_checked);
  EXPECT_FALSE(svec_is_zero(r.torsor_pushed[0]));
  EXPECT_TRUE(r.torsor_equal);
}

TEST(BaseChange, NonCommutingSquare) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto Rp = ring(poly_ring({"u", "v"}), {"u^2", "u*v", "v^2"});
  auto q = artin_extension(A, Rp, {Rp->S().parse("u")});
  auto Sp = ring(poly_ring({"a", "b"}), {"a^2", "a*b", "b^2"});
  auto q2 = artin_extension(A, Sp, {Sp->S().parse("a")});
  Module N = coker(q.B, {{"x"}}, {0}, {1});
  EXPECT_THROW(base_change_ob(q, q2, {Sp->S().parse("b"), Sp->S().parse("a")}, N), Error);
  EXPECT_NO_THROW(base_change_ob(q, q2, {Sp->S().parse("a"), Sp->S().parse("b")}, N));
}

TEST(RegularQuotient, SquareOfVariable) {
  auto A = ring(poly_ring({"x"}), {});
  RegularQuotientOb r = ob_regular_quotient(A, {A->S().parse("x^2")}, residue_field(A));
  EXPECT_FALSE(r.ob.zero());
  EXPECT_TRUE(r.agree);
  ApproxTriple t = mcm_approx_cm(residue_field(A), 1);
  EXPECT_FALSE(splits_pibar(t, {A->S().parse("x^2")}).split);
  EXPECT_THROW(ob_regular_quotient(ring(poly_ring({"x"}), {"x^2"}), {A->S().parse("x")}, residue_field(A)), Error);
}

TEST(RegularQuotient, KnorrerCases) {
  for (const std::string f : {"x^2", "x^3"}) {
    SCOPED_TRACE(f);
    auto Q = ring(poly_ring({"x"}), {});
    KnorrerApprox ka = knorrer_approx(residue_field(quotient_ring(Q, {Q->S().parse(f)})));
    const KnorrerRings& R = ka.rings;
    Poly t = R.Qt->S().variable(R.t);
    Splitting sp = splits_pibar(ka.triple, {t});
    RegularQuotientOb r = ob_regular_quotient(R.A, {t}, ka.triple.N);
    EXPECT_TRUE(r.agree);
    EXPECT_EQ(sp.split, r.ob.zero());
  }
}

TEST(Tangent, KnorrerSquare) {
  auto Q = ring(poly_ring({"x"}), {});
  KnorrerApprox ka = knorrer_approx(residue_field(quotient_ring(Q, {Q->S().parse("x^2")})));
  Poly t = ka.rings.Qt->S().variable(ka.rings.t);
  TangentMap tm = tangent_sigma(ka.N, ka.triple, {t});
  EXPECT_EQ(tm.source_dim, 1);
  EXPECT_EQ(tm.target_dim, 2);
  EXPECT_TRUE(tm.injective());
  EXPECT_EQ(tm.coker(), ext_dim(2, ka.N, ka.N));
}

TEST(Tangent, RequiresSplitting) {
  auto A = ring(poly_ring({"x"}), {});
  ApproxTriple t = mcm_approx_cm(residue_field(A), 1);
  auto B = quotient_ring(A, {A->S().parse("x^2")});
  EXPECT_THROW(tangent_sigma(residue_field(B), t, {A->S().parse("x^2")}), Error);
}

TEST(MapObstruction, Naturality) {
  auto q = truncation(2);
  Module k = residue_field(q.B);
  LiftingProblem Pk = lifting_problem(q, k);
  LiftingProblem Pk2 = lifting_problem(q, direct_sum({k, k}));
  LiftingProblem Pm = lifting_problem(q, maximal_ideal(q.B));
  LiftingProblem PB = lifting_problem(q, Module::free(q.B, {0}));
  auto check = [](const LiftingProblem& X, const LiftingProblem& Y, const Matrix& m) {
    NaturalityCheck c = omap_check(X, Y, ModuleMap{X.N, Y.N, m});
    EXPECT_TRUE(c.equal);
    return c;
  };
  NaturalityCheck c1 = check(Pk2, Pk, mat(*q.B, {{"1", "2"}}, {0}, {0, 0}));
  EXPECT_FALSE(svec_is_zero(c1.pushed));
  check(Pk, Pk2, mat(*q.B, {{"1"}, {"3"}}, {0, 0}, {0}));
  check(Pm, PB, mat(*q.B, {{"x"}}, {0}, {1}));
  check(PB, Pk, mat(*q.B, {{"1"}}, {0}, {0}));
}

TEST(MapObstruction, DeformedResidueFields) {
  auto A = ring(poly_ring({"x"}), {"x^2"});
  auto q = eps_extension(A, 1);
  LiftingProblem P = lifting_problem(q, coker(q.B, {{"x"}}, {0}, {1}));
  ModuleMap id{P.N, P.N, identity_matrix(q.B->S(), {0})};
  ModuleMap zero{P.N, P.N, mat(*q.B, {{"0"}}, {0}, {0})};
  const Field& k = A->field();
  std::vector<Module> fam;
  for (int a = 0; a < 3; ++a) fam.push_back(coker(q.Bp, {{"x - " + std::to_string(a) + "*e"}}, {0}, {1}));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      EXPECT_EQ(svec_is_zero(map_obstruction(P, P, id, fam[a], fam[b])), a == b);
      EXPECT_TRUE(svec_is_zero(map_obstruction(P, P, zero, fam[a], fam[b])));
      DifferenceCheck d = omap_difference(P, P, id, fam[a], fam[b], {k.from_int(2)}, {k.from_int(5)});
      EXPECT_TRUE(d.equal);
    }
}

TEST(Vanishing, GorensteinPlane) {
  auto A = ring(poly_ring({"x", "y"}), {});
  Module N = cyclic(A, {"x"});
  ApproxTriple t = mcm_approx_cm(N, 1);
  HullTriple h = fid_hull(t);
  VanishingReport r = ext_vanishing_report(t, h);
  EXPECT_TRUE(r.L_free);
  EXPECT_TRUE(r.ext1_N_Mp);
  EXPECT_TRUE(r.ext1_L_N);
  EXPECT_EQ(r.grade, 1);
  EXPECT_EQ(r.entries.size(), 6u);
}
