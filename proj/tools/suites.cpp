#include "suites.hpp"

#include <random>

namespace cmdef::cli {

bool SuiteReport::ok() const { return failures() == 0; }

int SuiteReport::failures() const {
  return int(std::count_if(identities.begin(), identities.end(), [](const Identity& i) { return !i.pass; }));
}

void SuiteReport::check(const std::string& what, const std::string& lhs, const std::string& rhs) {
  identities.push_back({what, lhs, rhs, lhs == rhs});
}

void SuiteReport::check(const std::string& what, long long lhs, long long rhs) {
  check(what, std::to_string(lhs), std::to_string(rhs));
}

void SuiteReport::check(const std::string& what, bool holds) {
  identities.push_back({what, holds ? "true" : "false", "true", holds});
}

void SuiteReport::append(const SuiteReport& other) {
  for (const auto& i : other.identities) identities.push_back({other.name + ": " + i.name, i.lhs, i.rhs, i.pass});
}

Json SuiteReport::to_json() const {
  Json out;
  out["suite"] = name;
  out["passed"] = int(identities.size()) - failures();
  out["failed"] = failures();
  Json list = Json::array();
  for (const auto& i : identities)
    list.push_back(Json{{"identity", i.name}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"pass", i.pass}});
  out["identities"] = list;
  return out;
}

namespace {

RingPtr make(const Field& k, const std::vector<std::string>& names, const std::vector<std::string>& ideal,
             std::vector<int> degs = {}) {
  if (degs.empty()) degs.assign(names.size(), 1);
  auto S = std::make_shared<const PolyRing>(k, names, degs);
  std::vector<Poly> I;
  for (const auto& g : ideal) I.push_back(S->parse(g));
  return make_ring(S, I);
}

Module cyclic_module(const RingPtr& R, const std::vector<std::string>& gens) {
  const PolyRing& S = R->S();
  std::vector<std::vector<Poly>> row(1);
  std::vector<int> src;
  for (const auto& g : gens) {
    row[0].push_back(S.parse(g));
    src.push_back(S.degree(row[0].back()));
  }
  return Module(R, matrix_from_entries(S, row, {0}, src));
}

std::string str(const Field& k, const SVec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + k.to_string(v[i]);
  return out + "]";
}

std::string str(const Field& k, const std::vector<SVec>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + str(k, v[i]);
  return out + ")";
}

std::string str(const PolyRing& S, const Matrix& m) {
  std::string out = "[";
  auto rows = matrix_strings(S, m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < rows[i].size(); ++j) out += (j ? ", " : "") + rows[i][j];
    out += "]";
  }
  return out + "]";
}

std::string lifts(bool b) { return b ? "lifts" : "obstructed"; }

}  // namespace

RingPtr veronese_ring(int m, const Field& k) {
  if (m < 1 || m + 1 > kMaxVars) throw Error("veronese: m must be between 1 and " + std::to_string(kMaxVars - 1));
  std::vector<std::string> names;
  for (int i = 0; i <= m; ++i) names.push_back("z" + std::to_string(i));
  std::vector<std::string> minors;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      minors.push_back(names[a] + "*" + names[b + 1] + " - " + names[a + 1] + "*" + names[b]);
  return make(k, names, minors);
}

SuiteReport veronese_suite(int m, const Field& k) {
  SuiteReport r{"veronese m=" + std::to_string(m), {}};
  RingPtr A = veronese_ring(m, k);
  ApproxTriple t = mcm_approx_cm(residue_field_module(A), 2);
  Certificate c = certify(t);
  r.check("approximation certified", c.ok());
  r.check("approximation minimal", t.minimal);
  const int beta1 = mu(maximal_ideal_module(A));
  const int type = mu(canonical_module(A));
  const int muM = mu(t.M);
  r.check("beta_1 = m + 1", beta1, m + 1);
  r.check("mu(M) = m^2", muM, m * m);
  r.check("rank(M) = m", module_rank(t.M).to_string(), std::to_string(m));
  r.check("rank(M) = beta_1 - 1", module_rank(t.M).to_string(), std::to_string(beta1 - 1));
  r.check("mu(M) = t(A) beta_1 + 1", muM, type * beta1 + 1);
  r.check("dim Ext^1(M,M) = (m-1) m^2", ext_dim(1, t.M, t.M), (m - 1) * m * m);
  return r;
}

SuiteReport fundamental_suite(int m, const Field& k) {
  SuiteReport r{"fundamental m=" + std::to_string(m), {}};
  RingPtr A = veronese_ring(m, k);
  Fundamental f = fundamental_module(A);
  r.check("sequence exact", is_exact(f.seq));
  r.check("E maximal Cohen-Macaulay", is_mcm(f.E));
  r.check("rank(E) = 2", module_rank(f.E).to_string(), "2");
  r.check("mu(E) = 2m", mu(f.E), 2 * m);
  r.check("dim Ext^1(E,E) = 4(m-1)", ext_dim(1, f.E, f.E), 4 * (m - 1));
  return r;
}

SuiteReport knorrer_suite(const std::string& f, const Field& k) {
  SuiteReport r{"knorrer f=" + f, {}};
  RingPtr Q = make(k, {"x"}, {});
  RingPtr B = quotient_ring(Q, {Q->S().parse(f)});
  Module N = residue_field_module(B);
  MatrixFactorization mf = mf_from_module(N);
  MatrixFactorization K = knorrer(mf);
  const PolyRing& St = K.Q->S();
  Matrix FI = scale(*K.Q, k.one(), identity_matrix(St, K.phi.tgt));
  for (auto& c : FI.col) c = St.vmul(K.f, c);
  r.check("Phi Psi = F I", str(St, compose(*K.Q, K.phi, K.psi)), str(St, FI));
  r.check("Psi Phi = F I", str(St, compose(*K.Q, K.psi, K.phi)), str(St, FI));

  FreeResolution e = eisenbud_resolution(mf, 6);
  r.check("Eisenbud resolution d^2 = 0", squares_to_zero(e));
  r.check("Eisenbud resolution exact", certify_exact(e, kDefaultWindow).exact);
  for (int i = 2; i < e.length(); ++i)
    r.check("Eisenbud resolution 2-periodic at d" + std::to_string(i), str(B->S(), e.d[i]), str(B->S(), e.d[i - 2]));

  KnorrerApprox ka = knorrer_approx(N);
  FreeResolution kr = knorrer_resolution(mf, ka.rings, 6);
  r.check("resolution over A: d^2 = 0", squares_to_zero(kr));
  r.check("resolution over A exact", certify_exact(kr, kDefaultWindow).exact);
  for (int i = 3; i < kr.length(); ++i)
    r.check("resolution over A 2-periodic at d" + std::to_string(i), str(ka.rings.A->S(), kr.d[i]),
            str(ka.rings.A->S(), kr.d[i - 2]));
  Certificate c = certify(ka.triple);
  r.check("approximation certified", c.ok());
  r.check("free kernel", ka.free_kernel);
  const long long e1 = ext_dim(1, ka.N, ka.N), e2 = ext_dim(2, ka.N, ka.N);
  r.check("dim Ext^1_A(M,M) = dim Ext^1_B(N,N) + dim Ext^2_B(N,N)", ext_dim(1, ka.triple.M, ka.triple.M), e1 + e2);
  return r;
}

SuiteReport splitting_suite(const Field& k) {
  SuiteReport r{"splitting", {}};
  for (const std::string f : {"x^2", "x^3"}) {
    RingPtr Q = make(k, {"x"}, {});
    KnorrerApprox ka = knorrer_approx(residue_field_module(quotient_ring(Q, {Q->S().parse(f)})));
    Poly t = ka.rings.Qt->S().variable(ka.rings.t);
    Splitting sp = splits_pibar(ka.triple, {t});
    RegularQuotientOb ob = ob_regular_quotient(ka.rings.A, {t}, ka.triple.N);
    r.check("f=" + f + ": pibar splits iff ob = 0", sp.split ? "split" : "not split",
            ob.ob.zero() ? "split" : "not split");
    r.check("f=" + f + ": pibar splits", sp.split);
    r.check("f=" + f + ": approximation sequence gives the obstruction", str(k, ob.approx_class), str(k, ob.ob.coords));
  }
  RingPtr A = make(k, {"x"}, {});
  Poly x2 = A->S().parse("x^2");
  ApproxTriple t = mcm_approx_cm(residue_field_module(A), 1);
  Splitting sp = splits_pibar(t, {x2});
  RegularQuotientOb ob = ob_regular_quotient(A, {x2}, residue_field_module(A));
  r.check("k[x], J = (x^2): pibar splits iff ob = 0", sp.split ? "split" : "not split",
          ob.ob.zero() ? "split" : "not split");
  r.check("k[x], J = (x^2): pibar does not split", !sp.split);
  r.check("k[x], J = (x^2): approximation sequence gives the obstruction", str(k, ob.approx_class),
          str(k, ob.ob.coords));
  return r;
}

SuiteReport tangent_suite(const Field& k) {
  SuiteReport r{"tangent", {}};
  for (const std::string f : {"x^2", "x^3"}) {
    RingPtr Q = make(k, {"x"}, {});
    KnorrerApprox ka = knorrer_approx(residue_field_module(quotient_ring(Q, {Q->S().parse(f)})));
    Poly t = ka.rings.Qt->S().variable(ka.rings.t);
    TangentMap tm = tangent_sigma(ka.N, ka.triple, {t});
    r.check("f=" + f + ": sigma injective", tm.rank, tm.source_dim);
    r.check("f=" + f + ": dim coker sigma = dim Ext^2_B(N,N)", tm.coker(), ext_dim(2, ka.N, ka.N));
  }
  return r;
}

// ---------------------------------------------------------------------------------------------

namespace {

struct FamilyCase {
  std::string name;
  SmallExtension q;
  Module N;
};

struct CoefficientData {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;
  std::string kernel;
};

const std::vector<CoefficientData>& coefficient_algebras() {
  static const std::vector<CoefficientData> list{
      {"k[e]/(e^2)", {"e"}, {"e^2"}, "e"},
      {"k[e]/(e^3)", {"e"}, {"e^3"}, "e^2"},
      {"k[e]/(e^4)", {"e"}, {"e^4"}, "e^3"},
      {"k[u,v]/(u^2,v^2)", {"u", "v"}, {"u^2", "v^2"}, "u*v"},
      {"k[u,v]/(u,v)^2", {"u", "v"}, {"u^2", "u*v", "v^2"}, "u"},
  };
  return list;
}

struct BaseData {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;
  int dim;
};

const std::vector<BaseData>& base_algebras() {
  static const std::vector<BaseData> list{
      {"k[x]/(x^2)", {"x"}, {"x^2"}, 2},
      {"k[x]/(x^3)", {"x"}, {"x^3"}, 3},
      {"k[x,y]/(x,y)^2", {"x", "y"}, {"x^2", "x*y", "y^2"}, 3},
  };
  return list;
}

// Linear forms in the coefficient variables.
std::vector<std::string> linear_forms(const std::vector<std::string>& vars) {
  const int cmax = vars.size() == 1 ? 2 : 1;
  std::vector<std::string> out;
  std::vector<int> c(vars.size(), 0);
  while (true) {
    std::string p;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (c[i]) p += " - " + std::to_string(c[i]) + "*" + vars[i];
    out.push_back(p);
    std::size_t i = 0;
    while (i < c.size() && c[i] == cmax) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

struct Corpus {
  std::vector<FamilyCase> cases;
  // Per base: the coefficient extensions by name, sharing the base ring.
  std::vector<std::map<std::string, SmallExtension>> by_base;
  std::vector<std::vector<FamilyCase>> families_by_base;
};

Corpus build_corpus(const Field& k) {
  Corpus c;
  for (const auto& b : base_algebras()) {
    RingPtr A = make(k, b.vars, b.ideal);
    std::map<std::string, SmallExtension> exts;
    std::vector<FamilyCase> fams;
    for (const auto& cd : coefficient_algebras()) {
      RingPtr Rp = make(k, cd.vars, cd.ideal);
      const int dimRp = artin_algebra(Rp).dim();
      if (b.dim * dimRp > 8) continue;
      SmallExtension q = artin_extension(A, Rp, {Rp->S().parse(cd.kernel)});
      exts.emplace(cd.name, q);
      const PolyRing& S = q.B->S();
      auto family = [&](const std::string& label, const std::vector<std::string>& gens) {
        std::vector<std::vector<Poly>> row(1);
        std::vector<int> src;
        for (const auto& g : gens) {
          row[0].push_back(S.parse(g));
          src.push_back(1);
        }
        Module N(q.B, matrix_from_entries(S, row, {0}, src));
        if (certify_flat(q, N).ok()) fams.push_back({b.name + " (x) " + cd.name + ": " + label, q, N});
      };
      auto forms = linear_forms(cd.vars);
      if (b.vars.size() == 1) {
        for (const auto& p : forms) family("coker(" + b.vars[0] + p + ")", {b.vars[0] + p});
        if (b.dim == 2) {
          for (std::size_t i = 0; i < forms.size(); ++i)
            for (std::size_t j = i; j < forms.size(); ++j) {
              Module a(q.B, matrix_from_entries(S, {{S.parse("x" + forms[i])}}, {0}, {1}));
              Module d(q.B, matrix_from_entries(S, {{S.parse("x" + forms[j])}}, {0}, {1}));
              Module N = direct_sum({a, d});
              if (certify_flat(q, N).ok())
                fams.push_back({b.name + " (x) " + cd.name + ": coker(x" + forms[i] + ") + coker(x" + forms[j] + ")",
                                q, N});
            }
          fams.push_back({b.name + " (x) " + cd.name + ": free", q, Module::free(q.B, {0})});
        }
      } else {
        for (const auto& p : forms)
          for (const auto& p2 : forms) family("coker(x" + p + ", y" + p2 + ")", {"x" + p, "y" + p2});
        for (const auto& p : forms) family("coker(x" + p + ")", {"x" + p});
      }
    }
    for (const auto& f : fams) c.cases.push_back(f);
    c.by_base.push_back(exts);
    c.families_by_base.push_back(fams);
  }
  // Truncations of polynomial rings.
  for (int n : {2, 3}) {
    RingPtr Bp = make(k, {"x"}, {"x^" + std::to_string(n + 1)});
    SmallExtension q = small_extension(Bp, {Bp->S().parse("x^" + std::to_string(n))});
    std::string name = "k[x]/(x^" + std::to_string(n + 1) + ") -> k[x]/(x^" + std::to_string(n) + ")";
    Module kk = residue_field_module(q.B);
    c.cases.push_back({name + ": k", q, kk});
    c.cases.push_back({name + ": k + k", q, direct_sum({kk, kk})});
    if (n == 2) c.cases.push_back({name + ": free", q, Module::free(q.B, {0})});
  }
  {
    RingPtr Bp = make(k, {"x", "y"}, {"x^2", "y^2"});
    SmallExtension q = small_extension(Bp, {Bp->S().parse("x*y")});
    std::string name = "k[x,y]/(x^2,y^2) -> /(xy)";
    c.cases.push_back({name + ": k", q, residue_field_module(q.B)});
    c.cases.push_back({name + ": coker(x)", q, cyclic_module(q.B, {"x"})});
  }
  return c;
}

struct CoefficientMap {
  std::string from, to;
  std::vector<std::string> images;
};

const std::vector<CoefficientMap>& coefficient_maps() {
  static const std::vector<CoefficientMap> list{
      {"k[e]/(e^3)", "k[e]/(e^2)", {"e"}},
      {"k[e]/(e^4)", "k[e]/(e^3)", {"e"}},
      {"k[e]/(e^3)", "k[e]/(e^3)", {"2*e"}},
      {"k[e]/(e^2)", "k[e]/(e^2)", {"3*e"}},
      {"k[u,v]/(u^2,v^2)", "k[u,v]/(u^2,v^2)", {"2*u", "v"}},
      {"k[u,v]/(u^2,v^2)", "k[e]/(e^2)", {"e", "e"}},
      {"k[u,v]/(u,v)^2", "k[e]/(e^2)", {"e", "0"}},
  };
  return list;
}

SVec sample(std::mt19937& rng, const Field& k, int n) {
  SVec v(n, k.zero());
  for (auto& x : v) x = k.from_int(std::int64_t(rng() % 7) - 3);
  return v;
}

}  // namespace

ObstructionSuites obstruction_suites(int cap, const Field& k) {
  ObstructionSuites out{{"lifting", {}}, {"four-term", {}}, {"torsor", {}}};
  Corpus corpus = build_corpus(k);
  std::mt19937 rng(20260);
  for (const auto& c : corpus.cases) {
    LiftingProblem P = lifting_problem(c.q, c.N);
    LiftResult lr = lift_module(P);
    BruteForceLifting bf = brute_force_lifting(c.q, c.N, cap);
    out.lifting.check(c.name + ": ob = 0 iff a lifting exists", lifts(lr.ob.zero()), lifts(bf.exists));
    out.lifting.check(c.name + ": lift_module agrees", lifts(lr.lifting.has_value()), lifts(bf.exists));
    if (lr.lifting) {
      LiftingCertificate cert = certify_lifting(P, *lr.lifting);
      out.lifting.check(c.name + ": lifting certified", cert.ok());
      out.lifting.check(c.name + ": structures modulo gauge = dim Ext^1", bf.classes_dim(), P.ext1->dim());
    }
    if (c.q.coefficient()) out.lifting.check(c.name + ": Ext dimensions factor through the closed fibre", P.fibre_dims_match);
    out.four_term.check(c.name + ": four-term class", str(k, four_term_ob(P).coords), str(k, lr.ob.coords));

    if (!lr.lifting) continue;
    const Module& X = *lr.lifting;
    const int n = P.ext1->dim();
    out.torsor.check(c.name + ": X - X = 0", lifting_difference(P, X, X).zero());
    SVec a = sample(rng, k, n), b = sample(rng, k, n);
    Module Xa = torsor_act(P, X, a);
    out.torsor.check(c.name + ": (X + a) certified", certify_lifting(P, Xa).ok());
    out.torsor.check(c.name + ": (X + a) - X = a", str(k, lifting_difference(P, Xa, X).coords), str(k, a));
    out.torsor.check(c.name + ": X - (X + a) = -a", str(k, lifting_difference(P, X, Xa).coords),
                     str(k, svec_scale(k, k.neg(k.one()), a)));
    out.torsor.check(c.name + ": (X + a) + b = X + (a + b)",
                     lifting_difference(P, torsor_act(P, Xa, b), torsor_act(P, X, svec_add(k, a, b))).zero());
  }
  // Base change along maps of coefficient algebras, per base ring.
  for (std::size_t bi = 0; bi < corpus.by_base.size(); ++bi) {
    const auto& exts = corpus.by_base[bi];
    for (const auto& m : coefficient_maps()) {
      auto from = exts.find(m.from), to = exts.find(m.to);
      if (from == exts.end() || to == exts.end()) continue;
      const SmallExtension& q = from->second;
      const SmallExtension& q2 = to->second;
      std::vector<Poly> tau;
      for (const auto& s : m.images) tau.push_back(q2.Rp->S().parse(s));
      for (const auto& f : corpus.families_by_base[bi]) {
        if (f.q.Bp != q.Bp) continue;
        std::string name = f.name + " along " + m.from + " -> " + m.to;
        LiftingProblem P = lifting_problem(q, f.N);
        std::optional<std::pair<Module, SVec>> torsor;
        if (auto lr = lift_module(P); lr.lifting) torsor = std::make_pair(*lr.lifting, sample(rng, k, P.ext1->dim()));
        BaseChangeReport rep = base_change_ob(q, q2, tau, f.N, torsor);
        out.torsor.check(name + ": ob commutes with base change", str(k, rep.pushed), str(k, rep.recomputed));
        if (rep.torsor_checked)
          out.torsor.check(name + ": differences commute with base change", str(k, rep.torsor_pushed),
                           str(k, rep.torsor_recomputed));
      }
    }
  }
  return out;
}

SuiteReport omap_suite(const Field& k) {
  SuiteReport r{"omap", {}};
  RingPtr Bp = make(k, {"x"}, {"x^3"});
  SmallExtension q = small_extension(Bp, {Bp->S().parse("x^2")});
  const PolyRing& S = q.B->S();
  Module kk = residue_field_module(q.B);
  LiftingProblem Pk = lifting_problem(q, kk);
  LiftingProblem Pk2 = lifting_problem(q, direct_sum({kk, kk}));
  LiftingProblem Pm = lifting_problem(q, maximal_ideal_module(q.B));
  LiftingProblem PB = lifting_problem(q, Module::free(q.B, {0}));
  auto natural = [&](const std::string& name, const LiftingProblem& X, const LiftingProblem& Y,
                     const std::vector<std::vector<std::string>>& rows, std::vector<int> src) {
    std::vector<std::vector<Poly>> e;
    for (const auto& row : rows) {
      e.emplace_back();
      for (const auto& s : row) e.back().push_back(S.parse(s));
    }
    Matrix m = matrix_from_entries(S, e, Y.N.gen_deg(), src);
    NaturalityCheck c = omap_check(X, Y, ModuleMap{X.N, Y.N, m});
    r.check(name + ": f^* ob(Y) = f_* ob(X)", str(k, c.pulled), str(k, c.pushed));
  };
  natural("k + k -> k, (1, 2)", Pk2, Pk, {{"1", "2"}}, {0, 0});
  natural("k -> k + k, (1, 3)", Pk, Pk2, {{"1"}, {"3"}}, {0});
  natural("m -> B", Pm, PB, {{"x"}}, {1});
  natural("B -> k", PB, Pk, {{"1"}}, {0});

  RingPtr A = make(k, {"x"}, {"x^2"});
  RingPtr Rp = make(k, {"e"}, {"e^2"});
  SmallExtension qe = artin_extension(A, Rp, {Rp->S().parse("e")});
  const PolyRing& Se = qe.Bp->S();
  Module N(qe.B, matrix_from_entries(Se, {{Se.parse("x")}}, {0}, {1}));
  LiftingProblem P = lifting_problem(qe, N);
  ModuleMap id{P.N, P.N, identity_matrix(Se, {0})};
  std::vector<Module> fam;
  for (int a = 0; a < 3; ++a)
    fam.push_back(Module(qe.Bp, matrix_from_entries(Se, {{Se.parse("x - " + std::to_string(a) + "*e")}}, {0}, {1})));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      std::string name = "id: coker(x - " + std::to_string(a) + "e) -> coker(x - " + std::to_string(b) + "e)";
      SVec ob = map_obstruction(P, P, id, fam[a], fam[b]);
      r.check(name + ": map obstruction vanishes iff the lifts agree", svec_is_zero(ob) ? "lifts" : "obstructed",
              a == b ? "lifts" : "obstructed");
      DifferenceCheck d = omap_difference(P, P, id, fam[a], fam[b], {k.from_int(2)}, {k.from_int(5)});
      r.check(name + ": moving the lifts by (2, 5)", str(k, d.moved), str(k, d.predicted));
    }
  return r;
}

SuiteReport soundness_suite(const Document& doc, const std::string& label) {
  SuiteReport r{"soundness " + label, {}};
  auto ring_checks = [&](const std::string& name, const RingPtr& R) {
    const PolyRing& S = R->S();
    bool member = true;
    for (const auto& g : R->ideal()) {
      member = member && R->nf(g).empty();
      for (int i = 0; i < S.nvars(); ++i) member = member && R->nf(S.mul(S.variable(i), g)).empty();
    }
    r.check(name + ": ideal generators and multiples reduce to 0", member);
    if (R->gb().size() == 1) {
      // Hypersurface: HF(S/(f), d) = HF(S, d) - HF(S, d - deg f).
      const int df = S.degree(R->gb()[0]);
      auto hf = hilbert_function(Module::free(R, {0}), 0, 12);
      bool same = true;
      for (int d = 0; d <= 12; ++d) {
        std::int64_t want = std::int64_t(monomials_of_degree(S, d).size()) -
                            (d >= df ? std::int64_t(monomials_of_degree(S, d - df).size()) : 0);
        same = same && hf[d] == want;
      }
      r.check(name + ": hypersurface Hilbert function", same);
    }
  };
  for (const auto& n : doc.names("ring")) ring_checks("ring " + n, doc.ring(n));
  for (const auto& n : doc.names("artin")) ring_checks("artin " + n, doc.artin(n));
  for (const auto& n : doc.names("small-extension")) {
    SmallExtension q = doc.extension(n);
    ring_checks("extension " + n + " source", q.Bp);
    ring_checks("extension " + n + " target", q.B);
  }
  for (const auto& n : doc.names("module")) {
    Module M = doc.module(n);
    const PolyRing& S = M.S();
    bool member = true;
    for (const auto& c : M.pres().col) {
      member = member && M.nf(c).empty();
      for (int i = 0; i < S.nvars(); ++i) member = member && M.nf(S.vmul(S.variable(i), c)).empty();
    }
    r.check("module " + n + ": relations reduce to 0", member);
    FreeResolution res = resolve(M, 4);
    r.check("module " + n + ": resolution d^2 = 0", squares_to_zero(res));
    r.check("module " + n + ": resolution exact", certify_exact(res, kDefaultWindow).exact);
  }
  for (const auto& n : doc.names("mf")) {
    MatrixFactorization mf = doc.mf(n);
    r.check("mf " + n + ": factorization", is_matrix_factorization(mf));
    FreeResolution e = eisenbud_resolution(mf, 6);
    r.check("mf " + n + ": Eisenbud resolution d^2 = 0", squares_to_zero(e));
    r.check("mf " + n + ": Eisenbud resolution exact", certify_exact(e, kDefaultWindow).exact);
    if (mf.Q->field().characteristic() != 2) {
      KnorrerRings R = knorrer_rings(mf.Q, mf.f);
      r.check("mf " + n + ": Knorrer factorization", is_matrix_factorization(knorrer(mf, R)));
      FreeResolution kr = knorrer_resolution(mf, R, 6);
      r.check("mf " + n + ": resolution over A d^2 = 0", squares_to_zero(kr));
      r.check("mf " + n + ": resolution over A exact", certify_exact(kr, kDefaultWindow).exact);
    }
  }
  return r;
}

}  // namespace cmdef::cli
