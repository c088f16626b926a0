#include "cmdef/obstruct.hpp"

#include <algorithm>
#include <set>

namespace cmdef {

namespace {

using Laurent = std::map<int, std::int64_t>;

Laurent laurent(const HilbertSeries& h) {
  Laurent out;
  for (std::size_t i = 0; i < h.num.size(); ++i)
    if (h.num[i]) out[h.shift + int(i)] += h.num[i];
  return out;
}

Laurent operator+(Laurent a, const Laurent& b) {
  for (const auto& [d, c] : b) a[d] += c;
  std::erase_if(a, [](const auto& x) { return x.second == 0; });
  return a;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [d, c] : a)
    for (const auto& [e, f] : b) out[d + e] += c * f;
  std::erase_if(out, [](const auto& x) { return x.second == 0; });
  return out;
}

// Variables lo..hi-1 of the source move by `shift`; terms in other variables are dropped.
Poly move_vars(const PolyRing& to, const Poly& p, int lo, int hi, int shift) {
  Poly out;
  for (const auto& t : p) {
    Monomial m;
    bool keep = true;
    for (int i = 0; i < kMaxVars && keep; ++i) {
      if (!t.m.e[i]) continue;
      if (i < lo || i >= hi) keep = false;
      else m.e[i + shift] = t.m.e[i];
    }
    if (!keep) continue;
    to.fix(m);
    out.push_back({m, t.c});
  }
  to.sort_poly(out);
  return out;
}

Vec move_vars(const PolyRing& to, const Vec& v, int lo, int hi, int shift) {
  Vec out;
  for (const auto& t : v) {
    Monomial m;
    bool keep = true;
    for (int i = 0; i < kMaxVars && keep; ++i) {
      if (!t.m.e[i]) continue;
      if (i < lo || i >= hi) keep = false;
      else m.e[i + shift] = t.m.e[i];
    }
    if (!keep) continue;
    to.fix(m);
    out.push_back({m, t.comp, t.c});
  }
  to.sort_vec(out);
  return out;
}

// images[i] is the image of variable i.
Poly substitute(const PolyRing& to, const Poly& p, const std::vector<Poly>& images) {
  Poly out;
  for (const auto& t : p) {
    Poly term = to.constant(t.c);
    for (int i = 0; i < kMaxVars; ++i)
      if (t.m.e[i]) term = to.mul(term, to.pow(images[i], t.m.e[i]));
    out = to.add(out, term);
  }
  return out;
}

Vec substitute(const PolyRing& to, const Vec& v, const std::vector<Poly>& images) {
  Vec out;
  std::size_t a = 0;
  while (a < v.size()) {
    Poly p;
    std::size_t b = a;
    while (b < v.size() && v[b].comp == v[a].comp) {
      p.push_back({v[b].m, v[b].c});
      ++b;
    }
    out = to.vadd(out, to.from_poly(substitute(to, p, images), v[a].comp));
    a = b;
  }
  return out;
}

const std::vector<int>& level(const FreeResolution& F, int i) {
  static const std::vector<int> empty;
  return i >= 0 && i < int(F.F.size()) ? F.F[i] : empty;
}

// N with its own presentation as d[0], then syzygies.
std::shared_ptr<FreeResolution> presentation_resolution(const Module& N, int maps) {
  auto r = std::make_shared<FreeResolution>();
  r->ring = N.ring();
  r->F = {N.gen_deg(), N.pres().src};
  r->d = {N.pres()};
  r->truncated = true;
  while (r->length() < maps) {
    if (r->d.back().cols() == 0) {
      r->truncated = false;
      break;
    }
    Matrix s = syzygy_matrix(N.A(), r->d.back());
    r->F.push_back(s.src);
    r->d.push_back(std::move(s));
  }
  if (r->d.back().cols() == 0) r->truncated = false;
  r->M = N;
  r->input = N;
  r->to_min = identity_matrix(N.S(), N.gen_deg());
  r->from_min = r->to_min;
  r->minimal = false;
  return r;
}

Module kernel_module(const SmallExtension& q) {
  const PolyRing& S = q.Bp->S();
  Matrix row{q.J_deg, {0}, {}};
  for (const auto& g : q.J) row.col.push_back(S.from_poly(g, 0));
  Matrix syz = syzygy_matrix(*q.Bp, row);
  syz.tgt = q.J_deg;
  return Module(q.B, syz);
}

void require_same_ring(const Module& M, const RingPtr& R, const char* what) {
  if (&M.S() != &R->S()) throw Error(std::string(what) + ": module is not over the rings of the extension");
}

// Images of X's generators (x) J_l in Y (x) J.
Matrix tensor_with_kernel(const PolyRing& S, const Matrix& f, int nJ, const Module& XJ, const Module& YJ) {
  Matrix out{XJ.gen_deg(), YJ.gen_deg(), {}};
  for (int g = 0; g < f.cols(); ++g)
    for (int l = 0; l < nJ; ++l) {
      Vec v;
      for (const auto& t : f.col[g]) v.push_back({t.m, t.comp * nJ + l, t.c});
      S.sort_vec(v);
      out.col.push_back(v);
    }
  return out;
}

Matrix pull_cochain(const Ring& B, const Matrix& c, const Matrix& phi) {
  Matrix g = compose(B, c, phi);
  g.tgt = c.tgt;
  return g;
}

}  // namespace

ArtinAlgebra artin_algebra(const RingPtr& R) {
  const PolyRing& S = R->S();
  for (const auto& g : R->gb())
    if (S.is_constant(g)) throw Error("coefficient algebra: the ideal is the unit ideal");
  if (krull_dim(R) > 0) throw Error("coefficient algebra " + R->describe() + " is not finite-dimensional");
  std::vector<Monomial> lead;
  for (const auto& g : R->gb()) lead.push_back(g.front().m);
  int wmax = 1;
  for (int w : S.degrees()) wmax = std::max(wmax, w);
  ArtinAlgebra out;
  out.R = R;
  int empty_run = 0;
  for (int d = 0; empty_run < wmax; ++d) {
    std::int64_t count = 0;
    for (const auto& m : monomials_of_degree(S, d)) {
      bool standard = std::none_of(lead.begin(), lead.end(), [&](const Monomial& l) { return divides(l, m); });
      if (standard) {
        out.basis.push_back(m);
        ++count;
      }
    }
    out.hilbert.push_back(count);
    empty_run = count ? 0 : empty_run + 1;
  }
  while (!out.hilbert.empty() && out.hilbert.back() == 0) out.hilbert.pop_back();
  return out;
}

SmallExtension small_extension(const RingPtr& Bp, const std::vector<Poly>& J) {
  const PolyRing& S = Bp->S();
  if (J.empty()) throw Error("small extension: the kernel has no generators");
  SmallExtension q;
  q.Bp = Bp;
  for (const auto& g : J) {
    Poly r = Bp->nf(g);
    if (r.empty()) throw Error("small extension: kernel generator " + S.to_string(g) + " is zero in the source ring");
    if (!S.is_homogeneous(r)) throw Error("small extension: kernel generator " + S.to_string(g) + " is not homogeneous");
    q.J.push_back(r);
    q.J_deg.push_back(S.degree(r));
  }
  for (std::size_t i = 0; i < q.J.size(); ++i)
    for (std::size_t j = i; j < q.J.size(); ++j)
      if (!Bp->nf(S.mul(q.J[i], q.J[j])).empty())
        throw Error("small extension: the kernel does not square to zero (" + S.to_string(q.J[i]) + " * " +
                    S.to_string(q.J[j]) + ")");
  q.B = quotient_ring(Bp, q.J);
  return q;
}

SmallExtension artin_extension(const RingPtr& A, const RingPtr& Rp, const std::vector<Poly>& I) {
  const PolyRing& SA = A->S();
  const PolyRing& SR = Rp->S();
  if (!(SA.field() == SR.field())) throw Error("coefficient extension: rings over different fields");
  const int nx = SA.nvars(), ny = SR.nvars();
  if (nx + ny > kMaxVars) throw Error("coefficient extension: too many variables");
  for (const auto& name : SR.names())
    if (SA.var_index(name) >= 0) throw Error("coefficient extension: variable " + name + " occurs in both rings");
  artin_algebra(Rp);
  for (const auto& v : I) {
    Poly r = Rp->nf(v);
    if (r.empty()) throw Error("coefficient extension: kernel element " + SR.to_string(v) + " is zero");
    for (int y = 0; y < ny; ++y)
      if (!Rp->nf(SR.mul(SR.variable(y), r)).empty())
        throw Error("coefficient extension: the maximal ideal does not kill " + SR.to_string(v));
  }
  std::vector<std::string> names = SA.names();
  names.insert(names.end(), SR.names().begin(), SR.names().end());
  std::vector<int> degs = SA.degrees();
  degs.insert(degs.end(), SR.degrees().begin(), SR.degrees().end());
  auto S = std::make_shared<const PolyRing>(SA.field(), names, degs);
  std::vector<Poly> ideal;
  for (const auto& f : A->ideal()) ideal.push_back(move_vars(*S, f, 0, nx, 0));
  for (const auto& f : Rp->ideal()) ideal.push_back(move_vars(*S, f, 0, ny, nx));
  std::vector<Poly> J;
  for (const auto& v : I) J.push_back(move_vars(*S, Rp->nf(v), 0, ny, nx));
  {
    // The kernel elements must be linearly independent.
    std::vector<Monomial> mons;
    for (const auto& v : J)
      for (const auto& t : v)
        if (std::find(mons.begin(), mons.end(), t.m) == mons.end()) mons.push_back(t.m);
    DMat m(int(mons.size()), int(J.size()));
    for (std::size_t c = 0; c < J.size(); ++c)
      for (const auto& t : J[c]) m.at(int(std::find(mons.begin(), mons.end(), t.m) - mons.begin()), int(c)) = t.c;
    if (rank(S->field(), m) != int(J.size())) throw Error("coefficient extension: kernel elements are linearly dependent");
  }
  SmallExtension q = small_extension(make_ring(S, ideal), J);
  q.A = A;
  q.Rp = Rp;
  std::vector<Poly> I_r;
  for (const auto& v : I) I_r.push_back(Rp->nf(v));
  q.R = quotient_ring(Rp, I_r);
  q.nx = nx;
  return q;
}

Poly from_base(const SmallExtension& q, const Poly& p) {
  if (!q.coefficient()) throw Error("not a coefficient extension");
  return move_vars(q.Bp->S(), p, 0, q.nx, 0);
}

Poly from_coefficients(const SmallExtension& q, const Poly& p) {
  if (!q.coefficient()) throw Error("not a coefficient extension");
  return move_vars(q.Bp->S(), p, 0, q.Rp->S().nvars(), q.nx);
}

Matrix to_fibre(const SmallExtension& q, const Matrix& m) {
  Matrix out{m.src, m.tgt, {}};
  for (const auto& c : m.col) out.col.push_back(q.A->nf(move_vars(q.A->S(), c, 0, q.nx, 0)));
  return out;
}

FlatnessReport certify_flat(const SmallExtension& q, const Module& N) {
  if (!q.coefficient()) throw Error("flatness over the coefficients needs a coefficient extension");
  require_same_ring(N, q.B, "certify_flat");
  const PolyRing& S = q.B->S();
  Module Nb(q.B, N.pres());
  std::vector<Poly> ys;
  for (int y = q.nx; y < S.nvars(); ++y) ys.push_back(S.variable(y));
  RingPtr fibre = quotient_ring(q.B, ys);
  Module N0(fibre, N.pres());
  Laurent hR;
  ArtinAlgebra R = artin_algebra(q.R);
  for (std::size_t d = 0; d < R.hilbert.size(); ++d)
    if (R.hilbert[d]) hR[int(d)] = R.hilbert[d];
  FlatnessReport rep;
  rep.hilbert = laurent(hilbert_series(Nb)) == hR * laurent(hilbert_series(N0));
  if (!rep.hilbert) rep.failure = "Hilbert series differs from HS(R) HS(N (x)_R k)";
  auto F = presentation_resolution(Nb, 2);
  FreeComplex C{fibre, F->F, F->d};
  rep.tor1 = C.length() < 2 || complex_homology(C, 1).M.is_zero();
  if (!rep.tor1 && rep.failure.empty()) rep.failure = "Tor_1^R(k, N) is nonzero";
  return rep;
}

LiftingProblem lifting_problem(const SmallExtension& q, const Module& N) {
  require_same_ring(N, q.B, "lifting problem");
  LiftingProblem P;
  P.q = q;
  P.N = Module(q.B, N.pres());
  if (q.coefficient()) {
    FlatnessReport fr = certify_flat(q, P.N);
    if (!fr.ok()) throw Error("the family is not flat over the coefficient algebra: " + fr.failure);
  }
  P.F = presentation_resolution(P.N, 3);
  P.J = kernel_module(q);
  P.NJ = tensor(P.N, P.J);
  P.ext1 = std::make_shared<const ExtSpace>(P.F, P.NJ, 1, 0);
  P.ext2 = std::make_shared<const ExtSpace>(P.F, P.NJ, 2, 0);
  const PolyRing& S = q.Bp->S();
  std::vector<Vec> gens;
  std::vector<int> gdeg;
  for (std::size_t g = 0; g < P.N.gen_deg().size(); ++g)
    for (std::size_t l = 0; l < q.J.size(); ++l) {
      gens.push_back(S.from_poly(q.J[l], int(g)));
      gdeg.push_back(P.N.gen_deg()[g] + q.J_deg[l]);
    }
  P.kernel_gb = std::make_shared<const AugmentedGB>(*q.Bp, P.N.gen_deg(), gens, gdeg, std::vector<Vec>{});

  if (q.coefficient()) {
    const PolyRing& SA = q.A->S();
    P.N0 = Module(q.A, to_fibre(q, P.N.pres()));
    auto fb = std::make_shared<FreeResolution>();
    fb->ring = q.A;
    fb->F = P.F->F;
    for (const auto& d : P.F->d) fb->d.push_back(to_fibre(q, d));
    fb->M = P.N0;
    fb->input = P.N0;
    fb->to_min = identity_matrix(SA, P.N0.gen_deg());
    fb->from_min = fb->to_min;
    fb->minimal = false;
    fb->truncated = P.F->truncated;
    P.Fbar = fb;
    P.G = resolution_ptr(P.N0, 3);
    P.cmp = lift_chain_map(*P.G, *P.Fbar, identity_matrix(SA, P.N0.gen_deg()), 2);
    for (int i = 1; i <= 2; ++i) {
      int total = 0;
      for (int d : q.J_deg) {
        auto key = std::make_pair(i, -d);
        if (!P.fibre_spaces.count(key)) P.fibre_spaces[key] = std::make_shared<const ExtSpace>(P.G, P.N0, i, -d);
        total += P.fibre_spaces[key]->dim();
      }
      if (total != (i == 1 ? P.ext1 : P.ext2)->dim()) P.fibre_dims_match = false;
    }
  }
  return P;
}

Matrix kernel_part(const LiftingProblem& P, const Matrix& m) {
  Matrix out{m.src, P.NJ.gen_deg(), {}};
  for (const auto& c : m.col) {
    Vec v = P.q.Bp->nf(c);
    if (v.empty()) {
      out.col.push_back({});
      continue;
    }
    auto a = P.kernel_gb->lift(v);
    if (!a) throw Error("matrix entries do not lie in the kernel of the extension");
    out.col.push_back(P.q.B->nf(*a));
  }
  return out;
}

Matrix kernel_lift(const LiftingProblem& P, const Matrix& c) {
  const PolyRing& S = P.q.Bp->S();
  const int nJ = int(P.q.J.size());
  Matrix out{c.src, P.N.gen_deg(), {}};
  for (const auto& col : c.col) {
    Vec v;
    for (const auto& t : col) v = S.vadd(v, S.vmul_term(t.c, t.m, S.from_poly(P.q.J[t.comp % nJ], t.comp / nJ)));
    out.col.push_back(P.q.Bp->nf(v));
  }
  return out;
}

std::vector<SVec> fibre_coords(const LiftingProblem& P, const Matrix& cochain, int i) {
  std::vector<SVec> out;
  if (!P.q.coefficient()) return out;
  const PolyRing& S = P.q.Bp->S();
  const int nJ = int(P.q.J.size());
  for (int l = 0; l < nJ; ++l) {
    Matrix cl{cochain.src, P.N0.gen_deg(), {}};
    for (auto& t : cl.tgt) t += P.q.J_deg[l];
    for (const auto& col : cochain.col) {
      Vec v;
      for (const auto& t : col)
        if (t.comp % nJ == l) v.push_back({t.m, t.comp / nJ, t.c});
      S.sort_vec(v);
      cl.col.push_back(P.q.A->nf(move_vars(P.q.A->S(), v, 0, P.q.nx, 0)));
    }
    const auto& space = P.fibre_spaces.at({i, -P.q.J_deg[l]});
    out.push_back(space->coords(pull_cochain(*P.q.A, cl, P.cmp.phi[i])));
  }
  return out;
}

ObstructionClass obstruction(const LiftingProblem& P, const Matrix& d0, const Matrix& d1) {
  const FreeResolution& F = *P.F;
  ObstructionClass ob;
  if (F.length() < 2 || F.d[1].cols() == 0) {
    ob.cocycle = Matrix{level(F, 2), P.NJ.gen_deg(), std::vector<Vec>(level(F, 2).size())};
  } else {
    if (!same_matrix(*P.q.B, d0, F.d[0]) || !same_matrix(*P.q.B, d1, F.d[1]))
      throw Error("obstruction: the given matrices do not lift the resolution");
    ob.cocycle = kernel_part(P, compose(*P.q.Bp, d0, d1));
  }
  ob.coords = P.ext2->coords(ob.cocycle);
  ob.fibre = fibre_coords(P, ob.cocycle, 2);
  return ob;
}

ObstructionClass obstruction(const LiftingProblem& P) {
  const FreeResolution& F = *P.F;
  if (F.length() < 2) return obstruction(P, F.d[0], Matrix{});
  return obstruction(P, F.d[0], F.d[1]);
}

ObstructionClass four_term_ob(const LiftingProblem& P) {
  const SmallExtension& q = P.q;
  const PolyRing& S = q.Bp->S();
  const Matrix& d0 = P.F->d[0];
  const int n0 = P.N.ngens(), n1 = d0.cols(), nJ = int(q.J.size());
  // N'_1 = ker(F~0 -> N) is generated by the lifted relations and J F~0.
  Matrix gens{d0.src, P.N.gen_deg(), d0.col};
  for (int g = 0; g < n0; ++g)
    for (int l = 0; l < nJ; ++l) {
      gens.col.push_back(S.from_poly(q.J[l], g));
      gens.src.push_back(P.N.gen_deg()[g] + q.J_deg[l]);
    }
  Matrix syz = syzygy_matrix(*q.Bp, gens);
  syz.tgt = gens.src;
  Module N1bar(q.B, syz);
  Module F0 = Module::free(q.B, P.N.gen_deg());
  Matrix a{P.NJ.gen_deg(), N1bar.gen_deg(), {}};
  for (int j = 0; j < n0 * nJ; ++j) a.col.push_back(S.from_poly(S.constant(1), n1 + j));
  Matrix b = gens;
  for (auto& c : b.col) c = q.B->nf(c);
  FourTerm s{ModuleMap{P.NJ, N1bar, a}, ModuleMap{N1bar, F0, b},
             ModuleMap{F0, P.N, identity_matrix(S, P.N.gen_deg())}};
  if (!is_exact(s)) throw Error("internal: the reduced syzygy sequence is not exact");
  ObstructionClass ob;
  ob.coords = four_term_class(s, *P.ext2);
  ob.cocycle = P.ext2->element(ob.coords);
  ob.fibre = fibre_coords(P, ob.cocycle, 2);
  return ob;
}

LiftingCertificate certify_lifting(const LiftingProblem& P, const Module& Np) {
  require_same_ring(Np, P.q.Bp, "certify_lifting");
  LiftingCertificate c;
  const Matrix& m = Np.pres();
  c.reduces = m.tgt == P.N.gen_deg() && m.src == P.N.pres().src && same_matrix(*P.q.B, m, P.N.pres());
  if (!c.reduces) {
    c.failure = "the presentation does not reduce to that of N";
    return c;
  }
  Module X(P.q.Bp, m);
  c.injective = laurent(hilbert_series(X)) == laurent(hilbert_series(P.N)) + laurent(hilbert_series(P.NJ));
  if (!c.injective) c.failure = "N (x) J -> N' is not injective (Hilbert series)";
  return c;
}

LiftResult lift_module(const LiftingProblem& P) {
  LiftResult r;
  r.ob = obstruction(P);
  if (!r.ob.zero()) return r;
  auto xi = P.ext2->bounding_cochain(r.ob.cocycle);
  if (!xi) throw Error("internal: zero obstruction class without a bounding cochain");
  const Ring& Bp = *P.q.Bp;
  Matrix d = add(Bp, P.F->d[0], scale(Bp, Bp.field().neg(Bp.field().one()), kernel_lift(P, *xi)));
  d.src = P.N.pres().src;
  d.tgt = P.N.gen_deg();
  Module Np(P.q.Bp, d);
  LiftingCertificate c = certify_lifting(P, Np);
  if (!c.ok()) throw Error("internal: constructed lifting fails its certificate: " + c.failure);
  r.lifting = Np;
  return r;
}

Module torsor_act(const LiftingProblem& P, const Module& Np, const SVec& xi) {
  if (!certify_lifting(P, Np).ok()) throw Error("torsor_act: the module is not a certified lifting");
  if (int(xi.size()) != P.ext1->dim()) throw Error("torsor_act: class has the wrong number of coordinates");
  const Ring& Bp = *P.q.Bp;
  Matrix d = add(Bp, Np.pres(), kernel_lift(P, P.ext1->element(xi)));
  d.src = Np.pres().src;
  d.tgt = Np.pres().tgt;
  return Module(P.q.Bp, d);
}

LiftingDifference lifting_difference(const LiftingProblem& P, const Module& N1, const Module& N2) {
  LiftingCertificate c1 = certify_lifting(P, N1), c2 = certify_lifting(P, N2);
  if (!c1.ok() || !c2.ok())
    throw Error("lifting_difference: inputs are not liftings of a common family: " + (c1.ok() ? c2.failure : c1.failure));
  const Ring& Bp = *P.q.Bp;
  Matrix delta = add(Bp, N1.pres(), scale(Bp, Bp.field().neg(Bp.field().one()), N2.pres()));
  LiftingDifference d;
  d.cocycle = kernel_part(P, delta);
  d.coords = P.ext1->coords(d.cocycle);
  d.fibre = fibre_coords(P, d.cocycle, 1);
  return d;
}

// ---------------------------------------------------------------------------------------------
// Brute-force lifting search.

namespace {

struct GradedBasis {
  std::vector<int> deg;
  std::vector<StdMono> elem;
  std::map<int, int> start;
  int n = 0;
};

GradedBasis graded_basis(const Module& M) {
  GradedBasis b;
  if (M.is_zero()) return b;
  if (krull_dim(M) > 0) throw Error("brute-force lifting needs modules of finite length");
  int lo = *std::min_element(M.gen_deg().begin(), M.gen_deg().end());
  int top = *std::max_element(M.gen_deg().begin(), M.gen_deg().end());
  int wmax = 1;
  for (int w : M.S().degrees()) wmax = std::max(wmax, w);
  int run = 0;
  for (int d = lo; run < wmax; ++d) {
    const auto& basis = M.gb().basis(d);
    if (basis.empty()) {
      if (d > top) ++run;
      continue;
    }
    run = 0;
    b.start[d] = b.n;
    for (const auto& e : basis) {
      b.deg.push_back(d);
      b.elem.push_back(e);
      ++b.n;
    }
  }
  return b;
}

// Matrix of v -> map(v) from the basis of X to that of Y, where map adds `shift` to degrees.
template <class F>
DMat linear_map(const Module& X, const GradedBasis& bx, const Module& Y, const GradedBasis& by, int shift, F map) {
  const Field& k = X.A().field();
  DMat out(by.n, bx.n);
  for (int s = 0; s < bx.n; ++s) {
    Vec v{{bx.elem[s].first, bx.elem[s].second, k.one()}};
    Vec w = map(v);
    int d = bx.deg[s] + shift;
    auto it = by.start.find(d);
    SVec y = Y.gb().coords(w, d);
    if (it == by.start.end()) {
      if (!svec_is_zero(y)) throw Error("internal: graded basis misses a degree");
      continue;
    }
    for (std::size_t r = 0; r < y.size(); ++r) out.at(it->second + int(r), s) = y[r];
  }
  return out;
}

}  // namespace

BruteForceLifting brute_force_lifting(const SmallExtension& q, const Module& Nin, int cap) {
  require_same_ring(Nin, q.B, "brute_force_lifting");
  const PolyRing& S = q.Bp->S();
  const Field& k = S.field();
  Module N(q.B, Nin.pres());
  Module NJ = tensor(N, kernel_module(q));
  GradedBasis bN = graded_basis(N), bJ = graded_basis(NJ);
  BruteForceLifting out;
  out.dim_N = bN.n;
  out.dim_NJ = bJ.n;
  if (bN.n + bJ.n > cap)
    throw LimitError("brute-force lifting search is capped at total dimension " + std::to_string(cap) + " (needs " +
                     std::to_string(bN.n + bJ.n) + ")");
  const int nv = S.nvars(), nN = bN.n, nNJ = bJ.n, nJ = int(q.J.size());
  std::vector<DMat> A(nv), B(nv);
  for (int i = 0; i < nv; ++i) {
    Poly x = S.variable(i);
    int w = S.degrees()[i];
    A[i] = linear_map(N, bN, N, bN, w, [&](const Vec& v) { return S.vmul(x, v); });
    B[i] = linear_map(NJ, bJ, NJ, bJ, w, [&](const Vec& v) { return S.vmul(x, v); });
  }
  // Unknowns: entries (r, s) of the block C_i: N -> N (x) J of degree deg x_i.
  std::vector<std::vector<std::array<int, 3>>> unk(nv);
  int nu = 0;
  for (int i = 0; i < nv; ++i)
    for (int r = 0; r < nNJ; ++r)
      for (int s = 0; s < nN; ++s)
        if (bJ.deg[r] == bN.deg[s] + S.degrees()[i]) unk[i].push_back({r, s, nu++});
  out.unknowns = nu;

  struct Condition {
    std::vector<std::pair<Scalar, std::vector<int>>> terms;
    DMat rhs;
  };
  auto sequence_terms = [&](const Poly& p) {
    std::vector<std::pair<Scalar, std::vector<int>>> t;
    for (const auto& term : p) {
      std::vector<int> seq;
      for (int i = 0; i < nv; ++i)
        for (int e = 0; e < term.m.e[i]; ++e) seq.push_back(i);
      t.push_back({term.c, seq});
    }
    return t;
  };
  std::vector<Condition> conds;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      conds.push_back({{{k.one(), {i, j}}, {k.neg(k.one()), {j, i}}}, DMat(nNJ, nN)});
  for (const auto& f : q.Bp->ideal()) conds.push_back({sequence_terms(f), DMat(nNJ, nN)});
  for (int l = 0; l < nJ; ++l) {
    DMat mu = linear_map(N, bN, NJ, bJ, q.J_deg[l], [&](const Vec& v) {
      Vec w;
      for (const auto& t : v) w.push_back({t.m, t.comp * nJ + l, t.c});
      return w;
    });
    conds.push_back({sequence_terms(q.J[l]), mu});
  }

  const int block = nNJ * nN;
  DMat sys(int(conds.size()) * block, nu);
  SVec rhs(sys.r, k.zero());
  for (std::size_t ci = 0; ci < conds.size(); ++ci) {
    const int row0 = int(ci) * block;
    for (int r = 0; r < nNJ; ++r)
      for (int s = 0; s < nN; ++s) rhs[row0 + r * nN + s] = conds[ci].rhs.at(r, s);
    // Lower-left block of X_{i1} ... X_{ik}: sum over p of B_{i1}..B_{i(p-1)} C_{ip} A_{i(p+1)}..A_{ik}.
    for (const auto& [c, seq] : conds[ci].terms) {
      const int len = int(seq.size());
      for (int p = 0; p < len; ++p) {
        DMat P = dmat_identity(nNJ), Q = dmat_identity(nN);
        for (int a = 0; a < p; ++a) P = dmat_mul(k, P, B[seq[a]]);
        for (int a = p + 1; a < len; ++a) Q = dmat_mul(k, Q, A[seq[a]]);
        for (const auto& [r1, s1, u] : unk[seq[p]])
          for (int r = 0; r < nNJ; ++r) {
            Scalar pr = P.at(r, r1);
            if (pr.is_zero()) continue;
            for (int s = 0; s < nN; ++s) {
              Scalar qs = Q.at(s1, s);
              if (qs.is_zero()) continue;
              Scalar& e = sys.at(row0 + r * nN + s, u);
              e = k.add(e, k.mul(c, k.mul(pr, qs)));
            }
          }
      }
    }
  }
  LinearSolver solver(k, sys);
  out.exists = solver.solve(rhs).has_value();
  out.solution_dim = nu - solver.rank();
  // C_i -> C_i + B_i phi - phi A_i for phi: N -> N (x) J of degree 0.
  std::vector<SVec> gauge;
  for (int r = 0; r < nNJ; ++r)
    for (int s = 0; s < nN; ++s) {
      if (bJ.deg[r] != bN.deg[s]) continue;
      SVec col(nu, k.zero());
      for (int i = 0; i < nv; ++i)
        for (const auto& [r2, s2, u] : unk[i]) {
          Scalar v = k.zero();
          if (s2 == s) v = k.add(v, B[i].at(r2, r));
          if (r2 == r) v = k.sub(v, A[i].at(s, s2));
          col[u] = v;
        }
      gauge.push_back(col);
    }
  out.gauge_rank = gauge.empty() ? 0 : rank(k, dmat_from_columns(nu, gauge));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Base change along a map of coefficient algebras.

namespace {

std::vector<Poly> joint_images(const SmallExtension& q, const SmallExtension& q2, const std::vector<Poly>& tau) {
  const PolyRing& S2 = q2.Bp->S();
  std::vector<Poly> img;
  for (int i = 0; i < q.nx; ++i) img.push_back(S2.variable(i));
  for (const auto& t : tau) img.push_back(from_coefficients(q2, t));
  return img;
}

void check_tau(const SmallExtension& q, const SmallExtension& q2, const std::vector<Poly>& tau) {
  if (!q.coefficient() || !q2.coefficient()) throw Error("base change needs coefficient extensions");
  if (q.A != q2.A) throw Error("base change: the extensions have different closed fibres");
  const PolyRing& SR = q.Rp->S();
  const PolyRing& SS = q2.Rp->S();
  if (int(tau.size()) != SR.nvars()) throw Error("base change: tau needs one image per coefficient variable");
  for (int j = 0; j < SR.nvars(); ++j) {
    const Poly& t = tau[j];
    if (!t.empty() && (!SS.is_homogeneous(t) || SS.degree(t) != SR.degrees()[j]))
      throw Error("base change: the image of " + SR.names()[j] + " is not homogeneous of the same degree");
    if (!t.empty() && SS.is_constant(t)) throw Error("base change: tau is not local");
  }
  for (const auto& f : q.Rp->ideal())
    if (!q2.Rp->nf(substitute(SS, f, tau)).empty())
      throw Error("base change: tau does not respect the relation " + SR.to_string(f));
}

}  // namespace

Module base_change(const SmallExtension& q, const SmallExtension& q2, const std::vector<Poly>& tau, const Module& M,
                   bool source) {
  check_tau(q, q2, tau);
  require_same_ring(M, q.Bp, "base_change");
  const RingPtr& to = source ? q2.Bp : q2.B;
  std::vector<Poly> img = joint_images(q, q2, tau);
  Matrix m{M.pres().src, M.pres().tgt, {}};
  for (const auto& c : M.pres().col) m.col.push_back(to->nf(substitute(to->S(), c, img)));
  return Module(to, m);
}

BaseChangeReport base_change_ob(const SmallExtension& q, const SmallExtension& q2, const std::vector<Poly>& tau,
                                const Module& N, const std::optional<std::pair<Module, SVec>>& torsor) {
  check_tau(q, q2, tau);
  const PolyRing& S2 = q2.Bp->S();
  const Field& k = S2.field();
  std::vector<Poly> img = joint_images(q, q2, tau);
  BaseChangeReport rep;
  // tau(I) in H, in the kernel bases.
  std::vector<Monomial> mons;
  auto index_of = [&](const Monomial& m) {
    auto it = std::find(mons.begin(), mons.end(), m);
    if (it == mons.end()) {
      mons.push_back(m);
      return int(mons.size()) - 1;
    }
    return int(it - mons.begin());
  };
  std::vector<Poly> images;
  for (const auto& v : q.J) {
    Poly t = q2.Bp->nf(substitute(S2, v, img));
    if (!q2.B->nf(t).empty()) throw Error("base change: the square does not commute (tau does not map I into H)");
    images.push_back(t);
  }
  for (const auto& w : q2.J)
    for (const auto& t : w) index_of(t.m);
  for (const auto& p : images)
    for (const auto& t : p) index_of(t.m);
  DMat W(int(mons.size()), int(q2.J.size()));
  for (std::size_t j = 0; j < q2.J.size(); ++j)
    for (const auto& t : q2.J[j]) W.at(index_of(t.m), int(j)) = t.c;
  LinearSolver solve_w(k, W);
  rep.kernel_map = DMat(int(q2.J.size()), int(q.J.size()));
  for (std::size_t l = 0; l < images.size(); ++l) {
    SVec b(mons.size(), k.zero());
    for (const auto& t : images[l]) b[index_of(t.m)] = t.c;
    auto x = solve_w.solve(b);
    if (!x) throw Error("internal: image of the kernel outside H");
    for (std::size_t j = 0; j < x->size(); ++j) rep.kernel_map.at(int(j), int(l)) = (*x)[j];
  }

  LiftingProblem P1 = lifting_problem(q, N);
  LiftingProblem P2 = lifting_problem(q2, base_change(q, q2, tau, Module(q.Bp, N.pres()), false));
  if (!same_matrix(*q.A, P1.N0.pres(), P2.N0.pres())) throw Error("internal: base change altered the closed fibre");
  auto push = [&](const std::vector<SVec>& x, int i) {
    std::vector<SVec> out;
    for (std::size_t j = 0; j < q2.J.size(); ++j) {
      SVec y(P2.fibre_spaces.at({i, -q2.J_deg[j]})->dim(), k.zero());
      for (std::size_t l = 0; l < x.size(); ++l) {
        Scalar c = rep.kernel_map.at(int(j), int(l));
        if (!c.is_zero()) y = svec_add(k, y, svec_scale(k, c, x[l]));
      }
      out.push_back(y);
    }
    return out;
  };
  rep.pushed = push(obstruction(P1).fibre, 2);
  rep.recomputed = obstruction(P2).fibre;
  rep.ob_equal = rep.pushed == rep.recomputed;
  if (torsor) {
    const Module& X = torsor->first;
    Module Y = torsor_act(P1, X, torsor->second);
    rep.torsor_pushed = push(lifting_difference(P1, Y, X).fibre, 1);
    rep.torsor_recomputed =
        lifting_difference(P2, base_change(q, q2, tau, Y, true), base_change(q, q2, tau, X, true)).fibre;
    rep.torsor_checked = true;
    rep.torsor_equal = rep.torsor_pushed == rep.torsor_recomputed;
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Regular quotients and the approximation sequence.

RegularQuotientOb ob_regular_quotient(const RingPtr& A, const std::vector<Poly>& J, const Module& N) {
  const PolyRing& S = A->S();
  if (J.empty()) throw Error("ob_regular_quotient: J is empty");
  if (int j = first_irregular(A, J)) throw Error("ob_regular_quotient: J is not a regular sequence (element " +
                                                 std::to_string(j) + ", " + S.to_string(J[j - 1]) + ")");
  require_same_ring(N, A, "ob_regular_quotient");
  std::vector<Poly> squares;
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = i; j < J.size(); ++j) squares.push_back(S.mul(J[i], J[j]));
  RegularQuotientOb out;
  out.q = small_extension(quotient_ring(A, squares), J);
  const SmallExtension& q = out.q;
  Module NB(q.B, N.pres());
  LiftingProblem P = lifting_problem(q, NB);
  out.ob = obstruction(P);

  Module NA = restrict_scalars(NB, A);
  out.approx = mcm_approx_cm(NA, int(J.size()));
  const ApproxTriple& t = out.approx;
  const int nJ = int(q.J.size());
  Module Lb(q.B, t.L.pres()), Mb(q.B, t.M.pres());
  Matrix rho = t.rho.mat, pi = t.pi.mat;
  for (auto& c : rho.col) c = q.B->nf(c);
  for (auto& c : pi.col) c = q.B->nf(c);
  // n (x) f_l goes to the element l with rho(l) = f_l m, m a lift of n.
  Matrix a{P.NJ.gen_deg(), Lb.gen_deg(), {}};
  for (int g = 0; g < NB.ngens(); ++g) {
    auto m = lift_through(t.pi, S.from_poly(S.constant(1), g));
    if (!m) throw Error("internal: approximation map is not surjective");
    for (int l = 0; l < nJ; ++l) {
      auto x = lift_through(t.rho, S.vmul(J[l], *m));
      if (!x) throw Error("internal: approximation sequence is not exact");
      a.col.push_back(q.B->nf(*x));
    }
  }
  FourTerm s{ModuleMap{P.NJ, Lb, a}, ModuleMap{Lb, Mb, rho}, ModuleMap{Mb, NB, pi}};
  if (!is_exact(s)) throw Error("internal: reduced approximation sequence is not exact");
  out.approx_class = four_term_class(s, *P.ext2);
  out.agree = out.approx_class == out.ob.coords;
  return out;
}

Splitting splits_pibar(const ApproxTriple& t, const std::vector<Poly>& J) {
  const RingPtr& A = t.M.ring();
  const Field& k = A->field();
  RingPtr B = J.empty() ? A : quotient_ring(A, J);
  Module Nb(B, t.N.pres()), Mb(B, t.M.pres());
  Matrix pim = t.pi.mat;
  for (auto& c : pim.col) c = B->nf(c);
  ModuleMap pib{Mb, Nb, pim};
  Splitting out;
  if (Nb.is_zero()) {
    out.split = true;
    out.nu = ModuleMap{Nb, Mb, Matrix{Nb.gen_deg(), Mb.gen_deg(), std::vector<Vec>(Nb.ngens())}};
    return out;
  }
  std::vector<ModuleMap> maps = hom_maps(Nb, Mb);
  const PolyRing& S = A->S();
  std::vector<int> offset;
  int rows = 0;
  for (int g = 0; g < Nb.ngens(); ++g) {
    offset.push_back(rows);
    rows += Nb.gb().dim(Nb.gen_deg()[g]);
  }
  auto flat = [&](const Matrix& m) {
    SVec v(rows, k.zero());
    for (int g = 0; g < Nb.ngens(); ++g) {
      SVec y = Nb.gb().coords(m.col[g], Nb.gen_deg()[g]);
      for (std::size_t r = 0; r < y.size(); ++r) v[offset[g] + int(r)] = y[r];
    }
    return v;
  };
  std::vector<SVec> cols;
  for (const auto& nu : maps) cols.push_back(flat(compose(*B, pib.mat, nu.mat)));
  SVec id = flat(identity_matrix(S, Nb.gen_deg()));
  if (cols.empty()) return out;
  auto x = LinearSolver(k, dmat_from_columns(rows, cols)).solve(id);
  if (!x) return out;
  Matrix nu{Nb.gen_deg(), Mb.gen_deg(), std::vector<Vec>(Nb.ngens())};
  for (std::size_t j = 0; j < maps.size(); ++j)
    if (!(*x)[j].is_zero()) nu = add(*B, nu, scale(*B, (*x)[j], maps[j].mat));
  out.split = true;
  out.nu = ModuleMap{Nb, Mb, nu};
  return out;
}

TangentMap tangent_sigma(const Module& N, const ApproxTriple& t, const std::vector<Poly>& J) {
  Splitting sp = splits_pibar(t, J);
  if (!sp.split) throw Error("tangent_sigma: the reduction of pi does not split");
  const RingPtr& A = t.M.ring();
  const Field& k = A->field();
  RingPtr B = J.empty() ? A : quotient_ring(A, J);
  require_same_ring(N, B, "tangent_sigma");
  Module Nb(B, N.pres()), Mb(B, t.M.pres());
  Matrix pim = t.pi.mat;
  for (auto& c : pim.col) c = B->nf(c);
  ModuleMap pib{Mb, Nb, pim};
  TangentMap out;
  ExtModule src = ext_module(1, Nb, Nb), tgt = ext_module(1, t.M, t.M);
  if (!src.finite || !tgt.finite) throw Error("tangent_sigma: Ext^1 spaces are not finite-dimensional");
  out.source_dim = int(src.total);
  out.target_dim = int(tgt.total);
  ResolutionPtr rN = resolution_ptr(Nb, 2), rMb = resolution_ptr(Mb, 2), rM = resolution_ptr(t.M, 2);
  ChainMap phi = lift_chain_map(*rM, *rMb, identity_matrix(A->S(), t.M.gen_deg()), 1);
  for (std::size_t i = 0; i < src.dims.size(); ++i) {
    if (!src.dims[i]) continue;
    const int e = src.lo + int(i);
    ExtSpace sNN(rN, Nb, 1, e), sMbN(rMb, Nb, 1, e), sMN(rM, t.N, 1, e), sMM(rM, t.M, 1, e);
    DMat pullback = ext_contra(pib, sNN, sMbN);
    DMat push = ext_cov(t.pi, sMM, sMN);
    LinearSolver inv(k, push);
    if (inv.rank() != sMM.dim() || sMM.dim() != sMN.dim())
      throw Error("tangent_sigma: pi_* is not an isomorphism on Ext^1(M, -)");
    std::vector<SVec> cols;
    for (int j = 0; j < sNN.dim(); ++j) {
      Matrix c = sMbN.element(dmat_column(pullback, j));
      auto x = inv.solve(sMN.coords(pull_cochain(*B, c, phi.phi[1])));
      if (!x) throw Error("internal: tangent map leaves the image of pi_*");
      cols.push_back(*x);
    }
    DMat T = dmat_from_columns(sMM.dim(), cols);
    out.degrees.push_back(e);
    out.rank += rank(k, T);
    out.blocks.push_back(std::move(T));
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Maps between families.

namespace {

void require_common(const LiftingProblem& X, const LiftingProblem& Y, const ModuleMap& f) {
  if (X.q.Bp != Y.q.Bp || X.q.B != Y.q.B) throw Error("families over different extensions");
  if (f.mat.cols() != X.N.ngens() || f.mat.rows() != Y.N.ngens()) throw Error("map does not match the families");
  if (!is_well_defined(ModuleMap{X.N, Y.N, f.mat})) throw Error("map of families is not well defined");
}

SVec push_class(const LiftingProblem& X, const LiftingProblem& Y, const ModuleMap& f, const Matrix& c,
                const ExtSpace& space) {
  const Ring& B = *X.q.B;
  Matrix fJ = tensor_with_kernel(B.S(), f.mat, int(X.q.J.size()), X.NJ, Y.NJ);
  Matrix h = compose(B, fJ, c);
  h.tgt = Y.NJ.gen_deg();
  return space.coords(h);
}

SVec pull_class(const ChainMap& phi, int i, const LiftingProblem& Y, const Matrix& c, const ExtSpace& space) {
  Matrix h = pull_cochain(*Y.q.B, c, phi.phi[i]);
  h.tgt = Y.NJ.gen_deg();
  return space.coords(h);
}

}  // namespace

NaturalityCheck omap_check(const LiftingProblem& X, const LiftingProblem& Y, const ModuleMap& f) {
  require_common(X, Y, f);
  ExtSpace space(X.F, Y.NJ, 2, 0);
  ChainMap phi = lift_chain_map(*X.F, *Y.F, f.mat, 2);
  NaturalityCheck out;
  out.pushed = push_class(X, Y, f, obstruction(X).cocycle, space);
  out.pulled = pull_class(phi, 2, Y, obstruction(Y).cocycle, space);
  out.equal = out.pushed == out.pulled;
  return out;
}

SVec map_obstruction(const LiftingProblem& X, const LiftingProblem& Y, const ModuleMap& f, const Module& Xp,
                     const Module& Yp) {
  require_common(X, Y, f);
  if (!certify_lifting(X, Xp).ok() || !certify_lifting(Y, Yp).ok())
    throw Error("map_obstruction: modules are not liftings of the families");
  const Ring& Bp = *X.q.Bp;
  const Ring& B = *X.q.B;
  AugmentedGB rel(B, Y.N.gen_deg(), Y.N.pres().col, Y.N.pres().src, {});
  Matrix c{Xp.pres().src, Y.N.gen_deg(), {}};
  for (const auto& col : Xp.pres().col) {
    Vec y = apply(Bp, f.mat, col);
    auto w = rel.lift(B.nf(y));
    if (!w) throw Error("map_obstruction: f is not a map of the closed fibres");
    c.col.push_back(Bp.nf(Bp.S().vsub(y, apply(Bp, Yp.pres(), *w))));
  }
  ExtSpace space(X.F, Y.NJ, 1, 0);
  return space.coords(kernel_part(Y, c));
}

DifferenceCheck omap_difference(const LiftingProblem& X, const LiftingProblem& Y, const ModuleMap& f, const Module& Xp,
                                const Module& Yp, const SVec& xi, const SVec& zeta) {
  const Field& k = X.q.B->field();
  DifferenceCheck out;
  out.moved = svec_sub(k, map_obstruction(X, Y, f, torsor_act(X, Xp, xi), torsor_act(Y, Yp, zeta)),
                       map_obstruction(X, Y, f, Xp, Yp));
  ExtSpace space(X.F, Y.NJ, 1, 0);
  ChainMap phi = lift_chain_map(*X.F, *Y.F, f.mat, 1);
  out.predicted = svec_sub(k, push_class(X, Y, f, X.ext1->element(xi), space),
                           pull_class(phi, 1, Y, Y.ext1->element(zeta), space));
  out.equal = out.moved == out.predicted;
  return out;
}

VanishingReport ext_vanishing_report(const ApproxTriple& t, const HullTriple& h) {
  VanishingReport rep;
  auto entry = [&](const std::string& name, int i, const Module& X, const Module& Y) {
    VanishingEntry e{name, true, 0};
    if (!X.is_zero() && !Y.is_zero()) {
      ExtModule E = ext_module(i, X, Y);
      e.finite = E.finite;
      e.dim = E.finite ? E.total : -1;
    }
    rep.entries.push_back(e);
    return e.zero();
  };
  rep.ext1_N_Mp = entry("Ext1(N,M')", 1, t.N, h.Mp);
  rep.ext1_L_N = entry("Ext1(L,N)", 1, t.L, t.N);
  entry("Hom(N,M')", 0, t.N, h.Mp);
  entry("Hom(L,N)", 0, t.L, t.N);
  entry("Ext2(N,M)", 2, t.N, t.M);
  entry("Ext2(L',N)", 2, h.Lp, t.N);
  const RingPtr& A = t.N.ring();
  Module R = Module::free(A, {0});
  const int d = krull_dim(A);
  rep.grade = d + 1;
  for (int i = 0; i <= d; ++i) {
    ExtModule E = ext_module(i, t.N, R);
    if (!E.finite || E.total != 0) {
      rep.grade = i;
      break;
    }
  }
  rep.L_zero = t.L.is_zero();
  rep.L_free = rep.L_zero || prune(t.L).M.pres().cols() == 0;
  return rep;
}

}  // namespace cmdef
