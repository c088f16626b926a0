#include "cmdef/cmapprox.hpp"

#include <climits>
#include <map>
#include <mutex>
#include <random>

namespace cmdef {

namespace {

Module compute_canonical(const RingPtr& A) {
  if (!is_cohen_macaulay(A)) throw Error("canonical module: the ring " + A->describe() + " is not Cohen-Macaulay");
  const PolyRing& S = A->S();
  int sigma = 0;
  for (int w : S.degrees()) sigma += w;
  FreeResolution r = resolve_ambient(Module::free(A, {0}));
  const int c = r.length();
  if (c == 0) return Module::free(A, {sigma});
  Matrix t = transpose(S, r.d[c - 1]);
  for (auto& x : t.src) x += sigma;
  for (auto& x : t.tgt) x += sigma;
  return prune(Module(A, t)).M;
}

// Degrees of a matrix between twisted modules: X(s) has generator degrees shifted by -s.
Matrix twisted(Matrix m, int s) {
  for (auto& x : m.src) x -= s;
  for (auto& x : m.tgt) x -= s;
  return m;
}

int min_gen_degree(const Module& M) {
  int lo = INT_MAX;
  for (int d : M.gen_deg()) lo = std::min(lo, d);
  return lo;
}

// 0 -> X_0 -> X_1 -> ... -> X_n -> 0 along the given maps.
bool exact_chain(const std::vector<ModuleMap>& maps) {
  for (const auto& f : maps)
    if (!is_well_defined(f)) return false;
  if (!is_injective(maps.front()) || !is_surjective(maps.back())) return false;
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    if (!is_zero_map(compose(maps[i + 1], maps[i]))) return false;
    if (!homology(maps[i], maps[i + 1]).M.is_zero()) return false;
  }
  return true;
}

Matrix lift_all(const ModuleMap& through, const Matrix& m, const char* what) {
  Matrix out{m.src, through.src.gen_deg(), {}};
  for (const auto& c : m.col) {
    auto x = lift_through(through, c);
    if (!x) throw Error(std::string("internal: ") + what);
    out.col.push_back(*x);
  }
  return out;
}

// cover: F (x) omega -> M. An omega summand splits off exactly when the composite with the
// omega cover of M, a matrix over End(omega) = A, has a unit entry.
bool splits_omega_summand(const Matrix& cover, const std::vector<int>& F, const Module& M) {
  if (F.empty() || M.is_zero()) return false;
  const Ring& A = M.A();
  const PolyRing& S = A.S();
  OmegaCover cov = omega_cover(M);
  const Module& w = canonical_module(M.ring());
  const int nw = w.ngens();
  Matrix comp = compose(A, cov.inc.mat, cover);
  for (std::size_t j = 0; j < F.size(); ++j)
    for (int i = 0; i < cov.n(); ++i) {
      if (cov.F[i] != F[j]) continue;
      Vec block = S.restrict_components(comp.col[j * nw], i * nw, (i + 1) * nw);
      if (!w.nf(block).empty()) return true;
    }
  return false;
}

ApproxTriple trivial_approximation(const Module& N) {
  ApproxTriple t;
  t.N = N;
  t.M = N;
  t.L = Module::free(N.ring(), {});
  t.rho = ModuleMap{t.L, N, zero_matrix({}, N.gen_deg())};
  t.pi = identity_map(N);
  t.minimal = true;
  t.Lres.omega = canonical_module(N.ring());
  t.Lres.aug = zero_matrix({}, {});
  return t;
}

// Dualizes 0 -> Syz_c -> G_{c-1} -> ... -> G_0 into omega and identifies the cokernel with N.
ApproxTriple from_syzygy(const FreeResolution& G, int c, const Module& N) {
  const RingPtr& A = N.ring();
  if (G.length() < c) throw Error("internal: resolution shorter than the codimension");
  Module w = canonical_module(A);
  Module Z = syzygy_module(G, c);
  HomModule hm = module_hom(Z, w);
  const Module& M = hm.H;
  ModuleMap top = hom_free_map(G.d[c - 1], w);
  Matrix r0 = lift_all(ModuleMap{M, top.tgt, hm.incl}, top.mat, "restriction leaves Hom(Syz, omega)");
  ModuleMap rho0{top.src, M, r0};
  Submodule L = image(rho0);
  Pruned Np = prune(cokernel(rho0));
  if (Np.M.is_zero() != N.is_zero()) throw Error("internal: approximation has the wrong cokernel");
  const int s = N.is_zero() ? 0 : min_gen_degree(Np.M) - min_gen_degree(N);
  auto iso = find_isomorphism(twist(Np.M, s), N);
  if (!iso) throw Error("internal: cokernel of the approximation is not isomorphic to the input");

  ApproxTriple t;
  t.N = N;
  t.M = twist(M, s);
  t.L = twist(L.M, s);
  t.rho = ModuleMap{t.L, t.M, twisted(L.incl, s)};
  t.pi = ModuleMap{t.M, N, compose(N.A(), iso->mat, twisted(Np.to_min, s))};
  OmegaResolution& R = t.Lres;
  R.omega = w;
  for (int j = 0; j < c; ++j) {
    std::vector<int> f;
    for (int a : G.F[j]) f.push_back(-a - s);
    R.F.push_back(f);
  }
  for (int j = 0; j + 1 < c; ++j) {
    Matrix d = transpose(A->S(), G.d[j]);
    d.src = R.F[j];
    d.tgt = R.F[j + 1];
    R.D.push_back(d);
  }
  R.aug = twisted(lift_all(ModuleMap{L.M, M, L.incl}, r0, "cover misses the image"), s);
  t.minimal = !has_common_omega_summand(t);
  return t;
}

}  // namespace

Module canonical_module(const RingPtr& A) {
  static std::mutex mu;
  static std::map<const Ring*, std::pair<std::weak_ptr<const Ring>, Module>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(A.get());
    if (it != cache.end() && it->second.first.lock() == A) return it->second.second;
  }
  Module w = compute_canonical(A);
  std::lock_guard<std::mutex> lock(mu);
  cache[A.get()] = {A, w};
  return w;
}

Module OmegaResolution::term(int j) const { return tensor_free(F.at(j), omega); }

ModuleMap OmegaResolution::map(int j) const { return tensor_free_map(D.at(j), omega); }

OmegaResolution omega_resolution(const Module& L) {
  const RingPtr& A = L.ring();
  OmegaResolution r;
  r.omega = canonical_module(A);
  if (L.is_zero()) {
    r.aug = zero_matrix({}, L.gen_deg());
    return r;
  }
  const Module& w = r.omega;
  HomModule hq = module_hom(w, L);
  if (hq.H.is_zero()) throw Error("no finite omega resolution: Hom(omega, L) is zero");
  FreeResolution R = resolve(hq.H, krull_dim(A) + 1);
  if (R.truncated)
    throw Error("no finite omega resolution: Hom(omega, L) has infinite projective dimension");
  const int len = R.length() + 1;
  for (int j = 0; j < len; ++j) r.F.push_back(R.F[len - 1 - j]);
  for (int j = 0; j + 1 < len; ++j) r.D.push_back(R.d[len - 2 - j]);
  const int nw = w.ngens();
  r.aug = Matrix{r.term(len - 1).gen_deg(), L.gen_deg(), {}};
  for (std::size_t j = 0; j < R.F[0].size(); ++j) {
    Matrix h = hq.as_matrix(R.from_min.col[j]);
    for (int g = 0; g < nw; ++g) r.aug.col.push_back(h.col[g]);
  }
  if (!certify(r, L)) throw Error("no finite omega resolution: omega (x) Hom(omega, L) does not resolve L");
  return r;
}

bool certify(const OmegaResolution& r, const Module& L) {
  if (r.length() == 0) return L.is_zero();
  std::vector<ModuleMap> maps;
  for (int j = 0; j + 1 < r.length(); ++j) maps.push_back(r.map(j));
  maps.push_back(ModuleMap{r.term(r.length() - 1), L, r.aug});
  return exact_chain(maps);
}

bool has_common_omega_summand(const ApproxTriple& t) {
  if (t.Lres.length() == 0) return false;
  return splits_omega_summand(compose(t.M.A(), t.rho.mat, t.Lres.aug), t.Lres.F.back(), t.M);
}

Certificate certify(const ApproxTriple& t) {
  Certificate c;
  c.exact = is_exact(ShortExact{t.rho, t.pi});
  c.mcm = t.M.is_zero() ? t.N.is_zero() : is_mcm(t.M);
  c.fid = certify(t.Lres, t.L);
  if (!c.exact) c.failure = "0 -> L -> M -> N -> 0 is not exact";
  else if (!c.mcm) c.failure = "M is not maximal Cohen-Macaulay";
  else if (!c.fid) c.failure = "the omega resolution of L is not exact";
  return c;
}

Certificate certify(const HullTriple& t) {
  Certificate c;
  c.exact = is_exact(ShortExact{t.iota, t.eta});
  c.mcm = t.Mp.is_zero() || is_mcm(t.Mp);
  c.fid = certify(t.Lres, t.Lp);
  if (!c.exact) c.failure = "0 -> N -> L' -> M' -> 0 is not exact";
  else if (!c.mcm) c.failure = "M' is not maximal Cohen-Macaulay";
  else if (!c.fid) c.failure = "the omega resolution of L' is not exact";
  return c;
}

ApproxTriple approx_from_resolution(const FreeResolution& G, int c, const Module& N) {
  if (c < 1) throw Error("approx_from_resolution: codimension must be positive");
  return from_syzygy(G, c, N);
}

std::optional<ModuleMap> find_isomorphism(const Module& X, const Module& Y, int tries) {
  if (X.is_zero() || Y.is_zero()) {
    if (X.is_zero() && Y.is_zero()) return ModuleMap{X, Y, zero_matrix(X.gen_deg(), Y.gen_deg())};
    return std::nullopt;
  }
  std::vector<ModuleMap> basis = hom_maps(X, Y);
  if (basis.empty()) return std::nullopt;
  const Ring& A = X.A();
  const Field& k = A.field();
  std::mt19937 rng(20251);
  for (int t = 0; t < tries; ++t) {
    Matrix f = zero_matrix(X.gen_deg(), Y.gen_deg());
    f.col.assign(X.ngens(), Vec{});
    for (const auto& b : basis) f = add(A, f, scale(A, k.from_int(1 + std::int64_t(rng() % 997)), b.mat));
    ModuleMap m{X, Y, f};
    if (is_surjective(m) && is_injective(m)) return m;
  }
  return std::nullopt;
}

ApproxTriple mcm_approx_cm(const Module& N, int c) {
  const RingPtr& A = N.ring();
  if (!is_cohen_macaulay(A)) throw Error("mcm_approx_cm: the ring " + A->describe() + " is not Cohen-Macaulay");
  const int dA = krull_dim(A);
  if (c < 0 || N.is_zero() || krull_dim(N) != dA - c || depth(N) != dA - c)
    throw Error("mcm_approx_cm: module is not Cohen-Macaulay of codimension " + std::to_string(c));
  if (c == 0) return trivial_approximation(N);
  Module Nd = ext_dual(N, c);
  return from_syzygy(resolve(Nd, c + 1), c, N);
}

ApproxTriple approx_residue_field_dim2(const RingPtr& A) {
  if (krull_dim(A) != 2)
    throw Error("approx_residue_field_dim2: the ring has dimension " + std::to_string(krull_dim(A)) + ", not 2");
  if (!is_cohen_macaulay(A)) throw Error("approx_residue_field_dim2: the ring is not Cohen-Macaulay");
  Module k = residue_field_module(A);
  return from_syzygy(resolve(k, 3), 2, k);
}

OmegaCover omega_cover(const Module& M) {
  if (!is_mcm(M)) throw Error("omega_cover: module is not maximal Cohen-Macaulay");
  const PolyRing& S = M.S();
  Module w = canonical_module(M.ring());
  HomModule hm = module_hom(M, w);
  OmegaCover cov;
  cov.M = M;
  for (int d : hm.H.gen_deg()) cov.F.push_back(-d);
  cov.W = tensor_free(cov.F, w);
  const int nw = w.ngens();
  Matrix inc{M.gen_deg(), cov.W.gen_deg(), std::vector<Vec>(M.ngens())};
  for (int j = 0; j < hm.H.ngens(); ++j) {
    Matrix h = hm.as_matrix(S.from_poly(S.constant(1), j));
    for (int i = 0; i < M.ngens(); ++i) inc.col[i] = S.vadd(inc.col[i], S.shift_components(h.col[i], j * nw));
  }
  cov.inc = ModuleMap{M, cov.W, inc};
  Pruned p = prune(cokernel(cov.inc));
  cov.Mp = p.M;
  cov.proj = ModuleMap{cov.W, cov.Mp, p.to_min};
  return cov;
}

HullTriple fid_hull(const ApproxTriple& t) {
  const RingPtr& A = t.N.ring();
  const PolyRing& S = A->S();
  OmegaCover cov = omega_cover(t.M);
  const int nN = t.N.ngens(), nW = cov.W.ngens();
  Matrix pres;
  pres.tgt = t.N.gen_deg();
  pres.tgt.insert(pres.tgt.end(), cov.W.gen_deg().begin(), cov.W.gen_deg().end());
  pres.src = t.N.pres().src;
  pres.col = t.N.pres().col;
  for (int l = 0; l < cov.W.pres().cols(); ++l) {
    pres.col.push_back(S.shift_components(cov.W.pres().col[l], nN));
    pres.src.push_back(cov.W.pres().src[l]);
  }
  for (int i = 0; i < t.M.ngens(); ++i) {
    pres.col.push_back(S.vadd(t.pi.mat.col[i], S.shift_components(S.vneg(cov.inc.mat.col[i]), nN)));
    pres.src.push_back(t.M.gen_deg()[i]);
  }
  Module Lp0(A, pres);
  Matrix iota{t.N.gen_deg(), pres.tgt, {}};
  for (int g = 0; g < nN; ++g) iota.col.push_back(S.from_poly(S.constant(1), g));
  Matrix eta{pres.tgt, cov.Mp.gen_deg(), std::vector<Vec>(nN)};
  for (int j = 0; j < nW; ++j) eta.col.push_back(cov.proj.mat.col[j]);
  Pruned p = prune(Lp0);
  HullTriple h;
  h.N = t.N;
  h.Lp = p.M;
  h.Mp = cov.Mp;
  h.iota = ModuleMap{t.N, h.Lp, compose(*A, p.to_min, iota)};
  h.eta = ModuleMap{h.Lp, h.Mp, compose(*A, eta, p.from_min)};
  h.Lres = omega_resolution(h.Lp);
  return h;
}

QPrime q_prime(const Module& Lp, const std::optional<OmegaResolution>& cert) {
  OmegaResolution r;
  if (cert) {
    if (!certify(*cert, Lp)) throw Error("q_prime: the given omega resolution does not resolve L'");
    r = *cert;
  } else {
    r = omega_resolution(Lp);
  }
  QPrime q;
  q.Q = module_hom(r.omega, Lp).H;
  q.res.ring = Lp.ring();
  const int len = r.length();
  for (int i = 0; i < len; ++i) q.res.F.push_back(r.F[len - 1 - i]);
  for (int i = 0; i + 1 < len; ++i) q.res.d.push_back(r.D[len - 2 - i]);
  return q;
}

Fundamental fundamental_module(const RingPtr& A) {
  if (!is_cohen_macaulay(A)) throw Error("fundamental_module: the ring is not Cohen-Macaulay");
  if (krull_dim(A) != 2)
    throw Error("fundamental_module: the ring has dimension " + std::to_string(krull_dim(A)) + ", not 2");
  Module m = maximal_ideal_module(A);
  Module w = canonical_module(A);
  ExtModule e = ext_module(1, m, w);
  if (!e.finite || e.total != 1)
    throw Error("fundamental_module: Ext^1(m, omega) has dimension " +
                (e.finite ? std::to_string(e.total) : std::string("infinite")) + ", expected 1");
  int e0 = e.lo;
  while (e.dim_in_degree(e0) == 0) ++e0;
  ExtSpace space(resolution_ptr(m, 2), twist(w, e0), 1, 0);
  if (space.dim() != 1) throw Error("internal: degree-" + std::to_string(e0) + " piece of Ext^1(m, omega) is not a line");
  ShortExact s = extension_from_class(space, SVec{A->field().one()});
  Pruned p = prune(s.alpha.tgt);
  Fundamental f;
  f.E = p.M;
  f.seq.alpha = ModuleMap{s.alpha.src, f.E, compose(*A, p.to_min, s.alpha.mat)};
  f.seq.beta = ModuleMap{f.E, s.beta.tgt, compose(*A, s.beta.mat, p.from_min)};
  f.twist = e0;
  return f;
}

}  // namespace cmdef
