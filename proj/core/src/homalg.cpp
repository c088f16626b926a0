#include "cmdef/homalg.hpp"

#include "cmdef/cmapprox.hpp"

namespace cmdef {

ResolutionPtr resolution_ptr(const Module& M, int steps) { return std::make_shared<const FreeResolution>(resolve(M, steps)); }

Module hom_from_free(const std::vector<int>& F, const Module& N) {
  const PolyRing& S = N.S();
  const int nN = N.ngens();
  Matrix pres;
  for (int a : F)
    for (int g = 0; g < nN; ++g) pres.tgt.push_back(N.gen_deg()[g] - a);
  for (std::size_t j = 0; j < F.size(); ++j)
    for (int l = 0; l < N.pres().cols(); ++l) {
      pres.col.push_back(S.shift_components(N.pres().col[l], int(j) * nN));
      pres.src.push_back(N.pres().src[l] - F[j]);
    }
  return Module(N.ring(), pres);
}

Module tensor_free(const std::vector<int>& F, const Module& N) {
  const PolyRing& S = N.S();
  const int nN = N.ngens();
  Matrix pres;
  for (int a : F)
    for (int g = 0; g < nN; ++g) pres.tgt.push_back(N.gen_deg()[g] + a);
  for (std::size_t j = 0; j < F.size(); ++j)
    for (int l = 0; l < N.pres().cols(); ++l) {
      pres.col.push_back(S.shift_components(N.pres().col[l], int(j) * nN));
      pres.src.push_back(N.pres().src[l] + F[j]);
    }
  return Module(N.ring(), pres);
}

namespace {

void require_steps(const FreeResolution& F, int need, const char* what) {
  if (F.length() < need && F.truncated)
    throw Error(std::string(what) + " needs a resolution with at least " + std::to_string(need) + " steps");
}

const std::vector<int>& level(const FreeResolution& F, int i) {
  static const std::vector<int> empty;
  return i >= 0 && i < int(F.F.size()) ? F.F[i] : empty;
}

// Entries of d[l] grouped by row: rows[j] lists (column, entry).
std::vector<std::vector<std::pair<int, Poly>>> rows_of(const Matrix& m) {
  std::vector<std::vector<std::pair<int, Poly>>> rows(m.rows());
  for (int c = 0; c < m.cols(); ++c) {
    const Vec& v = m.col[c];
    std::size_t a = 0;
    while (a < v.size()) {
      std::size_t b = a;
      Poly p;
      while (b < v.size() && v[b].comp == v[a].comp) {
        p.push_back({v[b].m, v[b].c});
        ++b;
      }
      rows[v[a].comp].push_back({c, std::move(p)});
      a = b;
    }
  }
  return rows;
}

// Matrix of Hom(d, N): Hom(F_l, N) -> Hom(F_{l+1}, N) on the E_{jg} generators.
Matrix hom_dual_map(const PolyRing& S, const Matrix& d, int nN, const Module& P, const Module& Q) {
  auto rows = rows_of(d);
  Matrix m{P.gen_deg(), Q.gen_deg(), {}};
  for (int j = 0; j < d.rows(); ++j)
    for (int g = 0; g < nN; ++g) {
      Vec v;
      for (const auto& [c, p] : rows[j]) v = S.vadd(v, S.from_poly(p, c * nN + g));
      m.col.push_back(v);
    }
  return m;
}

Matrix tensor_matrix(const PolyRing& S, const Matrix& d, int nN, const Module& P, const Module& Q) {
  Matrix m{P.gen_deg(), Q.gen_deg(), {}};
  for (const auto& c : d.col)
    for (int g = 0; g < nN; ++g) {
      Vec v;
      for (const auto& t : c) v.push_back({t.m, t.comp * nN + g, t.c});
      S.sort_vec(v);
      m.col.push_back(v);
    }
  return m;
}

template <class Out>
void fill_dims(const Module& E, int window, Out& out) {
  int kd = krull_dim(E);
  out.finite = kd <= 0;
  if (kd < 0) {
    out.total = 0;
    return;
  }
  HilbertSeries hs = hilbert_series(E);
  if (out.finite) {
    auto d = hs.expand(int(hs.num.size()) + 1);
    std::size_t first = 0;
    while (first < d.size() && d[first] == 0) ++first;
    while (!d.empty() && d.back() == 0) d.pop_back();
    out.lo = hs.shift + int(first);
    out.dims.assign(d.begin() + first, d.end());
    out.total = 0;
    for (auto x : out.dims) out.total += x;
  } else {
    out.lo = hs.shift;
    out.dims = hs.expand(window + 1);
  }
}

}  // namespace

ChainMap lift_chain_map(const FreeResolution& F, const FreeResolution& G, const Matrix& f, int upto) {
  const Ring& B = *G.ring;
  ChainMap out;
  Matrix phi0{F.F[0], G.F[0], {}};
  for (const auto& x : F.from_min.col) phi0.col.push_back(apply(B, G.to_min, apply(B, f, x)));
  out.phi.push_back(std::move(phi0));
  for (int i = 0; i < upto; ++i) {
    const std::vector<int>& src = level(F, i + 1);
    Matrix next{src, level(G, i + 1), {}};
    if (!src.empty()) {
      if (G.length() <= i && G.truncated) throw Error("comparison map needs a longer target resolution");
      std::unique_ptr<AugmentedGB> aug;
      if (G.length() > i) aug = std::make_unique<AugmentedGB>(B, G.F[i], G.d[i].col, G.F[i + 1], std::vector<Vec>{});
      for (const auto& c : F.d[i].col) {
        Vec y = apply(B, out.phi[i], c);
        if (y.empty()) {
          next.col.push_back({});
          continue;
        }
        std::optional<Vec> z = aug ? aug->lift(y) : std::nullopt;
        if (!z) throw Error("comparison map does not lift; the given matrix is not a module map");
        next.col.push_back(*z);
      }
    }
    out.phi.push_back(std::move(next));
  }
  return out;
}

ModuleMap hom_free_map(const Matrix& d, const Module& N) {
  Module P = hom_from_free(d.tgt, N), Q = hom_from_free(d.src, N);
  return {P, Q, hom_dual_map(N.S(), d, N.ngens(), P, Q)};
}

ModuleMap tensor_free_map(const Matrix& d, const Module& N) {
  Module P = tensor_free(d.src, N), Q = tensor_free(d.tgt, N);
  return {P, Q, tensor_matrix(N.S(), d, N.ngens(), P, Q)};
}

ExtSpace::ExtSpace(ResolutionPtr F, Module N, int i, int e) : F_(std::move(F)), N_(std::move(N)), i_(i), e_(e) {
  if (i < 0) throw Error("Ext index must be non-negative");
  require_steps(*F_, i + 1, "Ext");
  const Field& k = N_.A().field();
  offsets_.resize(i + 2);
  sizes_.assign(i + 2, 0);
  for (int l = std::max(0, i - 1); l <= i + 1; ++l) {
    const auto& degs = level(*F_, l);
    for (int a : degs) {
      offsets_[l].push_back(sizes_[l]);
      sizes_[l] += N_.gb().dim(a + e_);
    }
  }
  const int n = sizes_[i];
  next_ = coboundary(i);
  std::vector<SVec> Z = kernel_basis(k, next_);
  std::vector<SVec> B;
  DMat prev(n, 0);
  if (i >= 1) {
    prev = coboundary(i - 1);
    for (int c = 0; c < prev.c; ++c) B.push_back(dmat_column(prev, c));
  }
  reps_ = quotient_basis(k, n, Z, B).reps;
  std::vector<SVec> cols = reps_;
  cols.insert(cols.end(), B.begin(), B.end());
  solver_ = std::make_unique<LinearSolver>(k, dmat_from_columns(n, cols));
  prev_ = std::make_unique<LinearSolver>(k, prev);
  for (const auto& r : reps_) basis_.push_back(unflatten(r, i));
}

int ExtSpace::cochain_dim(int i) const { return i >= 0 && i < int(sizes_.size()) ? sizes_[i] : 0; }

DMat ExtSpace::coboundary(int l) const {
  const PolyRing& S = N_.S();
  const int n = cochain_dim(l), m = cochain_dim(l + 1);
  DMat out(m, n);
  if (l >= F_->length() || n == 0 || m == 0) return out;
  auto rows = rows_of(F_->d[l]);
  const auto& src = level(*F_, l);
  const auto& tgt = level(*F_, l + 1);
  for (std::size_t j = 0; j < src.size(); ++j) {
    const auto& basis = N_.gb().basis(src[j] + e_);
    for (std::size_t u = 0; u < basis.size(); ++u) {
      Vec x{{basis[u].first, basis[u].second, S.field().one()}};
      int col = offsets_[l][j] + int(u);
      for (const auto& [c, p] : rows[j]) {
        SVec y = N_.gb().coords(S.vmul(p, x), tgt[c] + e_);
        for (std::size_t r = 0; r < y.size(); ++r) out.at(offsets_[l + 1][c] + int(r), col) = y[r];
      }
    }
  }
  return out;
}

SVec ExtSpace::flatten(const Matrix& c, int l) const {
  const auto& degs = level(*F_, l);
  if (c.cols() != int(degs.size())) throw Error("cochain has the wrong number of columns");
  SVec v;
  v.reserve(cochain_dim(l));
  for (std::size_t j = 0; j < degs.size(); ++j) {
    SVec y = N_.gb().coords(c.col[j], degs[j] + e_);
    v.insert(v.end(), y.begin(), y.end());
  }
  return v;
}

Matrix ExtSpace::unflatten(const SVec& v, int l) const {
  const auto& degs = level(*F_, l);
  Matrix c{degs, N_.gen_deg(), {}};
  for (auto& t : c.tgt) t -= e_;
  for (std::size_t j = 0; j < degs.size(); ++j) {
    int d = degs[j] + e_;
    SVec y(v.begin() + offsets_[l][j], v.begin() + offsets_[l][j] + N_.gb().dim(d));
    c.col.push_back(N_.gb().element(y, d));
  }
  return c;
}

bool ExtSpace::is_cocycle(const Matrix& c) const {
  if (next_.r == 0) return true;
  return svec_is_zero(dmat_apply(N_.A().field(), next_, flatten(c, i_)));
}

SVec ExtSpace::coords(const Matrix& c) const {
  if (!is_cocycle(c)) throw Error("Ext^" + std::to_string(i_) + ": cochain is not a cocycle");
  auto x = solver_->solve(flatten(c, i_));
  if (!x) throw Error("internal: cocycle outside the span of the Ext basis");
  return SVec(x->begin(), x->begin() + dim());
}

Matrix ExtSpace::element(const SVec& x) const {
  SVec v(cochain_dim(i_), Scalar{0, 1});
  const Field& k = N_.A().field();
  for (int b = 0; b < dim(); ++b)
    if (!x[b].is_zero()) v = svec_add(k, v, svec_scale(k, x[b], reps_[b]));
  return unflatten(v, i_);
}

std::optional<Matrix> ExtSpace::bounding_cochain(const Matrix& c) const {
  SVec v = flatten(c, i_);
  if (i_ == 0) {
    if (!svec_is_zero(v)) return std::nullopt;
    return Matrix{{}, c.tgt, {}};
  }
  auto x = prev_->solve(v);
  if (!x) return std::nullopt;
  return unflatten(*x, i_ - 1);
}

Matrix ExtSpace::zero_cochain() const { return unflatten(SVec(cochain_dim(i_), Scalar{0, 1}), i_); }

std::int64_t ExtModule::dim_in_degree(int d) const {
  if (d < lo || d >= lo + int(dims.size())) {
    if (finite) return 0;
    throw Error("degree outside the computed window");
  }
  return dims[d - lo];
}

ExtModule ext_module(int i, const FreeResolution& F, const Module& N, int window) {
  if (i < 0) throw Error("Ext index must be non-negative");
  require_steps(F, i + 1, "Ext");
  const PolyRing& S = N.S();
  const int nN = N.ngens();
  Module Pm = hom_from_free(level(F, i - 1), N), P = hom_from_free(level(F, i), N),
         Pp = hom_from_free(level(F, i + 1), N);
  Matrix in = i >= 1 && i - 1 < F.length() ? hom_dual_map(S, F.d[i - 1], nN, Pm, P)
                                            : zero_matrix(Pm.gen_deg(), P.gen_deg());
  Matrix out = i < F.length() ? hom_dual_map(S, F.d[i], nN, P, Pp) : zero_matrix(P.gen_deg(), {});
  Submodule H = homology(ModuleMap{Pm, P, in}, ModuleMap{P, Pp, out});
  ExtModule r;
  r.i = i;
  r.E = prune(H.M).M;
  fill_dims(r.E, window, r);
  return r;
}

ExtModule ext_module(int i, const Module& M, const Module& N, int window) {
  return ext_module(i, resolve(M, i + 1), N, window);
}

std::int64_t ext_dim(int i, const Module& M, const Module& N) {
  ExtModule e = ext_module(i, M, N);
  if (!e.finite) throw Error("Ext^" + std::to_string(i) + " has positive Krull dimension; no total dimension");
  return e.total;
}

TorModule tor(int i, const Module& M, const Module& N, int window) {
  if (i < 0) throw Error("Tor index must be non-negative");
  FreeResolution F = resolve(M, i + 1);
  const PolyRing& S = N.S();
  const int nN = N.ngens();
  Module Tp = tensor_free(level(F, i + 1), N), T = tensor_free(level(F, i), N), Tm = tensor_free(level(F, i - 1), N);
  Matrix in = i < F.length() ? tensor_matrix(S, F.d[i], nN, Tp, T) : zero_matrix({}, T.gen_deg());
  Matrix out = i >= 1 && i - 1 < F.length() ? tensor_matrix(S, F.d[i - 1], nN, T, Tm) : zero_matrix(T.gen_deg(), Tm.gen_deg());
  Submodule H = homology(ModuleMap{Tp, T, in}, ModuleMap{T, Tm, out});
  TorModule r;
  r.i = i;
  r.T = prune(H.M).M;
  fill_dims(r.T, window, r);
  return r;
}

DMat ext_contra(const ModuleMap& f, const ExtSpace& from, const ExtSpace& to) {
  if (from.index() != to.index() || from.degree() != to.degree()) throw Error("ext_contra: spaces of different index");
  const Ring& A = to.target().A();
  ChainMap phi = lift_chain_map(to.resolution(), from.resolution(), f.mat, from.index());
  std::vector<SVec> cols;
  for (const auto& c : from.basis()) {
    Matrix g = compose(A, c, phi.phi[from.index()]);
    g.tgt = c.tgt;
    cols.push_back(to.coords(g));
  }
  return dmat_from_columns(to.dim(), cols);
}

DMat ext_cov(const ModuleMap& g, const ExtSpace& from, const ExtSpace& to) {
  if (from.index() != to.index() || from.degree() != to.degree()) throw Error("ext_cov: spaces of different index");
  const Ring& A = to.target().A();
  std::vector<SVec> cols;
  for (const auto& c : from.basis()) {
    Matrix h = compose(A, g.mat, c);
    h.tgt = to.target().gen_deg();
    for (auto& t : h.tgt) t -= to.degree();
    cols.push_back(to.coords(h));
  }
  return dmat_from_columns(to.dim(), cols);
}

Module ext_dual(const Module& N, int c) {
  const RingPtr& A = N.ring();
  int dA = krull_dim(A);
  if (N.is_zero() || krull_dim(N) != dA - c || depth(N) != dA - c)
    throw Error("ext_dual: module is not Cohen-Macaulay of codimension " + std::to_string(c));
  return ext_module(c, N, canonical_module(A)).E;
}

Module omega_dual(const Module& M) {
  if (!is_mcm(M)) throw Error("omega_dual: module is not maximal Cohen-Macaulay");
  return module_hom(M, canonical_module(M.ring())).H;
}

bool is_exact(const ShortExact& s) {
  if (!is_well_defined(s.alpha) || !is_well_defined(s.beta)) return false;
  if (!is_zero_map(compose(s.beta, s.alpha))) return false;
  return is_injective(s.alpha) && is_surjective(s.beta) && homology(s.alpha, s.beta).M.is_zero();
}

bool is_exact(const FourTerm& s) {
  for (const auto* f : {&s.alpha, &s.beta, &s.gamma})
    if (!is_well_defined(*f)) return false;
  if (!is_zero_map(compose(s.beta, s.alpha)) || !is_zero_map(compose(s.gamma, s.beta))) return false;
  return is_injective(s.alpha) && is_surjective(s.gamma) && homology(s.alpha, s.beta).M.is_zero() &&
         homology(s.beta, s.gamma).M.is_zero();
}

namespace {

// Columns of c after d, each lifted through f.
Matrix lift_columns(const ModuleMap& f, const Matrix& c, const Matrix& d, const char* where) {
  const Ring& A = f.src.A();
  AugmentedGB aug(A, f.tgt.gen_deg(), f.mat.col, f.src.gen_deg(), f.tgt.pres().col);
  Matrix out{d.src, f.src.gen_deg(), {}};
  for (const auto& col : d.col) {
    Vec y = apply(A, c, col);
    auto z = aug.lift(y);
    if (!z) throw Error(std::string("sequence is not exact at ") + where);
    out.col.push_back(*z);
  }
  return out;
}

// F0 -> target of g lifting the augmentation of F through g.
Matrix lift_augmentation(const ModuleMap& g, const FreeResolution& F) {
  const Ring& A = g.src.A();
  AugmentedGB aug(A, g.tgt.gen_deg(), g.mat.col, g.src.gen_deg(), g.tgt.pres().col);
  Matrix c0{F.F[0], g.src.gen_deg(), {}};
  for (const auto& x : F.from_min.col) {
    auto z = aug.lift(x);
    if (!z) throw Error("sequence is not exact at the right end");
    c0.col.push_back(*z);
  }
  return c0;
}

}  // namespace

SVec three_term_class(const ShortExact& s, const ExtSpace& space) {
  if (space.index() != 1 || space.degree() != 0) throw Error("three_term_class needs a degree-0 Ext^1 space");
  const FreeResolution& F = space.resolution();
  if (F.length() == 0) return SVec(space.dim(), Scalar{0, 1});
  Matrix c0 = lift_augmentation(s.beta, F);
  Matrix c1 = lift_columns(s.alpha, c0, F.d[0], "the middle");
  c1.tgt = space.target().gen_deg();
  return space.coords(c1);
}

SVec four_term_class(const FourTerm& s, const ExtSpace& space) {
  if (space.index() != 2 || space.degree() != 0) throw Error("four_term_class needs a degree-0 Ext^2 space");
  const FreeResolution& F = space.resolution();
  if (F.length() < 2) return SVec(space.dim(), Scalar{0, 1});
  Matrix c0 = lift_augmentation(s.gamma, F);
  Matrix c1 = lift_columns(s.beta, c0, F.d[0], "Y");
  Matrix c2 = lift_columns(s.alpha, c1, F.d[1], "X");
  c2.tgt = space.target().gen_deg();
  return space.coords(c2);
}

ShortExact extension_from_class(const ExtSpace& space, const SVec& coords) {
  if (space.index() != 1 || space.degree() != 0) throw Error("extension_from_class needs a degree-0 Ext^1 class");
  const FreeResolution& F = space.resolution();
  const Module& L = space.target();
  const PolyRing& S = L.S();
  const int nL = L.ngens();
  Matrix z = space.element(coords);
  Matrix pres;
  pres.tgt = L.gen_deg();
  pres.tgt.insert(pres.tgt.end(), F.F[0].begin(), F.F[0].end());
  pres.src = L.pres().src;
  pres.col = L.pres().col;
  for (int l = 0; F.length() > 0 && l < F.d[0].cols(); ++l) {
    pres.col.push_back(S.vadd(S.vneg(z.col[l]), S.shift_components(F.d[0].col[l], nL)));
    pres.src.push_back(F.F[1][l]);
  }
  Module E(L.ring(), pres);
  Matrix a{L.gen_deg(), E.gen_deg(), {}};
  for (int g = 0; g < nL; ++g) a.col.push_back(S.from_poly(S.constant(1), g));
  Matrix b{E.gen_deg(), F.input.gen_deg(), std::vector<Vec>(nL)};
  for (const auto& c : F.from_min.col) b.col.push_back(c);
  return {ModuleMap{L, E, a}, ModuleMap{E, F.input, b}};
}

}  // namespace cmdef
