#include "cmdef/mf.hpp"

#include <climits>
#include <deque>

namespace cmdef {

namespace {

Matrix shifted(Matrix m, int s) {
  for (auto& x : m.src) x += s;
  for (auto& x : m.tgt) x += s;
  return m;
}

void require_char_not_two(const Field& k, const char* what) {
  if (k.characteristic() == 2) throw Error(std::string(what) + ": Char k ≠ 2 is required");
}

Matrix reduce(const Ring& A, Matrix m) {
  for (auto& c : m.col) c = A.nf(c);
  return m;
}

std::vector<int> plus(std::vector<int> v, int s) {
  for (auto& x : v) x += s;
  return v;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FreeResolution periodic(const RingPtr& ring, const std::vector<Matrix>& d) {
  FreeResolution r;
  r.ring = ring;
  r.F.push_back(d[0].tgt);
  for (const auto& m : d) {
    r.F.push_back(m.src);
    r.d.push_back(reduce(*ring, m));
    if (has_unit_entry(r.d.back())) r.minimal = false;
  }
  r.M = Module(ring, r.d[0]);
  r.input = r.M;
  r.to_min = identity_matrix(ring->S(), r.F[0]);
  r.from_min = r.to_min;
  r.truncated = true;
  return r;
}

}  // namespace

bool is_matrix_factorization(const MatrixFactorization& mf) {
  const int n = mf.phi.rows();
  if (mf.phi.cols() != n || mf.psi.rows() != n || mf.psi.cols() != n) return false;
  const Ring& Q = *mf.Q;
  const PolyRing& S = Q.S();
  for (const Matrix& prod : {compose(Q, mf.phi, mf.psi), compose(Q, mf.psi, mf.phi)})
    for (int j = 0; j < n; ++j)
      if (!S.vsub(prod.col[j], S.from_poly(mf.f, j)).empty()) return false;
  return true;
}

MatrixFactorization factorization_from_entries(const RingPtr& Q, const Poly& f,
                                               const std::vector<std::vector<Poly>>& phi,
                                               const std::vector<std::vector<Poly>>& psi) {
  const PolyRing& S = Q->S();
  const int n = static_cast<int>(phi.size());
  auto square = [n](const std::vector<std::vector<Poly>>& m) {
    if (int(m.size()) != n) return false;
    for (const auto& r : m)
      if (int(r.size()) != n) return false;
    return true;
  };
  if (n == 0 || !square(phi) || !square(psi)) throw Error("matrix factorization: phi and psi must be square of equal size");
  if (!S.is_homogeneous(f) || f.empty()) throw Error("matrix factorization: f must be a nonzero homogeneous polynomial");
  const int e = S.degree(f);
  // Nodes 0..n-1: degrees of F0; n..2n-1: degrees of F1. Edge (u, v, w): deg v = deg u + w.
  std::vector<std::vector<std::pair<int, int>>> adj(2 * n);
  auto edge = [&](int u, int v, int w) {
    adj[u].push_back({v, w});
    adj[v].push_back({u, -w});
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!phi[i][j].empty()) {
        if (!S.is_homogeneous(phi[i][j])) throw Error("matrix factorization: phi has an inhomogeneous entry");
        edge(i, n + j, S.degree(phi[i][j]));
      }
      if (!psi[i][j].empty()) {
        if (!S.is_homogeneous(psi[i][j])) throw Error("matrix factorization: psi has an inhomogeneous entry");
        edge(j, n + i, e - S.degree(psi[i][j]));
      }
    }
  std::vector<int> deg(2 * n, INT_MIN);
  for (int s = 0; s < 2 * n; ++s) {
    if (deg[s] != INT_MIN) continue;
    deg[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (auto [v, w] : adj[u]) {
        if (deg[v] == INT_MIN) {
          deg[v] = deg[u] + w;
          q.push_back(v);
        } else if (deg[v] != deg[u] + w) {
          throw Error("matrix factorization: entry degrees admit no consistent grading");
        }
      }
    }
  }
  std::vector<int> a(deg.begin(), deg.begin() + n), b(deg.begin() + n, deg.end());
  MatrixFactorization mf;
  mf.Q = Q;
  mf.f = f;
  mf.phi = matrix_from_entries(S, phi, a, b);
  mf.psi = matrix_from_entries(S, psi, b, plus(a, e));
  if (!is_matrix_factorization(mf)) throw Error("matrix factorization: phi psi and psi phi are not f times the identity");
  return mf;
}

Poly hypersurface_equation(const Ring& B) {
  if (B.gb().size() != 1) throw Error("the ring " + B.describe() + " is not a hypersurface quotient of a polynomial ring");
  return B.gb()[0];
}

MatrixFactorization mf_from_module(const Module& N) {
  const Ring& B = N.A();
  Poly f = hypersurface_equation(B);
  if (!is_mcm(N)) throw Error("mf_from_module: module is not maximal Cohen-Macaulay");
  FreeResolution R = resolve_ambient(N);
  if (R.length() != 1 || R.F[0].size() != R.F[1].size())
    throw Error("internal: resolution over the ambient ring is not square of length 1");
  const Ring& Q = *R.ring;
  const PolyRing& S = Q.S();
  MatrixFactorization mf;
  mf.Q = R.ring;
  mf.f = f;
  mf.phi = R.d[0];
  AugmentedGB aug(Q, R.F[0], mf.phi.col, R.F[1], {});
  const int e = S.degree(f);
  mf.psi = Matrix{plus(R.F[0], e), R.F[1], {}};
  for (std::size_t j = 0; j < R.F[0].size(); ++j) {
    auto x = aug.lift(S.from_poly(f, int(j)));
    if (!x) throw Error("internal: f e_j is not in the image of phi");
    mf.psi.col.push_back(*x);
  }
  if (!is_matrix_factorization(mf)) throw Error("internal: extracted pair is not a matrix factorization");
  if (!same_hilbert_series(Module(mf.Q, mf.phi), N)) throw Error("internal: coker phi differs from the input");
  return mf;
}

Poly transport(const PolyRing& to, const Poly& p) {
  Poly out;
  for (const auto& t : p) {
    Monomial m = t.m;
    to.fix(m);
    out.push_back({m, t.c});
  }
  to.sort_poly(out);
  return out;
}

Matrix transport(const PolyRing& to, const Matrix& m, int scale) {
  Matrix out{m.src, m.tgt, {}};
  for (auto& x : out.src) x *= scale;
  for (auto& x : out.tgt) x *= scale;
  for (const auto& c : m.col) {
    Vec v;
    for (const auto& t : c) {
      Monomial mm = t.m;
      to.fix(mm);
      v.push_back({mm, t.comp, t.c});
    }
    to.sort_vec(v);
    out.col.push_back(v);
  }
  return out;
}

Module transport(const Module& M, const RingPtr& to, int scale) { return Module(to, transport(to->S(), M.pres(), scale)); }

KnorrerRings knorrer_rings(const RingPtr& Q, const Poly& f) {
  const PolyRing& S = Q->S();
  if (!Q->is_polynomial_ring()) throw Error("knorrer: the base must be a polynomial ring");
  if (f.empty() || !S.is_homogeneous(f)) throw Error("knorrer: f must be a nonzero homogeneous polynomial");
  if (S.nvars() + 1 > kMaxVars) throw Error("knorrer: too many variables");
  require_char_not_two(S.field(), "knorrer");
  KnorrerRings R;
  R.Q = Q;
  const int e = S.degree(f);
  R.scale = e % 2 ? 2 : 1;
  std::vector<std::string> names = S.names();
  std::string t = "t";
  for (int i = 0; S.var_index(t) >= 0; ++i) t = "t" + std::to_string(i);
  names.push_back(t);
  std::vector<int> degs = S.degrees();
  for (auto& d : degs) d *= R.scale;
  degs.push_back(e * R.scale / 2);
  std::vector<int> weights = S.order_weights();
  if (!weights.empty()) {
    for (auto& w : weights) w *= R.scale;
    weights.push_back(degs.back());
  }
  auto S2 = std::make_shared<const PolyRing>(S.field(), names, degs, S.order(), weights);
  R.t = S.nvars();
  R.Qt = make_ring(S2, {});
  R.f = transport(*S2, f);
  R.F = S2->add(R.f, S2->pow(S2->variable(R.t), 2));
  R.A = make_ring(S2, {R.F});
  R.B = quotient_ring(R.A, {S2->variable(R.t)});
  return R;
}

MatrixFactorization knorrer(const MatrixFactorization& mf, const KnorrerRings& R) {
  if (!is_matrix_factorization(mf)) throw Error("knorrer: input is not a matrix factorization");
  require_char_not_two(mf.Q->field(), "knorrer");
  const PolyRing& S = R.Qt->S();
  const int n = mf.n();
  const int e = S.degree(R.F), h = e / 2;
  Matrix phi = transport(S, mf.phi, R.scale), psi = transport(S, mf.psi, R.scale);
  const std::vector<int>& a = phi.tgt;
  const std::vector<int>& b = phi.src;
  Poly t = S.variable(R.t), mt = S.neg(t);
  MatrixFactorization out;
  out.Q = R.Qt;
  out.f = R.F;
  out.phi = Matrix{concat(b, plus(a, h)), concat(a, plus(b, -h)), {}};
  for (int j = 0; j < n; ++j) out.phi.col.push_back(S.vadd(phi.col[j], S.from_poly(mt, n + j)));
  for (int j = 0; j < n; ++j) out.phi.col.push_back(S.vadd(S.from_poly(t, j), S.shift_components(psi.col[j], n)));
  out.psi = Matrix{concat(plus(a, e), plus(b, h)), concat(b, plus(a, h)), {}};
  for (int j = 0; j < n; ++j) out.psi.col.push_back(S.vadd(psi.col[j], S.from_poly(t, n + j)));
  for (int j = 0; j < n; ++j) out.psi.col.push_back(S.vadd(S.from_poly(mt, j), S.shift_components(phi.col[j], n)));
  if (!is_matrix_factorization(out)) throw Error("internal: Knorrer blocks fail the factorization identity");
  return out;
}

MatrixFactorization knorrer(const MatrixFactorization& mf) { return knorrer(mf, knorrer_rings(mf.Q, mf.f)); }

FreeResolution eisenbud_resolution(const MatrixFactorization& mf, int steps) {
  if (steps < 2) throw Error("eisenbud_resolution: needs at least 2 steps");
  if (!is_matrix_factorization(mf)) throw Error("eisenbud_resolution: input is not a matrix factorization");
  RingPtr B = quotient_ring(mf.Q, {mf.f});
  const int e = mf.Q->S().degree(mf.f);
  std::vector<Matrix> d;
  for (int i = 0; i < steps; ++i) d.push_back(i % 2 == 0 ? shifted(mf.phi, e * (i / 2)) : shifted(mf.psi, e * (i / 2)));
  return periodic(B, d);
}

FreeResolution knorrer_resolution(const MatrixFactorization& mf, const KnorrerRings& R, int steps) {
  if (steps < 2) throw Error("knorrer_resolution: needs at least 2 steps");
  MatrixFactorization K = knorrer(mf, R);
  const PolyRing& S = R.Qt->S();
  const int n = mf.n();
  const int e = S.degree(R.F), h = e / 2;
  Matrix phi = transport(S, mf.phi, R.scale);
  Matrix d0{concat(plus(phi.tgt, h), phi.src), phi.tgt, {}};
  for (int j = 0; j < n; ++j) d0.col.push_back(S.from_poly(S.variable(R.t), j));
  for (int j = 0; j < n; ++j) d0.col.push_back(phi.col[j]);
  std::vector<Matrix> d{d0};
  for (int i = 1; i < steps; ++i)
    d.push_back(i % 2 ? shifted(K.phi, h + e * ((i - 1) / 2)) : shifted(K.psi, h + e * ((i - 2) / 2)));
  return periodic(R.A, d);
}

KnorrerApprox knorrer_approx(const Module& N) {
  hypersurface_equation(N.A());
  require_char_not_two(N.A().field(), "knorrer_approx");
  Module Nd = omega_dual(N);
  KnorrerApprox out;
  out.dual = mf_from_module(Nd);
  out.rings = knorrer_rings(out.dual.Q, out.dual.f);
  out.res = knorrer_resolution(out.dual, out.rings, 3);
  out.N = transport(N, out.rings.B, out.rings.scale);
  out.triple = approx_from_resolution(out.res, 1, restrict_scalars(out.N, out.rings.A));
  Pruned L = prune(out.triple.L);
  out.free_kernel = L.M.pres().cols() == 0;
  out.kernel_rank = L.M.ngens();
  return out;
}

MfStats mf_stats(const MatrixFactorization& mf) {
  if (!is_matrix_factorization(mf)) throw Error("mf_stats: input is not a matrix factorization");
  const PolyRing& S = mf.Q->S();
  MfStats st;
  st.n = mf.n();
  // Hilbert-Samuel multiplicity from the tangent cone in the standard grading.
  auto Sstd = std::make_shared<const PolyRing>(S.field(), S.names(), std::vector<int>(S.nvars(), 1));
  int ord = INT_MAX;
  for (const auto& t : mf.f) {
    int d = 0;
    for (int i = 0; i < S.nvars(); ++i) d += t.m.e[i];
    ord = std::min(ord, d);
  }
  Poly initial;
  for (const auto& t : mf.f) {
    int d = 0;
    for (int i = 0; i < S.nvars(); ++i) d += t.m.e[i];
    if (d == ord) initial.push_back(t);
  }
  RingPtr cone = make_ring(Sstd, {transport(*Sstd, initial)});
  st.e = multiplicity(Module::free(cone, {0}));
  RingPtr B = quotient_ring(mf.Q, {mf.f});
  if (krull_dim(B) == 0) {
    st.note = "B has dimension 0; rank is not defined";
  } else if (st.e.is_integer() && st.n % st.e.num == 0) {
    st.rank = static_cast<int>(st.n / st.e.num);
  } else {
    st.note = "n / e(B) = " + std::to_string(st.n) + "/" + st.e.to_string() +
              " is not an integer: B is not a domain or the factorization is not minimal";
  }
  return st;
}

}  // namespace cmdef
