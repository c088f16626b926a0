#include "cmdef/resolve.hpp"

#include <algorithm>
#include <sstream>

namespace cmdef {

RingPtr ambient_ring(const Ring& A) { return make_ring(A.S_ptr(), {}); }

namespace {

Vec drop_component(const Vec& v, int p) {
  Vec out;
  for (const auto& t : v) {
    if (t.comp == p) continue;
    out.push_back({t.m, t.comp > p ? t.comp - 1 : t.comp, t.c});
  }
  return out;
}

// Removes the unit entry u = (d[i])_{p,q} together with e_q in F[i+1] and e_p in F[i].
// `aug` holds vectors of F[0] to be rewritten alongside when i == 0.
void cancel_unit(const Ring& A, FreeComplex& C, int i, int p, int q, Scalar u, std::vector<Vec>* aug,
                 std::vector<Vec>* basis) {
  const PolyRing& S = A.S();
  const Field& k = S.field();
  Matrix& di = C.d[i];
  const Vec cq = di.col[q];
  Scalar iu = k.inv(u);
  auto clear = [&](Vec& v) {
    Poly c = S.entry(v, p);
    if (c.empty()) return;
    v = A.nf(S.vsub(v, S.vmul(S.scale(iu, c), cq)));
  };
  for (int j = 0; j < di.cols(); ++j)
    if (j != q) clear(di.col[j]);
  if (aug)
    for (auto& v : *aug) clear(v);
  di.col.erase(di.col.begin() + q);
  di.src.erase(di.src.begin() + q);
  for (auto& v : di.col) v = drop_component(v, p);
  di.tgt.erase(di.tgt.begin() + p);
  if (aug)
    for (auto& v : *aug) v = drop_component(v, p);
  if (basis) basis->erase(basis->begin() + p);
  if (i + 1 < C.length()) {
    Matrix& dn = C.d[i + 1];
    for (auto& v : dn.col) v = drop_component(v, q);
    dn.tgt.erase(dn.tgt.begin() + q);
  }
  if (i > 0) {
    Matrix& dp = C.d[i - 1];
    dp.col.erase(dp.col.begin() + p);
    dp.src.erase(dp.src.begin() + p);
  }
  C.F[i + 1].erase(C.F[i + 1].begin() + q);
  C.F[i].erase(C.F[i].begin() + p);
}

bool find_unit(const Matrix& m, int& p, int& q, Scalar& u) {
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& t : m.col[j])
      if (t.m.mask == 0) {
        p = t.comp;
        q = j;
        u = t.c;
        return true;
      }
  return false;
}

void minimalize_in_place(FreeComplex& C, std::vector<Vec>* aug, std::vector<Vec>* basis) {
  const Ring& A = *C.ring;
  for (int i = 0; i < C.length(); ++i) {
    int p, q;
    Scalar u;
    while (find_unit(C.d[i], p, q, u)) cancel_unit(A, C, i, p, q, u, i == 0 ? aug : nullptr, i == 0 ? basis : nullptr);
  }
  while (!C.d.empty() && C.d.back().cols() == 0) {
    C.d.pop_back();
    C.F.pop_back();
  }
}

}  // namespace

FreeResolution resolve(const Module& M, int steps) {
  if (steps < 1) throw Error("resolution step bound must be at least 1");
  const Ring& A = M.A();
  Pruned p = prune(M);
  FreeResolution r;
  r.ring = M.ring();
  r.M = p.M;
  r.input = M;
  r.to_min = p.to_min;
  r.from_min = p.from_min;
  r.F.push_back(p.M.gen_deg());
  if (p.M.pres().cols() == 0) return r;
  r.d.push_back(p.M.pres());
  r.F.push_back(p.M.pres().src);
  while (r.length() < steps) {
    Matrix s = syzygy_matrix(A, r.d.back());
    if (s.cols() == 0) return r;
    r.F.push_back(s.src);
    r.d.push_back(std::move(s));
  }
  if (A.is_polynomial_ring())
    r.truncated = syzygy_matrix(A, r.d.back()).cols() > 0;
  else
    r.truncated = true;
  return r;
}

FreeResolution resolve_ambient(const Module& M) {
  RingPtr P = ambient_ring(M.A());
  return resolve(restrict_scalars(M, P), M.S().nvars() + 1);
}

FreeComplex minimalize(const FreeComplex& C) {
  FreeComplex out = C;
  minimalize_in_place(out, nullptr, nullptr);
  return out;
}

FreeResolution minimalize(const FreeResolution& r) {
  FreeResolution out = r;
  std::vector<Vec> aug = r.to_min.col, basis = r.from_min.col;
  minimalize_in_place(out, &aug, &basis);
  out.to_min = Matrix{r.to_min.src, out.F[0], aug};
  out.from_min = Matrix{out.F[0], r.from_min.tgt, basis};
  out.M = Module(out.ring, out.length() ? out.d[0] : Matrix{{}, out.F[0], {}});
  out.minimal = true;
  return out;
}

FreeComplex koszul_complex(const RingPtr& A, const std::vector<Poly>& f) {
  const PolyRing& S = A->S();
  const int n = static_cast<int>(f.size());
  if (n > 20) throw LimitError("Koszul complex on more than 20 elements");
  std::vector<int> fdeg;
  for (const auto& g : f) {
    if (g.empty() || !S.is_homogeneous(g)) throw Error("Koszul complex needs nonzero homogeneous elements");
    fdeg.push_back(S.degree(g));
  }
  // Basis of K_p: p-subsets as bitmasks in increasing numeric order.
  std::vector<std::vector<unsigned>> sets(n + 1);
  for (unsigned s = 0; s < (1u << n); ++s) sets[__builtin_popcount(s)].push_back(s);
  FreeComplex C;
  C.ring = A;
  for (int p = 0; p <= n; ++p) {
    std::vector<int> degs;
    for (unsigned s : sets[p]) {
      int d = 0;
      for (int j = 0; j < n; ++j)
        if (s >> j & 1) d += fdeg[j];
      degs.push_back(d);
    }
    C.F.push_back(degs);
  }
  for (int p = 1; p <= n; ++p) {
    std::map<unsigned, int> pos;
    for (std::size_t i = 0; i < sets[p - 1].size(); ++i) pos[sets[p - 1][i]] = int(i);
    Matrix m{C.F[p], C.F[p - 1], {}};
    for (unsigned s : sets[p]) {
      Vec v;
      int sign_pos = 0;
      for (int j = 0; j < n; ++j) {
        if (!(s >> j & 1)) continue;
        Poly c = sign_pos % 2 ? S.neg(f[j]) : f[j];
        v = S.vadd(v, S.from_poly(c, pos[s & ~(1u << j)]));
        ++sign_pos;
      }
      m.col.push_back(A->nf(v));
    }
    C.d.push_back(std::move(m));
  }
  return C;
}

Submodule complex_homology(const FreeComplex& C, int i) {
  const RingPtr& A = C.ring;
  auto free = [&](int j) { return Module::free(A, j >= 0 && j < int(C.F.size()) ? C.F[j] : std::vector<int>{}); };
  Module Fi = free(i);
  ModuleMap in{free(i + 1), Fi, i < C.length() ? C.d[i] : zero_matrix({}, Fi.gen_deg())};
  ModuleMap out{Fi, free(i - 1), i > 0 ? C.d[i - 1] : zero_matrix(Fi.gen_deg(), {})};
  return homology(in, out);
}

int first_irregular(const RingPtr& A, const std::vector<Poly>& f) {
  for (std::size_t j = 1; j <= f.size(); ++j) {
    std::vector<Poly> prefix(f.begin(), f.begin() + j);
    if (!complex_homology(koszul_complex(A, prefix), 1).M.is_zero()) return int(j);
  }
  return 0;
}

int BettiTable::total(int i) const {
  int t = 0;
  for (const auto& [k, v] : b)
    if (k.first == i) t += v;
  return t;
}

int BettiTable::max_index() const {
  int m = -1;
  for (const auto& [k, v] : b) m = std::max(m, k.first);
  return m;
}

std::string BettiTable::to_string() const {
  int n = max_index();
  if (n < 0) return "total:\n";
  int rlo = INT_MAX, rhi = INT_MIN;
  for (const auto& [k, v] : b) {
    rlo = std::min(rlo, k.second - k.first);
    rhi = std::max(rhi, k.second - k.first);
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{""}, tot{"total:"};
  for (int i = 0; i <= n; ++i) {
    head.push_back(std::to_string(i));
    tot.push_back(std::to_string(total(i)));
  }
  rows.push_back(head);
  rows.push_back(tot);
  for (int r = rlo; r <= rhi; ++r) {
    std::vector<std::string> row{std::to_string(r) + ":"};
    for (int i = 0; i <= n; ++i) {
      auto it = b.find({i, i + r});
      row.push_back(it == b.end() ? "." : std::to_string(it->second));
    }
    rows.push_back(row);
  }
  std::vector<std::size_t> w(n + 2, 0);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) w[j] = std::max(w[j], row[j].size());
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ' ';
      os << std::string(w[j] - row[j].size(), ' ') << row[j];
    }
    os << '\n';
  }
  return os.str();
}

BettiTable betti(const FreeComplex& C) {
  BettiTable t;
  for (std::size_t i = 0; i < C.F.size(); ++i)
    for (int d : C.F[i]) ++t.b[{int(i), d}];
  return t;
}

Module syzygy_module(const FreeResolution& r, int i) {
  if (i < 0) throw Error("syzygy index must be non-negative");
  if (i == 0) return r.M;
  if (i < r.length()) return Module(r.ring, r.d[i]);
  if (r.truncated) throw Error("syzygy index " + std::to_string(i) + " lies beyond the computed resolution");
  if (i == r.length()) return Module::free(r.ring, r.F[i]);
  return Module::free(r.ring, {});
}

Module syzygy_module(const Module& M, int i) { return syzygy_module(resolve(M, i + 1), i); }

bool squares_to_zero(const FreeComplex& C) {
  for (int i = 0; i + 1 < C.length(); ++i)
    if (!is_zero_matrix(*C.ring, compose(*C.ring, C.d[i], C.d[i + 1]))) return false;
  return true;
}

namespace {

DMat degree_matrix(const Ring& A, const ModuleGB& src, const ModuleGB& tgt, const Matrix& f, int d) {
  const auto& basis = src.basis(d);
  const PolyRing& S = A.S();
  std::vector<SVec> cols;
  for (const auto& [m, c] : basis) cols.push_back(tgt.coords(S.vmul_term(S.field().one(), m, f.col[c]), d));
  return dmat_from_columns(tgt.dim(d), cols);
}

}  // namespace

DMat degree_matrix(const Ring& A, const Matrix& f, int d) {
  ModuleGB src(A, f.src, {}), tgt(A, f.tgt, {});
  return degree_matrix(A, src, tgt, f, d);
}

ExactnessReport certify_exact(const FreeComplex& C, int lo, int hi, const Module* M, bool check_last) {
  const Ring& A = *C.ring;
  const Field& k = A.field();
  ExactnessReport rep;
  rep.lo = lo;
  rep.hi = hi;
  std::vector<std::unique_ptr<ModuleGB>> gbs;
  for (const auto& degs : C.F) gbs.push_back(std::make_unique<ModuleGB>(A, degs, std::vector<Vec>{}));
  for (int d = lo; d <= hi && rep.exact; ++d) {
    std::vector<int> rk(C.length(), 0);
    for (int i = 0; i < C.length(); ++i) {
      if (gbs[i + 1]->dim(d) == 0 || gbs[i]->dim(d) == 0) continue;
      rk[i] = rank(k, degree_matrix(A, *gbs[i + 1], *gbs[i], C.d[i], d));
    }
    if (M && !C.F.empty()) {
      int coker = gbs[0]->dim(d) - (C.length() ? rk[0] : 0);
      if (coker != M->gb().dim(d)) {
        rep.exact = false;
        rep.failure = "H_0 differs from the module in degree " + std::to_string(d);
      }
    }
    int top = check_last ? C.length() : C.length() - 1;
    for (int i = 1; i <= top && rep.exact; ++i) {
      int ker = gbs[i]->dim(d) - rk[i - 1];
      int im = i < C.length() ? rk[i] : 0;
      if (ker != im) {
        rep.exact = false;
        rep.failure = "H_" + std::to_string(i) + " nonzero in degree " + std::to_string(d);
      }
    }
  }
  return rep;
}

ExactnessReport certify_exact(const FreeResolution& r, int window) {
  int lo = INT_MAX;
  for (int d : r.F[0]) lo = std::min(lo, d);
  if (lo == INT_MAX) lo = 0;
  return certify_exact(r, lo, lo + window, &r.M, !r.truncated);
}

}  // namespace cmdef
