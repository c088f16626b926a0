#include "support.hpp"

#include <map>

namespace testing_support {

PolyRingPtr poly_ring(const std::vector<std::string>& names, std::vector<int> degs, Field k) {
  if (degs.empty()) degs.assign(names.size(), 1);
  return std::make_shared<const PolyRing>(k, names, degs);
}

RingPtr ring(const PolyRingPtr& S, const std::vector<std::string>& ideal) {
  std::vector<Poly> I;
  for (const auto& s : ideal) I.push_back(S->parse(s));
  return make_ring(S, I);
}

RingPtr veronese(int m, Field k) {
  std::vector<std::string> names;
  for (int i = 0; i <= m; ++i) names.push_back("z" + std::to_string(i));
  auto S = poly_ring(names, {}, k);
  std::vector<std::string> I;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      I.push_back(names[i] + "*" + names[j + 1] + " - " + names[i + 1] + "*" + names[j]);
  return ring(S, I);
}

Matrix mat(const Ring& A, const std::vector<std::vector<std::string>>& rows, std::vector<int> tgt, std::vector<int> src) {
  std::vector<std::vector<Poly>> e;
  for (const auto& r : rows) {
    e.emplace_back();
    for (const auto& s : r) e.back().push_back(A.S().parse(s));
  }
  return matrix_from_entries(A.S(), e, tgt, src);
}

Module cyclic(const RingPtr& A, const std::vector<std::string>& gens) {
  std::vector<std::vector<std::string>> row(1);
  std::vector<int> src;
  for (const auto& g : gens) {
    row[0].push_back(g);
    src.push_back(A->S().degree(A->S().parse(g)));
  }
  return Module(A, mat(*A, row, {0}, src));
}

Module residue_field(const RingPtr& A) {
  std::vector<std::string> v = A->S().names();
  return cyclic(A, v);
}

Module maximal_ideal(const RingPtr& A) {
  const PolyRing& S = A->S();
  std::vector<int> degs = S.degrees();
  Matrix row{degs, {0}, {}};
  for (int i = 0; i < S.nvars(); ++i) row.col.push_back(S.from_poly(S.variable(i), 0));
  return image(ModuleMap{Module::free(A, degs), Module::free(A, {0}), row}).M;
}

int brute_hf(const Module& M, int d) {
  const Ring& A = M.A();
  const PolyRing& S = A.S();
  // Coordinates in the free module S^r at degree d: (component, monomial).
  std::map<std::pair<int, std::array<std::uint16_t, kMaxVars>>, int> idx;
  for (int c = 0; c < M.ngens(); ++c)
    for (const auto& m : monomials_of_degree(S, d - M.gen_deg()[c])) idx[{c, m.e}] = int(idx.size());
  int n = int(idx.size());
  if (n == 0) return 0;
  std::vector<SVec> rels;
  auto add_vec = [&](const Vec& v) {
    SVec x(n, Scalar{0, 1});
    for (const auto& t : v) x[idx.at({t.comp, t.m.e})] = t.c;
    rels.push_back(x);
  };
  std::vector<Vec> gens = M.pres().col;
  std::vector<int> gdeg = M.pres().src;
  for (int c = 0; c < M.ngens(); ++c)
    for (const auto& f : A.ideal()) {
      gens.push_back(S.from_poly(f, c));
      gdeg.push_back(M.gen_deg()[c] + S.degree(f));
    }
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (const auto& m : monomials_of_degree(S, d - gdeg[j])) add_vec(S.vmul_term(S.field().one(), m, gens[j]));
  if (rels.empty()) return n;
  return n - rank(S.field(), dmat_from_columns(n, rels));
}

int brute_hom_dim(const Module& M, const Module& N, int d) {
  const PolyRing& S = M.S();
  const Field& k = S.field();
  std::vector<int> off;
  int n = 0;
  for (int a : M.gen_deg()) {
    off.push_back(n);
    n += N.gb().dim(a + d);
  }
  if (n == 0) return 0;
  std::vector<SVec> rows;
  for (int l = 0; l < M.pres().cols(); ++l) {
    int e = M.pres().src[l] + d;
    int m = N.gb().dim(e);
    if (m == 0) continue;
    // Column u: image of the relation when generator images are the u-th unknown basis vector.
    std::vector<SVec> cols;
    for (int j = 0; j < M.ngens(); ++j) {
      Poly c = S.entry(M.pres().col[l], j);
      for (int u = 0; u < N.gb().dim(M.gen_deg()[j] + d); ++u) {
        SVec unit(N.gb().dim(M.gen_deg()[j] + d), Scalar{0, 1});
        unit[u] = k.one();
        Vec x = N.gb().element(unit, M.gen_deg()[j] + d);
        cols.push_back(N.gb().coords(S.vmul(c, x), e));
      }
    }
    DMat blk = dmat_from_columns(m, cols);
    for (int i = 0; i < blk.r; ++i) {
      SVec row(n);
      for (int c = 0; c < n; ++c) row[c] = blk.at(i, c);
      rows.push_back(row);
    }
  }
  if (rows.empty()) return n;
  return n - rank(k, dmat_transpose(dmat_from_columns(n, rows)));
}

bool same_hf(const Module& a, const Module& b, int lo, int hi) {
  for (int d = lo; d <= hi; ++d)
    if (a.gb().dim(d) != b.gb().dim(d)) return false;
  return true;
}

}  // namespace testing_support
