#include "cmdef/module.hpp"

#include <algorithm>

namespace cmdef {

namespace {

void enumerate(const PolyRing& S, int var, int left, std::vector<int>& exps, std::vector<Monomial>& out) {
  if (var == S.nvars()) {
    if (left == 0) out.push_back(S.make(exps));
    return;
  }
  int w = S.degrees()[var];
  for (int e = left / w; e >= 0; --e) {
    exps[var] = e;
    enumerate(S, var + 1, left - e * w, exps, out);
  }
  exps[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const PolyRing& S, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  std::vector<int> exps(S.nvars(), 0);
  enumerate(S, 0, d, exps, out);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return S.cmp(a, b) > 0; });
  return out;
}

ModuleGB::ModuleGB(const Ring& A, const std::vector<int>& gen_deg, const std::vector<Vec>& rel)
    : S_(A.S()), gen_deg_(gen_deg) {
  gb_ = std::make_unique<GroebnerBasis>(S_, gen_deg_, A.ideal_multiples(int(gen_deg_.size())), rel);
  lead_ = gb_->leading_monomials();
}

const ModuleGB::Piece& ModuleGB::piece(int d) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = pieces_.find(d);
  if (it != pieces_.end()) return *it->second;
  auto p = std::make_unique<Piece>();
  for (std::size_t c = 0; c < gen_deg_.size(); ++c) {
    for (const auto& m : monomials_of_degree(S_, d - gen_deg_[c])) {
      bool standard = true;
      for (const auto& l : lead_[c])
        if (divides(l, m)) {
          standard = false;
          break;
        }
      if (!standard) continue;
      p->index[{int(c), m.e}] = int(p->basis.size());
      p->basis.push_back({m, int(c)});
    }
  }
  const Piece& ref = *p;
  pieces_[d] = std::move(p);
  return ref;
}

const std::vector<StdMono>& ModuleGB::basis(int d) const { return piece(d).basis; }

SVec ModuleGB::coords(const Vec& v, int d) const {
  const Piece& p = piece(d);
  SVec out(p.basis.size(), Scalar{0, 1});
  for (const auto& t : nf(v)) {
    auto it = p.index.find({t.comp, t.m.e});
    if (it == p.index.end()) throw Error("element is not homogeneous of degree " + std::to_string(d));
    out[it->second] = t.c;
  }
  return out;
}

Vec ModuleGB::element(const SVec& c, int d) const {
  const Piece& p = piece(d);
  Vec v;
  for (std::size_t i = 0; i < p.basis.size(); ++i)
    if (!c[i].is_zero()) v.push_back({p.basis[i].first, p.basis[i].second, c[i]});
  return v;
}

int ModuleGB::min_degree() const {
  int m = INT_MAX;
  for (int d : gen_deg_) m = std::min(m, d);
  return m;
}

Module::Module(RingPtr A, Matrix pres) : ring_(std::move(A)), pres_(std::move(pres)), st_(std::make_shared<State>()) {
  check_homogeneous(ring_->S(), pres_, "presentation");
  for (auto& c : pres_.col) c = ring_->nf(c);
}

Module Module::free(RingPtr A, std::vector<int> degs) { return Module(std::move(A), Matrix{{}, std::move(degs), {}}); }

const ModuleGB& Module::gb() const {
  std::call_once(st_->once, [&] { st_->gb = std::make_unique<ModuleGB>(*ring_, pres_.tgt, pres_.col); });
  return *st_->gb;
}

bool Module::is_zero() const {
  for (int c = 0; c < ngens(); ++c)
    if (!nf(S().from_poly(S().constant(1), c)).empty()) return false;
  return true;
}

ModuleMap identity_map(const Module& M) { return {M, M, identity_matrix(M.S(), M.gen_deg())}; }

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) { return {g.src, f.tgt, compose(f.src.A(), f.mat, g.mat)}; }

bool is_well_defined(const ModuleMap& f) {
  if (f.mat.src != f.src.gen_deg() || f.mat.tgt != f.tgt.gen_deg()) return false;
  for (const auto& r : f.src.pres().col)
    if (!f.tgt.nf(apply(f.src.A(), f.mat, r)).empty()) return false;
  return true;
}

bool is_zero_map(const ModuleMap& f) {
  for (const auto& c : f.mat.col)
    if (!f.tgt.nf(c).empty()) return false;
  return true;
}

AugmentedGB::AugmentedGB(const Ring& A, std::vector<int> F_deg, std::vector<Vec> g, std::vector<int> g_deg,
                         std::vector<Vec> rel, int max_degree)
    : A_(A), r_(int(F_deg.size())), g_deg_(std::move(g_deg)) {
  const PolyRing& S = A.S();
  std::vector<int> comp_deg = F_deg;
  comp_deg.insert(comp_deg.end(), g_deg_.begin(), g_deg_.end());
  std::vector<Vec> bg;
  for (std::size_t j = 0; j < g.size(); ++j) {
    Vec v = g[j];
    Vec tag = S.from_poly(S.constant(1), r_ + int(j));
    v.insert(v.end(), tag.begin(), tag.end());
    bg.push_back(std::move(v));
  }
  for (auto& v : rel) bg.push_back(std::move(v));
  auto im = A.ideal_multiples(0, int(comp_deg.size()));
  bg.insert(bg.end(), im.begin(), im.end());
  gb_ = std::make_unique<GroebnerBasis>(S, comp_deg, bg, std::vector<Vec>{}, ModuleOrder{}, max_degree);
}

std::optional<Vec> AugmentedGB::lift(const Vec& v) const {
  if (v.empty()) return Vec{};
  Vec r = gb_->reduce(v);
  for (const auto& t : r)
    if (t.comp < r_) return std::nullopt;
  const PolyRing& S = A_.S();
  return A_.nf(S.vneg(S.restrict_components(r, r_, r_ + int(g_deg_.size()))));
}

std::vector<Vec> AugmentedGB::syzygies() const {
  const PolyRing& S = A_.S();
  std::vector<Vec> syz;
  for (const auto& v : gb_->basis())
    if (v[0].comp >= r_) syz.push_back(S.restrict_components(v, r_, r_ + int(g_deg_.size())));
  return minimal_generators(A_, g_deg_, syz);
}

std::vector<Vec> minimal_generators(const Ring& A, const std::vector<int>& F_deg, const std::vector<Vec>& v,
                                    const std::vector<Vec>& extra_rel) {
  std::vector<Vec> bg = A.ideal_multiples(int(F_deg.size()));
  bg.insert(bg.end(), extra_rel.begin(), extra_rel.end());
  GroebnerBasis gb(A.S(), F_deg, bg, v);
  std::vector<Vec> out;
  for (int i : gb.minimal_gens()) out.push_back(A.nf(v[i]));
  return out;
}

Matrix syzygy_matrix(const Ring& A, const Matrix& m, const std::vector<Vec>& rel) {
  AugmentedGB aug(A, m.tgt, m.col, m.src, rel);
  Matrix s{{}, m.src, aug.syzygies()};
  for (const auto& c : s.col) s.src.push_back(GroebnerBasis::vec_degree(A.S(), m.src, c));
  return s;
}

Module subquotient(const RingPtr& A, const std::vector<int>& K_deg, const std::vector<Vec>& K, const std::vector<Vec>& R,
                   const std::vector<int>& F_deg) {
  AugmentedGB aug(*A, F_deg, K, K_deg, R);
  Matrix pres{{}, K_deg, aug.syzygies()};
  for (const auto& c : pres.col) pres.src.push_back(GroebnerBasis::vec_degree(A->S(), K_deg, c));
  return Module(A, pres);
}

Pruned prune(const Module& M) {
  const Ring& A = M.A();
  const PolyRing& S = A.S();
  const Field& k = S.field();
  std::vector<int> degs = M.gen_deg();
  std::vector<Vec> rels = minimal_generators(A, degs, M.pres().col);
  std::vector<Vec> expr;
  std::vector<int> cur;
  for (int c = 0; c < M.ngens(); ++c) {
    expr.push_back(S.from_poly(S.constant(1), c));
    cur.push_back(c);
  }
  bool trimmed = true;
  while (true) {
    int jj = -1, ii = -1;
    Scalar c{};
    for (std::size_t j = 0; j < rels.size() && jj < 0; ++j)
      for (const auto& t : rels[j])
        if (t.m.mask == 0) {
          jj = int(j);
          ii = t.comp;
          c = t.c;
          break;
        }
    if (jj < 0) {
      if (trimmed) break;
      rels = minimal_generators(A, degs, rels);
      trimmed = true;
      continue;
    }
    trimmed = false;
    const Vec rj = rels[jj];
    Scalar ic = k.inv(c);
    auto eliminate = [&](Vec& v) {
      Poly q = S.entry(v, ii);
      if (q.empty()) return;
      v = A.nf(S.vsub(v, S.vmul(S.scale(ic, q), rj)));
    };
    rels.erase(rels.begin() + jj);
    for (auto& v : rels) eliminate(v);
    for (auto& v : expr) eliminate(v);
    auto renumber = [&](Vec& v) {
      for (auto& t : v)
        if (t.comp > ii) --t.comp;
    };
    for (auto& v : rels) renumber(v);
    for (auto& v : expr) renumber(v);
    degs.erase(degs.begin() + ii);
    cur.erase(cur.begin() + ii);
    rels.erase(std::remove_if(rels.begin(), rels.end(), [](const Vec& v) { return v.empty(); }), rels.end());
  }
  Matrix pres{{}, degs, rels};
  for (const auto& r : rels) pres.src.push_back(GroebnerBasis::vec_degree(S, degs, r));
  Pruned out;
  out.M = Module(M.ring(), pres);
  out.to_min = Matrix{M.gen_deg(), degs, expr};
  out.from_min = Matrix{degs, M.gen_deg(), {}};
  for (int c : cur) out.from_min.col.push_back(S.from_poly(S.constant(1), c));
  return out;
}

Submodule kernel(const ModuleMap& f) {
  const Ring& A = f.src.A();
  AugmentedGB aug(A, f.tgt.gen_deg(), f.mat.col, f.src.gen_deg(), f.tgt.pres().col);
  std::vector<Vec> K = minimal_generators(A, f.src.gen_deg(), aug.syzygies(), f.src.pres().col);
  std::vector<int> K_deg;
  for (const auto& v : K) K_deg.push_back(GroebnerBasis::vec_degree(A.S(), f.src.gen_deg(), v));
  Submodule out;
  out.M = subquotient(f.src.ring(), K_deg, K, f.src.pres().col, f.src.gen_deg());
  out.incl = Matrix{K_deg, f.src.gen_deg(), K};
  return out;
}

Submodule image(const ModuleMap& f) {
  const Ring& A = f.src.A();
  std::vector<Vec> K, cols;
  std::vector<int> K_deg;
  for (std::size_t j = 0; j < f.mat.col.size(); ++j) cols.push_back(A.nf(f.mat.col[j]));
  GroebnerBasis gb(A.S(), f.tgt.gen_deg(), [&] {
    auto bg = A.ideal_multiples(f.tgt.ngens());
    bg.insert(bg.end(), f.tgt.pres().col.begin(), f.tgt.pres().col.end());
    return bg;
  }(), cols);
  std::vector<int> idx = gb.minimal_gens();
  std::sort(idx.begin(), idx.end());
  for (int j : idx) {
    K.push_back(cols[j]);
    K_deg.push_back(f.mat.src[j]);
  }
  Submodule out;
  out.M = subquotient(f.src.ring(), K_deg, K, f.tgt.pres().col, f.tgt.gen_deg());
  out.incl = Matrix{K_deg, f.tgt.gen_deg(), K};
  return out;
}

Module cokernel(const ModuleMap& f) { return Module(f.tgt.ring(), concat_columns(f.tgt.pres(), f.mat)); }

Submodule homology(const ModuleMap& f, const ModuleMap& g) {
  const Ring& A = g.src.A();
  AugmentedGB aug(A, g.tgt.gen_deg(), g.mat.col, g.src.gen_deg(), g.tgt.pres().col);
  std::vector<Vec> R = g.src.pres().col;
  for (const auto& c : f.mat.col) R.push_back(c);
  std::vector<Vec> K = minimal_generators(A, g.src.gen_deg(), aug.syzygies(), R);
  std::vector<int> K_deg;
  for (const auto& v : K) K_deg.push_back(GroebnerBasis::vec_degree(A.S(), g.src.gen_deg(), v));
  Submodule out;
  out.M = subquotient(g.src.ring(), K_deg, K, R, g.src.gen_deg());
  out.incl = Matrix{K_deg, g.src.gen_deg(), K};
  return out;
}

Module direct_sum(const std::vector<Module>& parts) {
  if (parts.empty()) throw Error("direct sum of no modules");
  Matrix m = parts[0].pres();
  for (std::size_t i = 1; i < parts.size(); ++i) m = block_diagonal(parts[0].S(), m, parts[i].pres());
  return Module(parts[0].ring(), m);
}

Module twist(const Module& M, int d) {
  Matrix m = M.pres();
  for (auto& x : m.src) x -= d;
  for (auto& x : m.tgt) x -= d;
  return Module(M.ring(), m);
}

Module tensor(const Module& M, const Module& N) {
  const PolyRing& S = M.S();
  const int r = M.ngens(), s = N.ngens();
  Matrix m;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) m.tgt.push_back(M.gen_deg()[i] + N.gen_deg()[j]);
  for (int l = 0; l < M.pres().cols(); ++l)
    for (int j = 0; j < s; ++j) {
      Vec v;
      for (const auto& t : M.pres().col[l]) v.push_back({t.m, t.comp * s + j, t.c});
      S.sort_vec(v);
      m.src.push_back(M.pres().src[l] + N.gen_deg()[j]);
      m.col.push_back(v);
    }
  for (int i = 0; i < r; ++i)
    for (int l = 0; l < N.pres().cols(); ++l) {
      Vec v;
      for (const auto& t : N.pres().col[l]) v.push_back({t.m, i * s + t.comp, t.c});
      S.sort_vec(v);
      m.src.push_back(M.gen_deg()[i] + N.pres().src[l]);
      m.col.push_back(v);
    }
  return Module(M.ring(), m);
}

Module change_ring(const Module& M, const RingPtr& B) {
  if (&B->S() != &M.S()) throw Error("change of rings needs a common ambient ring");
  return Module(B, M.pres());
}

ModuleMap change_ring(const ModuleMap& f, const RingPtr& B) {
  ModuleMap g{change_ring(f.src, B), change_ring(f.tgt, B), f.mat};
  for (auto& c : g.mat.col) c = B->nf(c);
  return g;
}

Module restrict_scalars(const Module& M, const RingPtr& A) {
  if (&A->S() != &M.S()) throw Error("restriction of scalars needs a common ambient ring");
  Matrix m = M.pres();
  for (const auto& v : M.A().ideal_multiples(M.ngens())) {
    m.col.push_back(v);
    m.src.push_back(GroebnerBasis::vec_degree(M.S(), m.tgt, v));
  }
  return Module(A, m);
}

bool is_surjective(const ModuleMap& f) { return cokernel(f).is_zero(); }

bool is_injective(const ModuleMap& f) {
  const Ring& A = f.src.A();
  AugmentedGB aug(A, f.tgt.gen_deg(), f.mat.col, f.src.gen_deg(), f.tgt.pres().col);
  for (const auto& v : aug.syzygies())
    if (!f.src.nf(v).empty()) return false;
  return true;
}

std::optional<Vec> lift_through(const ModuleMap& f, const Vec& y) {
  AugmentedGB aug(f.src.A(), f.tgt.gen_deg(), f.mat.col, f.src.gen_deg(), f.tgt.pres().col);
  return aug.lift(y);
}

bool equal_in(const Module& M, const Vec& x, const Vec& y) { return M.nf(M.S().vsub(x, y)).empty(); }

}  // namespace cmdef
