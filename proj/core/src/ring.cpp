#include "cmdef/ring.hpp"

#include <algorithm>

namespace cmdef {

Ring::Ring(PolyRingPtr S, std::vector<Poly> ideal) : S_(std::move(S)) {
  for (auto& f : ideal) {
    if (f.empty()) continue;
    if (!S_->is_homogeneous(f)) throw Error("ideal generator '" + S_->to_string(f) + "' is not homogeneous");
    ideal_.push_back(std::move(f));
  }
  std::vector<Vec> gens;
  for (const auto& f : ideal_) gens.push_back(S_->from_poly(f, 0));
  gb_ = std::make_unique<GroebnerBasis>(*S_, std::vector<int>{0}, std::vector<Vec>{}, gens);
  for (const auto& v : gb_->basis()) gb_polys_.push_back(S_->entry(v, 0));
  for (const auto& g : gb_polys_)
    if (S_->is_constant(g)) throw Error("defining ideal is the unit ideal");
}

Poly Ring::nf(const Poly& f) const {
  if (gb_polys_.empty() || f.empty()) return f;
  return S_->entry(gb_->reduce(S_->from_poly(f, 0)), 0);
}

Vec Ring::nf(const Vec& v) const {
  if (gb_polys_.empty() || v.empty()) return v;
  Vec out;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    Vec part;
    while (j < v.size() && v[j].comp == v[i].comp) {
      part.push_back({v[j].m, 0, v[j].c});
      ++j;
    }
    Vec r = gb_->reduce(part);
    for (auto& t : r) out.push_back({t.m, v[i].comp, t.c});
    i = j;
  }
  return out;
}

std::vector<Vec> Ring::ideal_multiples(int rank) const { return ideal_multiples(0, rank); }

std::vector<Vec> Ring::ideal_multiples(int first, int last) const {
  std::vector<Vec> out;
  for (int c = first; c < last; ++c)
    for (const auto& g : gb_polys_) out.push_back(S_->from_poly(g, c));
  return out;
}

std::string Ring::describe() const {
  std::string s = S_->field().name() + "[";
  for (int i = 0; i < S_->nvars(); ++i) s += (i ? "," : "") + S_->names()[i];
  s += "]";
  if (!ideal_.empty()) {
    s += "/(";
    for (std::size_t i = 0; i < ideal_.size(); ++i) s += (i ? ", " : "") + S_->to_string(ideal_[i]);
    s += ")";
  }
  return s;
}

RingPtr make_ring(PolyRingPtr S, std::vector<Poly> ideal) { return std::make_shared<const Ring>(std::move(S), std::move(ideal)); }

RingPtr quotient_ring(const RingPtr& A, const std::vector<Poly>& extra) {
  std::vector<Poly> gens = A->ideal();
  for (const auto& f : extra) gens.push_back(f);
  return make_ring(A->S_ptr(), gens);
}

bool is_quotient_of(const Ring& B, const Ring& A) {
  if (&B.S() != &A.S()) return false;
  for (const auto& g : A.gb())
    if (!B.nf(g).empty()) return false;
  return true;
}

Matrix identity_matrix(const PolyRing& S, const std::vector<int>& degs) {
  Matrix m{degs, degs, {}};
  for (std::size_t i = 0; i < degs.size(); ++i) m.col.push_back(S.from_poly(S.constant(1), int(i)));
  return m;
}

Matrix zero_matrix(const std::vector<int>& src, const std::vector<int>& tgt) {
  return Matrix{src, tgt, std::vector<Vec>(src.size())};
}

Poly matrix_entry(const PolyRing& S, const Matrix& m, int i, int j) { return S.entry(m.col[j], i); }

Matrix matrix_from_entries(const PolyRing& S, const std::vector<std::vector<Poly>>& rows, const std::vector<int>& tgt,
                           const std::vector<int>& src) {
  Matrix m{src, tgt, std::vector<Vec>(src.size())};
  for (std::size_t j = 0; j < src.size(); ++j) {
    Vec v;
    for (std::size_t i = 0; i < tgt.size(); ++i) {
      Vec e = S.from_poly(rows[i][j], int(i));
      v.insert(v.end(), e.begin(), e.end());
    }
    m.col[j] = std::move(v);
  }
  return m;
}

Vec apply(const Ring& A, const Matrix& f, const Vec& v) {
  const PolyRing& S = A.S();
  Vec r;
  std::size_t i = 0;
  while (i < v.size()) {
    int c = v[i].comp;
    Vec part;
    std::size_t j = i;
    Poly coeff;
    while (j < v.size() && v[j].comp == c) {
      coeff.push_back({v[j].m, v[j].c});
      ++j;
    }
    r = S.vadd(r, S.vmul(coeff, f.col.at(c)));
    i = j;
  }
  return A.nf(r);
}

Matrix compose(const Ring& A, const Matrix& f, const Matrix& g) {
  if (g.rows() != f.cols()) throw Error("matrix product: inner dimensions differ");
  Matrix h{g.src, f.tgt, {}};
  h.col.reserve(g.col.size());
  for (const auto& c : g.col) h.col.push_back(apply(A, f, c));
  return h;
}

Matrix add(const Ring& A, const Matrix& f, const Matrix& g) {
  Matrix h{f.src, f.tgt, {}};
  for (std::size_t j = 0; j < f.col.size(); ++j) h.col.push_back(A.nf(A.S().vadd(f.col[j], g.col[j])));
  return h;
}

Matrix scale(const Ring& A, Scalar c, const Matrix& f) {
  Matrix h = f;
  for (auto& v : h.col) v = A.S().vscale(c, v);
  return h;
}

Matrix transpose(const PolyRing& S, const Matrix& f) {
  std::vector<int> src, tgt;
  for (int d : f.tgt) src.push_back(-d);
  for (int d : f.src) tgt.push_back(-d);
  Matrix t{src, tgt, std::vector<Vec>(src.size())};
  for (std::size_t j = 0; j < f.col.size(); ++j)
    for (const auto& term : f.col[j]) t.col[term.comp].push_back({term.m, int(j), term.c});
  for (auto& v : t.col) S.sort_vec(v);
  return t;
}

Matrix concat_columns(const Matrix& a, const Matrix& b) {
  Matrix m = a;
  m.src.insert(m.src.end(), b.src.begin(), b.src.end());
  m.col.insert(m.col.end(), b.col.begin(), b.col.end());
  return m;
}

Matrix block_diagonal(const PolyRing& S, const Matrix& a, const Matrix& b) {
  Matrix m;
  m.src = a.src;
  m.src.insert(m.src.end(), b.src.begin(), b.src.end());
  m.tgt = a.tgt;
  m.tgt.insert(m.tgt.end(), b.tgt.begin(), b.tgt.end());
  m.col = a.col;
  for (const auto& c : b.col) m.col.push_back(S.shift_components(c, a.rows()));
  return m;
}

bool is_zero_matrix(const Ring& A, const Matrix& f) {
  for (const auto& c : f.col)
    if (!A.nf(c).empty()) return false;
  return true;
}

bool same_matrix(const Ring& A, const Matrix& f, const Matrix& g) {
  if (f.src != g.src || f.tgt != g.tgt) return false;
  for (std::size_t j = 0; j < f.col.size(); ++j)
    if (!A.nf(A.S().vsub(f.col[j], g.col[j])).empty()) return false;
  return true;
}

void check_homogeneous(const PolyRing&, const Matrix& f, const std::string& what) {
  for (std::size_t j = 0; j < f.col.size(); ++j)
    for (const auto& t : f.col[j]) {
      if (t.comp < 0 || t.comp >= f.rows()) throw Error(what + ": entry outside the target module");
      if (t.m.deg + f.tgt[t.comp] != f.src[j])
        throw Error(what + ": entry (" + std::to_string(t.comp + 1) + "," + std::to_string(j + 1) +
                    ") is not homogeneous of degree " + std::to_string(f.src[j] - f.tgt[t.comp]));
    }
}

bool has_unit_entry(const Matrix& f) {
  for (const auto& c : f.col)
    for (const auto& t : c)
      if (t.m.mask == 0) return true;
  return false;
}

std::vector<std::vector<std::string>> matrix_strings(const PolyRing& S, const Matrix& f) {
  std::vector<std::vector<std::string>> out(f.rows(), std::vector<std::string>(f.cols()));
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) out[i][j] = S.to_string(matrix_entry(S, f, i, j));
  return out;
}

}  // namespace cmdef
