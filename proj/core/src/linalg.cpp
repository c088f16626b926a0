#include "cmdef/linalg.hpp"

namespace cmdef {

DMat dmat_identity(int n) {
  DMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = {1, 1};
  return m;
}

DMat dmat_mul(const Field& k, const DMat& x, const DMat& y) {
  DMat z(x.r, y.c);
  for (int i = 0; i < x.r; ++i)
    for (int l = 0; l < x.c; ++l) {
      Scalar a = x.at(i, l);
      if (a.is_zero()) continue;
      for (int j = 0; j < y.c; ++j)
        if (!y.at(l, j).is_zero()) z.at(i, j) = k.add(z.at(i, j), k.mul(a, y.at(l, j)));
    }
  return z;
}

DMat dmat_transpose(const DMat& x) {
  DMat t(x.c, x.r);
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j) t.at(j, i) = x.at(i, j);
  return t;
}

SVec dmat_apply(const Field& k, const DMat& x, const SVec& v) {
  SVec out(x.r, k.zero());
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j)
      if (!x.at(i, j).is_zero() && !v[j].is_zero()) out[i] = k.add(out[i], k.mul(x.at(i, j), v[j]));
  return out;
}

DMat dmat_from_columns(int rows, const std::vector<SVec>& cols) {
  DMat m(rows, int(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i) m.at(i, int(j)) = cols[j][i];
  return m;
}

SVec dmat_column(const DMat& x, int j) {
  SVec v(x.r);
  for (int i = 0; i < x.r; ++i) v[i] = x.at(i, j);
  return v;
}

bool svec_is_zero(const SVec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

SVec svec_add(const Field& k, const SVec& a, const SVec& b) {
  SVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.add(a[i], b[i]);
  return r;
}

SVec svec_sub(const Field& k, const SVec& a, const SVec& b) {
  SVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.sub(a[i], b[i]);
  return r;
}

SVec svec_scale(const Field& k, Scalar c, const SVec& a) {
  SVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(c, a[i]);
  return r;
}

namespace {

// Row reduces m in place, applying the same operations to ops when given.
std::vector<int> row_reduce(const Field& k, DMat& m, DMat* ops) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.c && row < m.r; ++col) {
    int p = -1;
    for (int i = row; i < m.r; ++i)
      if (!m.at(i, col).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    auto swap_rows = [](DMat& x, int a, int b) {
      for (int j = 0; j < x.c; ++j) std::swap(x.at(a, j), x.at(b, j));
    };
    if (p != row) {
      swap_rows(m, p, row);
      if (ops) swap_rows(*ops, p, row);
    }
    Scalar inv = k.inv(m.at(row, col));
    for (int j = 0; j < m.c; ++j) m.at(row, j) = k.mul(inv, m.at(row, j));
    if (ops)
      for (int j = 0; j < ops->c; ++j) ops->at(row, j) = k.mul(inv, ops->at(row, j));
    for (int i = 0; i < m.r; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (int j = 0; j < m.c; ++j)
        if (!m.at(row, j).is_zero()) m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(row, j)));
      if (ops)
        for (int j = 0; j < ops->c; ++j)
          if (!ops->at(row, j).is_zero()) ops->at(i, j) = k.sub(ops->at(i, j), k.mul(f, ops->at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(const Field& k, DMat m) { return int(row_reduce(k, m, nullptr).size()); }

std::vector<SVec> kernel_basis(const Field& k, const DMat& m) {
  DMat r = m;
  std::vector<int> pivots = row_reduce(k, r, nullptr);
  std::vector<bool> is_pivot(m.c, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<SVec> out;
  for (int f = 0; f < m.c; ++f) {
    if (is_pivot[f]) continue;
    SVec v(m.c, k.zero());
    v[f] = k.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = k.neg(r.at(int(i), f));
    out.push_back(std::move(v));
  }
  return out;
}

LinearSolver::LinearSolver(const Field& k, const DMat& m) : k_(k), rows_(m.r), cols_(m.c) {
  DMat r = m;
  ops_ = dmat_identity(m.r);
  pivots_ = row_reduce(k, r, &ops_);
  rank_ = int(pivots_.size());
}

std::optional<SVec> LinearSolver::solve(const SVec& b) const {
  SVec y = dmat_apply(k_, ops_, b);
  for (int i = rank_; i < rows_; ++i)
    if (!y[i].is_zero()) return std::nullopt;
  SVec x(cols_, k_.zero());
  for (int i = 0; i < rank_; ++i) x[pivots_[i]] = y[i];
  return x;
}

QuotientBasis quotient_basis(const Field& k, int dim, const std::vector<SVec>& sub, const std::vector<SVec>& mod) {
  // Greedy extension of a basis of span(mod) by vectors of sub, kept in echelon form.
  QuotientBasis q;
  std::vector<SVec> rows;
  std::vector<int> piv;
  auto insert = [&](const SVec& v) {
    SVec w = v;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Scalar f = w[piv[i]];
      if (f.is_zero()) continue;
      for (int j = 0; j < dim; ++j)
        if (!rows[i][j].is_zero()) w[j] = k.sub(w[j], k.mul(f, rows[i][j]));
    }
    int p = -1;
    for (int j = 0; j < dim; ++j)
      if (!w[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) return false;
    Scalar inv = k.inv(w[p]);
    for (int j = 0; j < dim; ++j) w[j] = k.mul(inv, w[j]);
    rows.push_back(std::move(w));
    piv.push_back(p);
    return true;
  };
  for (const auto& v : mod) insert(v);
  for (const auto& v : sub)
    if (insert(v)) q.reps.push_back(v);
  return q;
}

}  // namespace cmdef
