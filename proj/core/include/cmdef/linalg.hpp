#ifndef CMDEF_LINALG_HPP
#define CMDEF_LINALG_HPP

#include <optional>
#include <vector>

#include "cmdef/field.hpp"

namespace cmdef {

// Dense row-major matrix over a field.
struct DMat {
  int r = 0, c = 0;
  std::vector<Scalar> a;

  DMat() = default;
  DMat(int rows, int cols) : r(rows), c(cols), a(std::size_t(rows) * cols) {}
  Scalar& at(int i, int j) { return a[std::size_t(i) * c + j]; }
  const Scalar& at(int i, int j) const { return a[std::size_t(i) * c + j]; }
};

using SVec = std::vector<Scalar>;

DMat dmat_identity(int n);
DMat dmat_mul(const Field& k, const DMat& x, const DMat& y);
DMat dmat_transpose(const DMat& x);
SVec dmat_apply(const Field& k, const DMat& x, const SVec& v);
DMat dmat_from_columns(int rows, const std::vector<SVec>& cols);
SVec dmat_column(const DMat& x, int j);
bool svec_is_zero(const SVec& v);
SVec svec_add(const Field& k, const SVec& a, const SVec& b);
SVec svec_sub(const Field& k, const SVec& a, const SVec& b);
SVec svec_scale(const Field& k, Scalar c, const SVec& a);

int rank(const Field& k, DMat m);
// Columns form a basis of the kernel of m.
std::vector<SVec> kernel_basis(const Field& k, const DMat& m);

// Factored form of a fixed matrix for repeated solves of m x = b.
class LinearSolver {
 public:
  LinearSolver(const Field& k, const DMat& m);
  std::optional<SVec> solve(const SVec& b) const;
  int rank() const { return rank_; }
  bool in_image(const SVec& b) const { return solve(b).has_value(); }

 private:
  Field k_;
  int rows_, cols_, rank_ = 0;
  DMat ops_;  // E with E * m in reduced row echelon form
  std::vector<int> pivots_;
};

// Coordinates of the span of `gens` and a complement basis inside a
// subspace: used to pick cohomology representatives.
struct QuotientBasis {
  std::vector<SVec> reps;  // representatives of a basis of span(sub)/span(mod)
};
QuotientBasis quotient_basis(const Field& k, int dim, const std::vector<SVec>& sub, const std::vector<SVec>& mod);

}  // namespace cmdef

#endif
