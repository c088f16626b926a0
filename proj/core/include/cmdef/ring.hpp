#ifndef CMDEF_RING_HPP
#define CMDEF_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmdef/groebner.hpp"
#include "cmdef/poly.hpp"

namespace cmdef {

// A = S/I with I homogeneous.  Immutable once built.
class Ring {
 public:
  Ring(PolyRingPtr S, std::vector<Poly> ideal);
  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

  const PolyRing& S() const { return *S_; }
  const PolyRingPtr& S_ptr() const { return S_; }
  const Field& field() const { return S_->field(); }
  const std::vector<Poly>& ideal() const { return ideal_; }
  const std::vector<Poly>& gb() const { return gb_polys_; }
  bool is_polynomial_ring() const { return gb_polys_.empty(); }

  Poly nf(const Poly& f) const;
  Vec nf(const Vec& v) const;

  // I * e_c for every c, as background relations of a module GB.
  std::vector<Vec> ideal_multiples(int rank) const;
  std::vector<Vec> ideal_multiples(int first, int last) const;

  std::string describe() const;

 private:
  PolyRingPtr S_;
  std::vector<Poly> ideal_;
  std::unique_ptr<GroebnerBasis> gb_;
  std::vector<Poly> gb_polys_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(PolyRingPtr S, std::vector<Poly> ideal = {});
// Same ambient ring with extra generators added to the ideal.
RingPtr quotient_ring(const RingPtr& A, const std::vector<Poly>& extra);
// True when B is a quotient of A over the same ambient ring.
bool is_quotient_of(const Ring& B, const Ring& A);

// Homogeneous map of graded free modules; column j is the image of source generator j.
struct Matrix {
  std::vector<int> src;
  std::vector<int> tgt;
  std::vector<Vec> col;

  int rows() const { return static_cast<int>(tgt.size()); }
  int cols() const { return static_cast<int>(src.size()); }
};

Matrix identity_matrix(const PolyRing& S, const std::vector<int>& degs);
Matrix zero_matrix(const std::vector<int>& src, const std::vector<int>& tgt);
Poly matrix_entry(const PolyRing& S, const Matrix& m, int i, int j);
Matrix matrix_from_entries(const PolyRing& S, const std::vector<std::vector<Poly>>& rows, const std::vector<int>& tgt,
                           const std::vector<int>& src);
// Image of a vector of the source free module.
Vec apply(const Ring& A, const Matrix& f, const Vec& v);
// f after g.
Matrix compose(const Ring& A, const Matrix& f, const Matrix& g);
Matrix add(const Ring& A, const Matrix& f, const Matrix& g);
Matrix scale(const Ring& A, Scalar c, const Matrix& f);
Matrix transpose(const PolyRing& S, const Matrix& f);  // degrees negated
Matrix concat_columns(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const PolyRing& S, const Matrix& a, const Matrix& b);
bool is_zero_matrix(const Ring& A, const Matrix& f);
bool same_matrix(const Ring& A, const Matrix& f, const Matrix& g);
// Checks homogeneity against the recorded degrees; throws Error naming `what`.
void check_homogeneous(const PolyRing& S, const Matrix& f, const std::string& what);
// Nonzero scalar entries, i.e. entries of degree zero.
bool has_unit_entry(const Matrix& f);
std::vector<std::vector<std::string>> matrix_strings(const PolyRing& S, const Matrix& f);

}  // namespace cmdef

#endif
