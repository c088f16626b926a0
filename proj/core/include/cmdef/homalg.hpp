#ifndef CMDEF_HOMALG_HPP
#define CMDEF_HOMALG_HPP

#include <memory>
#include <vector>

#include "cmdef/invariants.hpp"
#include "cmdef/resolve.hpp"

namespace cmdef {

using ResolutionPtr = std::shared_ptr<const FreeResolution>;
ResolutionPtr resolution_ptr(const Module& M, int steps);

// Hom(F, N) for a free module F with the given generator degrees, presented on E_{jg} = (e_j -> n_g).
Module hom_from_free(const std::vector<int>& F, const Module& N);
// F (x) N presented on e_j (x) n_g.
Module tensor_free(const std::vector<int>& F, const Module& N);

// Hom(d, N): Hom(F_tgt, N) -> Hom(F_src, N) for a map d of free modules.
ModuleMap hom_free_map(const Matrix& d, const Module& N);
// d (x) N: F_src (x) N -> F_tgt (x) N.
ModuleMap tensor_free_map(const Matrix& d, const Module& N);

// phi[i]: F_i -> G_i with G's differentials after phi equal to phi after F's.
struct ChainMap {
  std::vector<Matrix> phi;
};
// Lifts f: F.input -> G.input (input generator coordinates) to a chain map, computed over G's ring, up to index `upto`.
ChainMap lift_chain_map(const FreeResolution& F, const FreeResolution& G, const Matrix& f, int upto);

// Degree-e piece of Ext^i(M, N) computed from cochains Hom(F_i, N)_e.
// A cochain is a Matrix from F_i to N's generators of degree e (target degrees shifted by -e).
class ExtSpace {
 public:
  ExtSpace(ResolutionPtr F, Module N, int i, int e = 0);

  int index() const { return i_; }
  int degree() const { return e_; }
  const FreeResolution& resolution() const { return *F_; }
  const ResolutionPtr& resolution_ptr() const { return F_; }
  const Module& target() const { return N_; }
  int dim() const { return static_cast<int>(reps_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }

  bool is_cocycle(const Matrix& c) const;
  // Coordinates of the class of a cocycle; throws Error on non-cocycles.
  SVec coords(const Matrix& c) const;
  Matrix element(const SVec& x) const;
  bool is_coboundary(const Matrix& c) const { return svec_is_zero(coords(c)); }
  // Cochain of degree e on F_{i-1} whose coboundary is c, when c is a coboundary.
  std::optional<Matrix> bounding_cochain(const Matrix& c) const;
  Matrix zero_cochain() const;

  SVec flatten(const Matrix& c, int i) const;
  Matrix unflatten(const SVec& v, int i) const;
  int cochain_dim(int i) const;

 private:
  DMat coboundary(int i) const;  // C^i_e -> C^{i+1}_e
  ResolutionPtr F_;
  Module N_;
  int i_, e_;
  std::vector<std::vector<int>> offsets_;  // offsets_[i][j]: start of generator j in C^i_e
  std::vector<int> sizes_;
  std::vector<SVec> reps_;
  std::vector<Matrix> basis_;
  DMat next_;  // delta^i, empty when F_{i+1} = 0
  std::unique_ptr<LinearSolver> solver_;  // columns: reps then coboundaries
  std::unique_ptr<LinearSolver> prev_;    // delta^{i-1}
};

struct ExtClass {
  std::shared_ptr<const ExtSpace> space;
  SVec coords;
  Matrix cocycle() const { return space->element(coords); }
};

// Ext^i(M, N) as a module with its Hilbert function.
struct ExtModule {
  int i = 0;
  Module E;
  bool finite = false;      // finite length
  std::int64_t total = -1;  // dim_k when finite
  int lo = 0;               // degrees lo .. lo + dims.size() - 1 (all nonzero degrees when finite)
  std::vector<std::int64_t> dims;
  std::int64_t dim_in_degree(int d) const;
};
ExtModule ext_module(int i, const Module& M, const Module& N, int window = kDefaultWindow);
ExtModule ext_module(int i, const FreeResolution& F, const Module& N, int window = kDefaultWindow);
// Total dimension of a finite-length Ext, or LimitError when the Ext module has positive dimension.
std::int64_t ext_dim(int i, const Module& M, const Module& N);

struct TorModule {
  int i = 0;
  Module T;
  bool finite = false;
  std::int64_t total = -1;
  int lo = 0;
  std::vector<std::int64_t> dims;
};
TorModule tor(int i, const Module& M, const Module& N, int window = kDefaultWindow);

// Matrices of induced maps in the bases of the given spaces.
// f: M -> M' with src over Ext(M', N), tgt over Ext(M, N).
DMat ext_contra(const ModuleMap& f, const ExtSpace& from, const ExtSpace& to);
// g: N -> N' from Ext(M, N) to Ext(M, N').
DMat ext_cov(const ModuleMap& g, const ExtSpace& from, const ExtSpace& to);

// Ext^c(N, omega); N must be Cohen-Macaulay of codimension c.
Module ext_dual(const Module& N, int c);
// Hom(M, omega) for M maximal Cohen-Macaulay.
Module omega_dual(const Module& M);

// 0 -> L -a-> E -b-> N -> 0.
struct ShortExact {
  ModuleMap alpha, beta;
};
// 0 -> K -a-> X -b-> Y -g-> N -> 0.
struct FourTerm {
  ModuleMap alpha, beta, gamma;
};
bool is_exact(const ShortExact& s);
bool is_exact(const FourTerm& s);
// Class in Ext^1(N, L)_0 in the basis of `space` (resolution of N, target L).
SVec three_term_class(const ShortExact& s, const ExtSpace& space);
// Yoneda class in Ext^2(N, K)_0.
SVec four_term_class(const FourTerm& s, const ExtSpace& space);
// E = (L + F0) / (L's relations, (-z(f), d1 f)) for a degree-0 cocycle z: F1 -> L.
ShortExact extension_from_class(const ExtSpace& space, const SVec& coords);

}  // namespace cmdef

#endif
