#ifndef CMDEF_RESOLVE_HPP
#define CMDEF_RESOLVE_HPP

#include <map>
#include <string>
#include <vector>

#include "cmdef/module.hpp"

namespace cmdef {

// F[0] <- F[1] <- ... ; d[i] maps F[i+1] to F[i].
struct FreeComplex {
  RingPtr ring;
  std::vector<std::vector<int>> F;
  std::vector<Matrix> d;

  int length() const { return static_cast<int>(d.size()); }
  int rank(int i) const { return i < static_cast<int>(F.size()) ? static_cast<int>(F[i].size()) : 0; }
};

struct FreeResolution : FreeComplex {
  Module M;  // coker d[0], or the free module F[0] when there are no maps
  Module input;     // the module that was resolved
  Matrix to_min;    // generators of `input` written in F[0]
  Matrix from_min;  // F[0] basis written in the generators of `input`
  bool minimal = true;
  bool truncated = false;  // step bound reached before the resolution ended
};

constexpr int kDefaultSteps = 6;

// Minimal resolution over M's ring, computed to at most `steps` maps.
FreeResolution resolve(const Module& M, int steps = kDefaultSteps);
// Minimal resolution over the ambient polynomial ring; always finite.
FreeResolution resolve_ambient(const Module& M);
// The polynomial ring A is a quotient of.
RingPtr ambient_ring(const Ring& A);

// Cancels unit entries by Gaussian elimination on the complex.
FreeComplex minimalize(const FreeComplex& C);
FreeResolution minimalize(const FreeResolution& r);

FreeComplex koszul_complex(const RingPtr& A, const std::vector<Poly>& f);
// H_i of a complex, as a subquotient of F[i].
Submodule complex_homology(const FreeComplex& C, int i);
// Index j (1-based) of the first f_j that is a zero divisor on A/(f_1..f_{j-1}), or 0 when f is regular.
int first_irregular(const RingPtr& A, const std::vector<Poly>& f);

// Betti numbers keyed by (homological index, internal degree).
struct BettiTable {
  std::map<std::pair<int, int>, int> b;
  int total(int i) const;
  int max_index() const;
  std::string to_string() const;  // Macaulay-style grid with a total line
};
BettiTable betti(const FreeComplex& C);

// Syz^i(M) for the resolution r; i = 0 gives M itself.
Module syzygy_module(const FreeResolution& r, int i);
Module syzygy_module(const Module& M, int i);

bool squares_to_zero(const FreeComplex& C);
struct ExactnessReport {
  bool exact = true;
  int lo = 0, hi = 0;
  std::string failure;  // "H_i in degree d" when not exact
};
// Exactness at F[1..length-1] in degrees [lo, hi]; F[0] is compared with M when given, and
// F[length] is required to inject when check_last is set.
ExactnessReport certify_exact(const FreeComplex& C, int lo, int hi, const Module* M = nullptr, bool check_last = false);
// Degree range used by default: lowest generator degree plus `window`.
constexpr int kDefaultWindow = 12;
ExactnessReport certify_exact(const FreeResolution& r, int window = kDefaultWindow);

// Degree-d part of a map of free A-modules in standard-monomial bases.
DMat degree_matrix(const Ring& A, const Matrix& f, int d);

}  // namespace cmdef

#endif
