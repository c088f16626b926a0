#ifndef CMDEF_CMAPPROX_HPP
#define CMDEF_CMAPPROX_HPP

#include <optional>
#include <string>
#include <vector>

#include "cmdef/homalg.hpp"

namespace cmdef {

// omega_A = Ext^c_S(A, S(-sigma)), sigma the sum of the variable degrees; cached per ring.
Module canonical_module(const RingPtr& A);

// 0 -> W[0] -> W[1] -> ... -> W[r-1] -> L -> 0 with W[j] = F[j] (x) omega.
struct OmegaResolution {
  Module omega;
  std::vector<std::vector<int>> F;  // generator degrees of the free factors
  std::vector<Matrix> D;            // D[j]: F[j] -> F[j+1]
  Matrix aug;                       // generators of W[r-1] written in those of L

  int length() const { return static_cast<int>(F.size()); }
  Module term(int j) const;
  ModuleMap map(int j) const;  // W[j] -> W[j+1]
};
// Built from a free resolution of Hom(omega, L); Error when that has infinite projective dimension.
OmegaResolution omega_resolution(const Module& L);
bool certify(const OmegaResolution& r, const Module& L);

// 0 -> L -rho-> M -pi-> N -> 0, M maximal Cohen-Macaulay, L with a finite omega resolution.
struct ApproxTriple {
  Module N, L, M;
  ModuleMap rho, pi;
  bool minimal = false;
  OmegaResolution Lres;
};

// 0 -> N -iota-> L' -eta-> M' -> 0.
struct HullTriple {
  Module N, Lp, Mp;
  ModuleMap iota, eta;
  OmegaResolution Lres;
};

struct Certificate {
  bool exact = false;
  bool mcm = false;  // M (resp. M') is maximal Cohen-Macaulay, or zero for hulls
  bool fid = false;  // the omega resolution is exact
  std::string failure;
  bool ok() const { return exact && mcm && fid; }
};
Certificate certify(const ApproxTriple& t);
// Some omega summand of L maps isomorphically onto a summand of M.
bool has_common_omega_summand(const ApproxTriple& t);
Certificate certify(const HullTriple& t);

// Some degree-0 isomorphism X -> Y, found by random combinations of a Hom basis.
std::optional<ModuleMap> find_isomorphism(const Module& X, const Module& Y, int tries = 8);

// G resolves a module whose Ext^c(-, omega) is isomorphic to N up to twist: dualizes Syz_c and
// identifies the cokernel with N.
ApproxTriple approx_from_resolution(const FreeResolution& G, int c, const Module& N);
// N Cohen-Macaulay of codimension c: dualize the c-th syzygy of ext_dual(N, c).
ApproxTriple mcm_approx_cm(const Module& N, int c);
// The approximation of k in dimension 2 from Hom(-, omega) applied to the presentation of m.
ApproxTriple approx_residue_field_dim2(const RingPtr& A);

// 0 -> M -inc-> F (x) omega -proj-> M' -> 0 with F of rank mu(Hom(M, omega)).
struct OmegaCover {
  Module M, W, Mp;
  ModuleMap inc, proj;
  std::vector<int> F;
  int n() const { return static_cast<int>(F.size()); }
};
OmegaCover omega_cover(const Module& M);

// Push the omega cover of t.M out along t.pi.
HullTriple fid_hull(const ApproxTriple& t);

struct QPrime {
  Module Q;         // Hom(omega, L')
  FreeComplex res;  // Hom(omega, -) of the omega resolution
  int pd() const { return res.length(); }
};
// Error when no omega resolution is given and none can be built.
QPrime q_prime(const Module& Lp, const std::optional<OmegaResolution>& cert = std::nullopt);

// 0 -> omega(twist) -> E -> m -> 0 from the generator of Ext^1(m, omega); dim A = 2.
struct Fundamental {
  Module E;
  ShortExact seq;
  int twist = 0;  // degree of the generator of Ext^1(m, omega)
};
Fundamental fundamental_module(const RingPtr& A);

}  // namespace cmdef

#endif
