#ifndef CMDEF_OBSTRUCT_HPP
#define CMDEF_OBSTRUCT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmdef/cmapprox.hpp"

namespace cmdef {

// Finite-dimensional graded quotient of a polynomial ring; local with residue field k.
struct ArtinAlgebra {
  RingPtr R;
  std::vector<Monomial> basis;    // standard monomials
  std::vector<std::int64_t> hilbert;  // dim R_d for d = 0, 1, ...
  int dim() const { return static_cast<int>(basis.size()); }
};
ArtinAlgebra artin_algebra(const RingPtr& R);

// B = Bp / J with J^2 = 0.  For coefficient extensions Bp = A (x) R', B = A (x) R and
// J = A (x) I with I = ker(R' -> R) killed by the maximal ideal of R'; the variables of A
// come first, then those of R'.
struct SmallExtension {
  RingPtr Bp, B;
  std::vector<Poly> J;  // generators of the kernel; a k-basis of I for coefficient extensions
  std::vector<int> J_deg;
  RingPtr A, Rp, R;     // coefficient extensions only; on their own variables
  int nx = 0;           // number of variables of A
  bool coefficient() const { return A != nullptr; }
};
SmallExtension small_extension(const RingPtr& Bp, const std::vector<Poly>& J);
// I lives in the ring of Rp.
SmallExtension artin_extension(const RingPtr& A, const RingPtr& Rp, const std::vector<Poly>& I);
// Polynomials of A (resp. R') in the joint ring.
Poly from_base(const SmallExtension& q, const Poly& p);
Poly from_coefficients(const SmallExtension& q, const Poly& p);
// Terms without Artin variables, read in A.
Matrix to_fibre(const SmallExtension& q, const Matrix& m);

// Flatness of a module over A (x) R: HS(N) = HS(R) HS(N (x)_R k) and Tor_1^R(k, N) = 0.
struct FlatnessReport {
  bool hilbert = false;
  bool tor1 = false;
  std::string failure;
  bool ok() const { return hilbert && tor1; }
};
FlatnessReport certify_flat(const SmallExtension& q, const Module& N);

// Everything about N over q.B that the obstruction calculus reuses.
struct LiftingProblem {
  SmallExtension q;
  Module N;                   // over q.B
  Module J;                   // the kernel as a q.B-module, generated by q.J
  Module NJ;                  // N (x)_B J on e_g (x) J_l, index g * |J| + l
  ResolutionPtr F;            // over q.B, d[0] = N's presentation
  std::shared_ptr<const ExtSpace> ext1, ext2;  // Ext^i_B(N, NJ)_0
  std::shared_ptr<const AugmentedGB> kernel_gb;  // J_l e_g inside the free Bp-module on F[0]

  // Coefficient extensions: the closed fibre N0 over A, the reduction Fbar of F, the minimal
  // resolution G of N0 and a comparison map G -> Fbar.
  Module N0;
  ResolutionPtr Fbar, G;
  ChainMap cmp;
  std::map<std::pair<int, int>, std::shared_ptr<const ExtSpace>> fibre_spaces;  // (i, e) -> Ext^i_A(N0, N0)_e
  bool fibre_dims_match = true;  // dim Ext^i_B(N, NJ)_0 = sum_l dim Ext^i_A(N0, N0)_{-deg J_l}, i = 1, 2
};
LiftingProblem lifting_problem(const SmallExtension& q, const Module& N);

// Kernel-valued matrices over Bp and cochains with values in N (x) J.
Matrix kernel_part(const LiftingProblem& P, const Matrix& m);
Matrix kernel_lift(const LiftingProblem& P, const Matrix& c);
// Per kernel basis element, coordinates in Ext^i_A(N0, N0)_{-deg J_l}; empty unless q is a coefficient extension.
std::vector<SVec> fibre_coords(const LiftingProblem& P, const Matrix& cochain, int i);

struct ObstructionClass {
  Matrix cocycle;            // F_2 -> N (x) J
  SVec coords;               // in P.ext2
  std::vector<SVec> fibre;   // coordinates in Ext^2_A(N0, N0) (x) I
  bool zero() const { return svec_is_zero(coords); }
};
ObstructionClass obstruction(const LiftingProblem& P);
// Same class from arbitrary lifts of d[0], d[1] to Bp.
ObstructionClass obstruction(const LiftingProblem& P, const Matrix& d0, const Matrix& d1);
// Yoneda class of 0 -> N (x) J -> Nbar'_1 -> F_0 -> N -> 0.
ObstructionClass four_term_ob(const LiftingProblem& P);

// A lifting is a module over q.Bp presented by a column-by-column lift of N's presentation.
struct LiftingCertificate {
  bool reduces = false;   // the presentation reduces to N's
  bool injective = false; // N (x) J -> N' is injective, by Hilbert series
  std::string failure;
  bool ok() const { return reduces && injective; }
};
LiftingCertificate certify_lifting(const LiftingProblem& P, const Module& Np);

struct LiftResult {
  ObstructionClass ob;
  std::optional<Module> lifting;
};
LiftResult lift_module(const LiftingProblem& P);

// Perturbs the presentation by a cocycle representing xi in Ext^1_B(N, N (x) J)_0.
Module torsor_act(const LiftingProblem& P, const Module& Np, const SVec& xi);

struct LiftingDifference {
  Matrix cocycle;
  SVec coords;              // in P.ext1
  std::vector<SVec> fibre;  // in Ext^1_A(N0, N0) (x) I
  bool zero() const { return svec_is_zero(coords); }
};
LiftingDifference lifting_difference(const LiftingProblem& P, const Module& N1, const Module& N2);

// Liftings as explicit module structures: N' = N + (N (x) J) as graded vector spaces with
// block lower-triangular variable actions.  All conditions are affine in the off-diagonal blocks.
struct BruteForceLifting {
  bool exists = false;
  int dim_N = 0, dim_NJ = 0;
  int unknowns = 0;
  int solution_dim = 0;  // dimension of the affine space of structures
  int gauge_rank = 0;    // changes of splitting
  int classes_dim() const { return exists ? solution_dim - gauge_rank : 0; }
};
BruteForceLifting brute_force_lifting(const SmallExtension& q, const Module& N, int cap = 8);

// tau sends the variables of q.Rp to polynomials in the ring of q2.Rp.
struct BaseChangeReport {
  DMat kernel_map;  // I -> H in the kernel bases
  std::vector<SVec> pushed, recomputed;
  bool ob_equal = false;
  bool torsor_checked = false;
  std::vector<SVec> torsor_pushed, torsor_recomputed;
  bool torsor_equal = true;
};
Module base_change(const SmallExtension& q, const SmallExtension& q2, const std::vector<Poly>& tau, const Module& M,
                   bool source);
BaseChangeReport base_change_ob(const SmallExtension& q, const SmallExtension& q2, const std::vector<Poly>& tau,
                                const Module& N, const std::optional<std::pair<Module, SVec>>& torsor = std::nullopt);

// A/J^2 -> A/J for a regular sequence J.
struct RegularQuotientOb {
  SmallExtension q;
  ObstructionClass ob;
  ApproxTriple approx;  // of N over A
  SVec approx_class;    // 0 -> N (x) J/J^2 -> Lbar -> Mbar -> N -> 0 in the same basis
  bool agree = false;
};
RegularQuotientOb ob_regular_quotient(const RingPtr& A, const std::vector<Poly>& J, const Module& N);

struct Splitting {
  bool split = false;
  std::optional<ModuleMap> nu;  // N -> M/JM with pibar nu = id
};
Splitting splits_pibar(const ApproxTriple& t, const std::vector<Poly>& J);

// (pi_*)^-1 tau^* pibar^*: Ext^1_B(N, N) -> Ext^1_A(M, M), block diagonal over internal degrees.
struct TangentMap {
  std::vector<int> degrees;
  std::vector<DMat> blocks;
  int source_dim = 0, target_dim = 0, rank = 0;
  int coker() const { return target_dim - rank; }
  bool injective() const { return rank == source_dim; }
};
TangentMap tangent_sigma(const Module& N, const ApproxTriple& t, const std::vector<Poly>& J);

// f^* ob(Y) against f_* ob(X) in Ext^2_B(X, Y (x) J)_0 for a map f: X -> Y over q.B.
struct NaturalityCheck {
  SVec pulled, pushed;
  bool equal = false;
};
NaturalityCheck omap_check(const LiftingProblem& X, const LiftingProblem& Y, const ModuleMap& f);
// Class in Ext^1_B(X, Y (x) J)_0 that vanishes iff f lifts to a map X' -> Y'.
SVec map_obstruction(const LiftingProblem& X, const LiftingProblem& Y, const ModuleMap& f, const Module& Xp,
                     const Module& Yp);
// Moving the liftings by xi and zeta moves the map obstruction by f_* xi - f^* zeta.
struct DifferenceCheck {
  SVec moved, predicted;
  bool equal = false;
};
DifferenceCheck omap_difference(const LiftingProblem& X, const LiftingProblem& Y, const ModuleMap& f, const Module& Xp,
                                const Module& Yp, const SVec& xi, const SVec& zeta);

struct VanishingEntry {
  std::string name;
  bool finite = true;
  std::int64_t dim = 0;
  bool zero() const { return finite && dim == 0; }
};
struct VanishingReport {
  std::vector<VanishingEntry> entries;
  int grade = 0;        // grade of N
  bool L_zero = false;
  bool L_free = false;
  bool ext1_N_Mp = false;  // Ext^1(N, M') = 0
  bool ext1_L_N = false;   // Ext^1(L, N) = 0
};
VanishingReport ext_vanishing_report(const ApproxTriple& t, const HullTriple& h);

}  // namespace cmdef

#endif
