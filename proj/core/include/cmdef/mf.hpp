#ifndef CMDEF_MF_HPP
#define CMDEF_MF_HPP

#include <optional>
#include <string>
#include <vector>

#include "cmdef/cmapprox.hpp"

namespace cmdef {

// phi psi = psi phi = f I over the polynomial ring Q.
// phi: F1 -> F0; psi: F0(-deg f) -> F1.
struct MatrixFactorization {
  RingPtr Q;
  Poly f;
  Matrix phi, psi;
  int n() const { return phi.rows(); }
};

bool is_matrix_factorization(const MatrixFactorization& mf);
// Builds the factorization from entries, inferring free-module degrees (F0 starting at degree 0).
MatrixFactorization factorization_from_entries(const RingPtr& Q, const Poly& f,
                                               const std::vector<std::vector<Poly>>& phi,
                                               const std::vector<std::vector<Poly>>& psi);

// f with B = Q/(f); Error when B is not a hypersurface quotient of a polynomial ring.
Poly hypersurface_equation(const Ring& B);

// Minimal factorization with coker phi = N, from the resolution of N over Q.
MatrixFactorization mf_from_module(const Module& N);

// Q[t] with deg t = deg f / 2; the grading of Q is doubled first when deg f is odd.
struct KnorrerRings {
  RingPtr Q;   // the original polynomial ring
  RingPtr Qt;  // Q[t]
  RingPtr A;   // Q[t] / (f + t^2)
  RingPtr B;   // Q[t] / (f, t), the hypersurface in the new grading
  int t = 0;   // index of t
  int scale = 1;
  Poly f, F;   // f and f + t^2 in Q[t]
};
KnorrerRings knorrer_rings(const RingPtr& Q, const Poly& f);

// Same variables first; degrees multiplied by `scale`.
Poly transport(const PolyRing& to, const Poly& p);
Matrix transport(const PolyRing& to, const Matrix& m, int scale);
Module transport(const Module& M, const RingPtr& to, int scale);

// Phi = [[phi, t], [-t, psi]], Psi = [[psi, -t], [t, phi]] over Q[t] for f + t^2.
MatrixFactorization knorrer(const MatrixFactorization& mf, const KnorrerRings& R);
MatrixFactorization knorrer(const MatrixFactorization& mf);

// Over Q/(f): phi, psi, phi, ... resolving coker phi.
FreeResolution eisenbud_resolution(const MatrixFactorization& mf, int steps);
// Over Q[t]/(f + t^2): [t phi], Phi, Psi, Phi, ... resolving coker phi as a module over A.
FreeResolution knorrer_resolution(const MatrixFactorization& mf, const KnorrerRings& R, int steps);

struct KnorrerApprox {
  KnorrerRings rings;
  Module N;                 // the input in the grading of rings.B
  MatrixFactorization dual; // factorization of N^vee over Q
  FreeResolution res;       // knorrer_resolution of the dual factorization
  ApproxTriple triple;      // over rings.A, with triple.N = N viewed over A
  bool free_kernel = false;
  int kernel_rank = 0;
};
// 0 -> A^r -> G(N^vee)^vee -> N -> 0 for N maximal Cohen-Macaulay over B = Q/(f).
KnorrerApprox knorrer_approx(const Module& N);

struct MfStats {
  int n = 0;
  Rational e;                 // Hilbert-Samuel multiplicity of Q/(f)
  std::optional<int> rank;    // n / e when B has positive dimension and the ratio is integral
  std::string note;
};
MfStats mf_stats(const MatrixFactorization& mf);

}  // namespace cmdef

#endif
