#ifndef CMDEF_INVARIANTS_HPP
#define CMDEF_INVARIANTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cmdef/module.hpp"

namespace cmdef {

struct Rational {
  std::int64_t num = 0, den = 1;
  bool is_integer() const { return den == 1; }
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// HS(M) = t^shift * num(t) / prod_i (1 - t^{w_i}).
struct HilbertSeries {
  std::vector<std::int64_t> num;
  int shift = 0;
  std::vector<int> weights;
  // Order of the pole at t = 1; -1 for the zero series.
  int pole_order() const;
  // Coefficients of degrees shift .. shift + count - 1.
  std::vector<std::int64_t> expand(int count) const;
  std::string to_string() const;
};

// k = A / m and the maximal ideal m, both over A.
Module residue_field_module(const RingPtr& A);
Module maximal_ideal_module(const RingPtr& A);

HilbertSeries hilbert_series(const Module& M);
std::vector<std::int64_t> hilbert_function(const Module& M, int lo, int hi);
// Equality of Hilbert series as rational functions (modules over the same variables).
bool same_hilbert_series(const Module& a, const Module& b);
// Largest set of variables avoiding every leading monomial; -1 for the zero module.
int krull_dim(const Module& M);
int krull_dim(const RingPtr& A);
Rational multiplicity(const Module& M);
// Ratio of leading Hilbert coefficients against the ring.
Rational module_rank(const Module& M);
// Minimal number of generators.
int mu(const Module& M);

// depth via Auslander-Buchsbaum over the ambient polynomial ring.
int depth(const Module& M);
int projective_dimension_ambient(const Module& M);
bool is_cohen_macaulay(const RingPtr& A);
bool is_mcm(const Module& M);

struct HomModule {
  Module M, N;
  Module H;     // Hom(M, N)
  Matrix incl;  // generators of H in the coordinates of Hom(F0(M), N)
  // The homomorphism a vector of H's generator module stands for: column j is the image of M's generator j.
  Matrix as_matrix(const Vec& h) const;
};
HomModule module_hom(const Module& M, const Module& N);
// k-basis of Hom(M, N)_d as explicit matrices (target degrees shifted by -d).
std::vector<Matrix> hom_basis(const HomModule& h, int d = 0);
// k-basis of degree-zero homomorphisms M -> N.
std::vector<ModuleMap> hom_maps(const Module& M, const Module& N);

struct RegularReduction {
  RingPtr B;   // A / J
  Module Mbar; // M / JM over B
};
// J must be a regular sequence on A; errors name the first failing element.
RegularReduction base_change_regular(const Module& M, const std::vector<Poly>& J);

}  // namespace cmdef

#endif
