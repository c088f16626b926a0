#ifndef CMDEF_TEST_SUPPORT_HPP
#define CMDEF_TEST_SUPPORT_HPP

#include <string>
#include <vector>

#include "cmdef/module.hpp"

namespace testing_support {

using namespace cmdef;

PolyRingPtr poly_ring(const std::vector<std::string>& names, std::vector<int> degs = {}, Field k = Field{});
RingPtr ring(const PolyRingPtr& S, const std::vector<std::string>& ideal);
// 2x2 minors of the 2 x m Hankel matrix in z0..zm.
RingPtr veronese(int m, Field k = Field{});
Matrix mat(const Ring& A, const std::vector<std::vector<std::string>>& rows, std::vector<int> tgt, std::vector<int> src);
Module residue_field(const RingPtr& A);
Module maximal_ideal(const RingPtr& A);
Module cyclic(const RingPtr& A, const std::vector<std::string>& gens);

// Brute force dim_k of (M)_d: span of monomial multiples of generators modulo relations, by linear algebra only.
int brute_hf(const Module& M, int d);

// dim_k Hom(M, N)_d by solving the relation constraints directly on generator images.
int brute_hom_dim(const Module& M, const Module& N, int d);
// Same Hilbert function on [lo, hi].
bool same_hf(const Module& a, const Module& b, int lo, int hi);

}  // namespace testing_support

#endif
