#ifndef CMDEF_GROEBNER_HPP
#define CMDEF_GROEBNER_HPP

#include <climits>
#include <map>
#include <vector>

#include "cmdef/poly.hpp"

namespace cmdef {

struct ModuleOrder {
  bool pot = true;         // position over term; false gives term over position
  std::vector<int> block;  // optional per-component block; a lower block dominates every higher one
};

// Homogeneous Buchberger, processed degree by degree.  The submodule is
// generated by `background` together with `gens`; a generator in `gens` is
// reported minimal when it is not in the span of everything of lower or
// equal degree processed before it.
class GroebnerBasis {
 public:
  GroebnerBasis(const PolyRing& R, std::vector<int> comp_deg, const std::vector<Vec>& background,
                const std::vector<Vec>& gens, ModuleOrder order = {}, int max_degree = INT_MAX);

  // Reduced basis, monic, in canonical vector order.
  std::vector<Vec> basis() const;
  const std::vector<int>& minimal_gens() const { return minimal_; }
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }
  // Leading monomials grouped by component.
  std::vector<std::vector<Monomial>> leading_monomials() const;
  int rank() const { return static_cast<int>(comp_deg_.size()); }
  const std::vector<int>& comp_deg() const { return comp_deg_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return elems_.size(); }

  // Total degree of a homogeneous vector; throws Error when inhomogeneous.
  static int vec_degree(const PolyRing& R, const std::vector<int>& comp_deg, const Vec& v);

 private:
  struct Elem {
    Vec v;  // internal order, monic
    int deg;
  };
  struct Pair {
    int i, j;
    Monomial lcm;
    int comp;
    bool dead = false;
  };

  int tcmp(const VTerm& a, const VTerm& b) const;
  void to_internal(Vec& v) const;
  void to_canonical(Vec& v) const;
  Vec sub_mul_tail(const Vec& f, std::size_t head, Scalar c, const Monomial& m, const Vec& g) const;
  Vec full_reduce(Vec f, int skip = -1) const;
  int find_divisor(const Monomial& m, int comp, int skip) const;
  void add_element(Vec v, int deg);

  const PolyRing& R_;
  std::vector<int> comp_deg_;
  ModuleOrder order_;
  int max_degree_;
  bool product_criterion_;
  std::vector<Elem> elems_;
  std::vector<std::vector<int>> by_comp_;
  std::map<int, std::vector<Pair>> pairs_;
  std::vector<int> minimal_;
};

}  // namespace cmdef

#endif
