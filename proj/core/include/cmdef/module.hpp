#ifndef CMDEF_MODULE_HPP
#define CMDEF_MODULE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "cmdef/groebner.hpp"
#include "cmdef/linalg.hpp"
#include "cmdef/ring.hpp"

namespace cmdef {

using StdMono = std::pair<Monomial, int>;  // monomial times generator

// Gröbner basis of relations + I*F0 with degreewise standard bases.
class ModuleGB {
 public:
  ModuleGB(const Ring& A, const std::vector<int>& gen_deg, const std::vector<Vec>& rel);

  const GroebnerBasis& gb() const { return *gb_; }
  Vec nf(const Vec& v) const { return gb_->reduce(v); }
  const std::vector<int>& minimal_relations() const { return gb_->minimal_gens(); }

  const std::vector<StdMono>& basis(int d) const;
  int dim(int d) const { return static_cast<int>(basis(d).size()); }
  // Coordinates of the class of a vector homogeneous of degree d (or zero).
  SVec coords(const Vec& v, int d) const;
  Vec element(const SVec& c, int d) const;
  // Lowest degree with a possibly nonzero piece.
  int min_degree() const;

 private:
  struct Piece {
    std::vector<StdMono> basis;
    std::map<std::pair<int, std::array<std::uint16_t, kMaxVars>>, int> index;
  };
  const Piece& piece(int d) const;

  const PolyRing& S_;
  std::vector<int> gen_deg_;
  std::unique_ptr<GroebnerBasis> gb_;
  std::vector<std::vector<Monomial>> lead_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<Piece>> pieces_;
};

// All monomials of the given weighted degree, in decreasing order.
std::vector<Monomial> monomials_of_degree(const PolyRing& S, int d);

// coker(pres) over A; pres.tgt lists generator degrees.
class Module {
 public:
  Module() = default;
  Module(RingPtr A, Matrix pres);
  static Module free(RingPtr A, std::vector<int> degs);

  const RingPtr& ring() const { return ring_; }
  const Ring& A() const { return *ring_; }
  const PolyRing& S() const { return ring_->S(); }
  const Matrix& pres() const { return pres_; }
  const std::vector<int>& gen_deg() const { return pres_.tgt; }
  int ngens() const { return pres_.rows(); }
  const ModuleGB& gb() const;
  Vec nf(const Vec& v) const { return gb().nf(v); }
  bool is_zero() const;

 private:
  struct State {
    std::once_flag once;
    std::unique_ptr<ModuleGB> gb;
  };
  RingPtr ring_;
  Matrix pres_;
  std::shared_ptr<State> st_;
};

// Degree-zero homomorphism given on generators.
struct ModuleMap {
  Module src, tgt;
  Matrix mat;  // columns: images of source generators in the target's generator module
};

ModuleMap identity_map(const Module& M);
ModuleMap compose(const ModuleMap& f, const ModuleMap& g);  // f after g
// Checks that relations of the source go to zero.
bool is_well_defined(const ModuleMap& f);
bool is_zero_map(const ModuleMap& f);

// Submodule generated by g_j in F modulo rel + I*F, with tag tracking.
class AugmentedGB {
 public:
  AugmentedGB(const Ring& A, std::vector<int> F_deg, std::vector<Vec> g, std::vector<int> g_deg, std::vector<Vec> rel,
              int max_degree = INT_MAX);

  // a with sum a_j g_j = v modulo rel + I*F.
  std::optional<Vec> lift(const Vec& v) const;
  // Generators of {a : sum a_j g_j in rel + I*F}, minimal over A.
  std::vector<Vec> syzygies() const;
  const std::vector<int>& tag_degrees() const { return g_deg_; }

 private:
  const Ring& A_;
  int r_;
  std::vector<int> g_deg_;
  std::unique_ptr<GroebnerBasis> gb_;
};

// Minimal generators (over A) among vectors of a free module, in order.
std::vector<Vec> minimal_generators(const Ring& A, const std::vector<int>& F_deg, const std::vector<Vec>& v,
                                    const std::vector<Vec>& extra_rel = {});
// Minimal syzygies of the columns of m modulo rel (relations in the target).
Matrix syzygy_matrix(const Ring& A, const Matrix& m, const std::vector<Vec>& rel = {});
// Presentation of the subquotient (span K + span R) / span R of F.
Module subquotient(const RingPtr& A, const std::vector<int>& K_deg, const std::vector<Vec>& K, const std::vector<Vec>& R,
                   const std::vector<int>& F_deg);

struct Pruned {
  Module M;            // minimal presentation
  Matrix to_min;       // old generators written in the new ones
  Matrix from_min;     // new generators written in the old ones
};
Pruned prune(const Module& M);

struct Submodule {
  Module M;     // presented on its own generators
  Matrix incl;  // generators as elements of the ambient generator module
};
Submodule kernel(const ModuleMap& f);
Submodule image(const ModuleMap& f);
Module cokernel(const ModuleMap& f);
// Homology of M --f--> N --g--> P at N.
Submodule homology(const ModuleMap& f, const ModuleMap& g);

Module direct_sum(const std::vector<Module>& parts);
Module twist(const Module& M, int d);  // M(d): generator degrees shift by -d
Module tensor(const Module& M, const Module& N);
// Presentation over a quotient ring of A (same ambient ring).
Module change_ring(const Module& M, const RingPtr& B);
ModuleMap change_ring(const ModuleMap& f, const RingPtr& B);
// M viewed over A when M is a module over a quotient ring of A.
Module restrict_scalars(const Module& M, const RingPtr& A);

bool is_surjective(const ModuleMap& f);
bool is_injective(const ModuleMap& f);
// Lift of an element of f.tgt through f (generator coordinates), if it exists.
std::optional<Vec> lift_through(const ModuleMap& f, const Vec& y);
// Same target elements: x - y lies in the relations.
bool equal_in(const Module& M, const Vec& x, const Vec& y);

}  // namespace cmdef

#endif
