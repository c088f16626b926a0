#ifndef CMDEF_POLY_HPP
#define CMDEF_POLY_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cmdef/field.hpp"

namespace cmdef {

constexpr int kMaxVars = 16;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::int32_t deg = 0;    // weighted degree
  std::uint32_t mask = 0;  // bit i set iff e[i] > 0

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

inline bool divides(const Monomial& a, const Monomial& b) {
  if (a.mask & ~b.mask) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  r.deg = a.deg + b.deg;
  r.mask = a.mask | b.mask;
  return r;
}

// b / a, assuming a divides b.
inline Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
    if (r.e[i]) r.mask |= 1u << i;
  }
  r.deg = b.deg - a.deg;
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) { return (a.mask & b.mask) == 0; }

struct Term {
  Monomial m;
  Scalar c;
};
using Poly = std::vector<Term>;  // sorted by decreasing monomial

// Module element: sorted by component ascending, then decreasing monomial.
struct VTerm {
  Monomial m;
  int comp = 0;
  Scalar c;
};
using Vec = std::vector<VTerm>;

enum class OrderKind { GRevLex, Lex, Weighted };

class PolyRing {
 public:
  PolyRing(Field k, std::vector<std::string> names, std::vector<int> degrees, OrderKind kind = OrderKind::GRevLex,
           std::vector<int> order_weights = {});

  const Field& field() const { return k_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& degrees() const { return degrees_; }
  OrderKind order() const { return kind_; }
  const std::vector<int>& order_weights() const { return order_weights_; }
  int var_index(const std::string& name) const;  // -1 if absent

  Monomial one() const { return {}; }
  Monomial var(int i, int power = 1) const;
  Monomial make(const std::vector<int>& exps) const;
  Monomial lcm(const Monomial& a, const Monomial& b) const;
  void fix(Monomial& m) const;  // recompute deg and mask from exponents

  // Negative, zero or positive as a < b, a == b, a > b.
  int cmp(const Monomial& a, const Monomial& b) const;
  // Total order on (monomial, component) used for stored vectors.
  int vcmp(const Monomial& a, int ca, const Monomial& b, int cb) const {
    if (ca != cb) return ca < cb ? 1 : -1;
    return cmp(a, b);
  }

  // Polynomials.
  Poly constant(Scalar c) const;
  Poly constant(std::int64_t c) const { return constant(k_.from_int(c)); }
  Poly variable(int i) const;
  Poly monomial(const Monomial& m, Scalar c) const;
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly scale(Scalar c, const Poly& a) const;
  Poly mul_term(Scalar c, const Monomial& m, const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly pow(const Poly& a, int e) const;
  // a - c*m*b in one merge.
  Poly sub_mul(const Poly& a, Scalar c, const Monomial& m, const Poly& b) const;
  bool is_homogeneous(const Poly& a) const;
  int degree(const Poly& a) const;  // degree of leading term; -1 for zero
  bool is_constant(const Poly& a) const { return a.empty() || (a.size() == 1 && a[0].m.deg == 0 && a[0].m.mask == 0); }

  // Vectors.
  Vec vadd(const Vec& a, const Vec& b) const;
  Vec vsub(const Vec& a, const Vec& b) const;
  Vec vneg(const Vec& a) const;
  Vec vscale(Scalar c, const Vec& a) const;
  Vec vmul_term(Scalar c, const Monomial& m, const Vec& a) const;
  Vec vmul(const Poly& p, const Vec& a) const;
  Vec vsub_mul(const Vec& a, Scalar c, const Monomial& m, const Vec& b) const;
  Vec from_poly(const Poly& p, int comp) const;
  Poly entry(const Vec& v, int comp) const;
  Vec shift_components(const Vec& v, int offset) const;
  // Keeps components in [lo, hi), renumbered from zero.
  Vec restrict_components(const Vec& v, int lo, int hi) const;
  void sort_vec(Vec& v) const;
  void sort_poly(Poly& p) const;

  std::string to_string(const Monomial& m) const;
  std::string to_string(const Poly& p) const;
  Poly parse(const std::string& text) const;

 private:
  Field k_;
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  OrderKind kind_;
  std::vector<int> order_weights_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

}  // namespace cmdef

#endif
