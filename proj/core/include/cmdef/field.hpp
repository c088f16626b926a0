#ifndef CMDEF_FIELD_HPP
#define CMDEF_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cmdef {

// Bad input or a violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured computation bound was reached.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scalar {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool is_zero() const { return num == 0; }
  friend bool operator==(const Scalar&, const Scalar&) = default;
};

// GF(p) for p < 2^31, or Q with 64-bit numerators and denominators.
// Rational overflow raises LimitError rather than losing exactness.
class Field {
 public:
  Field() = default;

  static Field prime(std::int64_t p);
  static Field rationals() {
    Field f;
    f.p_ = 0;
    return f;
  }

  bool is_prime_field() const { return p_ != 0; }
  std::int64_t characteristic() const { return p_; }

  Scalar zero() const { return {0, 1}; }
  Scalar one() const { return {1, 1}; }
  Scalar from_int(std::int64_t n) const;
  Scalar from_fraction(std::int64_t n, std::int64_t d) const;

  Scalar add(Scalar a, Scalar b) const {
    if (p_) {
      std::int64_t s = a.num + b.num;
      return {s >= p_ ? s - p_ : s, 1};
    }
    return rat_add(a, b);
  }
  Scalar neg(Scalar a) const {
    if (p_) return {a.num == 0 ? 0 : p_ - a.num, 1};
    return {-a.num, a.den};
  }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar mul(Scalar a, Scalar b) const {
    if (p_) return {(a.num * b.num) % p_, 1};
    return rat_mul(a, b);
  }
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  bool is_one(Scalar a) const { return a.num == 1 && a.den == 1; }

  // Symmetric residue for GF(p); "n" or "n/d" for Q.
  std::string to_string(Scalar a) const;
  // Integer representative used for hashing and deterministic choices.
  std::int64_t signed_value(Scalar a) const;

  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Scalar rat_add(Scalar a, Scalar b) const;
  Scalar rat_mul(Scalar a, Scalar b) const;

  std::int64_t p_ = 32003;
};

bool is_prime(std::int64_t p);

}  // namespace cmdef

#endif
