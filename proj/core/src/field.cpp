#include "cmdef/field.hpp"

#include <numeric>

namespace cmdef {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw LimitError("rational coefficient overflow (use a prime field)");
  return static_cast<std::int64_t>(v);
}

Scalar normalized(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) return {0, 1};
  i128 a = n < 0 ? -n : n, b = d;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return {narrow(n / a), narrow(d / a)};
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

Field Field::prime(std::int64_t p) {
  if (!is_prime(p) || p >= (std::int64_t{1} << 31)) throw Error("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  Field f;
  f.p_ = p;
  return f;
}

Scalar Field::from_int(std::int64_t n) const {
  if (p_) {
    std::int64_t r = n % p_;
    return {r < 0 ? r + p_ : r, 1};
  }
  return {n, 1};
}

Scalar Field::from_fraction(std::int64_t n, std::int64_t d) const {
  if (d == 0) throw Error("division by zero in coefficient");
  if (p_) return div(from_int(n), from_int(d));
  return normalized(n, d);
}

Scalar Field::inv(Scalar a) const {
  if (a.num == 0) throw Error("division by zero in field");
  if (p_) {
    std::int64_t t = 0, nt = 1, r = p_, nr = a.num;
    while (nr) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return {t < 0 ? t + p_ : t, 1};
  }
  return normalized(a.den, a.num);
}

Scalar Field::rat_add(Scalar a, Scalar b) const {
  if (a.den == 1 && b.den == 1) return normalized(i128(a.num) + b.num, 1);
  return normalized(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
}

Scalar Field::rat_mul(Scalar a, Scalar b) const {
  return normalized(i128(a.num) * b.num, i128(a.den) * b.den);
}

std::int64_t Field::signed_value(Scalar a) const {
  if (p_) return a.num > p_ / 2 ? a.num - p_ : a.num;
  return a.num;
}

std::string Field::to_string(Scalar a) const {
  if (p_) return std::to_string(signed_value(a));
  if (a.den == 1) return std::to_string(a.num);
  return std::to_string(a.num) + "/" + std::to_string(a.den);
}

std::string Field::name() const { return p_ ? "GF(" + std::to_string(p_) + ")" : "QQ"; }

}  // namespace cmdef
