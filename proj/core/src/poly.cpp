#include "cmdef/poly.hpp"

#include <algorithm>
#include <cctype>

namespace cmdef {

PolyRing::PolyRing(Field k, std::vector<std::string> names, std::vector<int> degrees, OrderKind kind,
                   std::vector<int> order_weights)
    : k_(k), names_(std::move(names)), degrees_(std::move(degrees)), kind_(kind), order_weights_(std::move(order_weights)) {
  if (nvars() > kMaxVars) throw Error("at most " + std::to_string(kMaxVars) + " variables are supported");
  if (degrees_.empty()) degrees_.assign(names_.size(), 1);
  if (degrees_.size() != names_.size()) throw Error("variable degree list has wrong length");
  for (int d : degrees_)
    if (d <= 0) throw Error("variable degrees must be positive integers");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw Error("duplicate variable name '" + names_[i] + "'");
  if (kind_ == OrderKind::Weighted) {
    if (order_weights_.size() != names_.size()) throw Error("weighted order needs one weight per variable");
    for (int w : order_weights_)
      if (w <= 0) throw Error("order weights must be positive");
  }
}

int PolyRing::var_index(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

void PolyRing::fix(Monomial& m) const {
  m.deg = 0;
  m.mask = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!m.e[i]) continue;
    m.mask |= 1u << i;
    m.deg += m.e[i] * degrees_[i];
  }
}

Monomial PolyRing::var(int i, int power) const {
  Monomial m;
  m.e[i] = static_cast<std::uint16_t>(power);
  fix(m);
  return m;
}

Monomial PolyRing::make(const std::vector<int>& exps) const {
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) m.e[i] = static_cast<std::uint16_t>(exps[i]);
  fix(m);
  return m;
}

Monomial PolyRing::lcm(const Monomial& a, const Monomial& b) const {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.e[i] = std::max(a.e[i], b.e[i]);
  fix(m);
  return m;
}

int PolyRing::cmp(const Monomial& a, const Monomial& b) const {
  const int n = nvars();
  switch (kind_) {
    case OrderKind::Lex:
      for (int i = 0; i < n; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
      return 0;
    case OrderKind::Weighted: {
      long wa = 0, wb = 0;
      for (int i = 0; i < n; ++i) {
        wa += long(order_weights_[i]) * a.e[i];
        wb += long(order_weights_[i]) * b.e[i];
      }
      if (wa != wb) return wa > wb ? 1 : -1;
      [[fallthrough]];
    }
    case OrderKind::GRevLex:
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      for (int i = n - 1; i >= 0; --i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
      return 0;
  }
  return 0;
}

Poly PolyRing::constant(Scalar c) const {
  if (c.is_zero()) return {};
  return {Term{one(), c}};
}

Poly PolyRing::variable(int i) const { return {Term{var(i), k_.one()}}; }

Poly PolyRing::monomial(const Monomial& m, Scalar c) const {
  if (c.is_zero()) return {};
  return {Term{m, c}};
}

namespace {

template <class T, class Cmp, class Combine>
std::vector<T> merge(const std::vector<T>& a, const std::vector<T>& b, Cmp cmp, Combine combine) {
  std::vector<T> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = cmp(a[i], b[j]);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
    } else {
      T t = a[i];
      t.c = combine(a[i].c, b[j].c);
      if (!t.c.is_zero()) r.push_back(t);
      ++i;
      ++j;
    }
  }
  r.insert(r.end(), a.begin() + i, a.end());
  r.insert(r.end(), b.begin() + j, b.end());
  return r;
}

}  // namespace

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  return merge(a, b, [&](const Term& x, const Term& y) { return cmp(x.m, y.m); },
               [&](Scalar x, Scalar y) { return k_.add(x, y); });
}

Poly PolyRing::neg(const Poly& a) const {
  Poly r = a;
  for (auto& t : r) t.c = k_.neg(t.c);
  return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::scale(Scalar c, const Poly& a) const {
  if (c.is_zero()) return {};
  Poly r = a;
  for (auto& t : r) t.c = k_.mul(c, t.c);
  return r;
}

Poly PolyRing::mul_term(Scalar c, const Monomial& m, const Poly& a) const {
  if (c.is_zero()) return {};
  Poly r;
  r.reserve(a.size());
  for (const auto& t : a) r.push_back({mono_mul(m, t.m), k_.mul(c, t.c)});
  return r;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  Poly r;
  for (const auto& t : a) r = add(r, mul_term(t.c, t.m, b));
  return r;
}

Poly PolyRing::pow(const Poly& a, int e) const {
  Poly r = constant(k_.one());
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

Poly PolyRing::sub_mul(const Poly& a, Scalar c, const Monomial& m, const Poly& b) const {
  return add(a, mul_term(k_.neg(c), m, b));
}

bool PolyRing::is_homogeneous(const Poly& a) const {
  for (const auto& t : a)
    if (t.m.deg != a[0].m.deg) return false;
  return true;
}

int PolyRing::degree(const Poly& a) const { return a.empty() ? -1 : a[0].m.deg; }

Vec PolyRing::vadd(const Vec& a, const Vec& b) const {
  return merge(a, b, [&](const VTerm& x, const VTerm& y) { return vcmp(x.m, x.comp, y.m, y.comp); },
               [&](Scalar x, Scalar y) { return k_.add(x, y); });
}

Vec PolyRing::vneg(const Vec& a) const {
  Vec r = a;
  for (auto& t : r) t.c = k_.neg(t.c);
  return r;
}

Vec PolyRing::vsub(const Vec& a, const Vec& b) const { return vadd(a, vneg(b)); }

Vec PolyRing::vscale(Scalar c, const Vec& a) const {
  if (c.is_zero()) return {};
  Vec r = a;
  for (auto& t : r) t.c = k_.mul(c, t.c);
  return r;
}

Vec PolyRing::vmul_term(Scalar c, const Monomial& m, const Vec& a) const {
  if (c.is_zero()) return {};
  Vec r;
  r.reserve(a.size());
  for (const auto& t : a) r.push_back({mono_mul(m, t.m), t.comp, k_.mul(c, t.c)});
  return r;
}

Vec PolyRing::vmul(const Poly& p, const Vec& a) const {
  Vec r;
  for (const auto& t : p) r = vadd(r, vmul_term(t.c, t.m, a));
  return r;
}

Vec PolyRing::vsub_mul(const Vec& a, Scalar c, const Monomial& m, const Vec& b) const {
  return vadd(a, vmul_term(k_.neg(c), m, b));
}

Vec PolyRing::from_poly(const Poly& p, int comp) const {
  Vec v;
  v.reserve(p.size());
  for (const auto& t : p) v.push_back({t.m, comp, t.c});
  return v;
}

Poly PolyRing::entry(const Vec& v, int comp) const {
  Poly p;
  for (const auto& t : v)
    if (t.comp == comp) p.push_back({t.m, t.c});
  return p;
}

Vec PolyRing::shift_components(const Vec& v, int offset) const {
  Vec r = v;
  for (auto& t : r) t.comp += offset;
  return r;
}

Vec PolyRing::restrict_components(const Vec& v, int lo, int hi) const {
  Vec r;
  for (const auto& t : v)
    if (t.comp >= lo && t.comp < hi) r.push_back({t.m, t.comp - lo, t.c});
  return r;
}

void PolyRing::sort_vec(Vec& v) const {
  std::sort(v.begin(), v.end(), [&](const VTerm& x, const VTerm& y) { return vcmp(x.m, x.comp, y.m, y.comp) > 0; });
  Vec r;
  for (const auto& t : v) {
    if (!r.empty() && r.back().comp == t.comp && r.back().m == t.m) {
      r.back().c = k_.add(r.back().c, t.c);
      if (r.back().c.is_zero()) r.pop_back();
    } else if (!t.c.is_zero()) {
      r.push_back(t);
    }
  }
  v = std::move(r);
}

void PolyRing::sort_poly(Poly& p) const {
  std::sort(p.begin(), p.end(), [&](const Term& x, const Term& y) { return cmp(x.m, y.m) > 0; });
  Poly r;
  for (const auto& t : p) {
    if (!r.empty() && r.back().m == t.m) {
      r.back().c = k_.add(r.back().c, t.c);
      if (r.back().c.is_zero()) r.pop_back();
    } else if (!t.c.is_zero()) {
      r.push_back(t);
    }
  }
  p = std::move(r);
}

std::string PolyRing::to_string(const Monomial& m) const {
  std::string s;
  for (int i = 0; i < nvars(); ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += "*";
    s += names_[i];
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string PolyRing::to_string(const Poly& p) const {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::string c = k_.to_string(p[i].c);
    bool negative = c[0] == '-';
    if (negative) c = c.substr(1);
    if (i == 0) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    bool is_one = p[i].m.mask == 0;
    if (c == "1" && !is_one) {
      s += to_string(p[i].m);
    } else if (is_one) {
      s += c;
    } else {
      s += c + "*" + to_string(p[i].m);
    }
  }
  return s;
}

namespace {

class Parser {
 public:
  Parser(const PolyRing& R, const std::string& s) : R_(R), s_(s) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("polynomial \"" + s_ + "\" column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 18) fail("integer literal too large");
    return std::stoll(s_.substr(start, pos_ - start));
  }
  Poly expr() {
    Poly r;
    bool negate = false;
    skip();
    if (eat('-')) negate = true;
    else eat('+');
    Poly t = term();
    r = negate ? R_.neg(t) : t;
    while (true) {
      if (eat('+')) {
        r = R_.add(r, term());
      } else if (eat('-')) {
        r = R_.sub(r, term());
      } else {
        break;
      }
    }
    return r;
  }
  Poly term() {
    Poly r = factor();
    while (eat('*')) r = R_.mul(r, factor());
    return r;
  }
  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      std::int64_t e = integer();
      if (e > 1000) fail("exponent too large");
      base = R_.pow(base, static_cast<int>(e));
    }
    return base;
  }
  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t n = integer();
      std::int64_t d = 1;
      if (eat('/')) d = integer();
      return R_.constant(R_.field().from_fraction(n, d));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int i = R_.var_index(name);
      if (i < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return R_.variable(i);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const PolyRing& R_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly PolyRing::parse(const std::string& text) const { return Parser(*this, text).run(); }

}  // namespace cmdef
