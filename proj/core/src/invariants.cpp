#include "cmdef/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cmdef/resolve.hpp"

namespace cmdef {

namespace {

using Series = std::vector<std::int64_t>;

void trim(Series& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Series padd(const Series& a, const Series& b) {
  Series r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Series pmul(const Series& a, const Series& b) {
  if (a.empty() || b.empty()) return {};
  Series r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Series one_minus_tpow(int d) {
  Series r(d + 1, 0);
  r[0] += 1;
  r[d] -= 1;
  trim(r);
  return r;
}

Series shift_up(const Series& a, int d) {
  if (a.empty()) return a;
  Series r(d, 0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

std::vector<Monomial> minimize(const std::vector<Monomial>& g) {
  std::vector<Monomial> out;
  std::vector<Monomial> sorted = g;
  std::sort(sorted.begin(), sorted.end(), [](const Monomial& a, const Monomial& b) { return a.deg < b.deg; });
  for (const auto& m : sorted) {
    bool red = false;
    for (const auto& o : out)
      if (divides(o, m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  return out;
}

// Numerator of HS(S/J) over prod (1 - t^{w_i}) for the monomial ideal J = (g).
Series numerator(const PolyRing& S, std::vector<Monomial> g) {
  g = minimize(g);
  if (g.empty()) return {1};
  bool coprime_all = true;
  std::uint32_t seen = 0;
  for (const auto& m : g) {
    if (m.mask & seen) {
      coprime_all = false;
      break;
    }
    seen |= m.mask;
  }
  if (coprime_all) {
    Series r{1};
    for (const auto& m : g) r = pmul(r, one_minus_tpow(m.deg));
    return r;
  }
  // Pivot on the variable shared by the most generators.
  int best = -1, count = 0;
  for (int i = 0; i < S.nvars(); ++i) {
    int c = 0;
    for (const auto& m : g) c += m.e[i] > 0;
    if (c > count) {
      count = c;
      best = i;
    }
  }
  int e = INT_MAX;
  for (const auto& m : g)
    if (m.e[best] > 0) e = std::min(e, int(m.e[best]));
  Monomial p = S.var(best, e);
  std::vector<Monomial> sum = g, quot;
  sum.push_back(p);
  for (const auto& m : g) {
    Monomial q = m;
    q.e[best] = static_cast<std::uint16_t>(std::max(0, int(m.e[best]) - e));
    S.fix(q);
    quot.push_back(q);
  }
  return padd(numerator(S, sum), shift_up(numerator(S, quot), p.deg));
}

// Divides a by (1 - t) as often as possible; returns the count.
int strip_one_minus_t(Series& a) {
  int k = 0;
  while (!a.empty()) {
    std::int64_t s = 0;
    for (auto c : a) s += c;
    if (s != 0) break;
    // a(t) = (1 - t) q(t): q_i = sum_{j <= i} a_j.
    Series q(a.size() - 1);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      acc += a[i];
      q[i] = acc;
    }
    a = q;
    trim(a);
    ++k;
  }
  return k;
}

std::int64_t eval1(const Series& a) {
  std::int64_t s = 0;
  for (auto c : a) s += c;
  return s;
}

Rational make_rational(std::int64_t n, std::int64_t d) {
  if (d < 0) n = -n, d = -d;
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  return {n / g, d / g};
}

}  // namespace

int HilbertSeries::pole_order() const {
  Series a = num;
  trim(a);
  if (a.empty()) return -1;
  return int(weights.size()) - strip_one_minus_t(a);
}

std::vector<std::int64_t> HilbertSeries::expand(int count) const {
  std::vector<std::int64_t> out(count, 0);
  for (int i = 0; i < count && i < int(num.size()); ++i) out[i] = num[i];
  for (int w : weights)
    for (int i = w; i < count; ++i) out[i] += out[i - w];
  return out;
}

std::string HilbertSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (num[i] == 0) continue;
    std::int64_t c = num[i];
    int d = int(i) + shift;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || d == 0) os << a;
    if (d != 0) os << (a != 1 ? "*" : "") << "t" << (d != 1 ? "^" + std::to_string(d) : "");
    first = false;
  }
  if (first) os << "0";
  std::string n = os.str();
  os.str("");
  if (std::count_if(num.begin(), num.end(), [](std::int64_t c) { return c != 0; }) > 1) n = "(" + n + ")";
  os << n << " / (";
  for (std::size_t i = 0; i < weights.size(); ++i)
    os << (i ? ")(" : "") << "1 - t" << (weights[i] != 1 ? "^" + std::to_string(weights[i]) : "");
  os << ")";
  return os.str();
}

Module residue_field_module(const RingPtr& A) {
  const PolyRing& S = A->S();
  Matrix row{S.degrees(), {0}, {}};
  for (int i = 0; i < S.nvars(); ++i) row.col.push_back(S.from_poly(S.variable(i), 0));
  return Module(A, row);
}

Module maximal_ideal_module(const RingPtr& A) {
  const PolyRing& S = A->S();
  Matrix row{S.degrees(), {0}, {}};
  for (int i = 0; i < S.nvars(); ++i) row.col.push_back(S.from_poly(S.variable(i), 0));
  return image(ModuleMap{Module::free(A, S.degrees()), Module::free(A, {0}), row}).M;
}

HilbertSeries hilbert_series(const Module& M) {
  const PolyRing& S = M.S();
  HilbertSeries hs;
  hs.weights = S.degrees();
  auto lead = M.gb().gb().leading_monomials();
  int lo = INT_MAX;
  for (int d : M.gen_deg()) lo = std::min(lo, d);
  if (lo == INT_MAX) lo = 0;
  hs.shift = lo;
  for (int c = 0; c < M.ngens(); ++c)
    hs.num = padd(hs.num, shift_up(numerator(S, lead[c]), M.gen_deg()[c] - lo));
  return hs;
}

bool same_hilbert_series(const Module& a, const Module& b) {
  HilbertSeries x = hilbert_series(a), y = hilbert_series(b);
  if (x.weights != y.weights) return false;
  auto normal = [](const HilbertSeries& h) {
    Series n = h.num;
    trim(n);
    int s = h.shift, lead = 0;
    while (lead < int(n.size()) && n[lead] == 0) ++lead;
    n.erase(n.begin(), n.begin() + lead);
    return std::make_pair(n.empty() ? 0 : s + lead, n);
  };
  return normal(x) == normal(y);
}

std::vector<std::int64_t> hilbert_function(const Module& M, int lo, int hi) {
  std::vector<std::int64_t> out;
  for (int d = lo; d <= hi; ++d) out.push_back(M.gb().dim(d));
  return out;
}

int krull_dim(const Module& M) {
  const PolyRing& S = M.S();
  const int n = S.nvars();
  auto lead = M.gb().gb().leading_monomials();
  int best = -1;
  for (int c = 0; c < M.ngens(); ++c) {
    std::vector<std::uint32_t> supp;
    for (const auto& m : lead[c]) supp.push_back(m.mask);
    for (std::uint32_t T = 0; T < (1u << n); ++T) {
      int size = __builtin_popcount(T);
      if (size <= best) continue;
      bool ok = true;
      for (auto s : supp)
        if ((s & ~T) == 0) {
          ok = false;
          break;
        }
      if (ok) best = size;
    }
  }
  return best;
}

int krull_dim(const RingPtr& A) { return krull_dim(Module::free(A, {0})); }

Rational multiplicity(const Module& M) {
  HilbertSeries hs = hilbert_series(M);
  Series a = hs.num;
  trim(a);
  if (a.empty()) return {0, 1};
  strip_one_minus_t(a);
  std::int64_t w = 1;
  for (int x : hs.weights) w *= x;
  return make_rational(eval1(a), w);
}

Rational module_rank(const Module& M) {
  HilbertSeries hm = hilbert_series(M), ha = hilbert_series(Module::free(M.ring(), {0}));
  if (hm.pole_order() < ha.pole_order()) return {0, 1};
  Series a = hm.num, b = ha.num;
  trim(a);
  trim(b);
  strip_one_minus_t(a);
  strip_one_minus_t(b);
  return make_rational(eval1(a), eval1(b));
}

int mu(const Module& M) { return prune(M).M.ngens(); }

int projective_dimension_ambient(const Module& M) { return resolve_ambient(M).length(); }

int depth(const Module& M) {
  if (M.is_zero()) throw Error("undefined depth: the module is zero");
  return M.S().nvars() - projective_dimension_ambient(M);
}

bool is_cohen_macaulay(const RingPtr& A) {
  Module F = Module::free(A, {0});
  return depth(F) == krull_dim(F);
}

bool is_mcm(const Module& M) {
  if (!is_cohen_macaulay(M.ring())) throw Error("is_mcm: the ring " + M.A().describe() + " is not Cohen-Macaulay");
  if (M.is_zero()) return false;
  return depth(M) == krull_dim(M.ring());
}

Matrix HomModule::as_matrix(const Vec& h) const {
  const PolyRing& S = M.S();
  const int nN = N.ngens();
  Matrix f{M.gen_deg(), N.gen_deg(), {}};
  Vec v = apply(M.A(), incl, h);
  for (int j = 0; j < M.ngens(); ++j) f.col.push_back(N.A().nf(S.restrict_components(v, j * nN, (j + 1) * nN)));
  return f;
}

HomModule module_hom(const Module& M, const Module& N) {
  if (&M.S() != &N.S()) throw Error("Hom needs modules over the same ring");
  const PolyRing& S = M.S();
  const int nM = M.ngens(), nN = N.ngens();
  const std::vector<int>& a = M.gen_deg();
  const std::vector<int>& b = N.gen_deg();
  auto hom_free = [&](const std::vector<int>& G) {
    Matrix pres;
    for (std::size_t j = 0; j < G.size(); ++j)
      for (int i = 0; i < nN; ++i) pres.tgt.push_back(b[i] - G[j]);
    for (std::size_t j = 0; j < G.size(); ++j)
      for (int l = 0; l < N.pres().cols(); ++l) {
        pres.col.push_back(S.shift_components(N.pres().col[l], int(j) * nN));
        pres.src.push_back(N.pres().src[l] - G[j]);
      }
    return Module(M.ring(), pres);
  };
  Module P = hom_free(a), Q = hom_free(M.pres().src);
  Matrix pre{P.gen_deg(), Q.gen_deg(), {}};
  for (int j = 0; j < nM; ++j)
    for (int i = 0; i < nN; ++i) {
      Vec v;
      for (int l = 0; l < M.pres().cols(); ++l) {
        Poly phi = S.entry(M.pres().col[l], j);
        if (!phi.empty()) v = S.vadd(v, S.from_poly(phi, l * nN + i));
      }
      pre.col.push_back(v);
    }
  Submodule K = kernel(ModuleMap{P, Q, pre});
  Pruned p = prune(K.M);
  HomModule h;
  h.M = M;
  h.N = N;
  h.H = p.M;
  h.incl = compose(M.A(), K.incl, p.from_min);
  return h;
}

std::vector<Matrix> hom_basis(const HomModule& h, int d) {
  std::vector<Matrix> out;
  const auto& basis = h.H.gb().basis(d);
  const PolyRing& S = h.M.S();
  for (const auto& [m, c] : basis) {
    Matrix f = h.as_matrix(S.vmul_term(S.field().one(), m, S.from_poly(S.constant(1), c)));
    for (auto& x : f.tgt) x -= d;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<ModuleMap> hom_maps(const Module& M, const Module& N) {
  std::vector<ModuleMap> out;
  for (auto& f : hom_basis(module_hom(M, N), 0)) out.push_back({M, N, std::move(f)});
  return out;
}

RegularReduction base_change_regular(const Module& M, const std::vector<Poly>& J) {
  int bad = first_irregular(M.ring(), J);
  if (bad)
    throw Error("not a regular sequence: Koszul homology H_1 of the first " + std::to_string(bad) +
                " element(s) is nonzero (element " + M.S().to_string(J[bad - 1]) + ")");
  RegularReduction r;
  r.B = quotient_ring(M.ring(), J);
  r.Mbar = change_ring(M, r.B);
  return r;
}

}  // namespace cmdef
