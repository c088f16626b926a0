#include "cmdef/groebner.hpp"

#include <algorithm>

namespace cmdef {

int GroebnerBasis::vec_degree(const PolyRing&, const std::vector<int>& comp_deg, const Vec& v) {
  if (v.empty()) return INT_MIN;
  int d = v[0].m.deg + comp_deg.at(v[0].comp);
  for (const auto& t : v)
    if (t.m.deg + comp_deg.at(t.comp) != d) throw Error("inhomogeneous module element");
  return d;
}

GroebnerBasis::GroebnerBasis(const PolyRing& R, std::vector<int> comp_deg, const std::vector<Vec>& background,
                             const std::vector<Vec>& gens, ModuleOrder order, int max_degree)
    : R_(R), comp_deg_(std::move(comp_deg)), order_(std::move(order)), max_degree_(max_degree) {
  product_criterion_ = comp_deg_.size() == 1 && order_.block.empty();
  by_comp_.resize(comp_deg_.size());

  // (degree, kind, index): kind 0 = background, 1 = candidate generator.
  struct Input {
    int deg, kind, index;
  };
  std::vector<Input> inputs;
  for (std::size_t i = 0; i < background.size(); ++i)
    if (!background[i].empty()) inputs.push_back({vec_degree(R_, comp_deg_, background[i]), 0, int(i)});
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].empty()) inputs.push_back({vec_degree(R_, comp_deg_, gens[i]), 1, int(i)});
  std::stable_sort(inputs.begin(), inputs.end(), [](const Input& a, const Input& b) {
    return a.deg != b.deg ? a.deg < b.deg : a.kind < b.kind;
  });

  std::size_t next = 0;
  while (true) {
    int d = INT_MAX;
    if (next < inputs.size()) d = inputs[next].deg;
    while (!pairs_.empty() && pairs_.begin()->second.empty()) pairs_.erase(pairs_.begin());
    if (!pairs_.empty()) d = std::min(d, pairs_.begin()->first);
    if (d == INT_MAX || d > max_degree_) break;

    while (next < inputs.size() && inputs[next].deg == d && inputs[next].kind == 0) {
      Vec v = background[inputs[next].index];
      to_internal(v);
      Vec r = full_reduce(std::move(v));
      if (!r.empty()) add_element(std::move(r), d);
      ++next;
    }

    auto it = pairs_.find(d);
    if (it != pairs_.end()) {
      auto& list = it->second;
      std::sort(list.begin(), list.end(), [&](const Pair& a, const Pair& b) {
        int c = tcmp({a.lcm, a.comp, {}}, {b.lcm, b.comp, {}});
        if (c) return c < 0;
        return a.i != b.i ? a.i < b.i : a.j < b.j;
      });
      for (std::size_t p = 0; p < pairs_[d].size(); ++p) {
        Pair pr = pairs_[d][p];
        if (pr.dead) continue;
        const Elem& gi = elems_[pr.i];
        const Elem& gj = elems_[pr.j];
        Vec a = R_.vmul_term(R_.field().one(), mono_div(pr.lcm, gi.v[0].m), gi.v);
        Vec s = sub_mul_tail(a, 0, R_.field().one(), mono_div(pr.lcm, gj.v[0].m), gj.v);
        Vec r = full_reduce(std::move(s));
        if (!r.empty()) add_element(std::move(r), d);
      }
      pairs_.erase(d);
    }

    while (next < inputs.size() && inputs[next].deg == d) {
      Vec v = gens[inputs[next].index];
      to_internal(v);
      Vec r = full_reduce(std::move(v));
      if (!r.empty()) {
        add_element(std::move(r), d);
        minimal_.push_back(inputs[next].index);
      }
      ++next;
    }
  }
  pairs_.clear();

  for (std::size_t k = 0; k < elems_.size(); ++k) elems_[k].v = full_reduce(elems_[k].v, int(k));
}

int GroebnerBasis::tcmp(const VTerm& a, const VTerm& b) const {
  if (!order_.block.empty()) {
    int ba = order_.block[a.comp], bb = order_.block[b.comp];
    if (ba != bb) return ba < bb ? 1 : -1;
  }
  if (order_.pot) {
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return R_.cmp(a.m, b.m);
  }
  int c = R_.cmp(a.m, b.m);
  if (c) return c;
  if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
  return 0;
}

void GroebnerBasis::to_internal(Vec& v) const {
  if (order_.pot && order_.block.empty()) return;
  std::sort(v.begin(), v.end(), [&](const VTerm& a, const VTerm& b) { return tcmp(a, b) > 0; });
}

void GroebnerBasis::to_canonical(Vec& v) const {
  if (order_.pot && order_.block.empty()) return;
  R_.sort_vec(v);
}

Vec GroebnerBasis::sub_mul_tail(const Vec& f, std::size_t head, Scalar c, const Monomial& m, const Vec& g) const {
  // f[head] cancels against c*m*g[0]; merge the tails.
  const Field& k = R_.field();
  Scalar nc = k.neg(c);
  Vec r;
  r.reserve(f.size() - head + g.size());
  std::size_t i = head + 1, j = 1;
  while (i < f.size() && j < g.size()) {
    VTerm t{mono_mul(m, g[j].m), g[j].comp, {}};
    int cmpv = tcmp(f[i], t);
    if (cmpv > 0) {
      r.push_back(f[i++]);
    } else if (cmpv < 0) {
      t.c = k.mul(nc, g[j].c);
      r.push_back(t);
      ++j;
    } else {
      Scalar s = k.add(f[i].c, k.mul(nc, g[j].c));
      if (!s.is_zero()) r.push_back({f[i].m, f[i].comp, s});
      ++i;
      ++j;
    }
  }
  for (; i < f.size(); ++i) r.push_back(f[i]);
  for (; j < g.size(); ++j) r.push_back({mono_mul(m, g[j].m), g[j].comp, k.mul(nc, g[j].c)});
  return r;
}

int GroebnerBasis::find_divisor(const Monomial& m, int comp, int skip) const {
  for (int idx : by_comp_[comp]) {
    if (idx == skip) continue;
    if (divides(elems_[idx].v[0].m, m)) return idx;
  }
  return -1;
}

Vec GroebnerBasis::full_reduce(Vec f, int skip) const {
  Vec done;
  while (!f.empty()) {
    std::size_t head = 0;
    int g = -1;
    while (head < f.size()) {
      g = find_divisor(f[head].m, f[head].comp, skip);
      if (g >= 0) break;
      done.push_back(f[head]);
      ++head;
    }
    if (g < 0) break;
    const Vec& gv = elems_[g].v;
    f = sub_mul_tail(f, head, f[head].c, mono_div(f[head].m, gv[0].m), gv);
  }
  return done;
}

void GroebnerBasis::add_element(Vec v, int deg) {
  const Field& k = R_.field();
  Scalar inv = k.inv(v[0].c);
  if (!k.is_one(inv))
    for (auto& t : v) t.c = k.mul(inv, t.c);
  const int idx = static_cast<int>(elems_.size());
  const Monomial lm = v[0].m;
  const int comp = v[0].comp;

  // Chain criterion on pending pairs.
  for (auto& [pd, list] : pairs_) {
    for (auto& p : list) {
      if (p.dead || p.comp != comp || !divides(lm, p.lcm)) continue;
      if (R_.lcm(elems_[p.i].v[0].m, lm) == p.lcm) continue;
      if (R_.lcm(elems_[p.j].v[0].m, lm) == p.lcm) continue;
      p.dead = true;
    }
  }

  struct Cand {
    int i;
    Monomial lcm;
    bool coprime;
    bool keep = true;
  };
  std::vector<Cand> cands;
  for (int i : by_comp_[comp]) {
    const Monomial& li = elems_[i].v[0].m;
    cands.push_back({i, R_.lcm(li, lm), coprime(li, lm)});
  }
  for (auto& c : cands)
    for (const auto& o : cands)
      if (&o != &c && divides(o.lcm, c.lcm) && !(o.lcm == c.lcm)) {
        c.keep = false;
        break;
      }
  for (std::size_t a = 0; a < cands.size(); ++a) {
    if (!cands[a].keep) continue;
    bool group_coprime = product_criterion_ && cands[a].coprime;
    for (std::size_t b = a + 1; b < cands.size(); ++b)
      if (cands[b].keep && cands[b].lcm == cands[a].lcm) {
        if (product_criterion_ && cands[b].coprime) group_coprime = true;
        cands[b].keep = false;
      }
    if (group_coprime) cands[a].keep = false;
  }

  elems_.push_back({std::move(v), deg});
  by_comp_[comp].push_back(idx);
  for (const auto& c : cands) {
    if (!c.keep) continue;
    int pd = c.lcm.deg + comp_deg_[comp];
    if (pd > max_degree_) continue;
    pairs_[pd].push_back({c.i, idx, c.lcm, comp});
  }
}

std::vector<Vec> GroebnerBasis::basis() const {
  std::vector<int> idx(elems_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return tcmp(elems_[a].v[0], elems_[b].v[0]) < 0; });
  std::vector<Vec> out;
  out.reserve(idx.size());
  for (int i : idx) {
    Vec v = elems_[i].v;
    to_canonical(v);
    out.push_back(std::move(v));
  }
  return out;
}

Vec GroebnerBasis::reduce(const Vec& v) const {
  Vec f = v;
  to_internal(f);
  Vec r = full_reduce(std::move(f));
  to_canonical(r);
  return r;
}

std::vector<std::vector<Monomial>> GroebnerBasis::leading_monomials() const {
  std::vector<std::vector<Monomial>> out(comp_deg_.size());
  for (std::size_t c = 0; c < by_comp_.size(); ++c)
    for (int i : by_comp_[c]) out[c].push_back(elems_[i].v[0].m);
  return out;
}

}  // namespace cmdef
