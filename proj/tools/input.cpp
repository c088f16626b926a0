#include "input.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cmdef::cli {

std::string Location::to_string() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(col);
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

ParseError::ParseError(std::vector<std::string> messages) : Error(join(messages, "\n")), messages_(std::move(messages)) {}

namespace {

ParseError located(const Location& loc, const std::string& what) { return ParseError({loc.to_string() + ": " + what}); }

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\''; }

class Lexer {
 public:
  Lexer(const std::string& text, std::string file) : s_(text), file_(std::move(file)) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  Location here() const { return {file_, line_, col_}; }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  // Spaces, tabs and comments; newlines too when `lines` is set.
  void skip(bool lines) {
    while (!done()) {
      char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || (lines && c == '\n')) {
        advance();
      } else {
        break;
      }
    }
  }
  void skip_line() {
    while (!done() && peek() != '\n') advance();
    if (!done()) advance();
  }
  std::string ident() {
    std::string out;
    while (!done() && ident_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  Value value(bool in_list) {
    skip(in_list);
    Value v;
    v.loc = here();
    char c = peek();
    if (c == '"') {
      v.kind = Value::Kind::String;
      advance();
      while (!done() && peek() != '"') {
        if (peek() == '\n') throw located(v.loc, "unterminated string");
        v.text += peek();
        advance();
      }
      if (done()) throw located(v.loc, "unterminated string");
      advance();
    } else if (c == '[') {
      v.kind = Value::Kind::List;
      advance();
      skip(true);
      while (peek() != ']') {
        if (done()) throw located(v.loc, "unterminated list");
        v.items.push_back(value(true));
        skip(true);
        if (peek() == ',') {
          advance();
          skip(true);
        } else if (peek() != ']') {
          throw located(here(), "expected ',' or ']' in list");
        }
      }
      advance();
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      v.kind = Value::Kind::Integer;
      v.text += c;
      advance();
      while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
        v.text += peek();
        advance();
      }
      if (v.text == "-") throw located(v.loc, "expected a number after '-'");
    } else if (ident_start(c)) {
      v.kind = Value::Kind::Ident;
      v.text = ident();
    } else {
      throw located(v.loc, std::string("unexpected character '") + (c ? std::string(1, c) : "end of input") + "'");
    }
    return v;
  }

 private:
  const std::string& s_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

const std::set<std::string> kSectionKinds{"ring", "module", "mf", "artin", "small-extension"};

int as_int(const Value& v, const std::string& what) {
  if (v.kind != Value::Kind::Integer) throw located(v.loc, what + " must be an integer");
  try {
    return std::stoi(v.text);
  } catch (const std::exception&) {
    throw located(v.loc, what + " is out of range");
  }
}

const std::vector<Value>& as_list(const Value& v, const std::string& what) {
  if (!v.is_list()) throw located(v.loc, what + " must be a list");
  return v.items;
}

std::string as_name(const Value& v, const std::string& what) {
  if (v.kind != Value::Kind::Ident && v.kind != Value::Kind::String) throw located(v.loc, what + " must be a name");
  return v.text;
}

std::vector<int> int_list(const Value& v, const std::string& what) {
  std::vector<int> out;
  for (const auto& x : as_list(v, what)) out.push_back(as_int(x, what + " entry"));
  return out;
}

}  // namespace

Value parse_value(const std::string& text, const std::string& what) {
  Lexer lx(text, what);
  Value v = lx.value(true);
  lx.skip(true);
  if (!lx.done()) throw located(lx.here(), "unexpected trailing text");
  return v;
}

const Value* Section::get(const std::string& key) const {
  auto it = keys.find(key);
  return it == keys.end() ? nullptr : &it->second;
}

Field parse_field(const std::string& text) {
  if (text == "Q" || text == "QQ" || text == "0") return Field::rationals();
  std::string digits = text;
  if (digits.rfind("GF(", 0) == 0 && digits.back() == ')') digits = digits.substr(3, digits.size() - 4);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }))
    throw Error("bad field specification '" + text + "' (expected Q or a prime)");
  return Field::prime(std::stoll(digits));
}

namespace {

OrderKind parse_order(const std::string& name) {
  if (name == "grevlex") return OrderKind::GRevLex;
  if (name == "lex") return OrderKind::Lex;
  throw Error("bad monomial order '" + name + "' (expected grevlex or lex)");
}

}  // namespace

Config default_config() {
  Config c;
  if (const char* f = std::getenv("CMDEF_FIELD"); f && *f) {
    c.field = parse_field(f);
    c.field_name = c.field.name();
  }
  if (const char* o = std::getenv("CMDEF_ORDER"); o && *o) {
    c.order = parse_order(o);
    c.order_name = o;
  }
  return c;
}

Document Document::load(const std::string& path, const Config& config) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read input file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path, config);
}

Document Document::parse(const std::string& text, const std::string& file, const Config& config) {
  Document doc;
  doc.config_ = config;
  std::vector<std::string> errors;
  Lexer lx(text, file);
  Section* cur = nullptr;
  std::set<std::string> names;
  while (true) {
    lx.skip(true);
    if (lx.done()) break;
    Location at = lx.here();
    try {
      if (lx.peek() == '[') {
        lx.advance();
        lx.skip(false);
        std::string kind = lx.ident();
        while (lx.peek() == '-') {
          lx.advance();
          kind += "-" + lx.ident();
        }
        lx.skip(false);
        std::string name = lx.ident();
        lx.skip(false);
        if (lx.peek() != ']') throw located(lx.here(), "expected ']' to close the section header");
        lx.advance();
        if (!kSectionKinds.count(kind)) throw located(at, "unknown section kind '" + kind + "'");
        if (name.empty()) throw located(at, "section [" + kind + "] needs a name");
        if (name.find('.') != std::string::npos) throw located(at, "section names may not contain '.'");
        if (!names.insert(name).second) throw located(at, "duplicate name '" + name + "'");
        doc.sections_.push_back({kind, name, at, {}});
        cur = &doc.sections_.back();
      } else if (ident_start(lx.peek())) {
        std::string key = lx.ident();
        lx.skip(false);
        if (lx.peek() != '=') throw located(lx.here(), "expected '=' after key '" + key + "'");
        lx.advance();
        Value v = lx.value(false);
        if (!cur) throw located(at, "key '" + key + "' outside any section");
        if (!cur->keys.emplace(key, v).second) throw located(at, "duplicate key '" + key + "'");
      } else {
        throw located(at, std::string("unexpected character '") + lx.peek() + "'");
      }
      lx.skip(false);
      if (!lx.done() && lx.peek() != '\n') throw located(lx.here(), "unexpected text after value");
    } catch (const ParseError& e) {
      errors.insert(errors.end(), e.messages().begin(), e.messages().end());
      lx.skip_line();
    }
  }
  if (!errors.empty()) throw ParseError(errors);

  // Validate every block; derived modules only check their references.
  for (const auto& s : doc.sections_) {
    try {
      if (s.kind == "ring") doc.ring(s.name);
      else if (s.kind == "artin") doc.artin(s.name);
      else if (s.kind == "mf") doc.mf(s.name);
      else if (s.kind == "small-extension") doc.extension(s.name);
      else if (s.kind == "module") {
        const Value* kind = s.get("kind");
        std::string k = kind ? as_name(*kind, "kind") : "presentation";
        if (k == "approximation" || k == "hull" || k == "syzygy") {
          const Value* src = s.get("source");
          if (!src) throw located(s.loc, "module '" + s.name + "' needs a source module");
          doc.section("module", as_name(*src, "source"));
        } else {
          doc.module(s.name);
        }
      }
    } catch (const ParseError& e) {
      errors.insert(errors.end(), e.messages().begin(), e.messages().end());
    } catch (const Error& e) {
      errors.push_back(s.loc.to_string() + ": [" + s.kind + " " + s.name + "] " + e.what());
    }
  }
  // A broken ring is reported once even when several blocks use it.
  std::vector<std::string> unique;
  for (auto& e : errors)
    if (std::find(unique.begin(), unique.end(), e) == unique.end()) unique.push_back(std::move(e));
  if (!unique.empty()) throw ParseError(unique);
  return doc;
}

std::vector<std::string> Document::names(const std::string& kind) const {
  std::vector<std::string> out;
  for (const auto& s : sections_)
    if (s.kind == kind) out.push_back(s.name);
  return out;
}

const Section& Document::section(const std::string& kind, const std::string& name) const {
  for (const auto& s : sections_)
    if (s.name == name) {
      if (s.kind != kind && !(kind == "ring" && s.kind == "artin"))
        throw Error("'" + name + "' is a [" + s.kind + "] block, not a [" + kind + "] block");
      return s;
    }
  throw Error("unresolved reference to " + kind + " '" + name + "'");
}

Poly Document::poly(const RingPtr& R, const Value& v) const {
  if (v.is_list()) throw located(v.loc, "expected a polynomial, found a list");
  const PolyRing& S = R->S();
  const std::string& t = v.text;
  const int offset = v.kind == Value::Kind::String ? 1 : 0;
  for (std::size_t i = 0; i < t.size();) {
    if (ident_start(t[i])) {
      std::size_t j = i;
      while (j < t.size() && (std::isalnum(static_cast<unsigned char>(t[j])) || t[j] == '_')) ++j;
      std::string name = t.substr(i, j - i);
      if (S.var_index(name) < 0) {
        Location at = v.loc;
        at.col += offset + int(i);
        throw located(at, "unknown variable '" + name + "' (ring variables: " + join(S.names(), ", ") + ")");
      }
      i = j;
    } else {
      ++i;
    }
  }
  try {
    return S.parse(t);
  } catch (const Error& e) {
    throw located(v.loc, e.what());
  }
}

Matrix Document::matrix(const RingPtr& R, const Value& rows, const std::vector<int>& tgt) const {
  const auto& rs = as_list(rows, "matrix");
  if (rs.size() != tgt.size())
    throw located(rows.loc, "matrix has " + std::to_string(rs.size()) + " rows, expected " + std::to_string(tgt.size()));
  std::vector<std::vector<Poly>> entries;
  std::size_t ncols = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto& row = as_list(rs[i], "matrix row");
    if (i && row.size() != ncols) throw located(rs[i].loc, "matrix rows have different lengths");
    ncols = row.size();
    entries.emplace_back();
    for (const auto& e : row) entries.back().push_back(R->nf(poly(R, e)));
  }
  const PolyRing& S = R->S();
  std::vector<int> src;
  for (std::size_t j = 0; j < ncols; ++j) {
    std::optional<int> d;
    for (std::size_t i = 0; i < tgt.size(); ++i) {
      const Poly& p = entries[i][j];
      if (p.empty()) continue;
      if (!S.is_homogeneous(p)) throw located(rs[i].items[j].loc, "inhomogeneous entry");
      int dj = tgt[i] + S.degree(p);
      if (d && *d != dj) throw located(rs[i].items[j].loc, "column " + std::to_string(j + 1) + " is not homogeneous");
      d = dj;
    }
    if (!d) throw located(rows.loc, "column " + std::to_string(j + 1) + " is zero");
    src.push_back(*d);
  }
  return matrix_from_entries(S, entries, tgt, src);
}

RingPtr Document::build_ring(const Section& s, bool artin) const {
  const Value* vars = s.get("vars");
  if (!vars) throw located(s.loc, "[" + s.kind + " " + s.name + "] needs vars");
  std::vector<std::string> names;
  for (const auto& v : as_list(*vars, "vars")) {
    if (v.kind != Value::Kind::Ident || v.text.find_first_of(".'") != std::string::npos)
      throw located(v.loc, "variable names must be identifiers");
    names.push_back(v.text);
  }
  std::vector<int> degs(names.size(), 1);
  if (const Value* d = s.get("degrees")) {
    degs = int_list(*d, "degrees");
    if (degs.size() != names.size()) throw located(d->loc, "degrees must list one degree per variable");
  }
  Field k = config_.field;
  std::string fname = config_.field_name;
  if (const Value* f = s.get("field")) {
    try {
      k = parse_field(f->text);
    } catch (const Error& e) {
      throw located(f->loc, e.what());
    }
    fname = k.name();
  }
  OrderKind order = config_.order;
  std::string oname = config_.order_name;
  if (const Value* o = s.get("order")) {
    try {
      order = parse_order(o->text);
    } catch (const Error& e) {
      throw located(o->loc, e.what());
    }
    oname = o->text;
  }
  std::string key = fname + "|" + oname + "|" + join(names, ",") + "|";
  for (int d : degs) key += std::to_string(d) + ",";
  PolyRingPtr& S = interned_[key];
  if (!S) S = std::make_shared<const PolyRing>(k, names, degs, order);
  std::vector<Poly> ideal;
  auto probe = make_ring(S, {});
  if (const Value* I = s.get("ideal"))
    for (const auto& g : as_list(*I, "ideal")) {
      Poly p = poly(probe, g);
      if (!S->is_homogeneous(p)) throw located(g.loc, "ideal generator is not homogeneous");
      ideal.push_back(p);
    }
  RingPtr R = make_ring(S, ideal);
  if (artin) artin_algebra(R);
  return R;
}

RingPtr Document::artin(const std::string& name) const {
  if (auto it = artins_.find(name); it != artins_.end()) return it->second;
  const Section& s = section("artin", name);
  RingPtr R = build_ring(s, true);
  artins_[name] = R;
  return R;
}

RingPtr Document::ring(const std::string& name) const {
  if (auto dot = name.find('.'); dot != std::string::npos) {
    SmallExtension q = extension(name.substr(0, dot));
    std::string part = name.substr(dot + 1);
    if (part == "B") return q.B;
    if (part == "Bp" || part == "source") return q.Bp;
    if (q.coefficient()) {
      if (part == "A") return q.A;
      if (part == "R'" || part == "Rp") return q.Rp;
      if (part == "R") return q.R;
    }
    throw Error("unknown ring '" + name + "' (use .B, .Bp, .A, .R or .R')");
  }
  for (const auto& s : sections_)
    if (s.name == name && s.kind == "small-extension") return extension(name).B;
  if (auto it = rings_.find(name); it != rings_.end()) return it->second;
  const Section& s = section("ring", name);
  RingPtr R = s.kind == "artin" ? artin(name) : build_ring(s, false);
  rings_[name] = R;
  return R;
}

MatrixFactorization Document::mf(const std::string& name) const {
  if (auto it = mfs_.find(name); it != mfs_.end()) return it->second;
  const Section& s = section("mf", name);
  const Value* rv = s.get("ring");
  const Value* fv = s.get("f");
  const Value* phi = s.get("phi");
  const Value* psi = s.get("psi");
  if (!rv || !fv || !phi || !psi) throw located(s.loc, "[mf " + name + "] needs ring, f, phi and psi");
  RingPtr Q = ring(as_name(*rv, "ring"));
  if (!Q->is_polynomial_ring()) throw located(rv->loc, "matrix factorizations live over a polynomial ring");
  const PolyRing& S = Q->S();
  Poly f = poly(Q, *fv);
  auto read = [&](const Value& v) {
    std::vector<std::vector<Poly>> rows;
    for (const auto& r : as_list(v, "matrix")) {
      rows.emplace_back();
      for (const auto& e : as_list(r, "matrix row")) rows.back().push_back(poly(Q, e));
    }
    return rows;
  };
  auto a = read(*phi), b = read(*psi);
  const std::size_t n = a.size();
  auto square = [&](const std::vector<std::vector<Poly>>& m) {
    return std::all_of(m.begin(), m.end(), [&](const auto& r) { return r.size() == n; });
  };
  if (n == 0 || b.size() != n || !square(a) || !square(b))
    throw located(phi->loc, "phi and psi must be square matrices of the same size");
  // Name the first failing entry of phi psi = f I or psi phi = f I.
  for (int pass = 0; pass < 2; ++pass) {
    const auto& x = pass ? b : a;
    const auto& y = pass ? a : b;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Poly e;
        for (std::size_t l = 0; l < n; ++l) e = S.add(e, S.mul(x[i][l], y[l][j]));
        Poly want = i == j ? f : Poly{};
        if (!S.sub(e, want).empty())
          throw located(pass ? psi->loc : phi->loc, std::string(pass ? "psi phi" : "phi psi") + " entry (" +
                                                        std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                                        ") is " + (e.empty() ? "0" : S.to_string(e)) + ", expected " +
                                                        (want.empty() ? "0" : S.to_string(want)));
      }
  }
  MatrixFactorization out = factorization_from_entries(Q, f, a, b);
  mfs_[name] = out;
  return out;
}

SmallExtension Document::extension(const std::string& name) const {
  if (auto it = extensions_.find(name); it != extensions_.end()) return it->second;
  const Section& s = section("small-extension", name);
  if (!resolving_.insert(name).second) throw Error("circular reference through '" + name + "'");
  struct Guard {
    std::set<std::string>& r;
    std::string n;
    ~Guard() { r.erase(n); }
  } guard{resolving_, name};
  const Value* kv = s.get("kernel");
  if (!kv) throw located(s.loc, "[small-extension " + name + "] needs a kernel");
  SmallExtension q;
  if (const Value* src = s.get("source")) {
    RingPtr Bp = ring(as_name(*src, "source"));
    std::vector<Poly> J;
    for (const auto& g : as_list(*kv, "kernel")) J.push_back(poly(Bp, g));
    q = small_extension(Bp, J);
  } else {
    const Value* base = s.get("base");
    const Value* coeff = s.get("coefficients");
    if (!base || !coeff) throw located(s.loc, "[small-extension " + name + "] needs source, or base and coefficients");
    RingPtr A = ring(as_name(*base, "base"));
    RingPtr Rp = artin(as_name(*coeff, "coefficients"));
    std::vector<Poly> I;
    for (const auto& g : as_list(*kv, "kernel")) I.push_back(poly(Rp, g));
    q = artin_extension(A, Rp, I);
  }
  extensions_[name] = q;
  return q;
}

Module Document::module(const std::string& name) const {
  if (auto it = modules_.find(name); it != modules_.end()) return it->second;
  const Section& s = section("module", name);
  if (!resolving_.insert(name).second) throw Error("circular reference through '" + name + "'");
  struct Guard {
    std::set<std::string>& r;
    std::string n;
    ~Guard() { r.erase(n); }
  } guard{resolving_, name};
  Module M = build_module(s);
  modules_[name] = M;
  return M;
}

Module Document::build_module(const Section& s) const {
  const Value* kind_v = s.get("kind");
  const std::string kind = kind_v ? as_name(*kind_v, "kind") : "presentation";
  auto need = [&](const char* key) -> const Value& {
    const Value* v = s.get(key);
    if (!v) throw located(s.loc, "module '" + s.name + "' of kind " + kind + " needs '" + key + "'");
    return *v;
  };
  if (kind == "approximation" || kind == "hull" || kind == "syzygy") {
    Module N = module(as_name(need("source"), "source"));
    if (kind == "syzygy") return syzygy_module(N, as_int(need("index"), "index"));
    int c = krull_dim(N.ring()) - krull_dim(N);
    if (const Value* cv = s.get("codim")) c = as_int(*cv, "codim");
    ApproxTriple t = mcm_approx_cm(N, c);
    const Value* pv = s.get("part");
    std::string part = pv ? as_name(*pv, "part") : (kind == "hull" ? "Lp" : "M");
    if (kind == "approximation") {
      if (part == "M") return t.M;
      if (part == "L") return t.L;
      throw located(pv->loc, "approximation part must be M or L");
    }
    HullTriple h = fid_hull(t);
    if (part == "Lp") return h.Lp;
    if (part == "Mp") return h.Mp;
    throw located(pv->loc, "hull part must be Lp or Mp");
  }
  RingPtr A = ring(as_name(need("ring"), "ring"));
  if (kind == "residue") return residue_field_module(A);
  if (kind == "free") return Module::free(A, int_list(need("degrees"), "degrees"));
  if (kind == "cyclic" || kind == "ideal") {
    const Value& gv = need("gens");
    std::vector<Value> row;
    for (const auto& g : as_list(gv, "gens")) row.push_back(g);
    Value rows;
    rows.kind = Value::Kind::List;
    rows.loc = gv.loc;
    Value r;
    r.kind = Value::Kind::List;
    r.loc = gv.loc;
    r.items = row;
    rows.items.push_back(r);
    Matrix m = matrix(A, rows, {0});
    if (kind == "cyclic") return Module(A, m);
    return image(ModuleMap{Module::free(A, m.src), Module::free(A, {0}), m}).M;
  }
  if (kind != "presentation") throw located(kind_v->loc, "unknown module kind '" + kind + "'");
  std::vector<int> degs = int_list(need("degrees"), "degrees");
  Matrix m = zero_matrix({}, degs);
  if (const Value* rel = s.get("relations")) {
    // Each listed relation is one column.
    Value rows;
    rows.kind = Value::Kind::List;
    rows.loc = rel->loc;
    const auto& cols = as_list(*rel, "relations");
    for (std::size_t i = 0; i < degs.size(); ++i) {
      Value r;
      r.kind = Value::Kind::List;
      r.loc = rel->loc;
      for (const auto& c : cols) {
        const auto& entries = as_list(c, "relation");
        if (entries.size() != degs.size())
          throw located(c.loc, "relation has " + std::to_string(entries.size()) + " entries, expected " +
                                   std::to_string(degs.size()));
        r.items.push_back(entries[i]);
      }
      rows.items.push_back(r);
    }
    if (!cols.empty()) m = matrix(A, rows, degs);
  }
  return Module(A, m);
}

}  // namespace cmdef::cli
