#ifndef CMDEF_TOOLS_INPUT_HPP
#define CMDEF_TOOLS_INPUT_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cmdef/mf.hpp"
#include "cmdef/obstruct.hpp"

namespace cmdef::cli {

struct Location {
  std::string file;
  int line = 0, col = 0;
  std::string to_string() const;
};

class ParseError : public Error {
 public:
  explicit ParseError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

// A scalar (string, integer or identifier) or a bracketed list.
struct Value {
  enum class Kind { String, Integer, Ident, List };
  Kind kind = Kind::Ident;
  std::string text;
  std::vector<Value> items;
  Location loc;

  bool is_list() const { return kind == Kind::List; }
};
// Lists of values written with the same syntax as document values, e.g. "[[1, x], [0, y]]".
Value parse_value(const std::string& text, const std::string& what);

struct Section {
  std::string kind, name;
  Location loc;
  std::map<std::string, Value> keys;
  const Value* get(const std::string& key) const;
};

struct Config {
  Field field;
  OrderKind order = OrderKind::GRevLex;
  std::string field_name = "GF(32003)";
  std::string order_name = "grevlex";
};
// Defaults, overridden by CMDEF_FIELD ("0", "Q" or a prime) and CMDEF_ORDER ("grevlex", "lex").
Config default_config();
Field parse_field(const std::string& text);

class Document {
 public:
  // Parses and validates; throws ParseError listing every located problem.
  static Document parse(const std::string& text, const std::string& file, const Config& config);
  static Document load(const std::string& path, const Config& config);

  const std::vector<Section>& sections() const { return sections_; }
  std::vector<std::string> names(const std::string& kind) const;

  // "A", or "q" / "q.B" (target), "q.Bp" (source), "q.A", "q.R'", "q.R" for extensions.
  RingPtr ring(const std::string& name) const;
  Module module(const std::string& name) const;
  MatrixFactorization mf(const std::string& name) const;
  SmallExtension extension(const std::string& name) const;
  RingPtr artin(const std::string& name) const;

  // Polynomials and matrices in the variables of a ring; errors name the offending token.
  Poly poly(const RingPtr& R, const Value& v) const;
  Matrix matrix(const RingPtr& R, const Value& rows, const std::vector<int>& tgt) const;

 private:
  const Section& section(const std::string& kind, const std::string& name) const;
  RingPtr build_ring(const Section& s, bool artin) const;
  Module build_module(const Section& s) const;

  Config config_;
  std::vector<Section> sections_;
  mutable std::map<std::string, PolyRingPtr> interned_;
  mutable std::map<std::string, RingPtr> rings_, artins_;
  mutable std::map<std::string, Module> modules_;
  mutable std::map<std::string, MatrixFactorization> mfs_;
  mutable std::map<std::string, SmallExtension> extensions_;
  mutable std::set<std::string> resolving_;
};

}  // namespace cmdef::cli

#endif
