#ifndef CMDEF_TOOLS_SUITES_HPP
#define CMDEF_TOOLS_SUITES_HPP

#include <string>
#include <vector>

#include "input.hpp"
#include "json.hpp"

namespace cmdef::cli {

using Json = nlohmann::ordered_json;

struct Identity {
  std::string name;
  std::string lhs, rhs;
  bool pass = false;
};

struct SuiteReport {
  std::string name;
  std::vector<Identity> identities;
  bool ok() const;
  int failures() const;
  void check(const std::string& what, const std::string& lhs, const std::string& rhs);
  void check(const std::string& what, long long lhs, long long rhs);
  void check(const std::string& what, bool holds);
  void append(const SuiteReport& other);
  Json to_json() const;
};

// 2 x 2 minors of the 2 x m Hankel matrix in z0 .. zm.
RingPtr veronese_ring(int m, const Field& k = Field{});

// MCM approximation of k over A(m) and the fundamental module.
SuiteReport veronese_suite(int m, const Field& k = Field{});
SuiteReport fundamental_suite(int m, const Field& k = Field{});
// k over k[x]/(f) with f = x^2 (node) or x^3 (cusp), through the Knorrer approximation.
SuiteReport knorrer_suite(const std::string& f, const Field& k = Field{});
// Splitting criterion and tangent map on the Knorrer cases and on k over k[x]/(x^2).
SuiteReport splitting_suite(const Field& k = Field{});
SuiteReport tangent_suite(const Field& k = Field{});

struct ObstructionSuites {
  SuiteReport lifting;    // obstruction vanishes iff the structure search finds a lifting
  SuiteReport four_term;  // Yoneda representative agrees with the obstruction
  SuiteReport torsor;     // action, difference and base change identities
};
ObstructionSuites obstruction_suites(int cap = 8, const Field& k = Field{});
SuiteReport omap_suite(const Field& k = Field{});

// Complexes square to zero, exactness certificates, GB membership and hypersurface Hilbert functions.
SuiteReport soundness_suite(const Document& doc, const std::string& label);

}  // namespace cmdef::cli

#endif
