#include "commands.hpp"

#include <sstream>

namespace cmdef::cli {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "gb",         "resolve", "betti",  "ext",    "depth",         "dim",        "canonical",
      "mcm-approx", "fid-hull", "fundamental", "knorrer", "eisenbud", "obstruction", "lift",
      "torsor",     "splits",  "tangent-sigma", "omap-check", "hypotheses", "verify"};
  return names;
}

const std::string& Options::need(const std::string& flag) const {
  auto it = values.find(flag);
  if (it == values.end()) throw Error("command '" + command + "' needs --" + flag);
  return it->second;
}

std::optional<std::string> Options::get(const std::string& flag) const {
  auto it = values.find(flag);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

namespace {

Json vec_json(const PolyRing& S, const Vec& v, int rank) {
  Json out = Json::array();
  for (int c = 0; c < rank; ++c) {
    Poly p = S.entry(v, c);
    out.push_back(p.empty() ? "0" : S.to_string(p));
  }
  return out;
}

Json matrix_json(const PolyRing& S, const Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : matrix_strings(S, m)) rows.push_back(r);
  return rows;
}

Json module_json(const Module& M) {
  return Json{{"ring", M.A().describe()},
              {"generator_degrees", M.gen_deg()},
              {"relation_degrees", M.pres().src},
              {"relations", matrix_json(M.S(), M.pres())}};
}

Json svec_json(const Field& k, const SVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(k.to_string(x));
  return out;
}

Json fibre_json(const Field& k, const std::vector<SVec>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(svec_json(k, x));
  return out;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

Json resolution_json(const FreeResolution& r, int window, bool matrices) {
  Json out;
  BettiTable b = betti(r);
  std::vector<int> totals;
  for (int i = 0; i <= b.max_index(); ++i) totals.push_back(b.total(i));
  out["betti_totals"] = totals;
  out["betti_table"] = lines(b.to_string());
  out["length"] = r.length();
  out["minimal"] = r.minimal;
  out["truncated"] = r.truncated;
  out["d_squared_zero"] = squares_to_zero(r);
  ExactnessReport e = certify_exact(r, window);
  out["exact"] = e.exact;
  if (matrices) {
    Json d = Json::array();
    for (const auto& m : r.d) d.push_back(matrix_json(r.ring->S(), m));
    out["differentials"] = d;
  }
  return out;
}

Json approx_json(const ApproxTriple& t) {
  Certificate c = certify(t);
  return Json{{"certificate", Json{{"exact", c.exact}, {"mcm", c.mcm}, {"fid", c.fid}, {"failure", c.failure}}},
              {"minimal", t.minimal},
              {"mu_M", mu(t.M)},
              {"rank_M", module_rank(t.M).to_string()},
              {"mu_L", mu(t.L)},
              {"M", module_json(t.M)},
              {"L", module_json(t.L)},
              {"pi", matrix_json(t.M.S(), t.pi.mat)}};
}

Json certificate_json(const LiftingCertificate& c) {
  return Json{{"reduces", c.reduces}, {"injective", c.injective}, {"ok", c.ok()}, {"failure", c.failure}};
}

SVec parse_class(const Field& k, const std::string& text, int dim) {
  Value v = parse_value(text, "--class");
  if (!v.is_list()) throw Error("--class must be a list such as [1, 0]");
  SVec out;
  for (const auto& x : v.items) {
    if (x.kind != Value::Kind::Integer) throw Error("--class entries must be integers");
    out.push_back(k.from_int(std::stoll(x.text)));
  }
  if (int(out.size()) != dim)
    throw Error("--class has " + std::to_string(out.size()) + " coordinates, Ext^1 has dimension " + std::to_string(dim));
  return out;
}

std::vector<Poly> parse_polys(const Document& doc, const RingPtr& R, const std::string& text, const std::string& flag) {
  Value v = parse_value(text, "--" + flag);
  std::vector<Poly> out;
  if (!v.is_list()) return {doc.poly(R, v)};
  for (const auto& x : v.items) out.push_back(doc.poly(R, x));
  return out;
}

ApproxTriple approximation(const Module& N, const Options& opt) {
  if (opt.get("method") == "dim2") return approx_residue_field_dim2(N.ring());
  int c = krull_dim(N.ring()) - krull_dim(N);
  if (auto s = opt.get("codim")) c = std::stoi(*s);
  return mcm_approx_cm(N, c);
}

// N over A/J with its approximation over A, for splits and tangent-sigma.
struct QuotientSetup {
  Module N;
  ApproxTriple t;
  std::vector<Poly> J;
  RingPtr A;
};

QuotientSetup quotient_setup(const Document& doc, const Options& opt) {
  Module N = doc.module(opt.need("module"));
  QuotientSetup s;
  if (opt.get("approx") == "knorrer") {
    KnorrerApprox ka = knorrer_approx(N);
    s.N = ka.N;
    s.t = ka.triple;
    s.J = {ka.rings.Qt->S().variable(ka.rings.t)};
    s.A = ka.rings.A;
    return s;
  }
  s.A = doc.ring(opt.need("ring"));
  s.J = parse_polys(doc, s.A, opt.need("regular"), "regular");
  RingPtr B = quotient_ring(s.A, s.J);
  if (&N.S() != &s.A->S() || !is_quotient_of(*N.ring(), *B) || !is_quotient_of(*B, *N.ring()))
    throw Error("module '" + opt.need("module") + "' is not over the quotient of " + opt.need("ring") + " by --regular");
  s.N = Module(B, N.pres());
  s.t = mcm_approx_cm(restrict_scalars(s.N, s.A), int(s.J.size()));
  return s;
}

Json suite_json(const std::vector<SuiteReport>& suites, bool& ok) {
  Json out = Json::array();
  for (const auto& s : suites) {
    ok = ok && s.ok();
    out.push_back(s.to_json());
  }
  return out;
}

Json run_verify(const Options& opt, const Config& config, bool& ok) {
  const Field& k = config.field;
  std::vector<SuiteReport> suites;
  const std::string& name = opt.suite;
  if (name == "veronese") {
    std::vector<int> ms{2, 3};
    if (auto m = opt.get("m")) ms = {std::stoi(*m)};
    for (int m : ms) {
      suites.push_back(veronese_suite(m, k));
      suites.push_back(fundamental_suite(m, k));
    }
  } else if (name == "knorrer") {
    std::string which = opt.get("case").value_or("all");
    if (which != "all" && which != "node" && which != "cusp") throw Error("--case must be node, cusp or all");
    if (which != "cusp") suites.push_back(knorrer_suite("x^2", k));
    if (which != "node") suites.push_back(knorrer_suite("x^3", k));
    suites.push_back(splitting_suite(k));
    suites.push_back(tangent_suite(k));
  } else if (name == "obstruction") {
    ObstructionSuites o = obstruction_suites(opt.cap, k);
    suites = {o.lifting, o.four_term, o.torsor};
  } else if (name == "omap") {
    suites.push_back(omap_suite(k));
  } else {
    throw Error("unknown verify suite '" + name + "' (expected veronese, knorrer, obstruction or omap)");
  }
  return suite_json(suites, ok);
}

}  // namespace

Outcome run(const Options& opt, const Document* docp, const Config& config) {
  Outcome out;
  Json result;
  const std::string& cmd = opt.command;
  if (cmd == "verify") {
    result = run_verify(opt, config, out.ok);
  } else {
    if (!docp) throw Error("command '" + cmd + "' needs an input document (--input FILE)");
    const Document& doc = *docp;
    if (cmd == "gb") {
      if (auto m = opt.get("module")) {
        Module M = doc.module(*m);
        Json basis = Json::array();
        for (const auto& v : M.gb().gb().basis()) basis.push_back(vec_json(M.S(), v, M.ngens()));
        result = Json{{"module", *m}, {"ring", M.A().describe()}, {"basis", basis}};
      } else {
        RingPtr R = doc.ring(opt.need("ring"));
        Json basis = Json::array();
        for (const auto& g : R->gb()) basis.push_back(R->S().to_string(g));
        result = Json{{"ring", R->describe()}, {"basis", basis}};
      }
    } else if (cmd == "resolve" || cmd == "betti") {
      Module M = doc.module(opt.need("module"));
      result = resolution_json(resolve(M, opt.steps), opt.window, cmd == "resolve");
    } else if (cmd == "ext") {
      Module M = doc.module(opt.need("from")), N = doc.module(opt.need("to"));
      const int i = std::stoi(opt.need("i"));
      ExtModule E = ext_module(i, M, N, opt.window);
      Json dims = Json::object();
      for (std::size_t j = 0; j < E.dims.size(); ++j)
        if (E.dims[j]) dims[std::to_string(E.lo + int(j))] = E.dims[j];
      result = Json{{"i", i}, {"finite_length", E.finite}};
      if (E.finite) result["dimension"] = E.total;
      result["dimensions_by_degree"] = dims;
    } else if (cmd == "depth") {
      Module M = doc.module(opt.need("module"));
      result = Json{{"depth", depth(M)}, {"dim", krull_dim(M)}, {"ring_dim", krull_dim(M.ring())}, {"mcm", is_mcm(M)}};
    } else if (cmd == "dim") {
      Module M = opt.get("module") ? doc.module(*opt.get("module")) : Module::free(doc.ring(opt.need("ring")), {0});
      result = Json{{"dim", krull_dim(M)},
                    {"multiplicity", multiplicity(M).to_string()},
                    {"hilbert_series", hilbert_series(M).to_string()}};
      if (!opt.get("module")) result["cohen_macaulay"] = is_cohen_macaulay(M.ring());
    } else if (cmd == "canonical") {
      RingPtr A = doc.ring(opt.need("ring"));
      Module w = canonical_module(A);
      const int t = mu(w);
      result = Json{{"type", t}, {"gorenstein", t == 1}, {"omega", module_json(w)}};
    } else if (cmd == "mcm-approx") {
      result = approx_json(approximation(doc.module(opt.need("module")), opt));
    } else if (cmd == "fid-hull") {
      HullTriple h = fid_hull(approximation(doc.module(opt.need("module")), opt));
      Certificate c = certify(h);
      result = Json{{"certificate", Json{{"exact", c.exact}, {"mcm", c.mcm}, {"fid", c.fid}, {"failure", c.failure}}},
                    {"Lp", module_json(h.Lp)},
                    {"Mp", module_json(h.Mp)}};
    } else if (cmd == "fundamental") {
      Fundamental f = fundamental_module(doc.ring(opt.need("ring")));
      result = Json{{"exact", is_exact(f.seq)},
                    {"mcm", is_mcm(f.E)},
                    {"rank", module_rank(f.E).to_string()},
                    {"mu", mu(f.E)},
                    {"ext1_dim", ext_dim(1, f.E, f.E)},
                    {"E", module_json(f.E)}};
    } else if (cmd == "knorrer") {
      if (auto m = opt.get("module")) {
        KnorrerApprox ka = knorrer_approx(doc.module(*m));
        const long long e1 = ext_dim(1, ka.N, ka.N), e2 = ext_dim(2, ka.N, ka.N);
        result = approx_json(ka.triple);
        result["free_kernel"] = ka.free_kernel;
        result["kernel_rank"] = ka.kernel_rank;
        result["ext1_B_N_N"] = e1;
        result["ext2_B_N_N"] = e2;
        result["ext1_A_M_M"] = ext_dim(1, ka.triple.M, ka.triple.M);
      } else {
        MatrixFactorization mf = doc.mf(opt.need("mf"));
        MatrixFactorization K = knorrer(mf);
        result = Json{{"ring", K.Q->describe()},
                      {"F", K.Q->S().to_string(K.f)},
                      {"Phi", matrix_json(K.Q->S(), K.phi)},
                      {"Psi", matrix_json(K.Q->S(), K.psi)},
                      {"factorization", is_matrix_factorization(K)}};
      }
    } else if (cmd == "eisenbud") {
      MatrixFactorization mf = doc.mf(opt.need("mf"));
      if (opt.get("over") == "A") {
        KnorrerRings R = knorrer_rings(mf.Q, mf.f);
        result = resolution_json(knorrer_resolution(mf, R, opt.steps), opt.window, true);
      } else {
        result = resolution_json(eisenbud_resolution(mf, opt.steps), opt.window, true);
      }
    } else if (cmd == "obstruction" || cmd == "lift" || cmd == "torsor") {
      SmallExtension q = doc.extension(opt.need("ext"));
      LiftingProblem P = lifting_problem(q, doc.module(opt.need("module")));
      const Field& k = q.B->field();
      result = Json{{"ext1_dim", P.ext1->dim()}, {"ext2_dim", P.ext2->dim()}};
      if (cmd == "obstruction") {
        ObstructionClass ob = obstruction(P);
        result["obstruction"] = svec_json(k, ob.coords);
        result["zero"] = ob.zero();
        result["four_term"] = svec_json(k, four_term_ob(P).coords);
        if (q.coefficient()) {
          result["closed_fibre"] = fibre_json(k, ob.fibre);
          result["fibre_dims_match"] = P.fibre_dims_match;
        }
        if (opt.get("brute")) {
          BruteForceLifting bf = brute_force_lifting(q, P.N, opt.cap);
          result["search"] = Json{{"lifting_exists", bf.exists},
                                  {"dim_N", bf.dim_N},
                                  {"dim_NJ", bf.dim_NJ},
                                  {"unknowns", bf.unknowns},
                                  {"classes_dim", bf.classes_dim()}};
        }
      } else if (cmd == "lift") {
        LiftResult r = lift_module(P);
        result["obstruction"] = svec_json(k, r.ob.coords);
        result["obstructed"] = !r.lifting.has_value();
        if (r.lifting) {
          result["lifting"] = module_json(*r.lifting);
          result["certificate"] = certificate_json(certify_lifting(P, *r.lifting));
        }
      } else {
        Module X = doc.module(opt.need("lifting"));
        result["certificate"] = certificate_json(certify_lifting(P, X));
        if (auto other = opt.get("other")) {
          LiftingDifference d = lifting_difference(P, X, doc.module(*other));
          result["difference"] = svec_json(k, d.coords);
          if (q.coefficient()) result["difference_closed_fibre"] = fibre_json(k, d.fibre);
        } else {
          SVec xi = parse_class(k, opt.need("class"), P.ext1->dim());
          Module Y = torsor_act(P, X, xi);
          result["acted"] = module_json(Y);
          result["acted_certificate"] = certificate_json(certify_lifting(P, Y));
          result["difference"] = svec_json(k, lifting_difference(P, Y, X).coords);
        }
      }
    } else if (cmd == "splits") {
      QuotientSetup s = quotient_setup(doc, opt);
      Splitting sp = splits_pibar(s.t, s.J);
      RegularQuotientOb ob = ob_regular_quotient(s.A, s.J, s.N);
      const Field& k = s.A->field();
      result = Json{{"split", sp.split},
                    {"obstruction", svec_json(k, ob.ob.coords)},
                    {"obstruction_zero", ob.ob.zero()},
                    {"approximation_class", svec_json(k, ob.approx_class)},
                    {"routes_agree", ob.agree},
                    {"criterion_holds", sp.split == ob.ob.zero()}};
      if (sp.nu) result["section"] = matrix_json(s.A->S(), sp.nu->mat);
    } else if (cmd == "tangent-sigma") {
      QuotientSetup s = quotient_setup(doc, opt);
      TangentMap tm = tangent_sigma(s.N, s.t, s.J);
      result = Json{{"source_dim", tm.source_dim}, {"target_dim", tm.target_dim}, {"rank", tm.rank},
                    {"injective", tm.injective()},  {"coker_dim", tm.coker()},      {"degrees", tm.degrees},
                    {"ext2_B_N_N", ext_dim(2, s.N, s.N)}};
    } else if (cmd == "omap-check") {
      SmallExtension q = doc.extension(opt.need("ext"));
      LiftingProblem X = lifting_problem(q, doc.module(opt.need("source")));
      LiftingProblem Y = lifting_problem(q, doc.module(opt.need("target")));
      Matrix m = doc.matrix(q.B, parse_value(opt.need("matrix"), "--matrix"), Y.N.gen_deg());
      if (m.src != X.N.gen_deg()) throw Error("--matrix columns do not have the degrees of the source generators");
      ModuleMap f{X.N, Y.N, m};
      NaturalityCheck c = omap_check(X, Y, f);
      const Field& k = q.B->field();
      result = Json{{"pulled", svec_json(k, c.pulled)}, {"pushed", svec_json(k, c.pushed)}, {"equal", c.equal}};
      if (auto xl = opt.get("source-lift")) {
        SVec ob = map_obstruction(X, Y, f, doc.module(*xl), doc.module(opt.need("target-lift")));
        result["map_obstruction"] = svec_json(k, ob);
        result["map_lifts"] = svec_is_zero(ob);
      }
    } else if (cmd == "hypotheses") {
      ApproxTriple t = approximation(doc.module(opt.need("module")), opt);
      VanishingReport rep = ext_vanishing_report(t, fid_hull(t));
      Json entries = Json::array();
      for (const auto& e : rep.entries) {
        Json j{{"name", e.name}, {"finite", e.finite}, {"zero", e.zero()}};
        if (e.finite) j["dim"] = e.dim;
        entries.push_back(j);
      }
      result = Json{{"entries", entries},
                    {"grade", rep.grade},
                    {"L_zero", rep.L_zero},
                    {"L_free", rep.L_free},
                    {"ext1_N_Mp_zero", rep.ext1_N_Mp},
                    {"ext1_L_N_zero", rep.ext1_L_N}};
    } else {
      throw Error("unknown command '" + cmd + "'");
    }
  }
  Json args = Json::object();
  for (const auto& [k, v] : opt.values) args[k] = v;
  out.report = Json{{"command", cmd}};
  if (!opt.suite.empty()) out.report["suite"] = opt.suite;
  out.report["arguments"] = args;
  out.report["engine"] = Json{{"name", "cmdef"}, {"version", kEngineVersion}};
  out.report["config"] = Json{{"field", config.field_name}, {"order", config.order_name}};
  out.report["result"] = result;
  out.report["ok"] = out.ok;
  return out;
}

namespace {

void render(std::ostream& os, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); }) &&
                 k != "betti_table") {
        os << pad << k << ": " << v.dump() << "\n";
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_string()) os << pad << v.get<std::string>() << "\n";
      else if (v.is_primitive() || std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); }))
        os << pad << v.dump() << "\n";
      else {
        os << pad << "-\n";
        render(os, v, indent + 2);
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  os << "command: " << report["command"].get<std::string>();
  if (report.contains("suite")) os << " " << report["suite"].get<std::string>();
  os << "\n";
  os << "engine: cmdef " << report["engine"]["version"].get<std::string>() << "\n";
  os << "field: " << report["config"]["field"].get<std::string>() << ", order: "
     << report["config"]["order"].get<std::string>() << "\n";
  if (report.contains("time_ms")) os << "time: " << report["time_ms"].dump() << " ms\n";
  if (report["command"] == "verify") {
    for (const auto& s : report["result"]) {
      os << "suite " << s["suite"].get<std::string>() << ": " << s["passed"].dump() << " passed, "
         << s["failed"].dump() << " failed\n";
      for (const auto& i : s["identities"])
        os << "  " << (i["pass"].get<bool>() ? "PASS " : "FAIL ") << i["identity"].get<std::string>() << ": "
           << i["lhs"].get<std::string>() << (i["pass"].get<bool>() ? " = " : " != ") << i["rhs"].get<std::string>()
           << "\n";
    }
    os << (report["ok"].get<bool>() ? "all identities hold\n" : "some identities FAILED\n");
  } else {
    render(os, report["result"], 0);
  }
  return os.str();
}

}  // namespace cmdef::cli
