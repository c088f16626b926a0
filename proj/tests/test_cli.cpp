#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "commands.hpp"

using namespace cmdef;
using namespace cmdef::cli;

namespace {

std::string fixture(const std::string& name) { return std::string(CMDEF_FIXTURE_DIR) + "/" + name; }

Document load(const std::string& name) { return Document::load(fixture(name), default_config()); }

std::vector<std::string> parse_errors(const std::string& text) {
  try {
    Document::parse(text, "doc", default_config());
  } catch (const ParseError& e) {
    return e.messages();
  }
  return {};
}

Options options(const std::string& command, std::map<std::string, std::string> values) {
  Options o;
  o.command = command;
  o.values = std::move(values);
  return o;
}

struct Invocation {
  int code;
  std::string out;
};

Invocation invoke(const std::string& args) {
  std::string cmd = std::string(CMDEF_BINARY) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Input, ReportsUnknownVariableWithColumn) {
  auto errs = parse_errors("[ring A]\nvars = [x, y]\nideal = [\"x*y - z^2\"]\n");
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_NE(errs[0].find("doc:3:"), std::string::npos) << errs[0];
  EXPECT_NE(errs[0].find("unknown variable 'z'"), std::string::npos) << errs[0];
}

TEST(Input, CollectsSeveralErrors) {
  auto errs = parse_errors("[ring A]\nvars = [x]\nbogus\n[frob B]\n[module M]\nring = C\ndegrees = [0]\n");
  EXPECT_GE(errs.size(), 2u);
}

TEST(Input, NamesFailingFactorizationEntry) {
  auto errs = parse_errors("[ring Q]\nvars = [x, y]\n[mf X]\nring = Q\nf = \"x*y\"\nphi = [[x]]\npsi = [[x]]\n");
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_NE(errs[0].find("phi psi entry (1, 1) is x^2, expected x*y"), std::string::npos) << errs[0];
}

TEST(Input, RejectsInhomogeneousInput) {
  EXPECT_FALSE(parse_errors("[ring A]\nvars = [x, y]\nideal = [\"x^2 - y\"]\n").empty());
  EXPECT_FALSE(
      parse_errors("[ring A]\nvars = [x, y]\n[module M]\nring = A\ndegrees = [0]\nrelations = [[\"x + y^2\"]]\n").empty());
}

TEST(Input, RingsWithSameVariablesShareTheAmbientRing) {
  Document doc = load("node.ring");
  EXPECT_EQ(&doc.ring("A")->S(), &doc.ring("Bt")->S());
  EXPECT_EQ(&doc.ring("q.Bp")->S(), &doc.ring("Bp")->S());
}

TEST(Input, ParseValue) {
  Value v = parse_value("[[1, \"x + y\"], [0, y]]", "--matrix");
  ASSERT_TRUE(v.is_list());
  ASSERT_EQ(v.items.size(), 2u);
  EXPECT_EQ(v.items[0].items[1].text, "x + y");
  EXPECT_THROW(parse_value("[1, 2", "--class"), Error);
}

TEST(Input, FieldOverride) {
  EXPECT_EQ(parse_field("Q").characteristic(), 0);
  EXPECT_EQ(parse_field("GF(101)").characteristic(), 101);
  EXPECT_EQ(parse_field("7").characteristic(), 7);
  EXPECT_THROW(parse_field("12"), Error);
}

TEST(Commands, ExtOnVeroneseApproximation) {
  Document doc = load("a2.ring");
  Outcome o = run(options("ext", {{"i", "1"}, {"from", "M"}, {"to", "M"}}), &doc, default_config());
  EXPECT_EQ(o.report["result"]["dimension"], 4);
}

TEST(Commands, ResolveResidueField) {
  Document doc = load("a2.ring");
  Options o = options("resolve", {{"module", "k"}});
  o.steps = 3;
  Outcome r = run(o, &doc, default_config());
  EXPECT_EQ(r.report["result"]["betti_totals"], Json({1, 3, 4, 4}));
  EXPECT_TRUE(r.report["result"]["d_squared_zero"].get<bool>());
}

TEST(Commands, ReportsAreDeterministic) {
  Document d1 = load("node.ring"), d2 = load("node.ring");
  Options o = options("torsor", {{"ext", "q"}, {"module", "Nq"}, {"lifting", "Kp"}, {"class", "[1]"}});
  EXPECT_EQ(run(o, &d1, default_config()).report.dump(), run(o, &d2, default_config()).report.dump());
}

TEST(Commands, TorsorDifferenceMatchesAction) {
  Document doc = load("node.ring");
  Outcome a = run(options("torsor", {{"ext", "q"}, {"module", "Nq"}, {"lifting", "Kp"}, {"class", "[1]"}}), &doc,
                  default_config());
  EXPECT_TRUE(a.report["result"]["acted_certificate"]["ok"].get<bool>());
  EXPECT_EQ(a.report["result"]["difference"], Json({"1"}));
  Outcome d = run(options("torsor", {{"ext", "q"}, {"module", "Nq"}, {"lifting", "Kp2"}, {"other", "Kp"}}), &doc,
                  default_config());
  EXPECT_EQ(d.report["result"]["difference"], Json({"1"}));
}

TEST(Commands, ObstructionOnCusp) {
  Document doc = load("cusp.ring");
  Outcome o = run(options("obstruction", {{"ext", "q"}, {"module", "Nq"}, {"brute", "true"}}), &doc, default_config());
  EXPECT_FALSE(o.report["result"]["zero"].get<bool>());
  EXPECT_FALSE(o.report["result"]["search"]["lifting_exists"].get<bool>());
}

TEST(Commands, MissingArgumentNamesTheFlag) {
  Document doc = load("a2.ring");
  try {
    run(options("ext", {{"i", "1"}, {"from", "M"}}), &doc, default_config());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("--to"), std::string::npos);
  }
  EXPECT_THROW(run(options("depth", {{"module", "nope"}}), &doc, default_config()), Error);
}

TEST(Commands, VerifyOmap) {
  Options o = options("verify", {});
  o.suite = "omap";
  Outcome r = run(o, nullptr, default_config());
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(render_text(r.report).find("all identities hold") != std::string::npos);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(invoke("betti -f " + fixture("a2.ring") + " --module k --steps 3").code, 0);
  EXPECT_EQ(invoke("betti -f " + fixture("a2.ring") + " --module nope").code, 1);
  EXPECT_EQ(invoke("no-such-command").code, 1);
  Invocation limited = invoke("obstruction -f " + fixture("node.ring") + " --ext q --module Nq --brute --cap 1");
  EXPECT_EQ(limited.code, 2) << limited.out;
  EXPECT_NE(limited.out.find("limit"), std::string::npos);
}

TEST(Binary, JsonOutputFile) {
  auto path = std::filesystem::temp_directory_path() / "cmdef_cli_test.json";
  Invocation r = invoke("dim -f " + fixture("a3.ring") + " --ring A --json -o " + path.string());
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream in(path);
  Json j = Json::parse(in);
  EXPECT_EQ(j["result"]["dim"], 2);
  EXPECT_EQ(j["result"]["multiplicity"], "3");
  EXPECT_FALSE(j.contains("time_ms"));
  std::filesystem::remove(path);
}
