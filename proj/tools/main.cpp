#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace cmdef;
using namespace cmdef::cli;

int main(int argc, char** argv) {
  CLI::App app{"Graded commutative algebra: resolutions, Ext, Cohen-Macaulay approximations and module liftings"};
  Options opt;
  std::string input, output;
  bool json = false, timing = false, brute = false;
  std::map<std::string, std::string> flags;
  const std::vector<std::pair<std::string, std::string>> string_flags{
      {"module", "module name"},
      {"ring", "ring name"},
      {"from", "first Ext argument"},
      {"to", "second Ext argument"},
      {"i", "homological index"},
      {"mf", "matrix factorization name"},
      {"ext", "small extension name"},
      {"lifting", "module over the source of the extension"},
      {"other", "second lifting, for differences"},
      {"class", "Ext^1 coordinates, e.g. [1, 0]"},
      {"source", "source family of a map"},
      {"target", "target family of a map"},
      {"matrix", "map on generators, rows of entries"},
      {"source-lift", "lifting of the source family"},
      {"target-lift", "lifting of the target family"},
      {"regular", "regular sequence, e.g. [t]"},
      {"approx", "approximation: cm (default) or knorrer"},
      {"method", "mcm-approx method: cm (default) or dim2"},
      {"codim", "codimension for the approximation"},
      {"over", "eisenbud: B (default) or A"},
      {"m", "veronese parameter"},
      {"case", "knorrer suite case: node, cusp or all"},
  };
  app.add_option("command", opt.command, "command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("suite", opt.suite, "verify suite: veronese, knorrer, obstruction or omap");
  app.add_option("-f,--input", input, "input document");
  for (const auto& [name, help] : string_flags) app.add_option("--" + name, flags[name], help);
  app.add_option("--steps", opt.steps, "resolution steps")->check(CLI::Range(1, 64));
  app.add_option("--window", opt.window, "degree window above the generators")->check(CLI::Range(1, 200));
  app.add_option("--cap", opt.cap, "dimension cap for the lifting search")->check(CLI::Range(1, 64));
  app.add_flag("--brute", brute, "obstruction: cross-check with the lifting search");
  app.add_flag("--json", json, "print the structured report instead of text");
  app.add_option("-o,--output", output, "also write the structured report to a file");
  app.add_flag("--timing", timing, "include wall-clock timing in the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (const auto& [name, value] : flags)
    if (app.count("--" + name)) opt.values[name] = value;
  if (brute) opt.values["brute"] = "true";
  if (opt.command == "verify" && opt.suite.empty()) {
    std::cerr << "error: verify needs a suite name (veronese, knorrer, obstruction or omap)\n";
    return 1;
  }
  try {
    Config config = default_config();
    auto start = std::chrono::steady_clock::now();
    std::optional<Document> doc;
    if (!input.empty()) doc = Document::load(input, config);
    Outcome out = run(opt, doc ? &*doc : nullptr, config);
    if (timing)
      out.report["time_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (!output.empty()) {
      std::ofstream f(output);
      if (!f) throw Error("cannot write '" + output + "'");
      f << out.report.dump(2) << "\n";
    }
    if (json) std::cout << out.report.dump(2) << "\n";
    else std::cout << render_text(out.report);
    return out.ok ? 0 : 1;
  } catch (const ParseError& e) {
    for (const auto& m : e.messages()) std::cerr << "error: " << m << "\n";
    return 1;
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad numeric argument\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: numeric argument out of range\n";
    return 1;
  }
}
