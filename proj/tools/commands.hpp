#ifndef CMDEF_TOOLS_COMMANDS_HPP
#define CMDEF_TOOLS_COMMANDS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "suites.hpp"

namespace cmdef::cli {

inline constexpr const char* kEngineVersion = "0.1.0";

const std::vector<std::string>& command_names();

struct Options {
  std::string command;
  std::string suite;                          // verify only
  std::map<std::string, std::string> values;  // flag name -> text
  int steps = kDefaultSteps;
  int window = kDefaultWindow;
  int cap = 8;

  const std::string& need(const std::string& flag) const;
  std::optional<std::string> get(const std::string& flag) const;
};

struct Outcome {
  Json report;
  bool ok = true;  // false when a verify identity fails
};

// Runs one command; throws Error / LimitError on invalid input or exceeded limits.
Outcome run(const Options& opt, const Document* doc, const Config& config);

std::string render_text(const Json& report);

}  // namespace cmdef::cli

#endif
