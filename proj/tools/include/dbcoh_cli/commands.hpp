#pragma once

#include "dbcoh_cli/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dbcoh::cli {

enum class Format { text, json };

struct Options {
  std::string command;
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  Format format = Format::text;
  std::optional<std::pair<int, int>> window;
  int trials = 8;
  std::string side = "left";
  int n_max = 1;
  int random_word = -1;  ///< length of a seeded braid word when the input has none
  bool timing = false;
};

const std::vector<std::string>& command_names();

struct Report {
  io::Json json;
  int exit_code = 0;
};

/// Runs a parsed command.  Throws io::ParseError / MathError on bad input.
Report run(const Options& opt, const io::Input& input);

std::string render_text(const io::Json& report);

/// Whole program: also usable from tests.  Returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dbcoh::cli
