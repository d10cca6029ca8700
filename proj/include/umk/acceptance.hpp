// Acceptance suite: one verdict line per criterion, detail lines indented.
// Shared by the `umk check` subcommand and the ctest acceptance binary.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace umk::acceptance {

struct Verdict {
  std::string id;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
};

std::vector<Verdict> run(const std::string& filter = "");

// prints "Cxx PASS/FAIL - title" per criterion; returns the failure count
int run_all(const std::string& filter, std::ostream& out);

}  // namespace umk::acceptance
