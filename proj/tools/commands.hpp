#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hpcad::cli {

struct RunResult {
  int exit_code = 0;
  // A timed-out computation that did not stop at a cancellation point is
  // still running; the caller must end the process without unwinding.
  bool abandoned = false;
};

/// Runs one hpcad command line (without the program name).
RunResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hpcad::cli
