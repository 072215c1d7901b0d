#pragma once

#include <string>
#include <vector>

#include "mproj/smt.hpp"

namespace mproj {

struct ProcessResult {
  bool spawned = false;
  bool timed_out = false;  // includes cancellation
  int exit_status = -1;
  std::string out;
  std::string err;
  std::string spawn_error;
};

// Runs argv[0] (looked up on PATH) with `input` on stdin and collects both
// output streams. The child is killed and reaped when the context expires.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input,
                          const SolveContext& ctx);

}  // namespace mproj
