#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fiberq::cli {

// Runs the tool on the arguments after the program name, writing to the
// given streams, and returns the process exit code: 0 success, 2 usage
// error, 3 schema error in an input file, 4 numerical precondition (zero
// state, basis mismatch, invalid index). Output is a pure function of
// (arguments, input files): reruns are byte-identical.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fiberq::cli
