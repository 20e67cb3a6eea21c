#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rwtc {

// Runs the rwtc command line against args (program name excluded) and the
// given streams. Returns the process exit status: 0 on success, including a
// passing check; 1 when a check finds type errors; 2 on usage, parse, or
// I/O errors. The RWTC_SCHEMA environment variable supplies a default
// --schema value; "bundled" (the fallback) selects the embedded schema.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rwtc
