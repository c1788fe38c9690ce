#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfic::cli {

// Subcommands: compress, solve, bench, gen.
// Exit codes: 0 ok/sat, 10 unsat, 20 limit reached, 2 usage error,
// 1 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfic::cli
