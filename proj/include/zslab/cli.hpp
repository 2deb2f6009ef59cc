#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zslab {

/// Parses and executes one command line (without the program name).
/// Exit status: 0 = computed/verified, 1 = counterexample, bound-only or
/// informational, 2 = usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace zslab
