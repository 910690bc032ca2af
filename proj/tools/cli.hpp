#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffgeom::cli {

/// Runs one invocation; `args` excludes the program name. Exit codes: 0 all
/// checks passed, 1 a verified inequality failed, 2 usage, input or cap error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

/// Markdown flag reference for every subcommand, generated from the parser.
std::string flag_reference();

}  // namespace ffgeom::cli
