#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adjsim {

/// Entry point for the `adjsim` tool. Subcommands: catalog, oracle, simulate,
/// lemma-check, plot. Returns 0 on success; on failure prints a one-line
/// diagnostic to `err` and returns nonzero.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, const char* const* argv);

}  // namespace adjsim
