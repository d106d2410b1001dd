#pragma once

// Command-line front door: subcommand dispatch and deterministic JSON reports.
// Exit codes: 0 verified, 1 verification failed, 2 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace sik3 {

inline constexpr const char* kVersion = "sik3 0.1.0";

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sik3
