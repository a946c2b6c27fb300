// SPDX-License-Identifier: Apache-2.0

#ifndef TWRN_TOOLS_CLI_HPP
#define TWRN_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace twrn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point for `twrn-sim`. `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace twrn::cli

#endif
