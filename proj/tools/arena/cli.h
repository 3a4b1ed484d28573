#ifndef ARENA_TOOLS_CLI_H_
#define ARENA_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace arena::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitAborted = 2;

// Runs the arena command line. `args` excludes the program name. Machine
// readable results go to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arena::cli

#endif  // ARENA_TOOLS_CLI_H_
