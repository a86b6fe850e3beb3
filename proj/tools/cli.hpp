#ifndef PATHWISE_CLI_HPP
#define PATHWISE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pathwise::cli {

    inline constexpr int kExitOk         = 0;
    inline constexpr int kExitError      = 1;
    inline constexpr int kExitInfeasible = 2;
    inline constexpr int kExitTimeLimit  = 3;

    /// Runs one invocation; `args[0]` is the program name. Results go to `out` (or the --out file),
    /// diagnostics to `err`. Returns the process exit code.
    [[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pathwise::cli

#endif // PATHWISE_CLI_HPP
