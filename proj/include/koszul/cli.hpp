#ifndef KOSZUL_CLI_HPP
#define KOSZUL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace koszul::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitResource = 3;

/// Default for the resource guard when neither --max-dim nor KOSZUL_MAX_DIM is set.
inline constexpr long long kDefaultMaxDim = 5000;

/**
 * Runs one subcommand. `args` excludes the program name. Reports go to `out`,
 * diagnostics to `err`; the return value is the process exit code.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace koszul::cli

#endif  // KOSZUL_CLI_HPP
