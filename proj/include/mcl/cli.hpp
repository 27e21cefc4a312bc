// ============================================================================
// mcl/cli.hpp: Command-line front end
// ============================================================================
//
//   mcl parse|depth|nf|valid|sat|countermodel --formula F [--agents a,b]
//   mcl classify --model M
//   mcl mc --model M [--state s] --formula F
//   mcl fuzz [--count N] [--seed S]
//
// M is a model file or a built-in fixture name (two_masks, one_mask).
// Exit status: 0 success, 1 semantic error, 2 usage error; fuzz returns 1
// when the differential run reports discrepancies.
// ============================================================================

#ifndef MCL_CLI_HPP
#define MCL_CLI_HPP

#include <iosfwd>

namespace mcl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mcl::cli

#endif  // MCL_CLI_HPP
