#ifndef CRYSRIG_CLI_HPP_
#define CRYSRIG_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace crysrig {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInconsistent = 3;

/// Runs the command line tool. `args` excludes the program name.
///
///   analyze  <file|--builtin NAME> [--mode strict|affine|space SPEC] [--tol T] [--json]
///   symmetry <file|--builtin NAME> [--element NAME] [--characters] [--tol T] [--json]
///   supercell <file|--builtin NAME> --n n1,...,nd [-o OUT]
///   svg      <file|--builtin NAME> --cells RANGE -o OUT.svg
///   builtins
///
/// SPEC is zero, full, symmetric, skew, diagonal or custom:FILE. RANGE is
/// "3x3" (cells [0,3) x [0,3)) or inclusive "a:b,c:d".
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crysrig

#endif  // CRYSRIG_CLI_HPP_
