#ifndef IFSLAB_TOOLS_CLI_HPP
#define IFSLAB_TOOLS_CLI_HPP

#include <ostream>

namespace ifslab::cli {

  inline constexpr int exit_ok        = 0;
  inline constexpr int exit_usage     = 2;
  inline constexpr int exit_violation = 3;

  // Report (JSON or CSV) goes to `out` unless --out is given; the
  // human-readable table and diagnostics go to `err`.
  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ifslab::cli

#endif  // IFSLAB_TOOLS_CLI_HPP
