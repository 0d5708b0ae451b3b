#ifndef MOPEF_CLI_HPP
#define MOPEF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mopef::cli {

/**
 * @brief Runs one command. `args` excludes the program name.
 *
 * Returns 0 on success, 1 on domain errors (bad data, unknown labels,
 * evaluation failures) and 2 on usage errors. With --json every report,
 * including domain errors, is a single JSON document on `out`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mopef::cli

#endif  // MOPEF_CLI_HPP
