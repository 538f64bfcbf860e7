#pragma once

/**
 * @file cli.hpp
 * @brief Subcommand driver behind the pillow binary.
 *
 * Exit codes: 0 success, 1 usage error, 2 domain error (including an empty
 * result under --expect-nonempty and a fit that exceeds its budget).
 * Global flags may also come from PILLOW_SEED, PILLOW_TOL, PILLOW_STEP,
 * PILLOW_OUT, PILLOW_FORMAT and PILLOW_THREADS; flags take precedence.
 */

#include <ostream>
#include <string>
#include <vector>

namespace pillow {

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pillow
