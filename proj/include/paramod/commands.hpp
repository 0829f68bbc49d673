#pragma once

#include "paramod/io.hpp"

#include <string>
#include <vector>

namespace paramod {

/// Subcommand names accepted by run_command.
const std::vector<std::string>& command_names();

/**
 * @brief Runs one command on a merged argument object.
 *
 * Arguments use the module JSON shapes; lists may also be comma-separated
 * strings as typed on the command line. Throws paramod::Error.
 */
io::json run_command(const std::string& name, const io::json& args);

/// CSV text for one of: orbits, special-loci, chambers, fibers.
std::string emit_table(const std::string& suite, const io::json& args);

/// Representatives of every orbit of flag configurations on Bprime.
std::vector<ParabolicStructure> bprime_orbit_representatives();

} // namespace paramod
