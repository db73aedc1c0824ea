#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quantum3::tools {

/// Runs one command line (without the program name). Exit codes: 0 on
/// success, 1 on usage or domain errors (one line "error: <kind>: <msg>"
/// on `err`), 2 when a verification suite fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// $QUANTUM3_ASSETS, else the asset directory of the source tree.
std::string asset_dir();

}  // namespace quantum3::tools
