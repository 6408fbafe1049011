#pragma once

#include <string>
#include <vector>

namespace iris {

/// Runs one tool invocation (without the program name). Writes artifacts and
/// a manifest.json into the requested output directory.
/// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
/// Data and internal errors emit one machine-readable JSON record on stderr.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace iris
