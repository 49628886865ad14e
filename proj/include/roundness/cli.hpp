#pragma once

namespace roundness::cli {

/// Command-line driver. Exit codes: 0 success, 2 usage, 3 parse, 4 numeric
/// failure.
int run(int argc, const char* const* argv);

}  // namespace roundness::cli
