#pragma once

namespace ialpha::cli {

/// Parses argv, runs one subcommand and returns the process exit code:
/// 0 success, 2 usage error, 3 data error, 4 numeric error.
int run(int argc, char** argv);

}  // namespace ialpha::cli
