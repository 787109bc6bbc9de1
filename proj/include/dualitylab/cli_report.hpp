#pragma once

namespace dualitylab {

/// Full command-line front end. Exit status contract:
///   0 success, 1 acceptance-suite failure, 2 validation/usage error,
///   3 numerical non-convergence, 4 I/O error.
int run_cli(int argc, char** argv);

}  // namespace dualitylab
