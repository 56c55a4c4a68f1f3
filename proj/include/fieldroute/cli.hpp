#pragma once

namespace fieldroute {

/// Exit codes: 0 ok, 2 input/parse/IO problem, 3 constraint violation
/// (n <= m and friends), 4 benchmark tolerance failure.
int run_cli(int argc, char** argv);

}  // namespace fieldroute
