#pragma once

namespace subdeg {

// full command-line front end; returns the process exit code:
// 0 success, 1 property violation, 2 usage or parse error, 3 cap exceeded
int run_cli(int argc, const char* const* argv);

}  // namespace subdeg
