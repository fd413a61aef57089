#pragma once

namespace taxvec {

// Full command-line interface. Exit codes: 0 success, 1 usage error,
// 2 data or format error. Exposed as a function so tests can drive it
// without spawning a process.
int run(int argc, const char* const* argv);

}  // namespace taxvec
