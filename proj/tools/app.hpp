// memdecide command-line front end.
//
//   memdecide trace|trial|sweep|calibrate --config <file> [--seed N] [--out <dir>]
//             [--svg] [--threads N] [--<key> <value> ...]
//
// Every config-file key is also a flag; flags win over the file. Exit codes:
// 0 success, 1 runtime failure, 2 configuration error.
#pragma once

#include <ostream>

namespace memdecide::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace memdecide::cli
