#pragma once

#include <iosfwd>

namespace schwinger {

// Exit status: 0 success, 2 input error, 3 check failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCheck = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schwinger
