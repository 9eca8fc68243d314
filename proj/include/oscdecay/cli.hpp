#pragma once

#include <iosfwd>

namespace oscdecay::cli {

// Exit codes: 0 success, 1 I/O, 2 validation/hypothesis, 3 insufficient data.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInsufficientData = 3;

// Full command-line front end, in-process (stdout/stderr injected so tests
// can capture output). argv excludes the program name slot only if argc
// says so; pass argc/argv exactly as main receives them.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oscdecay::cli
