#pragma once

#include <iosfwd>

namespace latreg::cli {

/// Exit status: 0 success, 1 usage, I/O or schema error, 2 degenerate
/// recovery (zero estimate from nonzero observations).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latreg::cli
