#pragma once

#include <ostream>

namespace latgauss {

// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 numeric or budget error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latgauss
