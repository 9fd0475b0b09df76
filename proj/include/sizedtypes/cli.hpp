#pragma once

#include <iosfwd>

namespace st {

// exit codes: 0 success, 1 negative verdict, 2 usage, parse or validation error
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace st
