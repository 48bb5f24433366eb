#pragma once

#include <iosfwd>

namespace incmatch {

// Exit codes: 0 ok, 1 usage, 2 parse/plan error, 3 capacity, 4 fuzz failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace incmatch
