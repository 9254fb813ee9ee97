#pragma once

#include <iosfwd>

namespace conecalc::cli {

// Exit codes: 0 ok, 1 internal error, 2 parse or validation failure,
// 3 direct mode requested without a flip map.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conecalc::cli
