#pragma once

#include <string>
#include <vector>

namespace cellrate::cli {

// Entry point behind the `cellrate` binary. Exit codes: 0 ok, 1 input error,
// 2 numerical failure.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace cellrate::cli
