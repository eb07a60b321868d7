#pragma once

#include <string>
#include <vector>

namespace softtorus {

// Exit codes: 0 success / witness found, 1 usage or input error,
// 2 no witness found, 3 certificate verification failed.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace softtorus
