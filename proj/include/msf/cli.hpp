#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace msf {

// Entry point behind the msf executable; args exclude the program name.
// Exit codes: 0 done and proven, 1 refused / disproved / inconclusive, 2 bad input
// or usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msf
