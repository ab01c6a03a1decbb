#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mucalc::cli {

// Exit codes.
inline constexpr int kOk = 0;       // success, true, SAT
inline constexpr int kFalse = 1;    // false, UNSAT, contradiction found
inline constexpr int kUnknown = 2;  // UNKNOWN
inline constexpr int kUsage = 3;    // usage or parse error

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);
int run(int argc, char** argv);

std::string version();

}  // namespace mucalc::cli
