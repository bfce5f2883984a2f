#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "modgrad/complex.hpp"

namespace modgrad::cli {

// Exit codes: 0 pass, 1 mathematical finding (violation / no match),
// 2 usage, input or schema error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;
inline constexpr int kExitUsage = 2;

// Parses "re,im;re,im;..." into a vector. `flag` names the option in errors.
CVector parse_point(const std::string& text, const std::string& flag);

// Subcommands: grad, bound, slice, extremal, diagnose, fuzz. `in` backs
// "--map -".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace modgrad::cli
