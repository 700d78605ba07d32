#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crnkit {

// Exit codes: 0 the property holds / the command succeeded, 1 it does not hold (or a
// simulation aborted), 2 usage, parse or validation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace crnkit
