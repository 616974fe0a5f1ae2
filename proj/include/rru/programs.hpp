#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rru {

// Rule files under programs/, compiled in: sum, fib, gcd, rev, sort.
std::optional<std::string_view> shipped_program_text(std::string_view name);
std::vector<std::string> shipped_program_names();

}  // namespace rru
