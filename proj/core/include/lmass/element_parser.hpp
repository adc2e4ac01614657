#pragma once

#include "lmass/padic.hpp"
#include "lmass/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lmass {

// Grammar (whitespace ignored):
//   expr  := term { ("+" | "-") term }
//   term  := unary { ("*" | "/") unary }
//   unary := ("-" | "+") unary | power
//   power := atom [ "^" ["-"] integer ]
//   atom  := integer | "pi" | "u" | "(" expr ")"
// pi is the uniformiser and u the unramified generator (u = 1 when f = 1).
Elem parse_element(const BaseField& F, std::string_view text);

// Same grammar without pi and u, evaluated in Q.
Rat parse_rational(std::string_view text);

// Split a comma-separated list, dropping empty items.
std::vector<std::string> split_list(std::string_view text);

}  // namespace lmass
