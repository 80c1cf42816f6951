#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lbf/multipoly.hpp"

namespace lbf {

/// Parses a polynomial in the grammar
///   expr := term (("+"|"-") term)*      term := factor ("*" factor)*
///   factor := base ("^" nat)?            base := var | rational | "(" expr ")"
/// with optional leading signs on terms. Whitespace is ignored; implicit
/// multiplication is rejected. Throws ParseError with the byte offset.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

/// Splits "x,y,z" into names; throws ParseError on empty or duplicate names.
std::vector<std::string> parse_var_list(std::string_view text);

}  // namespace lbf
