#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fotrans/formula.hpp"

namespace fotrans {

/// Parses the ASCII formula syntax:
///
///   atoms        E(x,y)  Name(x)  x=y  dist(x,y)<=INT  true  false
///   connectives  !  &  |  ->  <->      (binding tightest to loosest)
///   quantifiers  ex v. f   all v. f    (scope extends as far right as possible)
///
/// `&`, `|` and `<->` associate to the left, `->` to the right. When `free_variables` is
/// given, any other free variable raises UnboundVariableError. Syntax errors raise
/// ParseError with a 1-based line and column.
Formula parse_formula(std::string_view text, const std::optional<std::vector<std::string>>& free_variables = std::nullopt);

}  // namespace fotrans
