#pragma once

#include <string>
#include <string_view>

#include "mpc/expr.hpp"

namespace mpc {

/// Renders an expression in the textual gate form, e.g. "M(A,!B,M(0,C,D))".
/// Constants print as 0/1, variables as A..E, complement as a leading '!'.
/// Shared subexpressions print in full at each use.
std::string to_string(const expr& e);

/// Parses the textual gate form. Whitespace is allowed between tokens.
/// Gates are rebuilt through the arena, so the result is canonical: parsing
/// the output of to_string yields an expression with the same truth table
/// and cost, with children possibly reordered. Throws parse_error on
/// malformed input, with the byte offset of the problem.
expr parse_expr(expr_arena& arena, std::string_view text);

}  // namespace mpc
