#pragma once

#include <string>
#include <string_view>

#include "ergolab/scalar.hpp"
#include "ergolab/set_class.hpp"
#include "ergolab/space.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

/// Exact scalar expression: integers, +, -, *, /, parentheses and
/// sqrt(<integer>). Examples: "3/8", "(-1/2 + 1/2*sqrt(5))".
/// The Unicode minus sign U+2212 is accepted as '-'.
Scalar parse_scalar(std::string_view text);

/// Set expression over `space`.
///
///   expr    := diff
///   diff    := or  ( '\' or  )*
///   or      := xor ( '|' xor )*
///   xor     := and ( '^' and )*
///   and     := unary ( '&' unary )*
///   unary   := '~' unary | primary
///   primary := 'empty' | 'full'
///            | 'cyl' '(' '"' digits '"' ')'
///            | 'interval' '(' scalar ',' scalar ')'
///            | 'atoms' '{' [ int { ',' int } ] '}'
///            | 'fiber' '(' int ',' expr ')'
///            | '(' expr ')'
///
/// Cylinder words are read left to right: "011" has first digit 0. On a
/// product space, cyl/interval lift to every atom, atoms{...} selects whole
/// fibers, and fiber(i, e) places e over atom i only.
SetClass parse_set_expr(std::string_view text, const SpaceRef& space);

/// Declarative system description:
///
///   spec  := field*
///   field := key '=' value | 'of' block
///   value := block | '[' [ value { ',' value } ] ']' | word | scalar
///   block := '{' field* '}'
///
/// kinds: odometer (base), rotation (alpha), permutation (perm, optional
/// weights), identity (n), product (finite, fiber), power (k, of).
/// '#' starts a comment.
System parse_system_spec(std::string_view text);

/// Inverse of parse_system_spec.
std::string to_spec_text(const System& system);

}  // namespace ergolab
