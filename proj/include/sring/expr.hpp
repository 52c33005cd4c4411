#pragma once

// Constructor expressions, a small prefix grammar for naming S-rings:
//
//   expr   := 'Z'                          group ring
//           | 'T'                          rank-2 S-ring
//           | 'cyc(' aut (',' aut)* ')'    orbits of the generated group
//           | 'wr(' expr ',' expr ';U=' gens ';L=' gens ')'
//           | 'tensor(' expr '@' group ',' expr '@' group ')'
//   aut    := block ('+' block)*           one block per prime, primes ascending
//   block  := '[' row ('/' row)* ']'       row i lists entries of columns 0..n-1
//   gens   := '<' [vec (',' vec)*] '>'     vec lists coordinates, coordinate 0 first
//   group  := group string such as 3^2 or 2x3
//
// In wr(...) the first operand is read over U (coordinates along the echelon
// basis of U) and the second over G/L (coordinates along complement_in(L, G)).
// Entries are single digits, so primes up to 7 are expressible.

#include <string>

#include "sring/groups.hpp"
#include "sring/sring.hpp"

namespace sring {

// Throws Error(parse_error) with the offending position.
SRing build_expr(const std::string& expr, const GroupSpec& g);

}  // namespace sring
