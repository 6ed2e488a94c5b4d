#pragma once

#include <string>
#include <string_view>

#include "bqsos/element.hpp"
#include "bqsos/order.hpp"

namespace bqsos {

// Grammar (whitespace ignored):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := atom ['^' uint]
//   atom   := int | int '/' int | 'sqrt' '(' uint ')' | '(' expr ')' | '-' atom
// Division is only by nonzero rationals. sqrt(n) with n = f^2 n' needs n' in
// {1, m, s, t}. Throws ParseError with SyntaxError or ForeignRadical, or
// Error(NotRepresentable) when the value needs a denominator beyond the field scale.
Element parse_element(std::string_view src, const FieldPtr& field);

// "maximal", "quad:N", "quad-half:N" or "gen:<expr>;<expr>;...".
// quad forms need a quadratic field whose radicand matches N's squarefree part
// and return an order of that field.
OrderLattice parse_order(std::string_view desc, const FieldPtr& field);

}  // namespace bqsos
