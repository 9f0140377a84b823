#ifndef QHFPT_PARSE_HPP
#define QHFPT_PARSE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qhfpt/ring.hpp"

namespace qhfpt {

// Textual polynomials.
//
//   poly    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := integer | name ['^' integer]
//
// Whitespace is ignored, '*' is mandatory between factors and integer
// coefficients are reduced mod p. `format_poly` emits exactly this grammar, so
// its output always parses back to the same polynomial.

struct ParseResult {
  Poly poly;
  // One entry per term (or group of like terms) that vanished mod p.
  std::vector<std::string> warnings;
};

ParseResult parse_poly_with_warnings(std::string_view text, const RingPtr& ring);
Poly parse_poly(std::string_view text, const RingPtr& ring);

// f = base + L * parameter_term, with L entering linearly.
struct FamilyExpr {
  Poly base;
  Poly parameter_term;
  std::string parameter;

  Poly specialize(u32 lambda) const { return base + parameter_term.scaled(lambda); }
};

// Throws ParseError on syntax errors and HypothesisError("unsupported-family")
// when the parameter occurs with exponent >= 2.
FamilyExpr parse_family(std::string_view text, const RingPtr& ring, const std::string& parameter);

std::string format_term(const Poly& f, std::size_t term);
std::string format_poly(const Poly& f);
std::string format_monomial(const GradedRing& ring, const Monomial& m);

} // namespace qhfpt

#endif
