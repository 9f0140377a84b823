#include "qhfpt/rational.hpp"

#include "qhfpt/errors.hpp"

namespace qhfpt {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw DivisionByZero("zero denominator in '" + text + "'");
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error& err) {
    if (dynamic_cast<const Error*>(&err)) throw;
    throw ParseError("malformed rational '" + text + "'", 0);
  }
}

} // namespace qhfpt
