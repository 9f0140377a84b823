#include "doctest.h"

#include "qhfpt/errors.hpp"
#include "qhfpt/oracle.hpp"
#include "qhfpt/parse.hpp"

using namespace qhfpt;

namespace {
RingPtr xyz(u32 p) { return make_ring(p, {"x", "y", "z"}, {1, 1, 1}); }
} // namespace

TEST_CASE("brute-force mu") {
  CHECK(oracle::mu_bruteforce(parse_poly("x*y^2+x^4", make_ring(7, {"x", "y"}, {2, 3})), 1) == 4);
  CHECK(oracle::mu_bruteforce(parse_poly("x^3+y^3+z^3", xyz(2)), 1) == 1);
  CHECK(oracle::mu_bruteforce(parse_poly("x^3+y^3+z^3", xyz(5)), 1) == 4);
  auto r = make_ring(3, {"x"}, {1});
  CHECK(oracle::mu_bruteforce(parse_poly("x", r), 1) == 3);
  CHECK(oracle::mu_bruteforce(parse_poly("x", r), 2) == 9);
  CHECK_THROWS_AS(oracle::mu_bruteforce(parse_poly("x+1", r), 1), HypothesisError);
}

TEST_CASE("brute-force socle coefficient") {
  CHECK(oracle::socle_coefficient_bruteforce(parse_poly("x^3+y^3+z^3", xyz(7)), 1).value == 6);
  CHECK(oracle::socle_coefficient_bruteforce(parse_poly("x^3+y^3+z^3", xyz(5)), 1).value == 0);
  CHECK(oracle::socle_coefficient_bruteforce(parse_poly("x^2+y^3+z^7+x*y*z", xyz(5)), 1).value == 1);
  CHECK(oracle::socle_coefficient_bruteforce(parse_poly("x^2+y^3+z^7+2*x*y*z", xyz(5)), 2).value == 1);
}

TEST_CASE("oracle caps") {
  oracle::OracleLimits tiny;
  tiny.max_terms = 5;
  tiny.max_enumeration = 5;
  CHECK_THROWS_AS(oracle::mu_bruteforce(parse_poly("x+y+z", xyz(11)), 1, tiny), ResourceError);
  CHECK_THROWS_AS(oracle::socle_coefficient_bruteforce(parse_poly("x^3+y^3+z^3", xyz(11)), 1, tiny), ResourceError);
}
