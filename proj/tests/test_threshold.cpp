#include "doctest.h"

#include "qhfpt/errors.hpp"
#include "qhfpt/parse.hpp"
#include "qhfpt/threshold.hpp"

using namespace qhfpt;

namespace {
RingPtr xyz(u32 p) { return make_ring(p, {"x", "y", "z"}, {1, 1, 1}); }
Poly cusp(u32 p) { return parse_poly("x*y^2+x^4", make_ring(p, {"x", "y"}, {2, 3})); }
} // namespace

TEST_CASE("mu values") {
  CHECK(mu(cusp(7), 1) == 4);
  CHECK(mu(cusp(11), 2) == 76);
  CHECK(mu(parse_poly("x^3+y^3+z^3", xyz(5)), 1) == 4);
  CHECK(mu(parse_poly("x^3+y^3+z^3", xyz(2)), 1) == 1);
  auto r = make_ring(3, {"x"}, {1});
  CHECK(mu(parse_poly("x", r), 1) == 3);
  CHECK(mu(parse_poly("x", r), 3) == 27);
  CHECK_THROWS_AS(mu(Poly(r), 1), HypothesisError);
  CHECK_THROWS_AS(mu(parse_poly("x+1", r), 1), HypothesisError);
}

TEST_CASE("ladder consistency") {
  const MuLadder l = mu_ladder(cusp(11), 3, MuOptions{{}, true});
  REQUIRE(l.entries.size() == 3);
  CHECK(l.entries[0].q == 11);
  CHECK(l.entries[2].q == 1331);
  for (std::size_t i = 1; i < l.entries.size(); ++i) {
    CHECK(l.entries[i - 1].mu == (l.entries[i].mu + 10) / 11);
    CHECK(l.entries[i].mu * l.entries[i - 1].q <= l.entries[i - 1].mu * l.entries[i].q);
  }
  for (const auto& e : l.entries) {
    REQUIRE(e.upper_bound);
    CHECK(BigInt(e.mu) <= *e.upper_bound);
  }
  const u64 before = ladder_audit().ceiling_checks.load();
  mu_ladder(cusp(5), 2);
  CHECK(ladder_audit().ceiling_checks.load() == before + 1);
}

TEST_CASE("thresholds of xy^2+x^4") {
  auto r17 = fpt(cusp(17));
  CHECK(r17.exact);
  CHECK(r17.value == Rational(5, 8));
  CHECK(std::string(certificate_name(r17.certificate)) == "Lifting-3.7(1)");
  auto r5 = fpt(cusp(5));
  CHECK(r5.value == Rational(3, 5));
  CHECK(std::string(certificate_name(r5.certificate)) == "Lifting-3.7(2)");
  auto r7 = fpt(cusp(7));
  CHECK(r7.exact);
  CHECK(r7.value == Rational(4, 7));
}

TEST_CASE("Calabi-Yau thresholds") {
  auto r = fpt(parse_poly("x^3+y^3+z^3", xyz(7)));
  CHECK(r.exact);
  CHECK(r.value == Rational(1));
  CHECK(std::string(certificate_name(r.certificate)) == "CY-Theorem-3.8");
  REQUIRE(r.hasse_order);
  CHECK(*r.hasse_order == 0);
  auto s = fpt(parse_poly("x^3+y^3+z^3", xyz(5)));
  CHECK(s.value == Rational(4, 5));
}

TEST_CASE("hypotheses") {
  CHECK_THROWS_AS(fpt(parse_poly("x+y^2", make_ring(5, {"x", "y"}, {1, 1}))), HypothesisError);
  const Poly singular = parse_poly("x^3+y^3+z^3+x*y*z", xyz(7));
  CHECK_THROWS_AS(fpt(singular), HypothesisError);
  FptOptions assume;
  assume.assume_isolated = true;
  auto r = fpt(singular, assume);
  CHECK(r.assumptions.isolated_assumed);
  CHECK_FALSE(r.assumptions.isolated_verified);
}

TEST_CASE("lifting applies to non-isolated f only when assumed") {
  FptOptions opts;
  opts.assume_isolated = true;
  auto r = fpt(parse_poly("x^2*y^2", make_ring(7, {"x", "y"}, {1, 1})), opts);
  CHECK(r.exact);
  CHECK(r.value == Rational(1, 2));
}

TEST_CASE("interval fallback") {
  FptOptions opts;
  opts.e_max = 1;
  auto r = fpt(cusp(3), opts);
  CHECK_FALSE(r.exact);
  CHECK(r.lower == Rational(1, 3));
  CHECK(r.upper == Rational(2, 3));
  CHECK(r.blocked_by == "e-max");
  CHECK(std::string(certificate_name(r.certificate)) == "Truncated-at-e_max");
  opts.e_max = 2;
  CHECK(fpt(cusp(3), opts).value == Rational(5, 8));

  // already in m^[4], and p = 2 is below the range where the constant rung persists
  auto small = fpt(parse_poly("x^5+y^5+z^5", xyz(2)), opts);
  CHECK_FALSE(small.exact);
  CHECK(small.upper == Rational(1, 4));
  CHECK(small.blocked_by == "small-prime");
}

TEST_CASE("Hasse order") {
  CHECK(hasse_order(parse_poly("x^3+y^3+z^3", xyz(7))) == 0);
  CHECK(hasse_order(parse_poly("x^3+y^3+z^3", xyz(5))) == 1);
  CHECK_THROWS_AS(hasse_order(cusp(7)), HypothesisError);
}
