#include <random>

#include "doctest.h"

#include "qhfpt/errors.hpp"
#include "qhfpt/jacobian.hpp"
#include "qhfpt/parse.hpp"

using namespace qhfpt;

namespace {
RingPtr xyz(u32 p, std::vector<u32> w = {1, 1, 1}) { return make_ring(p, {"x", "y", "z"}, std::move(w)); }
RingPtr xy(u32 p, std::vector<u32> w = {1, 1}) { return make_ring(p, {"x", "y"}, std::move(w)); }
} // namespace

TEST_CASE("partial derivatives") {
  auto r = xy(7, {2, 3});
  auto d = partials(parse_poly("x*y^2+x^4", r));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == parse_poly("y^2+4*x^3", r));
  CHECK(d[1] == parse_poly("2*x*y", r));
  for (const auto& g : partials(parse_poly("x^3+y^3+z^3", xyz(3)))) CHECK(g.is_zero());
  auto r7 = xyz(7);
  auto d7 = partials(parse_poly("x^3+y^3+z^3", r7));
  CHECK(d7[0] == parse_poly("3*x^2", r7));
  CHECK(d7[2] == parse_poly("3*z^2", r7));
}

TEST_CASE("product rule") {
  std::mt19937 rng(2);
  auto r = xyz(13);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::pair<Monomial, u64>> ta, tb;
    for (int t = 0; t < 5; ++t) {
      ta.emplace_back(Monomial{static_cast<u32>(rng() % 4), static_cast<u32>(rng() % 4), static_cast<u32>(rng() % 4)}, rng());
      tb.emplace_back(Monomial{static_cast<u32>(rng() % 4), static_cast<u32>(rng() % 4), static_cast<u32>(rng() % 4)}, rng());
    }
    const Poly a = Poly::from_terms(r, ta), b = Poly::from_terms(r, tb);
    auto da = partials(a), db = partials(b), dab = partials(a * b);
    for (std::size_t v = 0; v < 3; ++v) CHECK(dab[v] == da[v] * b + a * db[v]);
  }
}

TEST_CASE("rank over F_p") {
  ModMatrix m(3, 3, 7);
  const u32 vals[9] = {1, 2, 3, 2, 4, 6, 0, 1, 1};
  for (int i = 0; i < 9; ++i) m.data[i] = vals[i];
  CHECK(rank_mod_p_serial(m) == 2);
  CHECK(rank_mod_p_parallel(m) == 2);
  std::mt19937 rng(4);
  for (int i = 0; i < 10; ++i) {
    ModMatrix big(120, 90, 101);
    for (auto& x : big.data) x = rng() % 3 == 0 ? rng() % 101 : 0;
    CHECK(rank_mod_p_serial(big) == rank_mod_p_parallel(big));
  }
}

TEST_CASE("isolated singularities") {
  auto c = is_isolated(parse_poly("x^3+y^3+z^3", xyz(7)));
  CHECK(c.verdict == IsolationVerdict::Isolated);
  CHECK(c.socle_degree == 3);
  CHECK(c.window_lo == 4);
  CHECK(c.window_hi == 4);
  REQUIRE(c.milnor_dim);
  CHECK(*c.milnor_dim == 8);
  for (const auto& m : monomials_of_degree(*xyz(7), 4)) CHECK((m[0] >= 2 || m[1] >= 2 || m[2] >= 2));
  CHECK(is_isolated(parse_poly("x^3+y^3+z^3", xyz(3))).verdict == IsolationVerdict::NotIsolated);
  CHECK(is_isolated(parse_poly("x^3+y^3+z^3+x*y*z", xyz(7))).verdict == IsolationVerdict::NotIsolated);
  CHECK(is_isolated(parse_poly("x^3+y^3+z^3+3*x*y*z", xyz(7))).verdict == IsolationVerdict::Isolated);
  CHECK(is_isolated(parse_poly("x*y", xy(5))).verdict == IsolationVerdict::Isolated);
  CHECK(is_isolated(parse_poly("x^2", xy(5))).verdict == IsolationVerdict::NotIsolated);
  CHECK_THROWS_AS(is_isolated(parse_poly("x+y^2", xy(5))), HypothesisError);
}

TEST_CASE("Milnor numbers") {
  auto m = milnor_number(parse_poly("x^3+y^3+z^3", xyz(7)));
  CHECK(m.formula_value == Rational(8));
  CHECK(m.agrees);
  auto j = milnor_number(parse_poly("x^2+y^3+z^6", xyz(7, {3, 2, 1})));
  CHECK(j.formula_value == Rational(10));
  REQUIRE(j.dimension);
  CHECK(*j.dimension == 10);
  auto a = milnor_number(parse_poly("x*y^2+x^4", xy(7, {2, 3})));
  REQUIRE(a.dimension);
  CHECK(*a.dimension == 5);
  CHECK(milnor_formula(7, std::vector<u32>{2, 3}) == Rational(10, 3));
}

TEST_CASE("Hilbert numerator division") {
  const std::vector<u32> ones = {1, 1, 1}, w23 = {2, 3};
  auto h3 = hilbert_numerator_check(3, ones);
  CHECK(h3.divisible);
  CHECK(h3.quotient == std::vector<BigInt>{1, 3, 3, 1});
  auto h8 = hilbert_numerator_check(8, w23);
  CHECK(h8.divisible);
  CHECK(h8.quotient == std::vector<BigInt>{1, 0, 1, 1, 1, 0, 1});
  CHECK_FALSE(hilbert_numerator_check(7, w23).divisible);
}

TEST_CASE("Hilbert quotient matches dim (R/J)_j") {
  struct Case {
    const char* text;
    std::vector<u32> w;
  };
  for (const Case& c : {Case{"x^3+y^3+z^3", {1, 1, 1}}, Case{"x^2+y^3+z^6", {3, 2, 1}},
                        Case{"x^2+y^4+z^4+3*x*y*z", {2, 1, 1}}}) {
    const Poly f = parse_poly(c.text, xyz(11, c.w));
    auto cert = is_isolated(f);
    REQUIRE(cert.verdict == IsolationVerdict::Isolated);
    auto h = hilbert_numerator_check(quasi_degree(f), f.ring()->weights());
    REQUIRE(h.divisible);
    for (const auto& dr : cert.per_degree_rank) {
      const BigInt want = dr.degree < static_cast<std::int64_t>(h.quotient.size()) ? h.quotient[dr.degree] : BigInt(0);
      CHECK(BigInt(dr.dimension - dr.rank) == want);
    }
  }
}
