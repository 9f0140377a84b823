#include <random>
#include <vector>

#include "doctest.h"

#include "qhfpt/errors.hpp"
#include "qhfpt/parse.hpp"
#include "qhfpt/ring.hpp"

using namespace qhfpt;

namespace {

RingPtr xyz(u32 p) { return make_ring(p, {"x", "y", "z"}, {1, 1, 1}); }
RingPtr xy(u32 p, std::vector<u32> w = {1, 1}) { return make_ring(p, {"x", "y"}, std::move(w)); }

Poly random_poly(const RingPtr& r, std::mt19937& rng, std::size_t terms, u32 max_exp) {
  std::vector<std::pair<Monomial, u64>> t;
  for (std::size_t i = 0; i < terms; ++i) {
    std::vector<u32> e(r->num_vars());
    for (auto& x : e) x = rng() % (max_exp + 1);
    t.emplace_back(Monomial(e), rng());
  }
  return Poly::from_terms(r, t);
}

} // namespace

TEST_CASE("ring validation") {
  CHECK_THROWS_AS(make_ring(7, {"x", "y"}, {1}), HypothesisError);
  CHECK_THROWS_AS(make_ring(7, {"x", "x"}, {1, 1}), HypothesisError);
  CHECK_THROWS_AS(make_ring(7, {"x"}, {0}), HypothesisError);
  CHECK_THROWS_AS(make_ring(8, {"x"}, {1}), HypothesisError);
  auto r = xy(7, {2, 3});
  CHECK(r->weight_sum() == 5);
  CHECK(r->top_index() == 1);
  CHECK(r->index_of("y") == 1u);
  CHECK_FALSE(r->index_of("z"));
}

TEST_CASE("quasi-degree") {
  CHECK(quasi_degree(parse_poly("x*y^2+x^4", xy(7, {2, 3}))) == 8);
  CHECK(quasi_degree(parse_poly("x^3+y^3+z^3+2*x*y*z", xyz(7))) == 3);
  CHECK_THROWS_AS(quasi_degree(parse_poly("x+y^2", xy(5))), HypothesisError);
  CHECK_THROWS_AS(quasi_degree(Poly(xy(5))), HypothesisError);
}

TEST_CASE("truncated multiplication") {
  auto r1 = make_ring(7, {"x"}, {1});
  CHECK(truncated_mul(parse_poly("x^2", r1), parse_poly("x", r1), 3).is_zero());
  auto r2 = xy(2);
  CHECK(truncated_mul(parse_poly("x+y", r2), parse_poly("x+y", r2), 2).is_zero());
  auto r5 = xy(5);
  CHECK(truncated_mul(parse_poly("x^2+y^2", r5), parse_poly("x^2+y^2", r5), 3) == parse_poly("2*x^2*y^2", r5));
}

TEST_CASE("exact powers") {
  auto r = xyz(7);
  const Poly f = parse_poly("x^3+y^3+z^3", r);
  CHECK(pow_exact(f, 0) == Poly::constant(r, 1));
  CHECK(pow_exact(f, 2) == parse_poly("x^6+y^6+z^6+2*x^3*y^3+2*x^3*z^3+2*y^3*z^3", r));
  auto r2 = xy(2);
  CHECK(pow_exact(parse_poly("x+y", r2), 2) == parse_poly("x^2+y^2", r2));
}

TEST_CASE("Frobenius power membership") {
  auto r = xyz(7);
  CHECK(in_frobenius_power(parse_poly("x^7", r), 7));
  CHECK_FALSE(in_frobenius_power(parse_poly("x^6*y^6*z^6", r), 7));
  CHECK(in_frobenius_power(parse_poly("x^7+x^3*y^7", r), 7));
  CHECK(in_frobenius_power(Poly(r), 7));
}

TEST_CASE("coefficient lookup") {
  auto r = xyz(7);
  CHECK(coefficient_at(pow_exact(parse_poly("x^3+y^3+z^3", r), 6), Monomial{6, 6, 6}).value == 6);
  auto r2 = xy(7, {2, 3});
  const Poly f = parse_poly("x*y^2+x^4", r2);
  CHECK(coefficient_at(f, Monomial{4, 0}).value == 1);
  CHECK(coefficient_at(f, Monomial{1, 1}).value == 0);
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937 rng(11);
  for (u32 p : {2u, 3u, 101u}) {
    auto r = xyz(p);
    for (int i = 0; i < 8; ++i) {
      const Poly a = random_poly(r, rng, 200, 12), b = random_poly(r, rng, 200, 12);
      const u64 q = 4 + rng() % 12;
      const Poly s = truncated_mul_serial(a, b, q);
      CHECK(s == truncated_mul_parallel(a, b, q));
      CHECK(s == truncated_mul(a, b, q));
    }
  }
}

TEST_CASE("truncation is a ring map modulo m^[q]") {
  std::mt19937 rng(5);
  auto r = xyz(5);
  for (int i = 0; i < 30; ++i) {
    const Poly a = random_poly(r, rng, 10, 6), b = random_poly(r, rng, 10, 6);
    const u64 q = 2 + rng() % 5;
    CHECK(truncate(a * b, q) == truncated_mul(truncate(a, q), truncate(b, q), q));
    CHECK(truncate(a + b, q) == truncate(a, q) + truncate(b, q));
  }
}

TEST_CASE("truncated powers match exact powers reduced") {
  std::mt19937 rng(9);
  auto r = xy(3);
  for (int i = 0; i < 20; ++i) {
    const Poly f = random_poly(r, rng, 4, 3);
    const u64 k = 1 + rng() % 6, q = 3 + rng() % 7;
    CHECK(truncated_pow(f, k, q) == truncate(pow_exact(f, k), q));
  }
}

TEST_CASE("resource guards") {
  ResourceLimits tiny;
  tiny.max_terms = 10;
  auto r = xyz(101);
  const Poly f = parse_poly("x+y+z", r);
  CHECK_THROWS_AS(pow_exact(f, 50, tiny), ResourceError);
  CHECK_THROWS_AS(truncated_pow(f, 50, 101, tiny), ResourceError);
  CHECK_THROWS_AS(prime_power(65537, 3), ResourceError);
  CHECK(prime_power(5, 2) == 25);
}

TEST_CASE("monomial counting") {
  const std::vector<u32> w = {1, 1, 1};
  const std::vector<u64> bounds = {100, 100, 100};
  CHECK(count_bounded_monomials(w, 4, bounds, 1u << 30) == 15);
  const std::vector<u64> small = {1, 1, 1};
  CHECK(count_bounded_monomials(w, 2, small, 1u << 30) == 3);
}
