#include "qhfpt/gfp.hpp"

#include <numeric>
#include <string>

#include "qhfpt/errors.hpp"

namespace qhfpt {

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace {

void check_same_field(FieldElement a, FieldElement b) {
  if (a.modulus != b.modulus)
    throw ContractViolation("field elements from F_" + std::to_string(a.modulus) + " and F_" +
                            std::to_string(b.modulus) + " mixed");
}

} // namespace

FieldElement operator+(FieldElement a, FieldElement b) {
  check_same_field(a, b);
  return FieldElement(add_mod(a.value, b.value, a.modulus), a.modulus);
}

FieldElement operator-(FieldElement a, FieldElement b) {
  check_same_field(a, b);
  return FieldElement(sub_mod(a.value, b.value, a.modulus), a.modulus);
}

FieldElement operator-(FieldElement a) { return FieldElement(sub_mod(0, a.value, a.modulus), a.modulus); }

FieldElement operator*(FieldElement a, FieldElement b) {
  check_same_field(a, b);
  return FieldElement(mul_mod(a.value, b.value, a.modulus), a.modulus);
}

u32 pow_mod(u32 a, u64 k, u32 p) {
  u64 result = 1 % p, base = a % p;
  while (k) {
    if (k & 1) result = result * base % p;
    base = base * base % p;
    k >>= 1;
  }
  return static_cast<u32>(result);
}

u32 inv_mod(u32 a, u32 p) {
  if (a % p == 0) throw DivisionByZero("inverse of 0 in F_" + std::to_string(p));
  // extended Euclid on signed 64-bit
  std::int64_t r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t quot = r0 / r1;
    std::int64_t r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - quot * s1;
    s0 = s1;
    s1 = s2;
  }
  std::int64_t res = s0 % static_cast<std::int64_t>(p);
  if (res < 0) res += p;
  return static_cast<u32>(res);
}

FieldElement pow(FieldElement a, u64 k) { return FieldElement(pow_mod(a.value, k, a.modulus), a.modulus); }

FieldElement inv(FieldElement a) { return FieldElement(inv_mod(a.value, a.modulus), a.modulus); }

PrimeField::PrimeField(u64 p) {
  if (p > 0xFFFFFFFFull || !is_prime(p))
    throw HypothesisError("not-prime", std::to_string(p) + " is not a 32-bit prime");
  p_ = static_cast<u32>(p);
}

FieldElement PrimeField::from_signed(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return element(static_cast<u64>(r));
}

void PrimeField::build_tables() const {
  std::call_once(tables_once_, [this] {
    fact_.resize(p_);
    inv_fact_.resize(p_);
    fact_[0] = 1 % p_;
    for (u32 i = 1; i < p_; ++i) fact_[i] = mul_mod(fact_[i - 1], i, p_);
    inv_fact_[p_ - 1] = inv_mod(fact_[p_ - 1], p_);
    for (u32 i = p_ - 1; i > 0; --i) inv_fact_[i - 1] = mul_mod(inv_fact_[i], i, p_);
  });
}

u32 PrimeField::factorial(u32 n) const {
  if (n >= p_) throw ContractViolation("factorial argument must be < p");
  if (p_ <= kMaxTablePrime) {
    build_tables();
    return fact_[n];
  }
  u64 acc = 1;
  for (u32 i = 2; i <= n; ++i) acc = acc * i % p_;
  return static_cast<u32>(acc);
}

u32 PrimeField::inverse_factorial(u32 n) const {
  if (n >= p_) throw ContractViolation("factorial argument must be < p");
  if (p_ <= kMaxTablePrime) {
    build_tables();
    return inv_fact_[n];
  }
  return inv_mod(factorial(n), p_);
}

// n < p: no factorial in sight is divisible by p.
u32 PrimeField::small_multinomial(u64 n, std::span<const u64> parts) const {
  u32 acc = factorial(static_cast<u32>(n));
  for (u64 k : parts) acc = mul_mod(acc, inverse_factorial(static_cast<u32>(k)), p_);
  return acc;
}

FieldElement PrimeField::multinomial(u64 n, std::span<const u64> parts) const {
  u64 total = 0;
  for (u64 k : parts) {
    if (k > n || total > n - k) throw ContractViolation("multinomial parts exceed n");
    total += k;
  }
  if (total != n) throw ContractViolation("multinomial parts do not sum to n");
  if (n < p_) return element(small_multinomial(n, parts));

  // Lucas: the multinomial is the product of digit multinomials, and vanishes
  // as soon as the part digits carry.
  std::vector<u64> rest(parts.begin(), parts.end());
  std::vector<u64> digits(parts.size());
  u32 acc = 1;
  while (n > 0) {
    u64 nd = n % p_;
    u64 sum = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      digits[i] = rest[i] % p_;
      rest[i] /= p_;
      sum += digits[i];
    }
    if (sum != nd) return element(0);
    acc = mul_mod(acc, small_multinomial(nd, digits), p_);
    n /= p_;
  }
  return element(acc);
}

FieldElement multinomial_mod_p(const PrimeField& field, u64 n, std::span<const u64> parts) {
  return field.multinomial(n, parts);
}

} // namespace qhfpt
