#ifndef QHFPT_GFP_HPP
#define QHFPT_GFP_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <ostream>
#include <span>
#include <vector>

namespace qhfpt {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Deterministic trial division; adequate for 32-bit inputs.
bool is_prime(u64 n);

// An element of F_p. The modulus travels with the value so that mixing
// elements of different fields is caught instead of silently reduced.
struct FieldElement {
  u32 value = 0;
  u32 modulus = 2;

  FieldElement() = default;
  FieldElement(u64 v, u32 p) : value(static_cast<u32>(v % p)), modulus(p) {}

  bool is_zero() const { return value == 0; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a);
FieldElement operator*(FieldElement a, FieldElement b);
FieldElement pow(FieldElement a, u64 k);
FieldElement inv(FieldElement a);

inline std::ostream& operator<<(std::ostream& os, FieldElement a) {
  return os << a.value;
}

// Raw modular helpers used by the kernels; inputs must already be < p.
inline u32 add_mod(u32 a, u32 b, u32 p) {
  u64 s = u64{a} + b;
  return static_cast<u32>(s >= p ? s - p : s);
}
inline u32 sub_mod(u32 a, u32 b, u32 p) { return a >= b ? a - b : static_cast<u32>(u64{a} + p - b); }
inline u32 mul_mod(u32 a, u32 b, u32 p) { return static_cast<u32>(u64{a} * b % p); }
u32 pow_mod(u32 a, u64 k, u32 p);
u32 inv_mod(u32 a, u32 p);

// The prime field F_p together with lazily built factorial tables.
//
// Tables cover 0..p-1 and are only built for p up to kMaxTablePrime; above that
// multinomials with n < p are evaluated by direct products. All members are
// safe to use concurrently once constructed.
class PrimeField {
public:
  static constexpr u32 kMaxTablePrime = 1u << 22;

  // Throws HypothesisError if p is not prime.
  explicit PrimeField(u64 p);

  u32 prime() const { return p_; }
  FieldElement element(u64 v) const { return FieldElement(v, p_); }
  FieldElement from_signed(std::int64_t v) const;

  // n! mod p for n < p.
  u32 factorial(u32 n) const;
  u32 inverse_factorial(u32 n) const;

  // n! / prod(parts_i!) mod p. Parts must sum to n (ContractViolation
  // otherwise). For n >= p the value is assembled digit by digit in base p,
  // so a zero result means p divides the multinomial.
  FieldElement multinomial(u64 n, std::span<const u64> parts) const;

private:
  void build_tables() const;
  u32 small_multinomial(u64 n, std::span<const u64> parts) const;

  u32 p_;
  mutable std::once_flag tables_once_;
  mutable std::vector<u32> fact_;
  mutable std::vector<u32> inv_fact_;
};

// Free-function form matching the rest of the API.
FieldElement multinomial_mod_p(const PrimeField& field, u64 n, std::span<const u64> parts);

} // namespace qhfpt

#endif
