#ifndef QHFPT_RING_HPP
#define QHFPT_RING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhfpt/gfp.hpp"

namespace qhfpt {

// Upper bound on the number of terms any single polynomial in a computation
// may reach before the computation is refused.
struct ResourceLimits {
  static constexpr u64 kDefaultMaxTerms = 10'000'000;
  u64 max_terms = kDefaultMaxTerms;

  // Reads QHFPT_MAX_TERMS when set; falls back to the default.
  static ResourceLimits from_env();
};

// K[x_0..x_n] over K = F_p with positive integer weights deg(x_i) = weights[i].
class GradedRing {
public:
  GradedRing(u64 prime, std::vector<std::string> variables, std::vector<u32> weights);

  const PrimeField& field() const { return *field_; }
  u32 prime() const { return field_->prime(); }
  std::size_t num_vars() const { return variables_.size(); }
  // n in K[x_0..x_n], i.e. num_vars() - 1.
  std::size_t top_index() const { return variables_.size() - 1; }
  const std::vector<std::string>& variables() const { return variables_; }
  std::span<const u32> weights() const { return weights_; }
  u32 weight(std::size_t i) const { return weights_[i]; }
  // deg(x_0 * ... * x_n)
  u64 weight_sum() const { return weight_sum_; }
  u32 max_weight() const { return max_weight_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool same_as(const GradedRing& other) const;

private:
  std::shared_ptr<const PrimeField> field_;
  std::vector<std::string> variables_;
  std::vector<u32> weights_;
  u64 weight_sum_ = 0;
  u32 max_weight_ = 0;
};

using RingPtr = std::shared_ptr<const GradedRing>;

RingPtr make_ring(u64 prime, std::vector<std::string> variables, std::vector<u32> weights);

// Exponent vector of a monomial.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::vector<u32> exponents) : exps_(std::move(exponents)) {}
  Monomial(std::initializer_list<u32> exponents) : exps_(exponents) {}

  std::span<const u32> exponents() const { return exps_; }
  u32 operator[](std::size_t i) const { return exps_[i]; }
  std::size_t size() const { return exps_.size(); }
  u64 degree(const GradedRing& ring) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

private:
  std::vector<u32> exps_;
};

// (x_0 ... x_n)^k
Monomial diagonal_monomial(std::size_t num_vars, u32 k);

u64 weighted_degree(std::span<const u32> exps, std::span<const u32> weights);

// Sparse polynomial in canonical form: no zero coefficients, terms ordered by
// descending (weighted degree, exponent vector in lexicographic order).
// Immutable once built; exponents are stored flat, num_vars per term.
class Poly {
public:
  explicit Poly(RingPtr ring);

  // Combines like terms, reduces coefficients mod p, drops zeros.
  static Poly from_terms(RingPtr ring, std::vector<std::pair<Monomial, u64>> terms);
  static Poly constant(RingPtr ring, u64 c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly monomial(RingPtr ring, const Monomial& m, u64 c = 1);

  const RingPtr& ring() const { return ring_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }

  std::span<const u32> exponents(std::size_t term) const {
    return {exps_.data() + term * ring_->num_vars(), ring_->num_vars()};
  }
  u32 coeff(std::size_t term) const { return coeffs_[term]; }
  u64 term_degree(std::size_t term) const { return degrees_[term]; }
  Monomial term_monomial(std::size_t term) const;

  // Stored coefficient, or 0 when the monomial is absent.
  FieldElement coefficient_at(const Monomial& m) const;

  // Largest exponent of each variable over all terms.
  std::vector<u32> max_exponents() const;
  bool has_constant_term() const;
  bool is_quasi_homogeneous() const;

  Poly scaled(u32 c) const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  // Exact product.
  friend Poly operator*(const Poly& a, const Poly& b);

private:
  friend class PolyAssembler;

  RingPtr ring_;
  std::vector<u32> exps_;
  std::vector<u32> coeffs_;
  std::vector<u64> degrees_;
};

// Builds canonical Polys from unsorted (exponents, coefficient) data. Also used
// by the multiplication kernels.
class PolyAssembler {
public:
  explicit PolyAssembler(RingPtr ring) : ring_(std::move(ring)) {}
  void reserve(std::size_t terms);
  // Coefficient must already be reduced mod p; duplicates are not allowed.
  void push(std::span<const u32> exps, u32 coeff);
  Poly finish() &&;

private:
  RingPtr ring_;
  std::vector<u32> exps_;
  std::vector<u32> coeffs_;
};

// Weighted degree d when every term has degree d. Throws HypothesisError
// ("not-quasi-homogeneous", naming two terms) on mixed degrees and on f = 0.
u64 quasi_degree(const Poly& f);

// f with every monomial lying in m^[q] (some exponent >= q) deleted.
Poly truncate(const Poly& f, u64 q);

// True iff every term has an exponent >= q, i.e. f lies in the monomial ideal m^[q].
bool in_frobenius_power(const Poly& f, u64 q);

FieldElement coefficient_at(const Poly& f, const Monomial& m);

// Product in R / m^[q]. Uses the OpenMP kernel once the work is large enough.
Poly truncated_mul(const Poly& a, const Poly& b, u64 q);

// Reference single-threaded kernel. Same result as truncated_mul, always.
Poly truncated_mul_serial(const Poly& a, const Poly& b, u64 q);

// Multithreaded kernel, regardless of size. Exposed for tests and benchmarks.
Poly truncated_mul_parallel(const Poly& a, const Poly& b, u64 q);

// Full untruncated power f^k. Refuses (ResourceError) when the estimated term
// count exceeds the cap.
Poly pow_exact(const Poly& f, u64 k, const ResourceLimits& limits = {});

// f^k in R / m^[q], by repeated squaring.
Poly truncated_pow(const Poly& f, u64 k, u64 q, const ResourceLimits& limits = {});

// Number of monomials of weighted degree `degree` whose i-th exponent is at
// most bounds[i]. Saturates at `saturate_at`.
u64 count_bounded_monomials(std::span<const u32> weights, u64 degree, std::span<const u64> bounds,
                            u64 saturate_at);

// Largest number of monomials of degree k*d (k >= 0) whose exponents are all
// below q, over the degrees a degree-d quasi-homogeneous power can reach
// while still outside m^[q]. Saturates at `saturate_at`.
u64 max_truncated_slice(std::span<const u32> weights, u64 d, u64 q, u64 saturate_at);

// Guard used before every truncated powering of f modulo m^[q].
void check_truncated_budget(const Poly& f, u64 q, const ResourceLimits& limits);

// q = p^e with overflow checking against 2^31.
u64 prime_power(u32 p, unsigned e);

} // namespace qhfpt

#endif
