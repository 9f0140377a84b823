#ifndef QHFPT_JACOBIAN_HPP
#define QHFPT_JACOBIAN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhfpt/rational.hpp"
#include "qhfpt/ring.hpp"

namespace qhfpt {

// Formal partial derivatives, one per variable, coefficients reduced mod p.
std::vector<Poly> partials(const Poly& f);

// Dense matrix over F_p, row major.
struct ModMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  u32 prime = 2;
  std::vector<u32> data;

  ModMatrix(std::size_t r, std::size_t c, u32 p) : rows(r), cols(c), prime(p), data(r * c, 0) {}
  u32& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  u32 at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Rank by Gaussian elimination; the pivot is the first row (in row order)
// with a nonzero entry in the current column. Serial reference.
std::size_t rank_mod_p_serial(ModMatrix m);
// Same elimination with the row updates split across OpenMP threads.
std::size_t rank_mod_p_parallel(ModMatrix m);
// Dispatches on size and whether we are already inside a parallel region.
std::size_t rank_mod_p(ModMatrix m);

// All monomials of the given weighted degree, in a fixed order.
std::vector<Monomial> monomials_of_degree(const GradedRing& ring, u64 degree);

enum class IsolationVerdict { Isolated, NotIsolated, DegenerateSmooth };
const char* to_string(IsolationVerdict v);

struct DegreeRank {
  std::int64_t degree = 0;
  u64 rank = 0;       // dim J(f)_j
  u64 dimension = 0;  // dim R_j
};

struct IsolatedCertificate {
  // N = (n+1) d - 2w: the top degree of R/J(f) for an isolated singularity.
  std::int64_t socle_degree = 0;
  // Degrees [N+1, N+max weight] whose graded pieces must lie in J(f).
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  std::vector<DegreeRank> per_degree_rank;
  // sum_{j <= N} dim (R/J(f))_j, only when the verdict is not NotIsolated.
  std::optional<BigInt> milnor_dim;
  Rational milnor_formula_value;
  IsolationVerdict verdict = IsolationVerdict::NotIsolated;
  std::string reason;

  // Isolated or degenerate-smooth: J(f) contains a power of m, which is all
  // the mu lower bound needs.
  bool jacobian_is_m_primary() const { return verdict != IsolationVerdict::NotIsolated; }
};

struct IsolationOptions {
  ResourceLimits limits;
};

// Decides whether the partials of a quasi-homogeneous f form a regular
// sequence by checking R_j ⊆ J(f) for every j in the window above; once that
// window is covered every higher degree is, since each monomial of degree
// j > N + max weight is a variable times a monomial of degree >= N + 1.
IsolatedCertificate is_isolated(const Poly& f, const IsolationOptions& options = {});

// prod (d - a_i) / a_i.
Rational milnor_formula(u64 d, std::span<const u32> weights);

struct MilnorNumber {
  Rational formula_value;
  bool formula_is_integer = false;
  // Linear-algebra dimension of R/J(f); empty when f is not isolated.
  std::optional<BigInt> dimension;
  bool agrees = false;
};

MilnorNumber milnor_number(const Poly& f, const IsolationOptions& options = {});

struct HilbertNumeratorCheck {
  bool divisible = false;
  // prod (1 - T^(d - a_j)) / prod (1 - T^(a_i)), coefficients by degree.
  std::vector<BigInt> quotient;
};

// Exact division of integer polynomials. `divisible == false` rules out an
// isolated quasi-homogeneous singularity of this degree and type.
HilbertNumeratorCheck hilbert_numerator_check(u64 d, std::span<const u32> weights);

} // namespace qhfpt

#endif
