#ifndef QHFPT_FAMILIES_HPP
#define QHFPT_FAMILIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "qhfpt/parse.hpp"
#include "qhfpt/rational.hpp"
#include "qhfpt/ring.hpp"
#include "qhfpt/threshold.hpp"

namespace qhfpt {

// The three elliptic families x^a + y^b + z^c + L*x*y*z with 1/a + 1/b + 1/c = 1.
enum class EllipticKind { E6, E7, E8 };

struct EllipticKindData {
  const char* name;       // "E6"
  const char* arnold;     // "P8"
  u32 powers[3];          // (a, b, c)
  u32 weights[3];         // grading making the family quasi-homogeneous
  u32 degree;             // = sum of weights = lcm(a, b, c)
};

const EllipticKindData& kind_data(EllipticKind kind);
// Accepts "E6"/"P8", "E7"/"X9", "E8"/"J10" (case-insensitive).
EllipticKind parse_kind(const std::string& text);
const std::vector<EllipticKind>& all_kinds();

// Variables x, y, z with the kind's weights, base x^a+y^b+z^c and parameter term xyz.
FamilyExpr elliptic_family(EllipticKind kind, u32 p, const std::string& parameter = "L");

// One-variable ring F_p[L] used for polynomials in the family parameter.
RingPtr parameter_ring(u32 p, const std::string& parameter = "L");
FieldElement evaluate_univariate(const Poly& g, u32 at);

// Coefficient of (xyz)^(p-1) in f_L^(p-1) as a polynomial in L, from the
// factorial closed form, e.g. sum_s (3s)!/(s!)^3 (-1)^(3s) L^(p-1-3s) for E6.
Poly phi_closed(EllipticKind kind, u32 p);

// L^(p-1) times the truncated period sum_n (-1/L)^n [((x^a+y^b+z^c)/(xyz))^n]_0,
// with the degree-zero parts read off an explicit expansion of
// (x^a+y^b+z^c)^n.
Poly period_polynomial(EllipticKind kind, u32 p);

// Coefficient of (x_0...x_n)^(q-1) in f^(q-1), q = p^e, by truncated
// powering modulo m^[q]. Requires deg f = w.
FieldElement socle_coefficient(const Poly& f, unsigned e = 1, const ResourceLimits& limits = {});

// f = c_0 x_0^a_0 + ... + c_n x_n^a_n + c x_0...x_n.
struct DiagonalShape {
  std::vector<u32> powers;
  std::vector<u32> power_coeffs;
  u32 product_coeff = 0;

  // sum 1/a_i compared to 1: negative, zero or positive.
  int reciprocal_sum_sign() const;
};

std::optional<DiagonalShape> match_diagonal(const Poly& f);

// Coefficient of (x_0...x_n)^(q-1) in f^(q-1) for diagonal-plus-product f,
// summing binom(q-1, N) c^(q-1-N) (N; N/a_0, ..., N/a_n) prod c_i^(N/a_i)
// over the N for which every a_i divides N and the quotients add up to N.
FieldElement diagonal_socle_coefficient(const DiagonalShape& shape, const PrimeField& field, u64 q);

// T_{a,b,c}-type polynomials: diagonal plus product with sum 1/a_i < 1 and a
// nonzero product coefficient. The (x_0...x_n)^(q-1) coefficient is then
// c^(q-1) != 0 for every q, so mu(q) = q and fpt = 1. The result carries the
// verified coefficients for e = 1..e_max and the certificate
// SocleCoefficient. Throws HypothesisError for other shapes.
struct DiagonalThreshold {
  FptResult result;
  std::vector<FieldElement> coefficients;  // index e-1
};
DiagonalThreshold diagonal_threshold(const Poly& f, unsigned e_max = 2, const ResourceLimits& limits = {});

enum class MemberStatus { Ordinary, Supersingular, SingularMember, Excluded };
const char* to_string(MemberStatus s);

struct FamilyMember {
  u32 lambda = 0;
  MemberStatus status = MemberStatus::SingularMember;
  std::optional<Rational> fpt;            // certified value
  std::optional<Certificate> certificate;
  std::optional<Rational> lower, upper;   // mu-ladder interval for singular members
  u32 phi_value = 0;                      // socle coefficient of f_lambda
};

struct FamilyReport {
  u32 prime = 2;
  FamilyExpr family;
  std::string family_type;  // "calabi-yau" or "diagonal-product"
  std::optional<EllipticKind> kind;
  std::optional<Poly> phi_polynomial;
  std::vector<FamilyMember> per_lambda;  // sorted by lambda
};

struct SweepOptions {
  unsigned e_max = 2;
  ResourceLimits limits;
};

// Classifies f_L for every L in F_p. Members are processed in parallel and
// reported in increasing L.
FamilyReport sweep_family(const FamilyExpr& family, const SweepOptions& options = {});

// Recognises base/parameter_term as one of the elliptic kinds in the ring's
// variable order.
std::optional<EllipticKind> detect_kind(const FamilyExpr& family);

} // namespace qhfpt

#endif
