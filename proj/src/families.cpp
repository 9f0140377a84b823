#include "qhfpt/families.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <numeric>

#include "qhfpt/errors.hpp"
#include "qhfpt/jacobian.hpp"

namespace qhfpt {

namespace {

const EllipticKindData kKinds[] = {
    {"E6", "P8", {3, 3, 3}, {1, 1, 1}, 3},
    {"E7", "X9", {2, 4, 4}, {2, 1, 1}, 4},
    {"E8", "J10", {2, 3, 6}, {3, 2, 1}, 6},
};

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void require_odd_prime(u32 p) {
  if (!is_prime(p)) throw HypothesisError("not-prime", std::to_string(p) + " is not prime");
  if (p == 2) throw HypothesisError("prime-too-small", "the elliptic closed forms need p != 2");
}

Poly diagonal_base(const RingPtr& ring, std::span<const u32> powers) {
  std::vector<std::pair<Monomial, u64>> terms;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    std::vector<u32> e(powers.size(), 0);
    e[i] = powers[i];
    terms.emplace_back(Monomial(std::move(e)), 1);
  }
  return Poly::from_terms(ring, std::move(terms));
}

} // namespace

const EllipticKindData& kind_data(EllipticKind kind) { return kKinds[static_cast<int>(kind)]; }

const std::vector<EllipticKind>& all_kinds() {
  static const std::vector<EllipticKind> kinds{EllipticKind::E6, EllipticKind::E7, EllipticKind::E8};
  return kinds;
}

EllipticKind parse_kind(const std::string& text) {
  const std::string t = upper(text);
  for (EllipticKind k : all_kinds()) {
    const auto& data = kind_data(k);
    if (t == data.name || t == data.arnold) return k;
  }
  throw HypothesisError("unknown-kind", "unknown elliptic kind '" + text + "' (expected E6, E7 or E8)");
}

RingPtr parameter_ring(u32 p, const std::string& parameter) { return make_ring(p, {parameter}, {1}); }

FieldElement evaluate_univariate(const Poly& g, u32 at) {
  const u32 p = g.ring()->prime();
  u32 acc = 0;
  for (std::size_t t = 0; t < g.size(); ++t)
    acc = add_mod(acc, mul_mod(g.coeff(t), pow_mod(at % p, g.exponents(t)[0], p), p), p);
  return FieldElement(acc, p);
}

FamilyExpr elliptic_family(EllipticKind kind, u32 p, const std::string& parameter) {
  const auto& data = kind_data(kind);
  auto ring = make_ring(p, {"x", "y", "z"}, {data.weights[0], data.weights[1], data.weights[2]});
  return {diagonal_base(ring, data.powers), Poly::monomial(ring, Monomial{1, 1, 1}), parameter};
}

Poly phi_closed(EllipticKind kind, u32 p) {
  require_odd_prime(p);
  const auto& data = kind_data(kind);
  auto lring = parameter_ring(p);
  const PrimeField& field = lring->field();
  const u32 step = data.degree;
  std::vector<std::pair<Monomial, u64>> terms;
  for (u32 s = 0; step * s <= p - 1; ++s) {
    // (step s)! / prod (step s / power_i)!
    const u32 n = step * s;
    u32 c = field.factorial(n);
    for (u32 a : data.powers) c = mul_mod(c, field.inverse_factorial(n / a), p);
    // binom(p-1, n) = (-1)^n mod p
    if (n % 2 == 1) c = sub_mod(0, c, p);
    terms.emplace_back(Monomial{p - 1 - n}, c);
  }
  return Poly::from_terms(lring, std::move(terms));
}

Poly period_polynomial(EllipticKind kind, u32 p) {
  require_odd_prime(p);
  const auto& data = kind_data(kind);
  FamilyExpr fam = elliptic_family(kind, p);
  const Poly& diagonal = fam.base;
  auto lring = parameter_ring(p);
  const u32 w = data.degree;
  const u32 top = w * ((p - 1) / w);
  std::vector<std::pair<Monomial, u64>> terms;
  Poly power = Poly::constant(diagonal.ring(), 1);
  for (u32 n = 0; n <= top; ++n) {
    if (n > 0) power = power * diagonal;
    // [ (x^a+y^b+z^c)^n / (xyz)^n ]_0 is the coefficient of (xyz)^n
    u32 c = power.coefficient_at(Monomial{n, n, n}).value;
    if (c == 0) continue;
    if (n % 2 == 1) c = sub_mod(0, c, p);
    terms.emplace_back(Monomial{p - 1 - n}, c);
  }
  return Poly::from_terms(lring, std::move(terms));
}

FieldElement socle_coefficient(const Poly& f, unsigned e, const ResourceLimits& limits) {
  const u64 d = quasi_degree(f);
  const GradedRing& ring = *f.ring();
  if (d != ring.weight_sum())
    throw HypothesisError("degree-mismatch", "socle coefficient needs deg f = w, got d = " + std::to_string(d) +
                                                 ", w = " + std::to_string(ring.weight_sum()));
  const u64 q = prime_power(ring.prime(), e);
  Poly g = truncated_pow(f, q - 1, q, limits);
  return g.coefficient_at(diagonal_monomial(ring.num_vars(), static_cast<u32>(q - 1)));
}

int DiagonalShape::reciprocal_sum_sign() const {
  // compare sum 1/a_i with 1 using an exact common denominator
  BigInt lcm = 1;
  for (u32 a : powers) lcm = boost::multiprecision::lcm(lcm, BigInt(a));
  BigInt sum = 0;
  for (u32 a : powers) sum += lcm / a;
  return sum < lcm ? -1 : (sum == lcm ? 0 : 1);
}

std::optional<DiagonalShape> match_diagonal(const Poly& f) {
  const std::size_t nv = f.ring()->num_vars();
  DiagonalShape shape;
  shape.powers.assign(nv, 0);
  shape.power_coeffs.assign(nv, 0);
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    if (std::all_of(e.begin(), e.end(), [](u32 x) { return x == 1; })) {
      shape.product_coeff = f.coeff(t);
      continue;
    }
    std::size_t nonzero = 0, var = 0;
    for (std::size_t i = 0; i < nv; ++i)
      if (e[i]) {
        ++nonzero;
        var = i;
      }
    if (nonzero != 1 || shape.powers[var] != 0 || e[var] < 2) return std::nullopt;
    shape.powers[var] = e[var];
    shape.power_coeffs[var] = f.coeff(t);
  }
  if (std::any_of(shape.powers.begin(), shape.powers.end(), [](u32 a) { return a == 0; })) return std::nullopt;
  return shape;
}

FieldElement diagonal_socle_coefficient(const DiagonalShape& shape, const PrimeField& field, u64 q) {
  const u32 p = field.prime();
  const u64 top = q - 1;
  u64 acc = 0;
  std::vector<u64> parts(shape.powers.size());
  for (u64 n = 0; n <= top; ++n) {
    u64 used = 0;
    bool ok = true;
    for (std::size_t i = 0; i < shape.powers.size() && ok; ++i) {
      if (n % shape.powers[i] != 0) ok = false;
      else {
        parts[i] = n / shape.powers[i];
        used += parts[i];
      }
    }
    if (!ok || used != n) continue;
    const u64 rest[2] = {n, top - n};
    u32 term = field.multinomial(top, rest).value;
    term = mul_mod(term, field.multinomial(n, parts).value, p);
    term = mul_mod(term, pow_mod(shape.product_coeff, top - n, p), p);
    for (std::size_t i = 0; i < parts.size(); ++i) term = mul_mod(term, pow_mod(shape.power_coeffs[i], parts[i], p), p);
    acc = add_mod(static_cast<u32>(acc), term, p);
  }
  return field.element(acc);
}

DiagonalThreshold diagonal_threshold(const Poly& f, unsigned e_max, const ResourceLimits& limits) {
  auto shape = match_diagonal(f);
  if (!shape || shape->product_coeff == 0)
    throw HypothesisError("unsupported-shape", "expected x_0^a_0 + ... + x_n^a_n + c*x_0*...*x_n with c != 0");
  if (shape->reciprocal_sum_sign() >= 0)
    throw HypothesisError("unsupported-shape", "need sum of 1/a_i < 1");
  if (e_max == 0) throw ContractViolation("e_max must be at least 1");
  const GradedRing& ring = *f.ring();
  const PrimeField& field = ring.field();
  const u32 p = ring.prime();

  DiagonalThreshold out;
  FptResult& r = out.result;
  for (unsigned e = 1; e <= e_max; ++e) {
    const u64 q = prime_power(p, e);
    FieldElement c = diagonal_socle_coefficient(*shape, field, q);
    if (c != field.element(pow_mod(shape->product_coeff, q - 1, p)))
      throw InvariantViolation("diagonal socle coefficient differs from c^(q-1)");
    out.coefficients.push_back(c);
    // f^(q-1) survives modulo m^[q] through (x_0...x_n)^(q-1), and f^q lies in
    // m^[q] because it is a sum of q-th powers.
    MuEntry entry;
    entry.e = e;
    entry.q = q;
    entry.mu = q;
    r.ladder.entries.push_back(entry);
  }
  // independent check of the first rung by truncated powering when affordable
  try {
    check_truncated_budget(f, p, limits);
    const u64 direct = mu(f, 1, MuOptions{limits, false});
    if (direct != p) throw InvariantViolation("mu(p) = " + std::to_string(direct) + " but the coefficient says p");
  } catch (const ResourceError&) {
  }
  const MuEntry& last = r.ladder.entries.back();
  r.exact = true;
  r.value = 1;
  r.lower = Rational(BigInt(last.mu - 1), BigInt(last.q));
  r.upper = 1;
  r.certificate = Certificate::SocleCoefficient;
  r.e_used = e_max;
  r.assumptions.quasi_homogeneous = f.is_quasi_homogeneous();
  return out;
}

const char* to_string(MemberStatus s) {
  switch (s) {
  case MemberStatus::Ordinary: return "ordinary";
  case MemberStatus::Supersingular: return "supersingular";
  case MemberStatus::SingularMember: return "singular-member";
  case MemberStatus::Excluded: return "excluded";
  }
  return "unknown";
}

std::optional<EllipticKind> detect_kind(const FamilyExpr& family) {
  const RingPtr& ring = family.base.ring();
  if (ring->num_vars() != 3) return std::nullopt;
  for (EllipticKind k : all_kinds()) {
    const auto& data = kind_data(k);
    if (!std::equal(ring->weights().begin(), ring->weights().end(), data.weights)) continue;
    if (family.base == diagonal_base(ring, data.powers) &&
        family.parameter_term == Poly::monomial(ring, Monomial{1, 1, 1}))
      return k;
  }
  return std::nullopt;
}

namespace {

FamilyMember classify_calabi_yau(const FamilyExpr& family, u32 lambda, const std::optional<Poly>& phi,
                                 const SweepOptions& options) {
  FamilyMember m;
  m.lambda = lambda;
  const Poly f = family.specialize(lambda);
  const GradedRing& ring = *f.ring();
  const u32 p = ring.prime();
  if (f.is_zero()) return m;
  m.phi_value = socle_coefficient(f, 1, options.limits).value;
  if (phi && evaluate_univariate(*phi, lambda).value != m.phi_value)
    throw InvariantViolation("closed-form phi(" + std::to_string(lambda) + ") disagrees with the socle coefficient");

  auto iso = is_isolated(f, IsolationOptions{options.limits});
  if (!iso.jacobian_is_m_primary()) {
    auto ladder = mu_ladder(f, 1, MuOptions{options.limits, false});
    const MuEntry& rung = ladder.entries.back();
    m.lower = Rational(BigInt(rung.mu - 1), BigInt(rung.q));
    m.upper = Rational(BigInt(rung.mu), BigInt(rung.q));
    return m;
  }
  FptResult r = fpt(f, FptOptions{options.e_max, false, options.limits});
  m.status = m.phi_value != 0 ? MemberStatus::Ordinary : MemberStatus::Supersingular;
  if (r.exact) {
    m.fpt = r.value;
    m.certificate = r.certificate;
  }
  const std::int64_t n = static_cast<std::int64_t>(ring.top_index());
  const std::int64_t bound = static_cast<std::int64_t>(ring.weight_sum()) * (n - 2) + 1;
  if (r.exact && static_cast<std::int64_t>(p) >= bound && (m.phi_value != 0) != (r.value == 1))
    throw InvariantViolation("socle coefficient and fpt disagree at lambda = " + std::to_string(lambda));
  return m;
}

FamilyMember classify_diagonal(const FamilyExpr& family, u32 lambda, const SweepOptions& options) {
  FamilyMember m;
  m.lambda = lambda;
  if (lambda == 0) {
    m.status = MemberStatus::Excluded;
    return m;
  }
  const Poly f = family.specialize(lambda);
  auto dt = diagonal_threshold(f, options.e_max, options.limits);
  m.phi_value = dt.coefficients.front().value;
  m.status = m.phi_value != 0 ? MemberStatus::Ordinary : MemberStatus::Supersingular;
  m.fpt = dt.result.value;
  m.certificate = dt.result.certificate;
  return m;
}

bool is_diagonal_product_family(const FamilyExpr& family) {
  const RingPtr& ring = family.base.ring();
  if (family.parameter_term != Poly::monomial(ring, diagonal_monomial(ring->num_vars(), 1))) return false;
  auto shape = match_diagonal(family.base);
  return shape && shape->product_coeff == 0 && shape->reciprocal_sum_sign() < 0;
}

} // namespace

FamilyReport sweep_family(const FamilyExpr& family, const SweepOptions& options) {
  const RingPtr& ring = family.base.ring();
  const u32 p = ring->prime();
  FamilyReport report{p, family, {}, {}, {}, {}};

  const bool diagonal = is_diagonal_product_family(family);
  if (diagonal) {
    report.family_type = "diagonal-product";
  } else {
    const u64 w = ring->weight_sum();
    if (family.parameter_term.is_zero())
      throw HypothesisError("degree-mismatch", "parameter term is zero");
    const u64 dp = quasi_degree(family.parameter_term);
    if (!family.base.is_zero() && quasi_degree(family.base) != dp)
      throw HypothesisError("degree-mismatch", "base and parameter term have different weighted degrees");
    if (dp != w)
      throw HypothesisError("degree-mismatch", "family degree " + std::to_string(dp) + " differs from w = " +
                                                   std::to_string(w));
    report.family_type = "calabi-yau";
    report.kind = detect_kind(family);
    if (report.kind && p != 2) report.phi_polynomial = phi_closed(*report.kind, p);
  }

  report.per_lambda.resize(p);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t l = 0; l < static_cast<std::ptrdiff_t>(p); ++l) {
    try {
      const u32 lambda = static_cast<u32>(l);
      report.per_lambda[lambda] = diagonal ? classify_diagonal(family, lambda, options)
                                           : classify_calabi_yau(family, lambda, report.phi_polynomial, options);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

} // namespace qhfpt
