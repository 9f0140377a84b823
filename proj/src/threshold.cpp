#include "qhfpt/threshold.hpp"

#include "qhfpt/parse.hpp"

namespace qhfpt {

LadderAudit& ladder_audit() {
  static LadderAudit audit;
  return audit;
}

namespace {

void require_in_maximal_ideal(const Poly& f) {
  if (f.is_zero()) throw HypothesisError("zero-polynomial", "mu is undefined for f = 0");
  if (f.has_constant_term())
    throw HypothesisError("not-in-maximal-ideal", "f has a nonzero constant term, so no power lies in m^[q]");
}

// Smallest k > start with f^k in m^[q], given that f^start is not.
u64 climb(const Poly& f, u64 q, u64 start, const ResourceLimits& limits) {
  check_truncated_budget(f, q, limits);
  const Poly step = truncate(f, q);
  Poly g = truncated_pow(f, start, q, limits);
  if (g.is_zero())
    throw InvariantViolation("f^" + std::to_string(start) + " already lies in m^[" + std::to_string(q) +
                             "], contradicting mu(pq) >= p mu(q) - p + 1");
  u64 k = start;
  while (!g.is_zero()) {
    if (k >= q) throw InvariantViolation("f^q not in m^[q] for f = " + format_poly(f));
    g = truncated_mul(g, step, q);
    ++k;
  }
  return k;
}

void check_rung(const Poly& f, MuEntry& entry, const MuOptions& options) {
  auto& audit = ladder_audit();
  ++audit.rungs;
  if (entry.mu < 1 || entry.mu > entry.q)
    throw InvariantViolation("mu(" + std::to_string(entry.q) + ") = " + std::to_string(entry.mu) + " outside [1, q]");
  if (!f.is_quasi_homogeneous()) return;
  const GradedRing& ring = *f.ring();
  const BigInt d = f.term_degree(0);
  const BigInt w = ring.weight_sum();
  const BigInt q = entry.q;
  const BigInt m = entry.mu;
  const BigInt n = static_cast<u64>(ring.top_index());

  entry.upper_bound = ceil_div(w * q - w + 1, d);
  ++audit.upper_checks;
  if (m > *entry.upper_bound)
    throw InvariantViolation("mu(" + q.str() + ") = " + m.str() + " exceeds the degree bound " +
                             entry.upper_bound->str());

  if (options.jacobian_m_primary && entry.mu % ring.prime() != 0) {
    entry.lower_bound = Rational(w * (q + 1) - n * d, d);
    ++audit.lower_checks;
    if (Rational(m) < *entry.lower_bound)
      throw InvariantViolation("mu(" + q.str() + ") = " + m.str() + " is below the isolated-singularity bound " +
                               to_string(*entry.lower_bound));
  }
}

MuEntry next_rung(const Poly& f, const MuLadder& ladder, const MuOptions& options) {
  const u32 p = f.ring()->prime();
  MuEntry entry;
  entry.e = static_cast<unsigned>(ladder.entries.size()) + 1;
  try {
    entry.q = prime_power(p, entry.e);
    const u64 start = ladder.entries.empty() ? 0 : p * ladder.entries.back().mu - p;
    entry.mu = climb(f, entry.q, start, options.limits);
  } catch (const ResourceError& err) {
    throw LadderResourceError(err.what(), ladder);
  }
  check_rung(f, entry, options);
  if (!ladder.entries.empty()) {
    const MuEntry& prev = ladder.entries.back();
    ++ladder_audit().ceiling_checks;
    const u64 ceiling = (entry.mu + p - 1) / p;
    if (prev.mu != ceiling)
      throw InvariantViolation("mu(" + std::to_string(prev.q) + ") = " + std::to_string(prev.mu) + " but ceil(mu(" +
                               std::to_string(entry.q) + ")/p) = " + std::to_string(ceiling));
    // mu(pq)/(pq) <= mu(q)/q
    if (entry.mu > p * prev.mu) throw InvariantViolation("mu(p^e)/p^e increased along the ladder");
  }
  return entry;
}

} // namespace

u64 mu(const Poly& f, unsigned e, const MuOptions& options) {
  if (e == 0) return 1;
  return mu_ladder(f, e, options).entries.back().mu;
}

MuLadder mu_ladder(const Poly& f, unsigned e_max, const MuOptions& options) {
  require_in_maximal_ideal(f);
  MuLadder ladder;
  for (unsigned e = 1; e <= e_max; ++e) ladder.entries.push_back(next_rung(f, ladder, options));
  ++ladder_audit().ladders;
  return ladder;
}

const char* certificate_name(Certificate c) {
  switch (c) {
  case Certificate::CalabiYau: return "CY-Theorem-3.8";
  case Certificate::LiftSocle: return "Lifting-3.7(1)";
  case Certificate::LiftConstant: return "Lifting-3.7(2)";
  case Certificate::SocleCoefficient: return "Coefficient-4.1";
  case Certificate::Truncated: return "Truncated-at-e_max";
  }
  return "unknown";
}

namespace {

void check_exact_against_ladder(const FptResult& r) {
  for (const auto& entry : r.ladder.entries) {
    Rational lo(BigInt(entry.mu - 1), BigInt(entry.q)), hi(BigInt(entry.mu), BigInt(entry.q));
    if (r.value < lo || r.value > hi)
      throw InvariantViolation("fpt " + to_string(r.value) + " outside [" + to_string(lo) + ", " + to_string(hi) + "]");
  }
  if (r.value <= 0 || r.value > 1) throw InvariantViolation("fpt " + to_string(r.value) + " outside (0, 1]");
}

} // namespace

FptResult fpt(const Poly& f, const FptOptions& options) {
  const u64 d = quasi_degree(f);
  const GradedRing& ring = *f.ring();
  const u32 p = ring.prime();
  const std::int64_t n = static_cast<std::int64_t>(ring.top_index());
  const u64 w = ring.weight_sum();

  FptResult r;
  r.assumptions.quasi_homogeneous = true;
  auto iso = is_isolated(f, IsolationOptions{options.limits});
  r.assumptions.isolation_verdict = to_string(iso.verdict);
  r.assumptions.isolated_verified = iso.jacobian_is_m_primary();
  if (!r.assumptions.isolated_verified) {
    if (!options.assume_isolated)
      throw HypothesisError("not-isolated", "isolated singularity required: " + iso.reason);
    r.assumptions.isolated_assumed = true;
  }
  if (options.e_max == 0) throw ContractViolation("e_max must be at least 1");

  MuOptions mopt{options.limits, r.assumptions.isolated_verified};
  const bool large_for_lifting = static_cast<std::int64_t>(p) >=
                                 n * static_cast<std::int64_t>(d) - static_cast<std::int64_t>(d) -
                                     static_cast<std::int64_t>(w) + 1;
  const bool calabi_yau = d == w;

  for (unsigned e = 1; e <= options.e_max; ++e) {
    r.ladder.entries.push_back(next_rung(f, r.ladder, mopt));
    const MuEntry& rung = r.ladder.entries.back();
    const BigInt m = rung.mu, q = rung.q;
    r.e_used = e;
    r.lower = Rational(m - 1, q);
    r.upper = Rational(m, q);

    if (calabi_yau && e == 1) {
      const u64 h = p - rung.mu;
      r.hasse_order = h;
      if (r.assumptions.isolated_verified && static_cast<std::int64_t>(h) > std::max<std::int64_t>(n - 1, 0))
        throw InvariantViolation("mu(p) = p - " + std::to_string(h) + " with h > n - 1");
      if (static_cast<std::int64_t>(p) >= n - 1) {
        r.exact = true;
        r.value = Rational(m, q);
        r.certificate = Certificate::CalabiYau;
        break;
      }
    }
    if ((m - 1) * d == BigInt(w) * (q - 1)) {
      r.exact = true;
      r.value = Rational(BigInt(w), BigInt(d));
      r.certificate = Certificate::LiftSocle;
      break;
    }
    if (m * d < BigInt(w) * q) {
      if (large_for_lifting) {
        r.exact = true;
        r.value = Rational(m, q);
        r.certificate = Certificate::LiftConstant;
        break;
      }
      r.blocked_by = "small-prime";
    } else {
      r.blocked_by = "e-max";
    }
  }
  ++ladder_audit().ladders;
  if (r.exact) {
    r.blocked_by.clear();
    check_exact_against_ladder(r);
  } else {
    r.certificate = Certificate::Truncated;
  }
  return r;
}

u64 hasse_order(const Poly& f, const ResourceLimits& limits) {
  const u64 d = quasi_degree(f);
  const GradedRing& ring = *f.ring();
  const u64 w = ring.weight_sum();
  if (d != w)
    throw HypothesisError("not-calabi-yau", "deg f = " + std::to_string(d) + " differs from w = " + std::to_string(w));
  const std::int64_t n = static_cast<std::int64_t>(ring.top_index());
  const std::int64_t bound = static_cast<std::int64_t>(w) * (n - 2) + 1;
  if (static_cast<std::int64_t>(ring.prime()) < bound)
    throw HypothesisError("prime-too-small", "need p >= w(n-2)+1 = " + std::to_string(bound));
  auto iso = is_isolated(f, IsolationOptions{limits});
  if (!iso.jacobian_is_m_primary()) throw HypothesisError("not-isolated", iso.reason);
  return ring.prime() - mu(f, 1, MuOptions{limits, true});
}

} // namespace qhfpt
