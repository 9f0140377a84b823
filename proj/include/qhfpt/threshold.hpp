#ifndef QHFPT_THRESHOLD_HPP
#define QHFPT_THRESHOLD_HPP

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "qhfpt/errors.hpp"
#include "qhfpt/jacobian.hpp"
#include "qhfpt/rational.hpp"
#include "qhfpt/ring.hpp"

namespace qhfpt {

// One rung of the ladder: mu = min { k : f^k in m^[q] } for q = p^e, with
// the degree bounds that were checked against it.
struct MuEntry {
  unsigned e = 0;
  u64 q = 1;
  u64 mu = 1;
  // ceil((w q - w + 1) / d); checked whenever f is quasi-homogeneous.
  std::optional<BigInt> upper_bound;
  // (w (q+1) - n d) / d; checked when p does not divide mu and J(f) is
  // known to be m-primary.
  std::optional<Rational> lower_bound;
};

struct MuLadder {
  std::vector<MuEntry> entries;
};

// Running totals of the consistency checks performed by every ladder built in
// this process. Lets callers confirm the checks actually ran.
struct LadderAudit {
  std::atomic<u64> ladders{0};
  std::atomic<u64> rungs{0};
  std::atomic<u64> ceiling_checks{0};
  std::atomic<u64> upper_checks{0};
  std::atomic<u64> lower_checks{0};
};
LadderAudit& ladder_audit();

// Resource cap hit while climbing the ladder; carries the rungs already done.
class LadderResourceError : public ResourceError {
public:
  LadderResourceError(const std::string& detail, MuLadder partial)
      : ResourceError(detail), partial_(std::move(partial)) {}
  const MuLadder& partial() const { return partial_; }

private:
  MuLadder partial_;
};

struct MuOptions {
  ResourceLimits limits;
  // J(f) certified m-primary: enables the lower-bound check.
  bool jacobian_m_primary = false;
};

// Smallest k with f^k = 0 in R/m^[p^e], by incremental truncated powering.
// f must be nonzero without constant term; quasi-homogeneity is only needed
// for the bound checks.
u64 mu(const Poly& f, unsigned e, const MuOptions& options = {});

// Rungs e = 1..e_max. Each rung after the first starts from
// f^(p mu(q) - p), which is known to survive modulo m^[pq]. Throws
// InvariantViolation if any consistency law fails on the computed values.
MuLadder mu_ladder(const Poly& f, unsigned e_max, const MuOptions& options = {});

// Which argument pins the threshold.
enum class Certificate {
  CalabiYau,         // deg f = w: fpt = 1 - h/p from mu(p)
  LiftSocle,         // (mu(q) - 1) d = w (q - 1) persists; fpt = w/d
  LiftConstant,      // mu(q)/q < w/d with p large enough; fpt = mu(q)/q
  SocleCoefficient,  // (x_0...x_n)^(q-1) coefficient of f^(q-1) nonzero for every q
  Truncated,         // no rule fired up to e_max; interval only
};

// Wire names, e.g. "Lifting-3.7(1)".
const char* certificate_name(Certificate c);

struct FptAssumptions {
  bool quasi_homogeneous = false;
  bool isolated_verified = false;
  bool isolated_assumed = false;
  std::string isolation_verdict;
};

struct FptResult {
  bool exact = false;
  Rational value;          // exact value when exact
  Rational lower, upper;   // [(mu-1)/q, mu/q] for the last rung
  Certificate certificate = Certificate::Truncated;
  unsigned e_used = 0;
  // h = p - mu(p) whenever deg f = w.
  std::optional<u64> hasse_order;
  // Why the interval fallback happened: "small-prime" or "e-max".
  std::string blocked_by;
  MuLadder ladder;
  FptAssumptions assumptions;
};

struct FptOptions {
  unsigned e_max = 2;
  bool assume_isolated = false;
  ResourceLimits limits;
};

FptResult fpt(const Poly& f, const FptOptions& options = {});

// h = p - mu(p) for deg f = w, p >= w(n-2)+1 and certified isolated f; equals
// the vanishing order of the Hasse invariant at the point of f.
u64 hasse_order(const Poly& f, const ResourceLimits& limits = {});

} // namespace qhfpt

#endif
