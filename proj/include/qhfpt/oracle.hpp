#ifndef QHFPT_ORACLE_HPP
#define QHFPT_ORACLE_HPP

#include "qhfpt/ring.hpp"

// Brute-force reference implementations. They share the Poly type with the
// main library and nothing else: no truncation, no packed kernels, no
// incremental shortcuts.
namespace qhfpt::oracle {

struct OracleLimits {
  u64 max_terms = 2'000'000;
  u64 max_enumeration = 50'000'000;
};

// Expands f^k exactly for k = 1, 2, ... and returns the first k whose
// expansion lies in m^[p^e].
u64 mu_bruteforce(const Poly& f, unsigned e, const OracleLimits& limits = {});

// Coefficient of (x_0...x_n)^(q-1) in f^(q-1), q = p^e, as the sum over all
// ways to pick q-1 terms of f (with multiplicity) whose exponents add up to
// the target, each weighted by its multinomial coefficient.
FieldElement socle_coefficient_bruteforce(const Poly& f, unsigned e, const OracleLimits& limits = {});

} // namespace qhfpt::oracle

#endif
