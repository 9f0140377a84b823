#include "qhfpt/oracle.hpp"

#include <map>

#include "qhfpt/errors.hpp"
#include "qhfpt/rational.hpp"

namespace qhfpt::oracle {

namespace {

using Expansion = std::map<std::vector<u32>, u32>;

u64 power_of_prime(u32 p, unsigned e) {
  u64 q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > (u64{1} << 31)) throw ResourceError("oracle: q too large");
  }
  return q;
}

Expansion expansion_of(const Poly& f) {
  Expansion out;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    out[std::vector<u32>(e.begin(), e.end())] = f.coeff(t);
  }
  return out;
}

Expansion naive_product(const Expansion& a, const Expansion& b, u32 p, u64 max_terms) {
  Expansion out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<u32> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      u64 c = (u64{ca} * cb) % p;
      auto [it, inserted] = out.emplace(std::move(e), 0);
      it->second = static_cast<u32>((it->second + c) % p);
    }
    if (out.size() > max_terms) throw ResourceError("oracle: expansion exceeds term cap");
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

bool every_term_has_big_exponent(const Expansion& g, u64 q) {
  for (const auto& [e, c] : g) {
    bool big = false;
    for (u32 x : e) big = big || x >= q;
    if (!big) return false;
  }
  return true;
}

// Exact multinomial over the integers, reduced mod p at the end.
class ExactMultinomial {
public:
  ExactMultinomial(u64 n, u32 p) : p_(p), fact_(n + 1) {
    fact_[0] = 1;
    for (u64 i = 1; i <= n; ++i) fact_[i] = fact_[i - 1] * i;
  }
  u32 operator()(u64 n, const std::vector<u64>& parts) const {
    BigInt den = 1;
    for (u64 k : parts) den *= fact_[k];
    BigInt value = fact_[n] / den;
    return static_cast<u32>(static_cast<u64>(value % p_));
  }

private:
  u32 p_;
  std::vector<BigInt> fact_;
};

struct Enumeration {
  std::vector<std::vector<u32>> exps;
  std::vector<u32> coeffs;
  u32 p;
  u64 total;
  const ExactMultinomial* multinomial;
  u64 budget;
  u64 visited = 0;
  std::vector<u64> counts;
  u64 acc = 0;

  void run(std::size_t term, u64 remaining_count, std::vector<u64>& remaining) {
    if (++visited > budget) throw ResourceError("oracle: enumeration exceeds cap");
    const std::size_t nv = remaining.size();
    if (term + 1 == exps.size()) {
      // last term takes all remaining picks
      for (std::size_t v = 0; v < nv; ++v)
        if (u64{exps[term][v]} * remaining_count != remaining[v]) return;
      counts[term] = remaining_count;
      u64 c = (*multinomial)(total, counts);
      for (std::size_t t = 0; t < exps.size(); ++t) {
        u64 base = coeffs[t], power = 1;
        for (u64 i = 0; i < counts[t]; ++i) power = power * base % p;
        c = c * power % p;
      }
      acc = (acc + c) % p;
      return;
    }
    for (u64 k = 0; k <= remaining_count; ++k) {
      bool fits = true;
      for (std::size_t v = 0; v < nv; ++v)
        if (u64{exps[term][v]} * k > remaining[v]) fits = false;
      if (!fits) break;
      for (std::size_t v = 0; v < nv; ++v) remaining[v] -= u64{exps[term][v]} * k;
      counts[term] = k;
      run(term + 1, remaining_count - k, remaining);
      for (std::size_t v = 0; v < nv; ++v) remaining[v] += u64{exps[term][v]} * k;
    }
  }
};

} // namespace

u64 mu_bruteforce(const Poly& f, unsigned e, const OracleLimits& limits) {
  if (f.is_zero()) throw HypothesisError("zero-polynomial", "mu is undefined for f = 0");
  const u32 p = f.ring()->prime();
  const u64 q = power_of_prime(p, e);
  const Expansion base = expansion_of(f);
  if (base.count(std::vector<u32>(f.ring()->num_vars(), 0)))
    throw HypothesisError("not-in-maximal-ideal", "f has a nonzero constant term");
  Expansion power = base;
  for (u64 k = 1;; ++k) {
    if (every_term_has_big_exponent(power, q)) return k;
    power = naive_product(power, base, p, limits.max_terms);
  }
}

FieldElement socle_coefficient_bruteforce(const Poly& f, unsigned e, const OracleLimits& limits) {
  const u32 p = f.ring()->prime();
  const u64 q = power_of_prime(p, e);
  const std::size_t nv = f.ring()->num_vars();
  if (f.is_zero()) return FieldElement(0, p);
  Enumeration en;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto ex = f.exponents(t);
    en.exps.emplace_back(ex.begin(), ex.end());
    en.coeffs.push_back(f.coeff(t));
  }
  ExactMultinomial multinomial(q - 1, p);
  en.p = p;
  en.total = q - 1;
  en.multinomial = &multinomial;
  en.budget = limits.max_enumeration;
  en.counts.assign(f.size(), 0);
  std::vector<u64> remaining(nv, q - 1);
  en.run(0, q - 1, remaining);
  return FieldElement(en.acc, p);
}

} // namespace qhfpt::oracle
