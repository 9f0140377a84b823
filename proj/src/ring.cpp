#include "qhfpt/ring.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include <omp.h>

#include "qhfpt/errors.hpp"
#include "qhfpt/parse.hpp"

namespace qhfpt {

ResourceLimits ResourceLimits::from_env() {
  ResourceLimits limits;
  if (const char* env = std::getenv("QHFPT_MAX_TERMS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) limits.max_terms = v;
  }
  return limits;
}

GradedRing::GradedRing(u64 prime, std::vector<std::string> variables, std::vector<u32> weights)
    : field_(std::make_shared<const PrimeField>(prime)),
      variables_(std::move(variables)),
      weights_(std::move(weights)) {
  if (variables_.empty()) throw HypothesisError("invalid-ring", "ring needs at least one variable");
  if (variables_.size() != weights_.size())
    throw HypothesisError("invalid-ring", "got " + std::to_string(variables_.size()) + " variables but " +
                                              std::to_string(weights_.size()) + " weights");
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.empty()) throw HypothesisError("invalid-ring", "empty variable name");
    if (!seen.insert(v).second) throw HypothesisError("invalid-ring", "duplicate variable " + v);
  }
  for (u32 a : weights_) {
    if (a == 0) throw HypothesisError("invalid-ring", "weights must be positive");
    weight_sum_ += a;
    max_weight_ = std::max(max_weight_, a);
  }
}

std::optional<std::size_t> GradedRing::index_of(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

bool GradedRing::same_as(const GradedRing& other) const {
  return prime() == other.prime() && variables_ == other.variables_ && weights_ == other.weights_;
}

RingPtr make_ring(u64 prime, std::vector<std::string> variables, std::vector<u32> weights) {
  return std::make_shared<const GradedRing>(prime, std::move(variables), std::move(weights));
}

u64 weighted_degree(std::span<const u32> exps, std::span<const u32> weights) {
  u64 d = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) d += u64{exps[i]} * weights[i];
  return d;
}

u64 Monomial::degree(const GradedRing& ring) const {
  if (exps_.size() != ring.num_vars()) throw ContractViolation("monomial has wrong number of variables");
  return weighted_degree(exps_, ring.weights());
}

Monomial diagonal_monomial(std::size_t num_vars, u32 k) { return Monomial(std::vector<u32>(num_vars, k)); }

namespace {

// Canonical order: larger weighted degree first, then lexicographically larger
// exponent vector first.
bool canonical_before(u64 deg_a, std::span<const u32> a, u64 deg_b, std::span<const u32> b) {
  if (deg_a != deg_b) return deg_a > deg_b;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void require_same_ring(const Poly& a, const Poly& b) {
  if (a.ring() != b.ring() && !a.ring()->same_as(*b.ring()))
    throw ContractViolation("polynomials belong to different rings");
}

} // namespace

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw ContractViolation("null ring");
}

void PolyAssembler::reserve(std::size_t terms) {
  exps_.reserve(terms * ring_->num_vars());
  coeffs_.reserve(terms);
}

void PolyAssembler::push(std::span<const u32> exps, u32 coeff) {
  if (coeff == 0) return;
  exps_.insert(exps_.end(), exps.begin(), exps.end());
  coeffs_.push_back(coeff);
}

Poly PolyAssembler::finish() && {
  const std::size_t nv = ring_->num_vars();
  const std::size_t terms = coeffs_.size();
  std::vector<u64> deg(terms);
  for (std::size_t t = 0; t < terms; ++t)
    deg[t] = weighted_degree({exps_.data() + t * nv, nv}, ring_->weights());
  std::vector<std::size_t> order(terms);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return canonical_before(deg[a], {exps_.data() + a * nv, nv}, deg[b], {exps_.data() + b * nv, nv});
  });
  Poly out(ring_);
  out.exps_.reserve(exps_.size());
  out.coeffs_.reserve(terms);
  out.degrees_.reserve(terms);
  for (std::size_t t : order) {
    out.exps_.insert(out.exps_.end(), exps_.begin() + t * nv, exps_.begin() + (t + 1) * nv);
    out.coeffs_.push_back(coeffs_[t]);
    out.degrees_.push_back(deg[t]);
  }
  return out;
}

Poly Poly::from_terms(RingPtr ring, std::vector<std::pair<Monomial, u64>> terms) {
  const u32 p = ring->prime();
  std::map<std::vector<u32>, u32> combined;
  for (auto& [m, c] : terms) {
    if (m.size() != ring->num_vars()) throw ContractViolation("monomial has wrong number of variables");
    auto exps = m.exponents();
    u32& slot = combined[std::vector<u32>(exps.begin(), exps.end())];
    slot = add_mod(slot, static_cast<u32>(c % p), p);
  }
  PolyAssembler assembler(ring);
  assembler.reserve(combined.size());
  for (const auto& [exps, c] : combined) assembler.push(exps, c);
  return std::move(assembler).finish();
}

Poly Poly::constant(RingPtr ring, u64 c) {
  std::size_t nv = ring->num_vars();
  return from_terms(std::move(ring), {{diagonal_monomial(nv, 0), c}});
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->num_vars()) throw ContractViolation("variable index out of range");
  std::vector<u32> e(ring->num_vars(), 0);
  e[index] = 1;
  return from_terms(std::move(ring), {{Monomial(std::move(e)), 1}});
}

Poly Poly::monomial(RingPtr ring, const Monomial& m, u64 c) { return from_terms(std::move(ring), {{m, c}}); }

Monomial Poly::term_monomial(std::size_t term) const {
  auto e = exponents(term);
  return Monomial(std::vector<u32>(e.begin(), e.end()));
}

FieldElement Poly::coefficient_at(const Monomial& m) const {
  const u32 p = ring_->prime();
  if (m.size() != ring_->num_vars()) throw ContractViolation("monomial has wrong number of variables");
  const u64 deg = m.degree(*ring_);
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (canonical_before(degrees_[mid], exponents(mid), deg, m.exponents()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && degrees_[lo] == deg) {
    auto e = exponents(lo);
    if (std::equal(e.begin(), e.end(), m.exponents().begin())) return FieldElement(coeffs_[lo], p);
  }
  return FieldElement(0, p);
}

std::vector<u32> Poly::max_exponents() const {
  const std::size_t nv = ring_->num_vars();
  std::vector<u32> mx(nv, 0);
  for (std::size_t t = 0; t < size(); ++t)
    for (std::size_t i = 0; i < nv; ++i) mx[i] = std::max(mx[i], exps_[t * nv + i]);
  return mx;
}

bool Poly::has_constant_term() const { return !degrees_.empty() && degrees_.back() == 0; }

bool Poly::is_quasi_homogeneous() const {
  return !degrees_.empty() && degrees_.front() == degrees_.back();
}

Poly Poly::scaled(u32 c) const {
  const u32 p = ring_->prime();
  c %= p;
  if (c == 0) return Poly(ring_);
  Poly out = *this;
  for (auto& v : out.coeffs_) v = mul_mod(v, c, p);
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (!a.ring()->same_as(*b.ring())) return false;
  return a.coeffs_ == b.coeffs_ && a.exps_ == b.exps_;
}

namespace {

Poly merge_sum(const Poly& a, const Poly& b, bool negate_b) {
  require_same_ring(a, b);
  const u32 p = a.ring()->prime();
  PolyAssembler out(a.ring());
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto bcoeff = [&](std::size_t t) { return negate_b ? sub_mod(0, b.coeff(t), p) : b.coeff(t); };
  while (i < a.size() || j < b.size()) {
    if (j == b.size() ||
        (i < a.size() && canonical_before(a.term_degree(i), a.exponents(i), b.term_degree(j), b.exponents(j)))) {
      out.push(a.exponents(i), a.coeff(i));
      ++i;
    } else if (i == a.size() ||
               canonical_before(b.term_degree(j), b.exponents(j), a.term_degree(i), a.exponents(i))) {
      out.push(b.exponents(j), bcoeff(j));
      ++j;
    } else {
      out.push(a.exponents(i), add_mod(a.coeff(i), bcoeff(j), p));
      ++i;
      ++j;
    }
  }
  return std::move(out).finish();
}

} // namespace

Poly operator+(const Poly& a, const Poly& b) { return merge_sum(a, b, false); }
Poly operator-(const Poly& a, const Poly& b) { return merge_sum(a, b, true); }

u64 quasi_degree(const Poly& f) {
  if (f.is_zero()) throw HypothesisError("not-quasi-homogeneous", "zero polynomial has no degree");
  if (!f.is_quasi_homogeneous()) {
    auto describe = [&](std::size_t t) {
      return format_term(f, t) + " (degree " + std::to_string(f.term_degree(t)) + ")";
    };
    throw HypothesisError("not-quasi-homogeneous", "terms " + describe(0) + " and " + describe(f.size() - 1) +
                                                       " have different weighted degrees");
  }
  return f.term_degree(0);
}

Poly truncate(const Poly& f, u64 q) {
  PolyAssembler out(f.ring());
  out.reserve(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    if (std::all_of(e.begin(), e.end(), [q](u32 x) { return x < q; })) out.push(e, f.coeff(t));
  }
  return std::move(out).finish();
}

bool in_frobenius_power(const Poly& f, u64 q) {
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    if (std::all_of(e.begin(), e.end(), [q](u32 x) { return x < q; })) return false;
  }
  return true;
}

FieldElement coefficient_at(const Poly& f, const Monomial& m) { return f.coefficient_at(m); }

// ---------------------------------------------------------------------------
// Multiplication kernels
// ---------------------------------------------------------------------------

namespace {

constexpr u64 kNoTruncation = std::numeric_limits<u64>::max();
constexpr std::size_t kParallelWork = std::size_t{1} << 14;

// Bit-field layout packing one exponent vector into a u64 key. Field widths
// are sized for the largest possible product exponent, so adding two packed
// keys never carries between fields.
struct KeyLayout {
  std::vector<unsigned> shift;
  std::vector<u64> mask;
  bool fits = false;

  explicit KeyLayout(std::span<const u64> bounds) {
    unsigned total = 0;
    shift.resize(bounds.size());
    mask.resize(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      unsigned bits = std::max(1, static_cast<int>(std::bit_width(bounds[i])));
      shift[i] = total;
      mask[i] = bits >= 64 ? ~u64{0} : ((u64{1} << bits) - 1);
      total += bits;
    }
    fits = total <= 64;
  }

  u64 pack(std::span<const u32> e) const {
    u64 k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) k |= u64{e[i]} << shift[i];
    return k;
  }
  u32 field(u64 key, std::size_t i) const { return static_cast<u32>((key >> shift[i]) & mask[i]); }
  void unpack(u64 key, std::vector<u32>& out) const {
    for (std::size_t i = 0; i < shift.size(); ++i) out[i] = field(key, i);
  }
  bool below(u64 key, u64 q) const {
    for (std::size_t i = 0; i < shift.size(); ++i)
      if (field(key, i) >= q) return false;
    return true;
  }
};

struct Operand {
  std::vector<u64> keys;
  std::vector<u32> coeffs;
};

// Terms already in m^[q] can never contribute to a truncated product.
std::vector<std::size_t> live_terms(const Poly& f, u64 q) {
  std::vector<std::size_t> live;
  live.reserve(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto e = f.exponents(t);
    if (std::all_of(e.begin(), e.end(), [q](u32 x) { return x < q; })) live.push_back(t);
  }
  return live;
}

std::vector<u64> product_bounds(const Poly& a, const std::vector<std::size_t>& la, const Poly& b,
                                const std::vector<std::size_t>& lb) {
  const std::size_t nv = a.ring()->num_vars();
  std::vector<u64> ma(nv, 0), mb(nv, 0), bounds(nv);
  for (std::size_t t : la)
    for (std::size_t i = 0; i < nv; ++i) ma[i] = std::max<u64>(ma[i], a.exponents(t)[i]);
  for (std::size_t t : lb)
    for (std::size_t i = 0; i < nv; ++i) mb[i] = std::max<u64>(mb[i], b.exponents(t)[i]);
  for (std::size_t i = 0; i < nv; ++i) {
    bounds[i] = ma[i] + mb[i];
    if (bounds[i] > std::numeric_limits<u32>::max())
      throw ResourceError("product exponent exceeds 32 bits");
  }
  return bounds;
}

Operand pack_operand(const Poly& f, const std::vector<std::size_t>& live, const KeyLayout& layout) {
  Operand op;
  op.keys.reserve(live.size());
  op.coeffs.reserve(live.size());
  for (std::size_t t : live) {
    op.keys.push_back(layout.pack(f.exponents(t)));
    op.coeffs.push_back(f.coeff(t));
  }
  return op;
}

using Accumulator = std::unordered_map<u64, u32>;

void accumulate_row(const Operand& a, std::size_t i, const Operand& b, const KeyLayout& layout, u64 q, u32 p,
                    Accumulator& acc) {
  const u64 ka = a.keys[i];
  const u32 ca = a.coeffs[i];
  for (std::size_t j = 0; j < b.keys.size(); ++j) {
    const u64 key = ka + b.keys[j];
    if (q != kNoTruncation && !layout.below(key, q)) continue;
    u32& slot = acc[key];
    slot = add_mod(slot, mul_mod(ca, b.coeffs[j], p), p);
  }
}

template <class Pairs>
Poly assemble_packed(const RingPtr& ring, const KeyLayout& layout, const Pairs& pairs) {
  PolyAssembler out(ring);
  out.reserve(pairs.size());
  std::vector<u32> exps(ring->num_vars());
  for (const auto& [key, c] : pairs) {
    if (c == 0) continue;
    layout.unpack(key, exps);
    out.push(exps, c);
  }
  return std::move(out).finish();
}

// Wide exponent vectors that do not fit one u64 key. Serial and slow, but
// only reached by exotic inputs.
Poly multiply_wide(const Poly& a, const std::vector<std::size_t>& la, const Poly& b,
                   const std::vector<std::size_t>& lb, u64 q) {
  const std::size_t nv = a.ring()->num_vars();
  const u32 p = a.ring()->prime();
  std::map<std::vector<u32>, u32> acc;
  std::vector<u32> e(nv);
  for (std::size_t i : la) {
    for (std::size_t j : lb) {
      bool keep = true;
      for (std::size_t v = 0; v < nv; ++v) {
        e[v] = a.exponents(i)[v] + b.exponents(j)[v];
        if (e[v] >= q) keep = false;
      }
      if (!keep) continue;
      u32& slot = acc[e];
      slot = add_mod(slot, mul_mod(a.coeff(i), b.coeff(j), p), p);
    }
  }
  PolyAssembler out(a.ring());
  for (const auto& [exps, c] : acc) out.push(exps, c);
  return std::move(out).finish();
}

Poly multiply_kernel(const Poly& a, const Poly& b, u64 q, bool parallel) {
  require_same_ring(a, b);
  const RingPtr& ring = a.ring();
  if (a.is_zero() || b.is_zero() || q == 0) return Poly(ring);
  auto la = live_terms(a, q);
  auto lb = live_terms(b, q);
  if (la.empty() || lb.empty()) return Poly(ring);
  auto bounds = product_bounds(a, la, b, lb);
  KeyLayout layout(bounds);
  if (!layout.fits) return multiply_wide(a, la, b, lb, q);

  // Iterate over the longer operand in the outer loop so the parallel split
  // has enough rows.
  const bool swap = la.size() < lb.size();
  Operand outer = swap ? pack_operand(b, lb, layout) : pack_operand(a, la, layout);
  Operand inner = swap ? pack_operand(a, la, layout) : pack_operand(b, lb, layout);
  const u32 p = ring->prime();
  const std::size_t rows = outer.keys.size();

  if (!parallel || omp_get_max_threads() == 1) {
    Accumulator acc;
    acc.reserve(std::min<std::size_t>(rows * inner.keys.size(), std::size_t{1} << 20));
    for (std::size_t i = 0; i < rows; ++i) accumulate_row(outer, i, inner, layout, q, p, acc);
    return assemble_packed(ring, layout, acc);
  }

  std::vector<std::vector<std::pair<u64, u32>>> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    Accumulator local;
#pragma omp for schedule(dynamic, 8) nowait
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows); ++i)
      accumulate_row(outer, static_cast<std::size_t>(i), inner, layout, q, p, local);
    partial[static_cast<std::size_t>(omp_get_thread_num())].assign(local.begin(), local.end());
  }

  std::size_t total = 0;
  for (const auto& part : partial) total += part.size();
  std::vector<std::pair<u64, u32>> merged;
  merged.reserve(total);
  for (auto& part : partial) merged.insert(merged.end(), part.begin(), part.end());
  std::sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<u64, u32>> reduced;
  reduced.reserve(merged.size());
  for (const auto& [key, c] : merged) {
    if (!reduced.empty() && reduced.back().first == key)
      reduced.back().second = add_mod(reduced.back().second, c, p);
    else
      reduced.emplace_back(key, c);
  }
  return assemble_packed(ring, layout, reduced);
}

bool worth_parallel(const Poly& a, const Poly& b) { return a.size() * b.size() >= kParallelWork; }

// Saturating helpers for the size estimates.
u64 sat_mul(u64 a, u64 b, u64 cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap;
  return std::min(a * b, cap);
}

// Number of multisets of size k drawn from t items, saturating.
u64 multiset_count(u64 t, u64 k, u64 cap) {
  if (t == 0) return k == 0 ? 1 : 0;
  // C(k + t - 1, t - 1), built incrementally in long double
  long double acc = 1;
  u64 r = std::min(k, t - 1);
  u64 n = k + t - 1;
  for (u64 i = 1; i <= r; ++i) {
    acc = acc * static_cast<long double>(n - r + i) / static_cast<long double>(i);
    if (acc >= static_cast<long double>(cap)) return cap;
  }
  return static_cast<u64>(acc + 0.5L);
}

constexpr u64 kMaxEstimateDegree = 200'000'000;

std::vector<long double> bounded_counts(std::span<const u32> weights, u64 max_degree, std::span<const u64> bounds) {
  if (max_degree > kMaxEstimateDegree)
    throw ResourceError("weighted degree " + std::to_string(max_degree) + " too large to estimate term counts");
  std::vector<long double> ways(max_degree + 1, 0.0L), prefix(max_degree + 1);
  ways[0] = 1;
  for (std::size_t v = 0; v < weights.size(); ++v) {
    const u64 a = weights[v];
    // new[j] = sum_{e=0..bound} old[j - a e], via strided prefix sums
    for (u64 j = 0; j <= max_degree; ++j) prefix[j] = ways[j] + (j >= a ? prefix[j - a] : 0.0L);
    const long double span = static_cast<long double>(a) * (static_cast<long double>(bounds[v]) + 1);
    for (u64 j = 0; j <= max_degree; ++j) {
      long double drop = 0;
      if (static_cast<long double>(j) >= span) drop = prefix[j - static_cast<u64>(span)];
      ways[j] = std::max(0.0L, prefix[j] - drop);
    }
  }
  return ways;
}

u64 saturate(long double v, u64 cap) {
  if (v >= static_cast<long double>(cap)) return cap;
  return static_cast<u64>(v + 0.5L);
}

} // namespace

Poly truncated_mul_serial(const Poly& a, const Poly& b, u64 q) { return multiply_kernel(a, b, q, false); }

Poly truncated_mul_parallel(const Poly& a, const Poly& b, u64 q) { return multiply_kernel(a, b, q, true); }

Poly truncated_mul(const Poly& a, const Poly& b, u64 q) { return multiply_kernel(a, b, q, worth_parallel(a, b)); }

Poly operator*(const Poly& a, const Poly& b) { return multiply_kernel(a, b, kNoTruncation, worth_parallel(a, b)); }

u64 count_bounded_monomials(std::span<const u32> weights, u64 degree, std::span<const u64> bounds,
                            u64 saturate_at) {
  if (weights.size() != bounds.size()) throw ContractViolation("weights and bounds differ in length");
  return saturate(bounded_counts(weights, degree, bounds)[degree], saturate_at);
}

u64 max_truncated_slice(std::span<const u32> weights, u64 d, u64 q, u64 saturate_at) {
  if (d == 0) throw ContractViolation("degree must be positive");
  u64 w = std::accumulate(weights.begin(), weights.end(), u64{0});
  u64 top = w * (q - 1);
  std::vector<u64> bounds(weights.size(), q - 1);
  auto ways = bounded_counts(weights, top, bounds);
  long double best = 0;
  for (u64 j = 0; j <= top; j += d) best = std::max(best, ways[j]);
  return saturate(best, saturate_at);
}

void check_truncated_budget(const Poly& f, u64 q, const ResourceLimits& limits) {
  const GradedRing& ring = *f.ring();
  const u64 cap = limits.max_terms;
  u64 estimate;
  if (f.is_quasi_homogeneous() && f.term_degree(0) > 0) {
    estimate = max_truncated_slice(ring.weights(), f.term_degree(0), q, cap + 1);
  } else {
    estimate = 1;
    for (std::size_t i = 0; i < ring.num_vars(); ++i) estimate = sat_mul(estimate, q, cap + 1);
  }
  if (estimate > cap)
    throw ResourceError("powers of f modulo m^[" + std::to_string(q) + "] may reach " + std::to_string(estimate) +
                        " terms, above the cap of " + std::to_string(cap));
}

Poly pow_exact(const Poly& f, u64 k, const ResourceLimits& limits) {
  const RingPtr& ring = f.ring();
  if (k == 0) return Poly::constant(ring, 1);
  if (f.is_zero()) return f;
  const u64 cap = limits.max_terms;
  auto mx = f.max_exponents();
  u64 estimate = multiset_count(f.size(), k, cap + 1);
  std::vector<u64> bounds(mx.size());
  for (std::size_t i = 0; i < mx.size(); ++i) bounds[i] = sat_mul(mx[i], k, std::numeric_limits<u32>::max());
  if (f.is_quasi_homogeneous()) {
    const u64 deg = sat_mul(f.term_degree(0), k, kMaxEstimateDegree + 1);
    if (deg <= kMaxEstimateDegree)
      estimate = std::min(estimate, count_bounded_monomials(ring->weights(), deg, bounds, cap + 1));
  } else {
    u64 box = 1;
    for (u64 b : bounds) box = sat_mul(box, b + 1, cap + 1);
    estimate = std::min(estimate, box);
  }
  if (estimate > cap)
    throw ResourceError("f^" + std::to_string(k) + " may have " + std::to_string(estimate) +
                        " terms, above the cap of " + std::to_string(cap));

  Poly result = Poly::constant(ring, 1);
  Poly base = f;
  while (true) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (!k) break;
    base = base * base;
  }
  return result;
}

Poly truncated_pow(const Poly& f, u64 k, u64 q, const ResourceLimits& limits) {
  const RingPtr& ring = f.ring();
  if (k == 0) return truncate(Poly::constant(ring, 1), q);
  check_truncated_budget(f, q, limits);
  Poly result = Poly::constant(ring, 1);
  Poly base = truncate(f, q);
  while (true) {
    if (k & 1) result = truncated_mul(result, base, q);
    k >>= 1;
    if (!k || result.is_zero()) break;
    base = truncated_mul(base, base, q);
  }
  return result;
}

u64 prime_power(u32 p, unsigned e) {
  constexpr u64 kMaxQ = u64{1} << 31;
  u64 q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxQ) throw ResourceError(std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^31");
  }
  return q;
}

} // namespace qhfpt
