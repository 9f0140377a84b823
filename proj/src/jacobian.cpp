#include "qhfpt/jacobian.hpp"

#include <algorithm>
#include <exception>
#include <map>

#include <omp.h>

#include "qhfpt/errors.hpp"
#include "qhfpt/parse.hpp"

namespace qhfpt {

std::vector<Poly> partials(const Poly& f) {
  const RingPtr& ring = f.ring();
  const u32 p = ring->prime();
  const std::size_t nv = ring->num_vars();
  std::vector<Poly> out;
  out.reserve(nv);
  std::vector<u32> e(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    PolyAssembler da(ring);
    for (std::size_t t = 0; t < f.size(); ++t) {
      auto src = f.exponents(t);
      if (src[i] == 0) continue;
      std::copy(src.begin(), src.end(), e.begin());
      const u32 factor = static_cast<u32>(src[i] % p);
      --e[i];
      da.push(e, mul_mod(f.coeff(t), factor, p));
    }
    out.push_back(std::move(da).finish());
  }
  return out;
}

namespace {

constexpr std::size_t kParallelRankCells = std::size_t{1} << 16;

// Reduces rows [from, rows) against the pivot row using column `col`.
void eliminate_below(ModMatrix& m, std::size_t pivot_row, std::size_t col, std::size_t r) {
  const u32 p = m.prime;
  const u32 factor = m.at(r, col);
  if (factor == 0) return;
  for (std::size_t c = col; c < m.cols; ++c)
    m.at(r, c) = sub_mod(m.at(r, c), mul_mod(factor, m.at(pivot_row, c), p), p);
}

template <bool Parallel>
std::size_t echelon_rank(ModMatrix& m) {
  const u32 p = m.prime;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      std::swap_ranges(m.data.begin() + static_cast<std::ptrdiff_t>(pivot * m.cols),
                       m.data.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * m.cols),
                       m.data.begin() + static_cast<std::ptrdiff_t>(rank * m.cols));
    const u32 scale = inv_mod(m.at(rank, col), p);
    for (std::size_t c = col; c < m.cols; ++c) m.at(rank, c) = mul_mod(m.at(rank, c), scale, p);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t r = static_cast<std::ptrdiff_t>(rank + 1); r < static_cast<std::ptrdiff_t>(m.rows); ++r)
        eliminate_below(m, rank, col, static_cast<std::size_t>(r));
    } else {
      for (std::size_t r = rank + 1; r < m.rows; ++r) eliminate_below(m, rank, col, r);
    }
    ++rank;
  }
  return rank;
}

void enumerate_degree(const GradedRing& ring, std::size_t var, u64 remaining, std::vector<u32>& current,
                      std::vector<Monomial>& out) {
  const u32 a = ring.weight(var);
  if (var + 1 == ring.num_vars()) {
    if (remaining % a == 0) {
      current[var] = static_cast<u32>(remaining / a);
      out.emplace_back(current);
    }
    return;
  }
  for (u64 k = 0; k * a <= remaining; ++k) {
    current[var] = static_cast<u32>(k);
    enumerate_degree(ring, var + 1, remaining - k * a, current, out);
  }
  current[var] = 0;
}

struct PieceJob {
  std::int64_t degree;
  std::vector<Monomial> basis;
};

// J(f)_j spanned by monomial multiples of the nonzero partials.
u64 jacobian_piece_rank(const PieceJob& job, const std::vector<Poly>& parts, const GradedRing& ring) {
  const std::size_t nv = ring.num_vars();
  std::map<std::vector<u32>, std::size_t> column;
  for (std::size_t c = 0; c < job.basis.size(); ++c) {
    auto e = job.basis[c].exponents();
    column.emplace(std::vector<u32>(e.begin(), e.end()), c);
  }
  std::vector<std::pair<const Poly*, std::vector<Monomial>>> generators;
  std::size_t rows = 0;
  for (const Poly& g : parts) {
    if (g.is_zero()) continue;
    const u64 gd = g.term_degree(0);
    if (gd > static_cast<u64>(job.degree)) continue;
    auto multipliers = monomials_of_degree(ring, static_cast<u64>(job.degree) - gd);
    rows += multipliers.size();
    generators.emplace_back(&g, std::move(multipliers));
  }
  ModMatrix m(rows, job.basis.size(), ring.prime());
  std::size_t r = 0;
  std::vector<u32> e(nv);
  for (const auto& [g, multipliers] : generators) {
    for (const Monomial& mult : multipliers) {
      for (std::size_t t = 0; t < g->size(); ++t) {
        auto ge = g->exponents(t);
        for (std::size_t v = 0; v < nv; ++v) e[v] = ge[v] + mult[v];
        m.at(r, column.at(e)) = g->coeff(t);
      }
      ++r;
    }
  }
  return rank_mod_p(std::move(m));
}

} // namespace

std::size_t rank_mod_p_serial(ModMatrix m) { return echelon_rank<false>(m); }

std::size_t rank_mod_p_parallel(ModMatrix m) { return echelon_rank<true>(m); }

std::size_t rank_mod_p(ModMatrix m) {
  if (!omp_in_parallel() && omp_get_max_threads() > 1 && m.rows * m.cols >= kParallelRankCells)
    return rank_mod_p_parallel(std::move(m));
  return rank_mod_p_serial(std::move(m));
}

std::vector<Monomial> monomials_of_degree(const GradedRing& ring, u64 degree) {
  std::vector<Monomial> out;
  std::vector<u32> current(ring.num_vars(), 0);
  enumerate_degree(ring, 0, degree, current, out);
  return out;
}

const char* to_string(IsolationVerdict v) {
  switch (v) {
  case IsolationVerdict::Isolated: return "isolated";
  case IsolationVerdict::NotIsolated: return "not-isolated";
  case IsolationVerdict::DegenerateSmooth: return "degenerate-smooth";
  }
  return "unknown";
}

Rational milnor_formula(u64 d, std::span<const u32> weights) {
  Rational value = 1;
  for (u32 a : weights) value *= Rational(BigInt(static_cast<std::int64_t>(d) - a), BigInt(a));
  return value;
}

IsolatedCertificate is_isolated(const Poly& f, const IsolationOptions& options) {
  const u64 d = quasi_degree(f);
  const GradedRing& ring = *f.ring();
  IsolatedCertificate cert;
  cert.milnor_formula_value = milnor_formula(d, ring.weights());
  cert.socle_degree = static_cast<std::int64_t>(ring.num_vars() * d) - 2 * static_cast<std::int64_t>(ring.weight_sum());
  cert.window_lo = cert.socle_degree + 1;
  cert.window_hi = cert.socle_degree + ring.max_weight();

  auto parts = partials(f);
  if (std::all_of(parts.begin(), parts.end(), [](const Poly& g) { return g.is_zero(); })) {
    cert.verdict = IsolationVerdict::NotIsolated;
    cert.reason = "vanishing Jacobian in characteristic " + std::to_string(ring.prime());
    return cert;
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].has_constant_term()) {
      cert.verdict = IsolationVerdict::DegenerateSmooth;
      cert.reason = "partial derivative in " + ring.variables()[i] + " is a nonzero constant, so J(f) = R";
      cert.milnor_dim = 0;
      return cert;
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_zero()) {
      cert.verdict = IsolationVerdict::NotIsolated;
      cert.reason = "partial derivative in " + ring.variables()[i] + " vanishes identically in characteristic " +
                    std::to_string(ring.prime());
      return cert;
    }
  }
  if (cert.socle_degree < 0) {
    cert.verdict = IsolationVerdict::NotIsolated;
    cert.reason = "(n+1)d - 2w = " + std::to_string(cert.socle_degree) + " is negative";
    return cert;
  }

  std::vector<PieceJob> jobs;
  for (std::int64_t j = 0; j <= cert.window_hi; ++j) {
    PieceJob job{j, monomials_of_degree(ring, static_cast<u64>(j))};
    std::size_t rows = 0;
    for (const Poly& g : parts)
      if (g.term_degree(0) <= static_cast<u64>(j))
        rows += monomials_of_degree(ring, static_cast<u64>(j) - g.term_degree(0)).size();
    if (static_cast<long double>(rows) * static_cast<long double>(job.basis.size()) >
        static_cast<long double>(options.limits.max_terms))
      throw ResourceError("graded piece of degree " + std::to_string(j) + " needs a " + std::to_string(rows) + "x" +
                          std::to_string(job.basis.size()) + " matrix, above the cap");
    jobs.push_back(std::move(job));
  }

  std::vector<u64> ranks(jobs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(jobs.size()); ++k) {
    try {
      ranks[static_cast<std::size_t>(k)] = jacobian_piece_rank(jobs[static_cast<std::size_t>(k)], parts, ring);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  bool covered = true;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    DegreeRank dr{jobs[k].degree, ranks[k], jobs[k].basis.size()};
    cert.per_degree_rank.push_back(dr);
    if (dr.degree >= cert.window_lo && dr.rank != dr.dimension) covered = false;
  }
  if (!covered) {
    cert.verdict = IsolationVerdict::NotIsolated;
    cert.reason = "J(f) misses part of R_j for some j in the window";
    return cert;
  }

  cert.verdict = IsolationVerdict::Isolated;
  cert.reason = "R_j lies in J(f) for every degree j in the window";
  BigInt dim = 0;
  for (const auto& dr : cert.per_degree_rank)
    if (dr.degree <= cert.socle_degree) dim += dr.dimension - dr.rank;
  cert.milnor_dim = dim;
  if (Rational(dim) != cert.milnor_formula_value)
    throw InvariantViolation("isolated " + format_poly(f) + " has dim R/J = " + dim.str() +
                             " but the weight formula gives " + to_string(cert.milnor_formula_value));
  return cert;
}

MilnorNumber milnor_number(const Poly& f, const IsolationOptions& options) {
  MilnorNumber out;
  out.formula_value = milnor_formula(quasi_degree(f), f.ring()->weights());
  out.formula_is_integer = boost::multiprecision::denominator(out.formula_value) == 1;
  auto cert = is_isolated(f, options);
  if (cert.verdict == IsolationVerdict::Isolated) {
    out.dimension = cert.milnor_dim;
    out.agrees = Rational(*out.dimension) == out.formula_value;
  }
  return out;
}

namespace {

// Divides by (1 - T^a) in place; false when the remainder is nonzero.
bool divide_by_one_minus_power(std::vector<BigInt>& poly, u64 a) {
  if (poly.size() <= a) return std::all_of(poly.begin(), poly.end(), [](const BigInt& c) { return c == 0; }) ;
  const std::size_t qdeg = poly.size() - 1 - a;
  std::vector<BigInt> quot(qdeg + 1);
  for (std::size_t k = 0; k <= qdeg; ++k) quot[k] = poly[k] + (k >= a ? quot[k - a] : BigInt(0));
  for (std::size_t k = 0; k < poly.size(); ++k) {
    BigInt rebuilt = (k <= qdeg ? quot[k] : BigInt(0)) - (k >= a && k - a <= qdeg ? quot[k - a] : BigInt(0));
    if (rebuilt != poly[k]) return false;
  }
  poly = std::move(quot);
  return true;
}

} // namespace

HilbertNumeratorCheck hilbert_numerator_check(u64 d, std::span<const u32> weights) {
  HilbertNumeratorCheck out;
  std::vector<BigInt> numerator{1};
  for (u32 a : weights) {
    if (d <= a) return out;
    const u64 shift = d - a;
    std::vector<BigInt> next(numerator.size() + shift, 0);
    for (std::size_t k = 0; k < numerator.size(); ++k) {
      next[k] += numerator[k];
      next[k + shift] -= numerator[k];
    }
    numerator = std::move(next);
  }
  for (u32 a : weights)
    if (!divide_by_one_minus_power(numerator, a)) return out;
  out.divisible = true;
  out.quotient = std::move(numerator);
  return out;
}

} // namespace qhfpt
