#pragma once

// Exact parallel count of monic irreducibles of degree n with every
// non-leading coefficient outside R, and per-degree census reports.

#include <ffdigits/circle.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ffdigits {

struct CensusOptions {
  unsigned workers = 1;
  /// Maximum number of polynomials tested per count.
  std::uint64_t budget = 100'000'000;
  /// Incremented once per finished subtree when set.
  std::atomic<std::uint64_t>* progress = nullptr;
};

/// Number of top coefficients fixed per task: ceil(log_b(workers * 64)), at most n.
inline int census_prefix_length(std::size_t branching, unsigned workers, int n) {
  if (branching <= 1) return 0;
  const double target = double(workers) * 64.0;
  int len = static_cast<int>(std::ceil(std::log(target) / std::log(double(branching)) - 1e-12));
  return std::clamp(len, 0, n);
}

inline BigInt count_restricted(const RestrictedSet& Rset, int n, const CensusOptions& opts = {}) {
  if (n < 1) throw std::invalid_argument("count_restricted needs n >= 1");
  const std::size_t branching = Rset.complement().size();
  const BigInt candidates = ipow(branching, static_cast<unsigned>(n));
  if (candidates > opts.budget)
    throw BudgetExceeded("census", candidates.str() + " polynomials > budget " +
                                       std::to_string(opts.budget));

  const PolyRing ring(Rset.field_ptr());
  const int prefix = census_prefix_length(branching, opts.workers, n);
  const std::size_t tasks = ipow(branching, static_cast<unsigned>(prefix)).convert_to<std::size_t>();
  std::vector<std::uint64_t> partial(tasks, 0);

  parallel_for(tasks, opts.workers, [&](std::size_t task) {
    std::vector<std::uint32_t> top(static_cast<std::size_t>(prefix));
    for (std::size_t i = top.size(), v = task; i-- > 0; v /= branching) top[i] = static_cast<std::uint32_t>(v % branching);
    std::uint64_t hits = 0;
    MonicEnumerator(Rset.field(), n, Rset.complement(), std::move(top)).for_each([&](const Poly& f) {
      hits += is_irreducible(ring, f);
    });
    partial[task] = hits;
    if (opts.progress) opts.progress->fetch_add(1, std::memory_order_relaxed);
  });

  BigInt total = 0;
  for (auto v : partial) total += v;
  return total;
}

struct CensusReport {
  std::uint64_t q = 0;
  std::uint64_t s = 0;
  std::string forbidden;
  int n = 0;
  BigInt exact = 0;
  double predictor = 0.0;
  BigRational main_term;
  /// exact * n * (q-1) / (q (q-s)^n); compare against lambda.
  double ratio = 0.0;
  BigRational lambda;
  ErrorBudget budget;
  double elapsed_s = 0.0;
  /// Set for consecutive forbidden sets over a prime field.
  std::optional<double> consecutive_l1_bound;
  /// Set when the count failed; the numeric columns are then left empty.
  std::optional<std::string> error;

  double deviation() const { return std::abs(ratio - to_double(lambda)); }
};

inline CensusReport census_report(const RestrictedSet& Rset, int n, const CensusOptions& opts = {}) {
  CensusReport rep;
  rep.q = Rset.q();
  rep.s = Rset.s();
  rep.forbidden = Rset.format();
  rep.n = n;
  const auto params = PredictorParams::of(Rset, n);
  rep.lambda = params.lambda();
  rep.predictor = predictor(params);
  rep.main_term = main_term(params);
  rep.budget = error_budget(rep.q, rep.s, n);
  if (Rset.is_consecutive()) rep.consecutive_l1_bound = consecutive_l1_bound(rep.q, rep.s, n);
  const auto start = std::chrono::steady_clock::now();
  try {
    rep.exact = count_restricted(Rset, n, opts);
    const BigRational ratio(rep.exact * n * (rep.q - 1), BigInt(rep.q) * ipow(rep.q - rep.s, static_cast<unsigned>(n)));
    rep.ratio = to_double(ratio);
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// One report per n in [n_lo, n_hi]; a failing row records its error and the scan continues.
inline std::vector<CensusReport> scan(const RestrictedSet& Rset, int n_lo, int n_hi, const CensusOptions& opts = {}) {
  std::vector<CensusReport> rows;
  for (int n = n_lo; n <= n_hi; ++n) rows.push_back(census_report(Rset, n, opts));
  return rows;
}

}  // namespace ffdigits
