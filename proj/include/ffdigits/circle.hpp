#pragma once

// Farey dissection of T and the major-arc pipeline: main term, Lambda, the
// Weil-type error at rational points, the phi-ratio bound, the asymptotic
// predictor and the error budget, plus the orthogonality identity
// N(R, n) = int_T S(x) conj(S_R(x)) dx evaluated exactly on a finite grid.

#include <ffdigits/charsum.hpp>
#include <ffdigits/parallel.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

namespace ffdigits {

/// Ball |x - a/g| < q^{-radius_exponent}.
struct FareyArc {
  RationalPoint center;
  int radius_exponent = 0;
};

/// radius_exponent = deg g + ceil(n/2).
inline FareyArc farey_arc(const RationalPoint& center, int n) {
  return {center, center.g.degree() + (n + 1) / 2};
}

/// Calls fn(const RationalPoint&) for every reduced a/g with deg a < deg g <= d_max,
/// ordered by g (degree, then coefficients) and then a.
template <class Fn>
void for_each_farey(const PolyRing& R, int d_max, Fn&& fn) {
  if (d_max < 0) throw std::invalid_argument("d_max must be >= 0");
  const Field& F = R.field();
  fn(RationalPoint{Poly{}, R.one()});
  for (int d = 1; d <= d_max; ++d) {
    MonicEnumerator(F, d).for_each([&](const Poly& g) {
      // every nonzero a with deg a < d, in packed-index order
      std::vector<std::uint32_t> idx(static_cast<std::size_t>(d), 0);
      Poly a;
      while (true) {
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
          if (++idx[i] < F.order()) break;
          idx[i] = 0;
        }
        if (i == idx.size()) break;
        a.c.assign(idx.size(), F.zero());
        for (std::size_t j = 0; j < idx.size(); ++j) a.c[j] = Elem{idx[j]};
        R.normalize(a);
        if (R.gcd(a, g).degree() == 0) fn(RationalPoint{a, g});
      }
    });
  }
}

inline std::vector<RationalPoint> farey_enumerate(const PolyRing& R, int d_max) {
  std::vector<RationalPoint> out;
  for_each_farey(R, d_max, [&](const RationalPoint& x) { out.push_back(x); });
  return out;
}

struct PartitionReport {
  int n = 0;
  std::uint64_t points = 0;
  std::uint64_t uncovered = 0;
  std::uint64_t multiply_covered = 0;
  std::uint64_t arcs = 0;

  bool is_partition() const { return uncovered == 0 && multiply_covered == 0; }
};

/// Counts how many arcs F(a/g, q^{deg g + ceil(n/2)}), deg g <= floor(n/2),
/// contain each grid point a'/t^n. Arc membership only depends on the first
/// n digits, so the grid is exact.
inline PartitionReport arc_partition(const PolyRing& R, int n) {
  if (n < 1) throw std::invalid_argument("arc_partition needs n >= 1");
  const Field& F = R.field();
  const auto centers = farey_enumerate(R, n / 2);
  std::vector<std::pair<DigitWindow, int>> arcs;
  for (const auto& c : centers) {
    const auto arc = farey_arc(c, n);
    arcs.emplace_back(frac_digits(R, c, static_cast<std::size_t>(arc.radius_exponent)), arc.radius_exponent);
  }
  PartitionReport rep;
  rep.n = n;
  rep.arcs = arcs.size();
  MonicEnumerator grid(F, n);
  grid.for_each([&](const Poly& monic) {
    // digits of a'/t^n: x_{-j} = a'_{n-j}; reuse the enumerator's low coefficients
    DigitWindow x{std::vector<Elem>(static_cast<std::size_t>(n))};
    for (int j = 1; j <= n; ++j) x.digits[j - 1] = monic.c[static_cast<std::size_t>(n - j)];
    int hits = 0;
    for (const auto& [w, radius] : arcs) {
      bool inside = true;
      for (int j = 0; j < radius && inside; ++j) inside = (j < n ? x[j] : Elem{0}) == w[j];
      hits += inside;
    }
    ++rep.points;
    if (hits == 0) ++rep.uncovered;
    if (hits > 1) ++rep.multiply_covered;
  });
  return rep;
}

/// Exact-partition check for even n.
inline bool arc_partition_check(const PolyRing& R, int n) {
  if (n % 2 != 0) throw std::invalid_argument("arc_partition_check is defined for even n; use arc_partition for odd n");
  return arc_partition(R, n).is_partition();
}

struct Lemma1Result {
  CharacterValue main;
  CharacterValue error;
  double bound = 0.0;

  bool within_bound() const { return std::abs(error) <= bound; }
};

/// Splits S(a/g + gamma) into (mu(g)/phi(g)) pi(n) e_q(gamma t^n) [|gamma| < q^{-n}]
/// and the remainder E, with |E| <= q^{n - [n/2]/2} expected.
inline Lemma1Result lemma1_error(const IrreducibleCache& cache, const RationalPoint& center,
                                 const std::optional<RationalPoint>& gamma, int n) {
  const PolyRing& R = cache.ring();
  if (!is_valid_point(R, center)) throw std::invalid_argument("center is not a reduced point");
  const int dg = center.g.degree();
  if (2 * dg > n) throw std::invalid_argument("lemma1_error needs |g| <= q^{n/2}");
  int gamma_exp = std::numeric_limits<int>::min();
  if (gamma) {
    if (!is_valid_point(R, *gamma)) throw std::invalid_argument("gamma is not a reduced point");
    if (auto e = norm_of(*gamma).exponent) {
      if (2 * *e >= -2 * dg - n) throw std::invalid_argument("lemma1_error needs |gamma| < q^{-deg g - n/2}");
      gamma_exp = *e;
    }
  }
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  DigitWindow x = frac_digits(R, center, m);
  DigitWindow gw{std::vector<Elem>(m, R.field().zero())};
  if (gamma) {
    gw = frac_digits(R, *gamma, m);
    x = add_windows(R.field(), x, gw);
  }
  const CharacterValue total = s_at(cache, n, x);

  Lemma1Result out;
  out.main = {0.0, 0.0};
  if (gamma_exp < -n) {
    const int mu = mobius(R, center.g);
    if (mu != 0) {
      const BigRational coeff = BigRational(mu * prime_count(R.q(), static_cast<unsigned>(n)), euler_phi(R, center.g));
      out.main = to_double(coeff) * R.field().psi(gw[static_cast<std::size_t>(n)]);
    }
  }
  out.error = total - out.main;
  out.bound = std::pow(double(R.q()), double(n) - double(n / 2) / 2.0);
  return out;
}

struct Lemma5Result {
  double ratio = 0.0;
  double bound = 0.0;
};

/// q^{deg g} / phi(g) against (1 + log_q deg g) e.
inline Lemma5Result lemma5_ratio(const PolyRing& R, const Poly& g) {
  if (!R.is_monic(g) || g.degree() < 1) throw std::invalid_argument("lemma5_ratio needs a monic g of degree >= 1");
  const BigRational ratio(ipow(R.q(), static_cast<unsigned>(g.degree())), euler_phi(R, g));
  const double logq_deg = std::log(double(g.degree())) / std::log(double(R.q()));
  return {to_double(ratio), (1.0 + logq_deg) * std::numbers::e};
}

struct PredictorParams {
  std::uint64_t q = 2;
  std::uint64_t s = 0;
  int n = 1;
  bool zero_in_R = false;

  static PredictorParams of(const RestrictedSet& R, int n) { return {R.q(), R.s(), n, R.zero_in_R()}; }

  /// 1 if 0 in R, else 1 - 1/(q-s).
  BigRational lambda() const {
    if (zero_in_R) return BigRational(1);
    return BigRational(1) - BigRational(1, BigInt(q - s));
  }
};

/// (q Lambda / (q-1)) pi(n) (1 - s/q)^n.
inline BigRational main_term(const PredictorParams& P) {
  const auto n = static_cast<unsigned>(P.n);
  const BigRational density(ipow(P.q - P.s, n), ipow(P.q, n));
  return BigRational(BigInt(P.q), BigInt(P.q - 1)) * P.lambda() * BigRational(prime_count(P.q, n)) * density;
}

/// The g = 1 and g = t arcs summed numerically:
/// (pi(n)/q^n) (S_R(0) - (1/(q-1)) sum_{b != 0} conj S_R(b/t)).
inline double main_term_from_arcs(const RestrictedSet& R, int n) {
  const Field& F = R.field();
  const auto prof = FourierProfile::of(R);
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  DigitWindow origin{std::vector<Elem>(m, F.zero())};
  CharacterValue acc = s_r_at(prof, F, n, origin);
  CharacterValue at_t{0.0, 0.0};
  for (std::uint32_t b = 1; b < F.order(); ++b) {
    DigitWindow x = origin;
    x.digits[0] = Elem{b};
    at_t += std::conj(s_r_at(prof, F, n, x));
  }
  acc -= at_t / double(F.order() - 1);
  const double scale = to_double(BigRational(prime_count(F.order(), static_cast<unsigned>(n)),
                                             ipow(F.order(), static_cast<unsigned>(n))));
  return scale * acc.real();
}

/// (q/(q-1)) ((q-s)^n / n) Lambda.
inline double predictor(const PredictorParams& P) {
  const auto n = static_cast<unsigned>(P.n);
  return to_double(BigRational(BigInt(P.q), BigInt(P.q - 1)) * BigRational(ipow(P.q - P.s, n), BigInt(P.n)) * P.lambda());
}

/// Error budget with every implied constant set to 1. Reported, never asserted.
struct ErrorBudget {
  double U = 0.0;
  /// Weil error q^{n - [n/2]/2} (sqrt s + 1 - 2s/q)^n over the scale (q/(q-1)) (q-s)^n / n.
  double term_weil = 0.0;
  /// q^U (s/(q-s))^{n/U}.
  double term_minor_small = 0.0;
  /// q^{U/2} ((sqrt s + 1 - 2s/q)/(q-s))^U.
  double term_minor_large = 0.0;
  /// q^{-sqrt(n)/(2 sqrt 10)} + (q^{3/4} (sqrt s + 1)/(q-s))^n.
  double total = 0.0;
};

inline ErrorBudget error_budget(std::uint64_t q, std::uint64_t s, int n, std::optional<double> U = std::nullopt) {
  if (s >= q || n < 1) throw std::invalid_argument("error_budget needs s < q and n >= 1");
  const double qd = double(q), sd = double(s), nd = double(n);
  const double u = U ? *U : std::sqrt(2.0 * nd / 5.0);
  if (U && (u < 1.0 || u > nd / 2.0)) throw std::invalid_argument("U must lie in [1, n/2]");
  const double cs = std::sqrt(sd) + 1.0 - 2.0 * sd / qd;
  ErrorBudget b;
  b.U = u;
  const double log_weil = (nd - double(n / 2) / 2.0) * std::log(qd) + nd * std::log(cs);
  const double log_scale = std::log(qd / (qd - 1.0)) + nd * std::log(qd - sd) - std::log(nd);
  b.term_weil = std::exp(log_weil - log_scale);
  b.term_minor_small = std::pow(qd, u) * std::pow(sd / (qd - sd), nd / u);
  b.term_minor_large = std::pow(qd, u / 2.0) * std::pow(cs / (qd - sd), u);
  b.total = std::pow(qd, -std::sqrt(nd) / (2.0 * std::sqrt(10.0))) +
            std::pow(std::pow(qd, 0.75) * (std::sqrt(sd) + 1.0) / (qd - sd), nd);
  return b;
}

/// q^{3/4} (2 - 2/q) / (q - 1): the base of the second budget term when s = 1.
inline double single_digit_budget_base(std::uint64_t q) {
  const double qd = double(q);
  return std::pow(qd, 0.75) * (2.0 - 2.0 / qd) / (qd - 1.0);
}

/// sqrt(p) (log p + 1 - s/p) / (p - s); the consecutive-set geometric sum
/// converges when this is below 1.
inline double consecutive_budget_base(std::uint64_t p, std::uint64_t s) {
  const double pd = double(p);
  return std::sqrt(pd) * (std::log(pd) + 1.0 - double(s) / pd) / (pd - double(s));
}

struct OrthogonalityOptions {
  unsigned workers = 1;
  /// Upper bound on q^{n+1} * pi(n) character evaluations.
  std::uint64_t budget = 2'000'000'000;
  double tolerance = 1e-6;
};

struct OrthogonalityResult {
  BigInt count;
  CharacterValue raw;
};

/// N(R, n) as the average of S(x) conj(S_R(x)) over the q^{n+1} points a/t^{n+1}.
/// Chunks are summed separately and merged in index order, so the result is
/// bit-identical for any worker count.
inline OrthogonalityResult orthogonality_sum(const IrreducibleCache& cache, const RestrictedSet& Rset, int n,
                                             const OrthogonalityOptions& opts = {}) {
  const Field& F = Rset.field();
  if (n < 1) throw std::invalid_argument("orthogonality_count needs n >= 1");
  const int m = n + 1;
  const BigInt points = ipow(F.order(), static_cast<unsigned>(m));
  const BigInt work = points * prime_count(F.order(), static_cast<unsigned>(n));
  if (work > opts.budget)
    throw BudgetExceeded("orthogonality", std::to_string(work.convert_to<double>()) + " character evaluations");
  const auto& irreducibles = cache.of_degree(n);
  const auto prof = FourierProfile::of(Rset);
  const std::uint64_t total = points.convert_to<std::uint64_t>();
  constexpr std::uint64_t kChunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  std::vector<CharacterValue> partial(chunks);

  parallel_for(chunks, opts.workers, [&](std::size_t c) {
    CharacterValue acc{0.0, 0.0};
    DigitWindow x{std::vector<Elem>(static_cast<std::size_t>(m))};
    const std::uint64_t end = std::min(total, (c + 1) * kChunk);
    for (std::uint64_t idx = c * kChunk; idx < end; ++idx) {
      // a = sum a_i t^i with a_i the base-q digits of idx; x_{-j} = a_{m-j}
      std::uint64_t v = idx;
      for (int i = 0; i < m; ++i, v /= F.order()) x.digits[static_cast<std::size_t>(m - 1 - i)] = Elem{static_cast<std::uint32_t>(v % F.order())};
      const CharacterValue sr = s_r_at(prof, F, n, x);
      if (sr == CharacterValue{0.0, 0.0}) continue;
      CharacterValue s{0.0, 0.0};
      for (const Poly& P : irreducibles) {
        Elem arg = F.zero();
        for (std::size_t j = 0; j < P.c.size(); ++j) arg = F.add(arg, F.mul(P.c[j], x[j]));
        s += F.psi(arg);
      }
      acc += s * std::conj(sr);
    }
    partial[c] = acc;
  });

  CharacterValue sum{0.0, 0.0};
  for (const auto& v : partial) sum += v;
  sum /= double(total);
  const double rounded = std::round(sum.real());
  if (std::abs(sum.imag()) >= opts.tolerance || std::abs(sum.real() - rounded) >= opts.tolerance)
    throw NumericalFailure("orthogonality sum " + std::to_string(sum.real()) + " + " + std::to_string(sum.imag()) +
                           "i is not within tolerance of an integer");
  return {BigInt(static_cast<long long>(rounded)), sum};
}

inline BigInt orthogonality_count(const IrreducibleCache& cache, const RestrictedSet& Rset, int n,
                                  const OrthogonalityOptions& opts = {}) {
  return orthogonality_sum(cache, Rset, n, opts).count;
}

}  // namespace ffdigits
