#pragma once

// Irreducibility, factorization and the arithmetic functions mu, phi, pi on
// F_q[t], plus enumeration of monic polynomials with restricted coefficients.

#include <ffdigits/poly.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

namespace ffdigits {

/// Rabin's test: f of degree n is irreducible iff t^{q^n} = t mod f and
/// gcd(t^{q^{n/l}} - t, f) = 1 for every prime l | n.
inline bool is_irreducible(const PolyRing& R, const Poly& f) {
  if (f.degree() < 1 || !R.is_monic(f)) throw std::invalid_argument("is_irreducible expects a monic polynomial of degree >= 1");
  const int n = f.degree();
  if (n == 1) return true;
  if (f.c[0].is_zero()) return false;

  std::vector<int> checkpoints;
  for (auto l : prime_divisors(static_cast<std::uint64_t>(n))) checkpoints.push_back(n / static_cast<int>(l));

  const Poly x = R.t();
  Poly h = x;
  for (int j = 1; j <= n; ++j) {
    h = R.powmod(h, R.q(), f);
    if (std::find(checkpoints.begin(), checkpoints.end(), j) != checkpoints.end() &&
        R.gcd(R.sub(h, x), f).degree() != 0)
      return false;
  }
  return h == x;
}

struct Factorization {
  Elem unit;
  /// Distinct monic irreducibles with multiplicities, sorted by (degree, coefficients).
  std::vector<std::pair<Poly, int>> factors;
};

namespace detail {

// Counter-derived trial polynomial of degree < bound: the base-q digits of i.
inline Poly trial_poly(const PolyRing& R, std::uint64_t i, int bound) {
  Poly u;
  for (int d = 0; d < bound && i; ++d, i /= R.q()) u.c.push_back(Elem{static_cast<std::uint32_t>(i % R.q())});
  R.normalize(u);
  return u;
}

// Splits g (monic, squarefree, every factor of degree d) into its factors.
inline void equal_degree_split(const PolyRing& R, const Poly& g, int d, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const Field& F = R.field();
  const bool even = F.p() == 2;
  const BigInt half_exp = (ipow(F.order(), static_cast<unsigned>(d)) - 1) / 2;
  for (std::uint64_t i = 2;; ++i) {
    Poly u = trial_poly(R, i, g.degree());
    if (u.degree() < 1) continue;
    Poly w;
    if (even) {
      // Absolute trace u + u^2 + ... + u^{2^{kd-1}} mod g.
      Poly power = R.rem(u, g);
      for (std::uint32_t j = 0; j < F.degree() * static_cast<std::uint32_t>(d); ++j) {
        w = R.add(w, power);
        power = R.mulmod(power, power, g);
      }
    } else {
      w = R.sub(R.powmod(u, half_exp, g), R.one());
    }
    Poly h = R.gcd(w, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(R, h, d, out);
      equal_degree_split(R, R.exact_quo(g, h), d, out);
      return;
    }
  }
}

}  // namespace detail

/// Distinct-degree factorization on the shrinking cofactor, equal-degree
/// splitting on each degree slice, multiplicities by repeated division.
inline Factorization factorize(const PolyRing& R, const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  Factorization out{f.lead(), {}};
  Poly rest = R.monic(f);
  const Poly x = R.t();

  auto take = [&](const Poly& w) {
    int e = 0;
    while (true) {
      auto [qt, r] = R.divmod(rest, w);
      if (!r.is_zero()) break;
      rest = std::move(qt);
      ++e;
    }
    out.factors.emplace_back(w, e);
  };

  Poly h = x;
  for (int d = 1; rest.degree() >= 2 * d; ++d) {
    h = R.powmod(h, R.q(), rest);
    Poly g = R.gcd(R.sub(h, x), rest);
    if (g.degree() <= 0) continue;
    std::vector<Poly> pieces;
    detail::equal_degree_split(R, g, d, pieces);
    for (const auto& w : pieces) take(w);
    if (rest.degree() >= 1) R.reduce_in_place(h, rest);
  }
  if (rest.degree() >= 1) out.factors.emplace_back(rest, 1);
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

/// unit * prod factor^multiplicity.
inline Poly reassemble(const PolyRing& R, const Factorization& fac) {
  Poly acc = R.constant(fac.unit);
  for (const auto& [w, e] : fac.factors)
    for (int i = 0; i < e; ++i) acc = R.mul(acc, w);
  return acc;
}

inline int mobius(const PolyRing& R, const Poly& f) {
  if (!R.is_monic(f)) throw std::invalid_argument("mobius expects a monic polynomial");
  if (f.degree() == 0) return 1;
  const auto fac = factorize(R, f);
  for (const auto& [w, e] : fac.factors)
    if (e > 1) return 0;
  return fac.factors.size() % 2 ? -1 : 1;
}

/// |(F_q[t]/f)^x| = prod (q^{d e} - q^{d (e-1)}) over the factorization.
inline BigInt euler_phi(const PolyRing& R, const Poly& f) {
  if (!R.is_monic(f)) throw std::invalid_argument("euler_phi expects a monic polynomial");
  BigInt phi = 1;
  if (f.degree() == 0) return phi;
  for (const auto& [w, e] : factorize(R, f).factors) {
    const auto d = static_cast<unsigned>(w.degree());
    phi *= ipow(R.q(), d * static_cast<unsigned>(e)) - ipow(R.q(), d * static_cast<unsigned>(e - 1));
  }
  return phi;
}

/// Number of monic irreducibles of degree n: (1/n) sum_{d | n} mu(n/d) q^d.
inline BigInt prime_count(std::uint64_t q, unsigned n) {
  if (n == 0) throw std::invalid_argument("prime_count needs n >= 1");
  BigInt acc = 0;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) acc += mobius_int(n / d) * ipow(q, d);
  return acc / n;
}

/// Monic polynomials of degree n whose non-leading coefficients lie in
/// `allowed` (all of F_q when absent), each exactly once. The order is
/// lexicographic from c_{n-1} down to c_0, with allowed digits in
/// increasing element order; c_0 varies fastest.
class MonicEnumerator {
 public:
  MonicEnumerator(const Field& field, int n, std::optional<std::vector<Elem>> allowed = std::nullopt,
                  std::vector<std::uint32_t> fixed_top = {})
      : n_(n) {
    if (n < 0) throw std::invalid_argument("degree must be >= 0");
    if (allowed) {
      if (allowed->empty()) throw std::invalid_argument("allowed coefficient set is empty");
      digits_ = *allowed;
      std::sort(digits_.begin(), digits_.end());
      digits_.erase(std::unique(digits_.begin(), digits_.end()), digits_.end());
      for (auto a : digits_)
        if (!field.contains(a)) throw std::out_of_range("allowed coefficient outside the field");
    } else {
      for (std::uint32_t v = 0; v < field.order(); ++v) digits_.push_back(Elem{v});
    }
    if (fixed_top.size() > static_cast<std::size_t>(n)) throw std::invalid_argument("prefix longer than the degree");
    free_ = n - static_cast<int>(fixed_top.size());
    index_.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < fixed_top.size(); ++i) {
      if (fixed_top[i] >= digits_.size()) throw std::out_of_range("prefix digit out of range");
      index_[static_cast<std::size_t>(n) - 1 - i] = fixed_top[i];
    }
    current_.c.assign(static_cast<std::size_t>(n) + 1, field.one());
    for (int i = 0; i < n; ++i) current_.c[i] = digits_[index_[i]];
  }

  /// Writes the next polynomial into `out`; false once exhausted.
  bool next(Poly& out) {
    if (done_) return false;
    out = current_;
    advance();
    return true;
  }

  /// Calls fn(const Poly&) for every remaining polynomial.
  template <class Fn>
  void for_each(Fn&& fn) {
    while (!done_) {
      fn(static_cast<const Poly&>(current_));
      advance();
    }
  }

  BigInt count() const { return boost::multiprecision::pow(BigInt(digits_.size()), static_cast<unsigned>(free_)); }
  const std::vector<Elem>& digits() const { return digits_; }

 private:
  void advance() {
    for (int i = 0; i < free_; ++i) {
      if (++index_[i] < digits_.size()) {
        current_.c[i] = digits_[index_[i]];
        return;
      }
      index_[i] = 0;
      current_.c[i] = digits_[0];
    }
    done_ = true;
  }

  int n_;
  int free_ = 0;
  std::vector<Elem> digits_;
  std::vector<std::uint32_t> index_;
  Poly current_;
  bool done_ = false;
};

inline std::vector<Poly> list_monic(const Field& field, int n, std::optional<std::vector<Elem>> allowed = std::nullopt) {
  std::vector<Poly> out;
  MonicEnumerator(field, n, std::move(allowed)).for_each([&](const Poly& f) { out.push_back(f); });
  return out;
}

/// Monic irreducibles per degree, populated once and then shared read-only.
class IrreducibleCache {
 public:
  explicit IrreducibleCache(FieldPtr field, std::uint64_t warn_above = 1'000'000)
      : ring_(std::move(field)), warn_above_(warn_above) {}

  const PolyRing& ring() const { return ring_; }

  const std::vector<Poly>& of_degree(int n) const {
    {
      std::shared_lock lock(mutex_);
      if (auto it = lists_.find(n); it != lists_.end()) return *it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = lists_.find(n); it != lists_.end()) return *it->second;
    const BigInt expected = prime_count(ring_.q(), static_cast<unsigned>(n));
    if (expected > warn_above_)
      std::clog << "warning: enumerating " << expected << " irreducibles of degree " << n << " over F_" << ring_.q()
                << "\n";
    auto list = std::make_unique<std::vector<Poly>>();
    list->reserve(expected.convert_to<std::size_t>());
    MonicEnumerator(ring_.field(), n).for_each([&](const Poly& f) {
      if (is_irreducible(ring_, f)) list->push_back(f);
    });
    return *lists_.emplace(n, std::move(list)).first->second;
  }

 private:
  PolyRing ring_;
  std::uint64_t warn_above_;
  mutable std::shared_mutex mutex_;
  mutable std::map<int, std::unique_ptr<const std::vector<Poly>>> lists_;
};

}  // namespace ffdigits
