#pragma once

// Exponential sums S(x) over irreducibles and S_R(x) over restricted-digit
// monics, Fourier coefficients of digit sets, and the pointwise and averaged
// bounds on them.

#include <ffdigits/factor.hpp>
#include <ffdigits/laurent.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ffdigits {

/// The forbidden coefficient set R and its complement.
class RestrictedSet {
 public:
  RestrictedSet(FieldPtr field, std::vector<Elem> forbidden) : field_(std::move(field)), forbidden_(std::move(forbidden)) {
    std::sort(forbidden_.begin(), forbidden_.end());
    if (std::adjacent_find(forbidden_.begin(), forbidden_.end()) != forbidden_.end())
      throw std::invalid_argument("forbidden set has repeated elements");
    for (auto a : forbidden_)
      if (!field_->contains(a)) throw std::out_of_range("forbidden element outside the field");
    if (forbidden_.size() >= field_->order()) throw std::invalid_argument("forbidden set must leave at least one coefficient");
    for (std::uint32_t v = 0; v < field_->order(); ++v)
      if (!std::binary_search(forbidden_.begin(), forbidden_.end(), Elem{v})) complement_.push_back(Elem{v});
  }

  /// Comma-separated field elements; the empty string is the empty set.
  static RestrictedSet parse(FieldPtr field, std::string_view text) {
    std::vector<Elem> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i < text.size() && text[i] == '[') ++depth;
      if (i < text.size() && text[i] == ']') --depth;
      if (i == text.size() || (text[i] == ',' && depth == 0)) {
        auto tok = text.substr(start, i - start);
        if (tok.find_first_not_of(' ') != std::string_view::npos) out.push_back(field->parse(tok));
        start = i + 1;
      }
    }
    return {std::move(field), std::move(out)};
  }

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t q() const { return field_->order(); }
  std::size_t s() const { return forbidden_.size(); }
  const std::vector<Elem>& forbidden() const { return forbidden_; }
  const std::vector<Elem>& complement() const { return complement_; }
  bool contains(Elem a) const { return std::binary_search(forbidden_.begin(), forbidden_.end(), a); }
  bool zero_in_R() const { return contains(Elem{0}); }

  /// R = {d, d+1, ..., d+s-1} (mod p) inside a prime field; s >= 1.
  bool is_consecutive() const {
    if (!field_->is_prime_field() || forbidden_.empty()) return false;
    const std::uint32_t p = field_->p();
    for (auto start : forbidden_) {
      bool ok = true;
      for (std::size_t i = 0; i < forbidden_.size() && ok; ++i)
        ok = contains(Elem{static_cast<std::uint32_t>((start.v + i) % p)});
      if (ok) return true;
    }
    return false;
  }

  std::string format() const {
    std::string out;
    for (std::size_t i = 0; i < forbidden_.size(); ++i) {
      if (i) out += ',';
      out += field_->format(forbidden_[i]);
    }
    return out;
  }

 private:
  FieldPtr field_;
  std::vector<Elem> forbidden_;
  std::vector<Elem> complement_;
};

/// sum_{a in A} psi(a r).
inline CharacterValue fourier_indicator(const Field& F, std::span<const Elem> A, Elem r) {
  CharacterValue acc{0.0, 0.0};
  for (auto a : A) acc += F.psi(F.mul(a, r));
  return acc;
}

/// Fourier coefficients of the allowed digits R^c at every r in F_q.
struct FourierProfile {
  std::vector<CharacterValue> values;
  double l1_over_q = 0.0;

  static FourierProfile of(const RestrictedSet& R) {
    const Field& F = R.field();
    FourierProfile out;
    out.values.resize(F.order());
    double l1 = 0.0;
    for (std::uint32_t r = 0; r < F.order(); ++r) {
      out.values[r] = r == 0 ? CharacterValue(double(R.complement().size()), 0.0)
                             : fourier_indicator(F, R.complement(), Elem{r});
      l1 += std::abs(out.values[r]);
    }
    out.l1_over_q = l1 / F.order();
    return out;
  }

  CharacterValue operator[](Elem r) const { return values[r.v]; }
};

/// S_R(x) = e_q(x t^n) prod_{i<n} sum_{c in R^c} psi(c x_{-i-1}).
inline CharacterValue s_r_at(const RestrictedSet& R, int n, const DigitWindow& x) {
  if (n < 0 || x.size() < static_cast<std::size_t>(n) + 1) throw std::invalid_argument("s_r_at needs a window of length n + 1");
  const Field& F = R.field();
  CharacterValue acc = F.psi(x[static_cast<std::size_t>(n)]);
  for (int i = 0; i < n; ++i) acc *= fourier_indicator(F, R.complement(), x[static_cast<std::size_t>(i)]);
  return acc;
}

/// Same product using precomputed Fourier coefficients.
inline CharacterValue s_r_at(const FourierProfile& prof, const Field& F, int n, const DigitWindow& x) {
  if (n < 0 || x.size() < static_cast<std::size_t>(n) + 1) throw std::invalid_argument("s_r_at needs a window of length n + 1");
  CharacterValue acc = F.psi(x[static_cast<std::size_t>(n)]);
  for (int i = 0; i < n; ++i) acc *= prof[x[static_cast<std::size_t>(i)]];
  return acc;
}

/// |S_R(x)|, which only depends on x_{-1}..x_{-n}.
inline double abs_s_r_at(const FourierProfile& prof, int n, const DigitWindow& x) {
  double acc = 1.0;
  for (int i = 0; i < n; ++i) acc *= std::abs(prof[x[static_cast<std::size_t>(i)]]);
  return acc;
}

/// S(x) = sum over monic irreducible P of degree n of e_q(P x).
inline CharacterValue s_at(const IrreducibleCache& cache, int n, const DigitWindow& x) {
  if (x.size() < static_cast<std::size_t>(n) + 1) throw std::invalid_argument("s_at needs a window of length n + 1");
  const Field& F = cache.ring().field();
  CharacterValue acc{0.0, 0.0};
  for (const Poly& P : cache.of_degree(n)) {
    Elem arg = F.zero();
    for (std::size_t j = 0; j < P.c.size(); ++j) arg = F.add(arg, F.mul(P.c[j], x[j]));
    acc += F.psi(arg);
  }
  return acc;
}

/// S(a/g + gamma).
inline CharacterValue s_at(const IrreducibleCache& cache, const RationalPoint& center,
                           const std::optional<RationalPoint>& gamma, int n) {
  const PolyRing& R = cache.ring();
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  DigitWindow x = frac_digits(R, center, m);
  if (gamma) x = add_windows(R.field(), x, frac_digits(R, *gamma, m));
  return s_at(cache, n, x);
}

/// (sum_r |1^_{R^c}(r)| / q)^n, the exact L^1 average of |S_R| over T.
inline double l1_average_closed_form(const RestrictedSet& R, int n) {
  return std::pow(FourierProfile::of(R).l1_over_q, n);
}

/// (sqrt(s) + 1 - 2s/q)^n.
inline double cauchy_schwarz_bound(std::uint64_t q, std::uint64_t s, int n) {
  if (s >= q) throw std::invalid_argument("need s < q");
  return std::pow(std::sqrt(double(s)) + 1.0 - 2.0 * double(s) / double(q), n);
}

/// (log p + 1 - s/p)^n for a consecutive forbidden set in F_p.
inline double consecutive_l1_bound(std::uint64_t p, std::uint64_t s, int n) {
  return std::pow(std::log(double(p)) + 1.0 - double(s) / double(p), n);
}

/// (q-s)^{n - [n/d]} s^{[n/d]}, valid for a/g with g not a power of t and deg g = d.
inline BigInt lemma3_bound(std::uint64_t q, std::uint64_t s, int n, int d) {
  if (d < 1 || n < 0) throw std::invalid_argument("lemma3_bound needs d >= 1, n >= 0");
  if (s > q - s) throw std::invalid_argument("lemma3_bound needs q - s >= s");
  const unsigned k = static_cast<unsigned>(n / d);
  return ipow(q - s, static_cast<unsigned>(n) - k) * ipow(s, k);
}

/// (q-s)^{n-2d} (q(1 + sqrt s) - 2s)^{2d}, bounding sum_{deg a < deg g <= d} |S_R(a/g)|.
inline double lemma4_bound(std::uint64_t q, std::uint64_t s, int n, int d) {
  if (d < 0 || 2 * d > n) throw std::invalid_argument("lemma4_bound needs 0 <= d <= n/2");
  const double qd = double(q), sd = double(s);
  return std::pow(qd - sd, n - 2 * d) * std::pow(qd * (1.0 + std::sqrt(sd)) - 2.0 * sd, 2 * d);
}

/// (p-s)^n exp(-[n/d] / p^3) for consecutive R.
inline double lemma6_bound(std::uint64_t p, std::uint64_t s, int n, int d) {
  if (d < 1) throw std::invalid_argument("lemma6_bound needs d >= 1");
  const double pd = double(p);
  return std::pow(pd - double(s), n) * std::exp(-double(n / d) / (pd * pd * pd));
}

/// #{1 <= j <= n : x_{-j} != 0}.
inline int nonzero_digit_count(const PolyRing& R, const RationalPoint& x, int n) {
  const auto w = frac_digits(R, x, static_cast<std::size_t>(n));
  return static_cast<int>(std::count_if(w.digits.begin(), w.digits.end(), [](Elem e) { return !e.is_zero(); }));
}

}  // namespace ffdigits
