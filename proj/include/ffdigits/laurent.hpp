#pragma once

// Points of T = { sum_{i<0} x_i t^i }: reduced fractions a/g, their
// fractional digits x_{-1}, x_{-2}, ..., the norm, and the character e_q.

#include <ffdigits/poly.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ffdigits {

/// a/g with g monic, deg a < deg g and gcd(a, g) = 1; the zero point is 0/1.
struct RationalPoint {
  Poly a;
  Poly g;

  bool is_zero() const { return a.is_zero(); }
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// digits[j] holds x_{-j-1}.
struct DigitWindow {
  std::vector<Elem> digits;

  std::size_t size() const { return digits.size(); }
  Elem operator[](std::size_t j) const { return digits[j]; }
  /// x_{-i} for i >= 1; zero beyond the window.
  Elem at_negative(std::size_t i) const { return i >= 1 && i <= digits.size() ? digits[i - 1] : Elem{0}; }

  friend bool operator==(const DigitWindow&, const DigitWindow&) = default;
};

/// log_q |x|, or nullopt for x = 0.
struct Norm {
  std::optional<int> exponent;

  bool is_zero() const { return !exponent.has_value(); }
  double value(std::uint32_t q) const { return exponent ? std::pow(double(q), *exponent) : 0.0; }
  friend bool operator==(const Norm&, const Norm&) = default;
};

inline bool is_valid_point(const PolyRing& R, const RationalPoint& x) {
  if (!R.is_valid(x.a) || !R.is_monic(x.g)) return false;
  if (x.a.is_zero()) return x.g.degree() == 0;
  return x.a.degree() < x.g.degree() && R.gcd(x.a, x.g).degree() == 0;
}

/// Validated constructor.
inline RationalPoint make_point(const PolyRing& R, Poly a, Poly g) {
  RationalPoint x{std::move(a), std::move(g)};
  if (!is_valid_point(R, x))
    throw std::invalid_argument("not a reduced point of T: " + R.format(x.a) + "/" + R.format(x.g));
  return x;
}

/// Fractional part {num/den} in lowest terms with a monic denominator.
inline RationalPoint fractional_part(const PolyRing& R, const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  Poly a = R.rem(num, den);
  if (a.is_zero()) return {Poly{}, R.one()};
  Poly d = R.gcd(a, den);
  Poly g = R.exact_quo(den, d);
  a = R.exact_quo(a, d);
  const Elem inv = R.field().inv(g.lead());
  return {R.scale(a, inv), R.scale(g, inv)};
}

/// {t^r x}.
inline RationalPoint shift_fraction(const PolyRing& R, const RationalPoint& x, int r) {
  return fractional_part(R, R.shift(x.a, r), x.g);
}

/// (x_{-1}, ..., x_{-m}) by iterated division: r <- r t, peel off r's
/// coefficient at t^{deg g} against the monic g.
inline DigitWindow frac_digits(const PolyRing& R, const RationalPoint& x, std::size_t m) {
  const Field& F = R.field();
  DigitWindow w{std::vector<Elem>(m, F.zero())};
  if (x.a.is_zero()) return w;
  const std::size_t dg = static_cast<std::size_t>(x.g.degree());
  std::vector<Elem> r(dg + 1, F.zero());
  for (std::size_t i = 0; i < x.a.c.size(); ++i) r[i] = x.a.c[i];
  for (std::size_t j = 0; j < m; ++j) {
    // r has degree < dg; multiply by t.
    for (std::size_t i = dg; i > 0; --i) r[i] = r[i - 1];
    r[0] = F.zero();
    const Elem digit = r[dg];
    w.digits[j] = digit;
    if (!digit.is_zero())
      for (std::size_t i = 0; i < dg; ++i) r[i] = F.sub(r[i], F.mul(digit, x.g.c[i]));
    r[dg] = F.zero();
  }
  return w;
}

/// Coefficient-wise sum; Laurent series add without carries.
inline DigitWindow add_windows(const Field& F, const DigitWindow& x, const DigitWindow& y) {
  DigitWindow out{std::vector<Elem>(std::max(x.size(), y.size()), F.zero())};
  for (std::size_t j = 0; j < out.size(); ++j)
    out.digits[j] = F.add(j < x.size() ? x[j] : Elem{0}, j < y.size() ? y[j] : Elem{0});
  return out;
}

/// The point sum_{j=1}^{m} x_{-j} t^{-j} as a reduced fraction.
inline RationalPoint from_window(const PolyRing& R, const DigitWindow& w) {
  const std::size_t m = w.size();
  Poly num;
  num.c.resize(m, R.field().zero());
  for (std::size_t j = 1; j <= m; ++j) num.c[m - j] = w.digits[j - 1];
  R.normalize(num);
  return fractional_part(R, num, R.monomial(R.field().one(), static_cast<int>(m)));
}

inline Norm norm_of(const RationalPoint& x) {
  if (x.a.is_zero()) return {};
  return {x.a.degree() - x.g.degree()};
}

/// |x - y|.
inline Norm norm_of_difference(const PolyRing& R, const RationalPoint& x, const RationalPoint& y) {
  Poly num = R.sub(R.mul(x.a, y.g), R.mul(y.a, x.g));
  if (num.is_zero()) return {};
  return {num.degree() - x.g.degree() - y.g.degree()};
}

/// e_q(h x) = psi(sum_j h_j x_{-j-1}); needs x_{-1}..x_{-deg h - 1}.
inline CharacterValue e_q_of(const Field& F, const Poly& h, const DigitWindow& x) {
  if (h.c.size() > x.size()) throw std::invalid_argument("digit window too short for e_q");
  Elem acc = F.zero();
  for (std::size_t j = 0; j < h.c.size(); ++j) acc = F.add(acc, F.mul(h.c[j], x[j]));
  return F.psi(acc);
}

inline CharacterValue e_q_of(const PolyRing& R, const Poly& h, const RationalPoint& x) {
  return e_q_of(R.field(), h, frac_digits(R, x, h.c.size()));
}

inline std::string format_point(const PolyRing& R, const RationalPoint& x) {
  return R.format(x.a) + "/" + R.format(x.g);
}

inline RationalPoint parse_point(const PolyRing& R, std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) throw std::invalid_argument("expected a/g, got '" + std::string(text) + "'");
  Poly a = R.parse(text.substr(0, slash));
  Poly g = R.parse(text.substr(slash + 1));
  return make_point(R, std::move(a), std::move(g));
}

}  // namespace ffdigits
