#pragma once

// Dense univariate polynomials over F_q and the ring operations on them.

#include <ffdigits/field.hpp>

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ffdigits {

/// Coefficients in ascending powers of t. The leading coefficient is nonzero;
/// the zero polynomial has no coefficients.
struct Poly {
  std::vector<Elem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Elem lead() const { return c.empty() ? Elem{0} : c.back(); }
  Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : Elem{0}; }

  friend bool operator==(const Poly&, const Poly&) = default;

  /// Degree first, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (auto cmp = a.c.size() <=> b.c.size(); cmp != 0) return cmp;
    for (std::size_t i = a.c.size(); i-- > 0;)
      if (auto cmp = a.c[i] <=> b.c[i]; cmp != 0) return cmp;
    return std::strong_ordering::equal;
  }
};

class PolyRing {
 public:
  explicit PolyRing(FieldPtr field) : field_(std::move(field)), F_(field_.get()) {}

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t q() const { return F_->order(); }

  Poly zero() const { return {}; }
  Poly one() const { return Poly{{F_->one()}}; }
  Poly t() const { return Poly{{F_->zero(), F_->one()}}; }
  Poly constant(Elem a) const { return a.is_zero() ? Poly{} : Poly{{a}}; }

  Poly monomial(Elem a, int d) const {
    if (a.is_zero()) return {};
    Poly out{std::vector<Elem>(static_cast<std::size_t>(d) + 1, F_->zero())};
    out.c.back() = a;
    return out;
  }

  /// From packed element indices, constant first.
  Poly from_indices(std::initializer_list<std::uint64_t> coeffs) const {
    Poly out;
    for (auto v : coeffs) out.c.push_back(F_->from_index(v));
    normalize(out);
    return out;
  }

  void normalize(Poly& f) const {
    while (!f.c.empty() && f.c.back().is_zero()) f.c.pop_back();
  }

  bool is_valid(const Poly& f) const {
    if (!f.c.empty() && f.c.back().is_zero()) return false;
    for (auto a : f.c)
      if (!F_->contains(a)) return false;
    return true;
  }

  bool is_monic(const Poly& f) const { return !f.is_zero() && f.lead() == F_->one(); }

  /// True iff f = c * t^k for some k >= 0 and nonzero c.
  bool is_power_of_t(const Poly& f) const {
    if (f.is_zero()) return false;
    for (std::size_t i = 0; i + 1 < f.c.size(); ++i)
      if (!f.c[i].is_zero()) return false;
    return true;
  }

  Poly add(const Poly& f, const Poly& g) const {
    const Poly& big = f.c.size() >= g.c.size() ? f : g;
    const Poly& small = f.c.size() >= g.c.size() ? g : f;
    Poly out = big;
    for (std::size_t i = 0; i < small.c.size(); ++i) out.c[i] = F_->add(out.c[i], small.c[i]);
    normalize(out);
    return out;
  }

  Poly neg(const Poly& f) const {
    Poly out = f;
    for (auto& a : out.c) a = F_->neg(a);
    return out;
  }

  Poly sub(const Poly& f, const Poly& g) const {
    Poly out = f;
    if (out.c.size() < g.c.size()) out.c.resize(g.c.size(), F_->zero());
    for (std::size_t i = 0; i < g.c.size(); ++i) out.c[i] = F_->sub(out.c[i], g.c[i]);
    normalize(out);
    return out;
  }

  Poly scale(const Poly& f, Elem a) const {
    if (a.is_zero()) return {};
    Poly out = f;
    for (auto& x : out.c) x = F_->mul(x, a);
    return out;
  }

  /// f * t^k.
  Poly shift(const Poly& f, int k) const {
    if (f.is_zero() || k == 0) return f;
    Poly out;
    out.c.assign(static_cast<std::size_t>(k), F_->zero());
    out.c.insert(out.c.end(), f.c.begin(), f.c.end());
    return out;
  }

  Poly mul(const Poly& f, const Poly& g) const {
    if (f.is_zero() || g.is_zero()) return {};
    Poly out{std::vector<Elem>(f.c.size() + g.c.size() - 1, F_->zero())};
    for (std::size_t i = 0; i < f.c.size(); ++i) {
      if (f.c[i].is_zero()) continue;
      for (std::size_t j = 0; j < g.c.size(); ++j)
        out.c[i + j] = F_->add(out.c[i + j], F_->mul(f.c[i], g.c[j]));
    }
    normalize(out);
    return out;
  }

  /// (quotient, remainder) with deg remainder < deg g.
  std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) const {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = f;
    if (r.degree() < g.degree()) return {Poly{}, std::move(r)};
    const std::size_t dg = static_cast<std::size_t>(g.degree());
    Poly quot{std::vector<Elem>(r.c.size() - dg, F_->zero())};
    const Elem inv_lead = F_->inv(g.lead());
    while (r.degree() >= g.degree()) {
      const std::size_t shift = r.c.size() - 1 - dg;
      const Elem factor = F_->mul(r.c.back(), inv_lead);
      quot.c[shift] = factor;
      for (std::size_t i = 0; i <= dg; ++i) r.c[shift + i] = F_->sub(r.c[shift + i], F_->mul(factor, g.c[i]));
      normalize(r);
    }
    normalize(quot);
    return {std::move(quot), std::move(r)};
  }

  Poly rem(const Poly& f, const Poly& g) const {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = f;
    reduce_in_place(r, g);
    return r;
  }

  Poly quo(const Poly& f, const Poly& g) const { return divmod(f, g).first; }

  /// Exact division; throws if g does not divide f.
  Poly exact_quo(const Poly& f, const Poly& g) const {
    auto [qt, r] = divmod(f, g);
    if (!r.is_zero()) throw std::invalid_argument("exact_quo: divisor does not divide");
    return qt;
  }

  bool divides(const Poly& g, const Poly& f) const { return rem(f, g).is_zero(); }

  Poly monic(const Poly& f) const {
    if (f.is_zero() || f.lead() == F_->one()) return f;
    return scale(f, F_->inv(f.lead()));
  }

  /// Monic gcd; gcd(0, 0) = 0.
  Poly gcd(Poly f, Poly g) const {
    while (!g.is_zero()) {
      reduce_in_place(f, g);
      std::swap(f, g);
    }
    return monic(f);
  }

  Poly derivative(const Poly& f) const {
    if (f.c.size() <= 1) return {};
    Poly out{std::vector<Elem>(f.c.size() - 1)};
    for (std::size_t i = 1; i < f.c.size(); ++i) out.c[i - 1] = F_->mul(F_->from_int(static_cast<std::int64_t>(i % F_->p())), f.c[i]);
    normalize(out);
    return out;
  }

  Elem eval(const Poly& f, Elem x) const {
    Elem acc = F_->zero();
    for (std::size_t i = f.c.size(); i-- > 0;) acc = F_->add(F_->mul(acc, x), f.c[i]);
    return acc;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    Poly prod = mul(a, b);
    reduce_in_place(prod, m);
    return prod;
  }

  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
    reduce_in_place(base, m);
    Poly r = rem(one(), m);
    for (; e; e >>= 1) {
      if (e & 1) r = mulmod(r, base, m);
      if (e > 1) base = mulmod(base, base, m);
    }
    return r;
  }

  Poly powmod(Poly base, const BigInt& e, const Poly& m) const {
    reduce_in_place(base, m);
    Poly r = rem(one(), m);
    const std::size_t bits = e.is_zero() ? 0 : msb(e) + 1;
    for (std::size_t i = bits; i-- > 0;) {
      r = mulmod(r, r, m);
      if (bit_test(e, static_cast<unsigned>(i))) r = mulmod(r, base, m);
    }
    return r;
  }

  /// Reduces f modulo m in place.
  void reduce_in_place(Poly& f, const Poly& m) const {
    if (m.is_zero()) throw std::domain_error("polynomial division by zero");
    if (f.degree() < m.degree()) return;
    const std::size_t dm = static_cast<std::size_t>(m.degree());
    const bool monic_m = m.lead() == F_->one();
    const Elem inv_lead = monic_m ? F_->one() : F_->inv(m.lead());
    while (f.degree() >= m.degree()) {
      const std::size_t shift = f.c.size() - 1 - dm;
      const Elem factor = monic_m ? f.c.back() : F_->mul(f.c.back(), inv_lead);
      for (std::size_t i = 0; i < dm; ++i) f.c[shift + i] = F_->sub(f.c[shift + i], F_->mul(factor, m.c[i]));
      f.c.pop_back();
      normalize(f);
    }
  }

  /// Comma-separated coefficients, constant first; "0" for the zero polynomial.
  std::string format(const Poly& f) const {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
      if (i) out += ',';
      out += F_->format(f.c[i]);
    }
    return out;
  }

  Poly parse(std::string_view text) const {
    Poly out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i < text.size() && text[i] == '[') ++depth;
      if (i < text.size() && text[i] == ']') --depth;
      if (i == text.size() || (text[i] == ',' && depth == 0)) {
        out.c.push_back(F_->parse(text.substr(start, i - start)));
        start = i + 1;
      }
    }
    normalize(out);
    return out;
  }

 private:
  FieldPtr field_;
  const Field* F_;
};

}  // namespace ffdigits
