#pragma once

// Arithmetic in F_q = F_p[u]/(m(u)), the trace map down to F_p and the
// additive character psi(a) = exp(2 pi i tr(a) / p).

#include <ffdigits/bigint.hpp>
#include <ffdigits/errors.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ffdigits {

using CharacterValue = std::complex<double>;

/// Element of F_q in polynomial basis, packed as v = sum_i c_i p^i where
/// (c_0, ..., c_{k-1}) are the coordinates with respect to the modulus.
struct Elem {
  std::uint32_t v = 0;

  constexpr bool is_zero() const { return v == 0; }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  /// Coefficients m_0..m_k of the monic modulus; empty when k == 1.
  std::vector<std::uint32_t> modulus;

  std::uint64_t order() const {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    return q;
  }

  /// `p^k:m_0,...,m_k`, modulus omitted for prime fields.
  std::string to_string() const {
    std::string out = std::to_string(p) + "^" + std::to_string(k);
    if (k > 1) {
      out += ':';
      for (std::size_t i = 0; i < modulus.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(modulus[i]);
      }
    }
    return out;
  }

  static FieldSpec parse(std::string_view text);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

inline std::uint64_t parse_u64(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("expected a non-negative integer for ") + what +
                                ", got '" + std::string(s) + "'");
  return value;
}

inline std::vector<std::uint32_t> parse_u32_list(std::string_view s, const char* what) {
  std::vector<std::uint32_t> out;
  while (true) {
    auto comma = s.find(',');
    out.push_back(static_cast<std::uint32_t>(parse_u64(s.substr(0, comma), what)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

// Dense polynomials over F_p as coefficient vectors (constant first). Only
// used to pick and validate the extension modulus, before a Field exists.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

inline PrimePoly rem_prime(PrimePoly f, const PrimePoly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint64_t inv = inv_mod_prime(g.back(), p);
  while (f.size() > dg) {
    const std::uint64_t c = f.back() * inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i)
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - c) * g[i]) % p);
    trim(f);
  }
  return f;
}

/// Trial division by every monic polynomial of degree <= deg f / 2.
inline bool is_irreducible_prime(const PrimePoly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return n == 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    PrimePoly g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t x = idx;
      for (std::size_t i = 0; i < d; ++i, x /= p) g[i] = static_cast<std::uint32_t>(x % p);
      if (rem_prime(f, g, p).empty()) return false;
    }
  }
  return true;
}

/// Smallest monic irreducible of degree k over F_p, ordered by the packed
/// value sum_{i<k} m_i p^i (so m_{k-1} is the most significant coefficient).
inline std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  PrimePoly f(k + 1, 0);
  f[k] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t x = idx;
    for (std::uint32_t i = 0; i < k; ++i, x /= p) f[i] = static_cast<std::uint32_t>(x % p);
    if (f[0] != 0 && is_irreducible_prime(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace detail

inline FieldSpec FieldSpec::parse(std::string_view text) {
  FieldSpec spec;
  auto colon = text.find(':');
  std::string_view head = text.substr(0, colon);
  auto caret = head.find('^');
  spec.p = static_cast<std::uint32_t>(detail::parse_u64(head.substr(0, caret), "p"));
  spec.k = caret == std::string_view::npos
               ? 1
               : static_cast<std::uint32_t>(detail::parse_u64(head.substr(caret + 1), "k"));
  if (colon != std::string_view::npos) spec.modulus = detail::parse_u32_list(text.substr(colon + 1), "modulus");
  return spec;
}

/// The field F_q together with its lookup tables. Immutable once built, so a
/// single instance can be shared across threads.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = 1u << 22;

  /// Validates `spec`; fills in the default modulus when k > 1 and none is given.
  static std::shared_ptr<const Field> make(FieldSpec spec) {
    return std::shared_ptr<const Field>(new Field(std::move(spec)));
  }

  /// Field of order q with the default modulus.
  static std::shared_ptr<const Field> of_order(std::uint64_t q) {
    auto primes = prime_divisors(q);
    if (q < 2 || primes.size() != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    FieldSpec spec;
    spec.p = static_cast<std::uint32_t>(primes[0]);
    spec.k = 0;
    for (std::uint64_t x = q; x > 1; x /= spec.p) ++spec.k;
    return make(std::move(spec));
  }

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t degree() const { return spec_.k; }
  std::uint32_t order() const { return q_; }
  bool is_prime_field() const { return spec_.k == 1; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }

  /// Element with packed index `index` (for prime fields: the residue).
  Elem from_index(std::uint64_t index) const {
    if (index >= q_) throw std::out_of_range("element index " + std::to_string(index) + " outside F_" + std::to_string(q_));
    return Elem{static_cast<std::uint32_t>(index)};
  }

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(spec_.p);
    if (r < 0) r += spec_.p;
    return Elem{static_cast<std::uint32_t>(r)};
  }

  Elem from_coords(std::span<const std::uint32_t> coords) const {
    if (coords.size() != spec_.k) throw std::invalid_argument("expected " + std::to_string(spec_.k) + " coordinates");
    std::uint32_t v = 0;
    for (std::size_t i = coords.size(); i-- > 0;) {
      if (coords[i] >= spec_.p) throw std::out_of_range("coordinate outside [0, p)");
      v = v * spec_.p + coords[i];
    }
    return Elem{v};
  }

  std::vector<std::uint32_t> coords(Elem a) const {
    std::vector<std::uint32_t> out(spec_.k);
    std::uint32_t v = a.v;
    for (auto& c : out) {
      c = v % spec_.p;
      v /= spec_.p;
    }
    return out;
  }

  bool contains(Elem a) const { return a.v < q_; }

  Elem add(Elem a, Elem b) const {
    if (spec_.k == 1) {
      std::uint32_t s = a.v + b.v;
      return Elem{s >= q_ ? s - q_ : s};
    }
    if (spec_.p == 2) return Elem{a.v ^ b.v};
    std::uint32_t out = 0;
    for (std::uint32_t i = 0, x = a.v, y = b.v; i < spec_.k; ++i, x /= spec_.p, y /= spec_.p) {
      std::uint32_t s = x % spec_.p + y % spec_.p;
      if (s >= spec_.p) s -= spec_.p;
      out += s * pow_p_[i];
    }
    return Elem{out};
  }

  Elem neg(Elem a) const {
    if (spec_.k == 1) return Elem{a.v == 0 ? 0 : q_ - a.v};
    if (spec_.p == 2) return a;
    std::uint32_t out = 0;
    for (std::uint32_t i = 0, x = a.v; i < spec_.k; ++i, x /= spec_.p) {
      std::uint32_t c = x % spec_.p;
      out += (c == 0 ? 0 : spec_.p - c) * pow_p_[i];
    }
    return Elem{out};
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return Elem{0};
    if (spec_.k == 1) return Elem{static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % q_)};
    return Elem{exp_[log_[a.v] + log_[b.v]]};
  }

  Elem inv(Elem a) const {
    if (a.v == 0) throw std::domain_error("division by zero in F_" + std::to_string(q_));
    if (spec_.k == 1) return Elem{detail::inv_mod_prime(a.v, q_)};
    return Elem{exp_[(q_ - 1 - log_[a.v]) % (q_ - 1)]};
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    for (; e; e >>= 1) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
    }
    return r;
  }

  /// tr(a) = a + a^p + ... + a^{p^{k-1}}, returned as a residue mod p.
  std::uint32_t trace(Elem a) const { return spec_.k == 1 ? a.v : trace_[a.v]; }

  CharacterValue psi(Elem a) const { return roots_[trace(a)]; }

  /// exp(2 pi i t / p) for a residue t.
  CharacterValue root_of_unity(std::uint32_t t) const { return roots_[t % spec_.p]; }

  /// Formats an element: the residue for prime fields, `[c0 c1 ...]` otherwise.
  std::string format(Elem a) const {
    if (spec_.k == 1) return std::to_string(a.v);
    std::string out = "[";
    auto c = coords(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i]);
    }
    return out + "]";
  }

  /// Inverse of format(); a bare integer is read as the packed index.
  Elem parse(std::string_view text) const {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '[') {
      if (text.back() != ']') throw std::invalid_argument("unterminated field element '" + std::string(text) + "'");
      text = text.substr(1, text.size() - 2);
      std::vector<std::uint32_t> c;
      while (!text.empty()) {
        auto sp = text.find(' ');
        auto tok = text.substr(0, sp);
        if (!tok.empty()) c.push_back(static_cast<std::uint32_t>(detail::parse_u64(tok, "coordinate")));
        if (sp == std::string_view::npos) break;
        text.remove_prefix(sp + 1);
      }
      return from_coords(c);
    }
    return from_index(detail::parse_u64(text, "field element"));
  }

 private:
  explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
    if (!is_prime_u64(spec_.p)) throw std::invalid_argument("p = " + std::to_string(spec_.p) + " is not prime");
    if (spec_.k == 0) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < spec_.k; ++i) {
      q *= spec_.p;
      if (q > kMaxOrder) throw std::invalid_argument("field order exceeds " + std::to_string(kMaxOrder));
    }
    q_ = static_cast<std::uint32_t>(q);
    pow_p_.resize(spec_.k);
    for (std::uint32_t i = 0, v = 1; i < spec_.k; ++i, v *= spec_.p) pow_p_[i] = v;

    if (spec_.k == 1) {
      if (!spec_.modulus.empty() && !(spec_.modulus.size() == 2 && spec_.modulus[1] == 1))
        throw std::invalid_argument("a prime field takes no modulus");
      spec_.modulus.clear();
    } else {
      if (spec_.modulus.empty()) spec_.modulus = detail::default_modulus(spec_.p, spec_.k);
      validate_modulus();
      build_log_tables();
      build_trace_table();
    }
    roots_.resize(spec_.p);
    for (std::uint32_t t = 0; t < spec_.p; ++t) {
      const double angle = 2.0 * std::numbers::pi * t / spec_.p;
      roots_[t] = {std::cos(angle), std::sin(angle)};
    }
    roots_[0] = {1.0, 0.0};
  }

  void validate_modulus() const {
    const auto& m = spec_.modulus;
    if (m.size() != spec_.k + 1 || m.back() != 1)
      throw std::invalid_argument("modulus must be monic of degree " + std::to_string(spec_.k));
    for (auto c : m)
      if (c >= spec_.p) throw std::invalid_argument("modulus coefficient outside [0, p)");
    if (!detail::is_irreducible_prime(m, spec_.p))
      throw std::invalid_argument("modulus " + spec_.to_string() + " is reducible over F_p");
  }

  // Schoolbook product of packed elements, reduced by the modulus.
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t p = spec_.p, k = spec_.k;
    std::vector<std::uint64_t> prod(2 * k - 1, 0);
    std::vector<std::uint32_t> x(k), y(k);
    for (std::uint32_t i = 0; i < k; ++i, a /= p, b /= p) {
      x[i] = a % p;
      y[i] = b % p;
    }
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    for (std::size_t top = prod.size(); top-- > k;) {
      const std::uint64_t c = prod[top];
      if (c == 0) continue;
      for (std::uint32_t i = 0; i <= k; ++i)
        prod[top - k + i] = (prod[top - k + i] + (p - c) * spec_.modulus[i]) % p;
    }
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < k; ++i) out += static_cast<std::uint32_t>(prod[i]) * pow_p_[i];
    return out;
  }

  void build_log_tables() {
    const std::uint32_t n = q_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(n), 0);
    log_.assign(q_, 0);
    for (std::uint32_t g = 2; g < q_; ++g) {
      std::uint32_t x = 1, order = 0;
      do {
        exp_[order++] = x;
        x = mul_slow(x, g);
      } while (x != 1 && order < n);
      if (order == n && x == 1) break;
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      log_[exp_[i]] = i;
      exp_[i + n] = exp_[i];
    }
  }

  void build_trace_table() {
    trace_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      Elem sum{0}, frob{a};
      for (std::uint32_t i = 0; i < spec_.k; ++i) {
        sum = add(sum, frob);
        frob = pow(frob, spec_.p);
      }
      if (sum.v >= spec_.p) throw std::logic_error("trace left the prime subfield");
      trace_[a] = sum.v;
    }
  }

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> pow_p_;
  std::vector<std::uint32_t> exp_, log_, trace_;
  std::vector<CharacterValue> roots_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// An element bound to its field. Mixing values from different fields throws
/// FieldMismatch; use the raw Field/Elem API in hot loops.
class FieldValue {
 public:
  FieldValue(FieldPtr field, Elem e) : field_(std::move(field)), e_(e) {
    if (!field_->contains(e_)) throw std::out_of_range("element outside its field");
  }

  const FieldPtr& field() const { return field_; }
  Elem elem() const { return e_; }

  friend FieldValue operator+(const FieldValue& a, const FieldValue& b) {
    return {a.field_, a.same(b).add(a.e_, b.e_)};
  }
  friend FieldValue operator-(const FieldValue& a, const FieldValue& b) {
    return {a.field_, a.same(b).sub(a.e_, b.e_)};
  }
  friend FieldValue operator*(const FieldValue& a, const FieldValue& b) {
    return {a.field_, a.same(b).mul(a.e_, b.e_)};
  }
  friend FieldValue operator/(const FieldValue& a, const FieldValue& b) {
    return {a.field_, a.same(b).div(a.e_, b.e_)};
  }
  FieldValue pow(std::uint64_t e) const { return {field_, field_->pow(e_, e)}; }
  FieldValue inverse() const { return {field_, field_->inv(e_)}; }

  friend bool operator==(const FieldValue& a, const FieldValue& b) {
    a.same(b);
    return a.e_ == b.e_;
  }

 private:
  const Field& same(const FieldValue& other) const {
    if (field_ != other.field_ && field_->spec() != other.field_->spec())
      throw FieldMismatch("operands from F_" + field_->spec().to_string() + " and F_" +
                          other.field_->spec().to_string());
    return *field_;
  }

  FieldPtr field_;
  Elem e_;
};

}  // namespace ffdigits
