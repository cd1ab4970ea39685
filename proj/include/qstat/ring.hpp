#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "qstat/error.hpp"

namespace qstat {

enum class ring_tag { rational, cyclo, gf2, cyclo_gf2 };

inline std::string_view to_string(ring_tag tag) {
  switch (tag) {
  case ring_tag::rational: return "rational";
  case ring_tag::cyclo: return "cyclo";
  case ring_tag::gf2: return "gf2";
  case ring_tag::cyclo_gf2: return "cyclo_gf2";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// rational

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
class rational {
public:
  rational() = default;
  rational(long n) : v_(n) {}
  rational(long n, long d) : v_(mpz_class(n), mpz_class(d)) {
    if (d == 0) throw error("rational with zero denominator");
    v_.canonicalize();
  }
  rational(const mpz_class& n) : v_(n) {}
  rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
    if (d == 0) throw error("rational with zero denominator");
    v_.canonicalize();
  }
  explicit rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts "p" or "p/q" with optional sign.
  static rational parse(std::string_view s) {
    mpq_class v;
    if (s.empty() || v.set_str(std::string(s), 10) != 0) {
      throw error("malformed rational: '" + std::string(s) + "'");
    }
    if (v.get_den() == 0) throw error("rational with zero denominator");
    v.canonicalize();
    return rational(std::move(v));
  }

  const mpq_class& value() const noexcept { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_integer() const noexcept { return v_.get_den() == 1; }
  int sign() const noexcept { return sgn(v_); }

  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

  rational& operator+=(const rational& o) { v_ += o.v_; return *this; }
  rational& operator-=(const rational& o) { v_ -= o.v_; return *this; }
  rational& operator*=(const rational& o) { v_ *= o.v_; return *this; }
  rational& operator/=(const rational& o) {
    if (o.is_zero()) throw error("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend rational operator+(rational a, const rational& b) { return a += b; }
  friend rational operator-(rational a, const rational& b) { return a -= b; }
  friend rational operator*(rational a, const rational& b) { return a *= b; }
  friend rational operator/(rational a, const rational& b) { return a /= b; }
  friend rational operator-(const rational& a) { return rational(mpq_class(-a.v_)); }

  friend bool operator==(const rational& a, const rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const rational& a, const rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const rational& a, const rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const rational& a, const rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const rational& a, const rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

private:
  mpq_class v_;
};

// ---------------------------------------------------------------------------
// gf2

/// The field with two elements.
struct gf2 {
  std::uint8_t bit = 0;

  constexpr gf2() = default;
  constexpr explicit gf2(bool b) : bit(b ? 1 : 0) {}

  constexpr bool is_zero() const noexcept { return bit == 0; }

  constexpr gf2& operator+=(gf2 o) noexcept { bit ^= o.bit; return *this; }
  constexpr gf2& operator-=(gf2 o) noexcept { bit ^= o.bit; return *this; }
  constexpr gf2& operator*=(gf2 o) noexcept { bit &= o.bit; return *this; }

  friend constexpr gf2 operator+(gf2 a, gf2 b) noexcept { return a += b; }
  friend constexpr gf2 operator-(gf2 a, gf2 b) noexcept { return a -= b; }
  friend constexpr gf2 operator*(gf2 a, gf2 b) noexcept { return a *= b; }
  friend constexpr gf2 operator-(gf2 a) noexcept { return a; }
  friend constexpr bool operator==(gf2 a, gf2 b) noexcept { return a.bit == b.bit; }

  friend std::ostream& operator<<(std::ostream& os, gf2 g) { return os << int(g.bit); }
};

/// Image of an integer-valued rational with odd denominator in GF(2).
inline gf2 parity(const rational& r) {
  if (mpz_even_p(r.value().get_den_mpz_t())) {
    throw non_integral_coefficient("coefficient " + r.str() + " has an even denominator");
  }
  return gf2(mpz_odd_p(r.value().get_num_mpz_t()) != 0);
}

// ---------------------------------------------------------------------------
// cyclo

/// Element c0 + c1 z + c2 z^2 + c3 z^3 of R[z]/(1 + z + z^2 + z^3 + z^4),
/// z a primitive fifth root of unity. z^4 never appears in stored form.
template <class R>
struct cyclo {
  std::array<R, 4> c{};

  cyclo() = default;
  cyclo(R c0) : c{std::move(c0), R{}, R{}, R{}} {}
  cyclo(R c0, R c1, R c2, R c3) : c{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

  static cyclo zeta_power(long k);

  bool is_zero() const {
    for (const auto& x : c)
      if (!(x == R{})) return false;
    return true;
  }
  bool is_scalar() const { return c[1] == R{} && c[2] == R{} && c[3] == R{}; }

  /// Applies the automorphism z -> z^k (k coprime to 5).
  cyclo galois(int k) const;
  /// Product of the four conjugates; lies in R.
  R norm() const;

  cyclo& operator+=(const cyclo& o) {
    for (int i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  cyclo& operator-=(const cyclo& o) {
    for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  cyclo& operator*=(const cyclo& o) { return *this = *this * o; }

  friend cyclo operator+(cyclo a, const cyclo& b) { return a += b; }
  friend cyclo operator-(cyclo a, const cyclo& b) { return a -= b; }
  friend cyclo operator-(const cyclo& a) { return cyclo{} - a; }

  friend cyclo operator*(const cyclo& a, const cyclo& b) {
    std::array<R, 7> d{};
    for (int i = 0; i < 4; ++i) {
      if (a.c[i] == R{}) continue;
      for (int j = 0; j < 4; ++j) d[i + j] += a.c[i] * b.c[j];
    }
    return reduce(d);
  }

  friend bool operator==(const cyclo& a, const cyclo& b) { return a.c == b.c; }

  /// Folds a degree-6 polynomial in z into canonical form: z^4 = -1-z-z^2-z^3, z^5 = 1, z^6 = z.
  static cyclo reduce(std::array<R, 7>& d) {
    cyclo r;
    for (int k = 0; k < 4; ++k) r.c[k] = d[k] - d[4];
    r.c[0] += d[5];
    r.c[1] += d[6];
    return r;
  }
};

template <class R>
cyclo<R> cyclo<R>::zeta_power(long k) {
  const long e = ((k % 5) + 5) % 5;
  cyclo r;
  if (e < 4) {
    r.c[e] = R(1L);
  } else {
    for (auto& x : r.c) x = R{} - R(1L);
  }
  return r;
}

template <class R>
cyclo<R> cyclo<R>::galois(int k) const {
  cyclo r = cyclo(c[0]);
  for (int i = 1; i < 4; ++i) {
    if (c[i] == R{}) continue;
    cyclo term = zeta_power(static_cast<long>(i) * k);
    for (auto& x : term.c) x = x * c[i];
    r += term;
  }
  return r;
}

template <class R>
R cyclo<R>::norm() const {
  cyclo p = *this * galois(2) * galois(3) * galois(4);
  return p.c[0];
}

// Spelled-out names for the basic cyclotomic operations.

template <class R>
cyclo<R> cyclo_mul(const cyclo<R>& a, const cyclo<R>& b) { return a * b; }

inline cyclo<rational> cyclo_power_of_zeta(long k) { return cyclo<rational>::zeta_power(k); }

/// The rational value of a cyclotomic element whose zeta components vanish.
template <class R>
R cyclo_to_rational(const cyclo<R>& a) {
  if (!a.is_scalar()) throw non_rational_value("cyclotomic value has a nonzero zeta component");
  return a.c[0];
}

template <class R>
std::ostream& operator<<(std::ostream& os, const cyclo<R>& a) {
  return os << '(' << a.c[0] << ',' << a.c[1] << ',' << a.c[2] << ',' << a.c[3] << ')';
}

// ---------------------------------------------------------------------------
// ring_traits: the uniform surface the series layer is written against.

template <class R>
struct ring_traits;

template <>
struct ring_traits<rational> {
  static constexpr ring_tag tag = ring_tag::rational;
  static rational zero() { return {}; }
  static rational one() { return 1L; }
  static rational from_int(long n) { return n; }
  static rational from_rational(const rational& r) { return r; }
  static bool is_zero(const rational& r) { return r.is_zero(); }
  static bool is_unit(const rational& r) { return !r.is_zero(); }
  static rational inverse(const rational& r) { return rational(1L) / r; }
  static rational zeta_power(long k) {
    if (k % 5 != 0) throw ring_mismatch("zeta powers require the cyclo ring");
    return 1L;
  }
  static std::string to_string(const rational& r) { return r.str(); }
  static rational parse(std::string_view s) { return rational::parse(s); }
};

template <>
struct ring_traits<gf2> {
  static constexpr ring_tag tag = ring_tag::gf2;
  static gf2 zero() { return gf2{}; }
  static gf2 one() { return gf2(true); }
  static gf2 from_int(long n) { return gf2((n & 1) != 0); }
  static gf2 from_rational(const rational& r) { return parity(r); }
  static bool is_zero(gf2 g) { return g.is_zero(); }
  static bool is_unit(gf2 g) { return !g.is_zero(); }
  static gf2 inverse(gf2 g) {
    if (g.is_zero()) throw error("gf2 division by zero");
    return g;
  }
  static gf2 zeta_power(long k) {
    if (k % 5 != 0) throw ring_mismatch("zeta powers require the cyclo ring");
    return one();
  }
  static std::string to_string(gf2 g) { return g.bit ? "1" : "0"; }
  static gf2 parse(std::string_view s) {
    if (s == "0") return gf2{};
    if (s == "1") return gf2(true);
    return parity(rational::parse(s));
  }
};

template <class R>
struct ring_traits<cyclo<R>> {
  using base = ring_traits<R>;
  static constexpr ring_tag tag =
      base::tag == ring_tag::gf2 ? ring_tag::cyclo_gf2 : ring_tag::cyclo;

  static cyclo<R> zero() { return {}; }
  static cyclo<R> one() { return cyclo<R>(base::one()); }
  static cyclo<R> from_int(long n) { return cyclo<R>(base::from_int(n)); }
  static cyclo<R> from_rational(const rational& r) { return cyclo<R>(base::from_rational(r)); }
  static bool is_zero(const cyclo<R>& a) { return a.is_zero(); }
  static bool is_unit(const cyclo<R>& a) { return !base::is_zero(a.norm()); }
  static cyclo<R> inverse(const cyclo<R>& a) {
    const R n = a.norm();
    if (base::is_zero(n)) throw error("cyclotomic element is not invertible");
    cyclo<R> r = a.galois(2) * a.galois(3) * a.galois(4);
    const R inv = base::inverse(n);
    for (auto& x : r.c) x = x * inv;
    return r;
  }
  static cyclo<R> zeta_power(long k) { return cyclo<R>::zeta_power(k); }
  static std::string to_string(const cyclo<R>& a) {
    std::string s = "(";
    for (int i = 0; i < 4; ++i) {
      if (i) s += ',';
      s += base::to_string(a.c[i]);
    }
    return s + ')';
  }
  /// Accepts "(c0,c1,c2,c3)" or a bare base-ring scalar.
  static cyclo<R> parse(std::string_view s) {
    if (s.empty() || s.front() != '(') return cyclo<R>(base::parse(s));
    if (s.back() != ')') throw error("malformed cyclotomic value: '" + std::string(s) + "'");
    s = s.substr(1, s.size() - 2);
    cyclo<R> r;
    for (int i = 0; i < 4; ++i) {
      const auto comma = s.find(',');
      if ((i < 3) == (comma == std::string_view::npos)) {
        throw error("cyclotomic value needs four components");
      }
      r.c[i] = base::parse(s.substr(0, comma));
      s = i < 3 ? s.substr(comma + 1) : std::string_view{};
    }
    return r;
  }
};

template <class R>
concept coefficient_ring = requires { ring_traits<R>::tag; };

} // namespace qstat
