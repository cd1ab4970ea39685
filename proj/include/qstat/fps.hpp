#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qstat/error.hpp"
#include "qstat/ring.hpp"

namespace qstat {

/// Power series truncated after q^order: coefficients of q^0..q^order are stored.
///
/// Binary operations produce a result whose order is the smaller of the two
/// operand orders, so precision is never silently invented.
template <class R>
class series {
public:
  using ring_type = R;
  using traits = ring_traits<R>;

  series() : c_(1, traits::zero()) {}
  explicit series(std::size_t order) : c_(order + 1, traits::zero()) {}
  explicit series(std::vector<R> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(traits::zero());
  }

  static series one(std::size_t order) { return monomial(traits::one(), 0, order); }
  static series monomial(R coeff, std::size_t exponent, std::size_t order) {
    series s(order);
    if (exponent <= order) s.c_[exponent] = std::move(coeff);
    return s;
  }

  static constexpr ring_tag tag() { return traits::tag; }
  std::size_t order() const noexcept { return c_.size() - 1; }
  std::size_t size() const noexcept { return c_.size(); }

  const R& operator[](std::size_t i) const { return c_[i]; }
  R& operator[](std::size_t i) { return c_[i]; }
  std::span<const R> coeffs() const noexcept { return c_; }
  std::span<R> coeffs() noexcept { return c_; }

  series truncated(std::size_t order) const {
    series r(std::vector<R>(c_.begin(), c_.begin() + std::min(order, this->order()) + 1));
    return r;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const R& x) { return traits::is_zero(x); });
  }

  series& operator+=(const series& o) {
    c_.resize(std::min(size(), o.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  series& operator-=(const series& o) {
    c_.resize(std::min(size(), o.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  series& operator*=(const R& k) {
    if (traits::is_zero(k)) {
      std::fill(c_.begin(), c_.end(), traits::zero());
    } else {
      for (auto& x : c_)
        if (!traits::is_zero(x)) x = x * k;
    }
    return *this;
  }

  friend series operator+(series a, const series& b) { return a += b; }
  friend series operator-(series a, const series& b) { return a -= b; }
  friend series operator-(series a) {
    for (auto& x : a.c_) x = traits::zero() - x;
    return a;
  }
  friend series operator*(series a, const R& k) { return a *= k; }
  friend series operator*(const R& k, series a) { return a *= k; }

private:
  std::vector<R> c_;
};

// ---------------------------------------------------------------------------
// Cauchy product kernels

namespace detail {

inline mpz_class lcm_of_denominators(std::span<const rational> s) {
  mpz_class l = 1;
  for (const auto& x : s)
    if (x.value().get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.value().get_den_mpz_t());
  return l;
}

inline std::vector<mpz_class> scaled_integers(std::span<const rational> s, const mpz_class& scale) {
  std::vector<mpz_class> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& v = s[i].value();
    if (sgn(v) == 0) continue;
    out[i] = v.get_num() * (scale / v.get_den());
  }
  return out;
}

/// out[n] += sum_{i+k=n} a[i] b[k] for n < out.size(), skipping zero entries of a.
inline void integer_convolve(std::vector<mpz_class>& out, const std::vector<mpz_class>& a,
                             const std::vector<mpz_class>& b) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n && i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    const std::size_t lim = std::min(b.size(), n - i);
    for (std::size_t k = 0; k < lim; ++k) {
      if (sgn(b[k]) == 0) continue;
      mpz_addmul(out[i + k].get_mpz_t(), a[i].get_mpz_t(), b[k].get_mpz_t());
    }
  }
}

template <class R>
std::vector<R> cauchy(std::span<const R> a, std::span<const R> b, std::size_t order) {
  using T = ring_traits<R>;
  std::vector<R> out(order + 1, T::zero());
  for (std::size_t i = 0; i <= order; ++i) {
    if (T::is_zero(a[i])) continue;
    for (std::size_t k = 0; k + i <= order; ++k) {
      if (T::is_zero(b[k])) continue;
      out[i + k] += a[i] * b[k];
    }
  }
  return out;
}

// Rationals: clear denominators once, convolve over the integers, divide once.
template <>
inline std::vector<rational> cauchy<rational>(std::span<const rational> a,
                                              std::span<const rational> b, std::size_t order) {
  a = a.first(order + 1);
  b = b.first(order + 1);
  const mpz_class da = lcm_of_denominators(a), db = lcm_of_denominators(b);
  std::vector<mpz_class> acc(order + 1);
  integer_convolve(acc, scaled_integers(a, da), scaled_integers(b, db));
  const mpz_class d = da * db;
  std::vector<rational> out(order + 1);
  for (std::size_t i = 0; i <= order; ++i)
    if (sgn(acc[i]) != 0) out[i] = rational(acc[i], d);
  return out;
}

template <>
inline std::vector<cyclo<rational>> cauchy<cyclo<rational>>(std::span<const cyclo<rational>> a,
                                                            std::span<const cyclo<rational>> b,
                                                            std::size_t order) {
  auto split = [order](std::span<const cyclo<rational>> s, mpz_class& den) {
    std::array<std::vector<rational>, 4> parts;
    for (int c = 0; c < 4; ++c) {
      parts[c].resize(order + 1);
      for (std::size_t i = 0; i <= order; ++i) parts[c][i] = s[i].c[c];
    }
    den = 1;
    for (const auto& p : parts) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), lcm_of_denominators(p).get_mpz_t());
    std::array<std::vector<mpz_class>, 4> ints;
    for (int c = 0; c < 4; ++c) ints[c] = scaled_integers(parts[c], den);
    return ints;
  };
  mpz_class da, db;
  const auto ia = split(a, da);
  const auto ib = split(b, db);
  std::array<std::vector<mpz_class>, 7> acc;
  for (auto& v : acc) v.resize(order + 1);
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) integer_convolve(acc[s + t], ia[s], ib[t]);
  const mpz_class d = da * db;
  std::vector<cyclo<rational>> out(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    std::array<rational, 7> deg;
    for (int k = 0; k < 7; ++k)
      if (sgn(acc[k][i]) != 0) deg[k] = rational(acc[k][i], d);
    out[i] = cyclo<rational>::reduce(deg);
  }
  return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Operations

template <class R>
series<R> add(const series<R>& f, const series<R>& g) { return f + g; }

template <class R>
series<R> sub(const series<R>& f, const series<R>& g) { return f - g; }

template <class R>
series<R> scale(const series<R>& f, const R& c) { return f * c; }

template <class R>
series<R> mul(const series<R>& f, const series<R>& g) {
  const std::size_t order = std::min(f.order(), g.order());
  return series<R>(detail::cauchy<R>(f.coeffs(), g.coeffs(), order));
}

template <class R>
series<R> operator*(const series<R>& f, const series<R>& g) { return mul(f, g); }

/// Multiplication by q^k; the order is kept and the tail is dropped.
template <class R>
series<R> shift(const series<R>& f, std::size_t k) {
  series<R> r(f.order());
  for (std::size_t i = 0; i + k <= f.order(); ++i) r[i + k] = f[i];
  return r;
}

template <class R>
series<R> invert(const series<R>& f) {
  using T = ring_traits<R>;
  if (!T::is_unit(f[0])) throw non_unit_constant_term();
  const std::size_t order = f.order();
  const R inv0 = T::inverse(f[0]);
  series<R> g(order);
  g[0] = inv0;
  for (std::size_t n = 1; n <= order; ++n) {
    R acc = T::zero();
    for (std::size_t k = 1; k <= n; ++k) {
      if (T::is_zero(f[k]) || T::is_zero(g[n - k])) continue;
      acc += f[k] * g[n - k];
    }
    g[n] = T::zero() - acc * inv0;
  }
  return g;
}

// Unit constant term +-1 over the rationals: the recurrence stays integral.
template <>
inline series<rational> invert(const series<rational>& f) {
  using T = ring_traits<rational>;
  if (!T::is_unit(f[0])) throw non_unit_constant_term();
  const bool integral = std::all_of(f.coeffs().begin(), f.coeffs().end(),
                                    [](const rational& x) { return x.is_integer(); });
  const std::size_t order = f.order();
  series<rational> g(order);
  if (integral && (f[0] == rational(1L) || f[0] == rational(-1L))) {
    const int s = f[0].sign();
    std::vector<mpz_class> a(order + 1), b(order + 1);
    for (std::size_t i = 0; i <= order; ++i) a[i] = f[i].num();
    b[0] = s;
    for (std::size_t n = 1; n <= order; ++n) {
      mpz_class acc;
      for (std::size_t k = 1; k <= n; ++k)
        if (sgn(a[k]) != 0) mpz_addmul(acc.get_mpz_t(), a[k].get_mpz_t(), b[n - k].get_mpz_t());
      b[n] = s > 0 ? mpz_class(-acc) : acc;
    }
    for (std::size_t i = 0; i <= order; ++i) g[i] = rational(b[i]);
    return g;
  }
  const rational inv0 = T::inverse(f[0]);
  g[0] = inv0;
  for (std::size_t n = 1; n <= order; ++n) {
    rational acc;
    for (std::size_t k = 1; k <= n; ++k)
      if (!f[k].is_zero() && !g[n - k].is_zero()) acc += f[k] * g[n - k];
    g[n] = -(acc * inv0);
  }
  return g;
}

/// Coefficients f[m n + a], reindexed to q^n. The result has order floor((order(f) - a) / m).
template <class R>
series<R> dissect(const series<R>& f, std::size_t a, std::size_t modulus = 5) {
  if (a >= modulus) throw error("dissection residue out of range");
  if (a > f.order()) throw order_too_low("series too short to dissect at residue " + std::to_string(a));
  const std::size_t order = (f.order() - a) / modulus;
  series<R> r(order);
  for (std::size_t n = 0; n <= order; ++n) r[n] = f[modulus * n + a];
  return r;
}

/// f(q^m) truncated at the order of f.
template <class R>
series<R> substitute_power(const series<R>& f, std::size_t m) {
  series<R> r(f.order());
  for (std::size_t n = 0; n * m <= f.order(); ++n) r[n * m] = f[n];
  return r;
}

template <class R>
series<R> substitute_q5(const series<R>& f) { return substitute_power(f, 5); }

/// f(q^m) at exactly the given order; f must be known through q^(order / m).
template <class R>
series<R> substitute_power(const series<R>& f, std::size_t m, std::size_t order) {
  if (f.order() < order / m) {
    throw order_too_low("need q^" + std::to_string(order / m) + " of the series to substitute q^" +
                        std::to_string(m) + " up to q^" + std::to_string(order));
  }
  series<R> r(order);
  for (std::size_t n = 0; n * m <= order; ++n) r[n * m] = f[n];
  return r;
}

/// f(q^m) with the order scaled so that no information is lost.
template <class R>
series<R> inflate(const series<R>& f, std::size_t m) {
  series<R> r(f.order() * m);
  for (std::size_t n = 0; n <= f.order(); ++n) r[n * m] = f[n];
  return r;
}

inline series<gf2> reduce_mod2(const series<rational>& f) {
  series<gf2> r(f.order());
  for (std::size_t i = 0; i <= f.order(); ++i) r[i] = parity(f[i]);
  return r;
}

template <class R>
series<R> power(const series<R>& f, int e) {
  if (e < 0) return power(invert(f), -e);
  series<R> r = series<R>::one(f.order());
  for (int i = 0; i < e; ++i) r = r * f;
  return r;
}

/// Index of the first coefficient in 0..order where f and g differ.
template <class R>
std::optional<std::size_t> first_mismatch(const series<R>& f, const series<R>& g, std::size_t order) {
  if (f.order() < order || g.order() < order) {
    throw order_too_low("comparison at order " + std::to_string(order) + " but operands have orders " +
                        std::to_string(f.order()) + " and " + std::to_string(g.order()));
  }
  for (std::size_t i = 0; i <= order; ++i)
    if (!(f[i] == g[i])) return i;
  return std::nullopt;
}

template <class R>
std::optional<std::size_t> first_mismatch(const series<R>& f, const series<R>& g) {
  return first_mismatch(f, g, std::min(f.order(), g.order()));
}

/// Series equality up to the smaller of the two orders.
template <class R>
bool equal_to_order(const series<R>& f, const series<R>& g) {
  return !first_mismatch(f, g).has_value();
}

/// Rational coefficients of a cyclotomic series; throws non_rational_value otherwise.
template <class R>
series<R> rational_part(const series<cyclo<R>>& f) {
  series<R> r(f.order());
  for (std::size_t i = 0; i <= f.order(); ++i) r[i] = cyclo_to_rational(f[i]);
  return r;
}

/// Embeds a base-ring series into the cyclotomic ring.
template <class R>
series<cyclo<R>> lift(const series<R>& f) {
  series<cyclo<R>> r(f.order());
  for (std::size_t i = 0; i <= f.order(); ++i) r[i] = cyclo<R>(f[i]);
  return r;
}

/// Applies z -> z^k to every coefficient.
template <class R>
series<cyclo<R>> galois(const series<cyclo<R>>& f, int k) {
  series<cyclo<R>> r(f.order());
  for (std::size_t i = 0; i <= f.order(); ++i) r[i] = f[i].galois(k);
  return r;
}

/// Coefficientwise image of a rational series in another ring (1/5 is fine in GF(2)).
template <class R>
series<R> convert(const series<rational>& f) {
  series<R> r(f.order());
  for (std::size_t i = 0; i <= f.order(); ++i) r[i] = ring_traits<R>::from_rational(f[i]);
  return r;
}

template <class R>
std::vector<std::string> sample(const series<R>& f, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i <= f.order() && i < count; ++i) out.push_back(ring_traits<R>::to_string(f[i]));
  return out;
}

} // namespace qstat
