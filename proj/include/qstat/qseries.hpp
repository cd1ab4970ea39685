#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qstat/error.hpp"
#include "qstat/fps.hpp"
#include "qstat/ring.hpp"

namespace qstat {

// ---------------------------------------------------------------------------
// Pochhammer products

/// (z^zeta_pow q^a; q^base)_inf raised to `power` (negative powers divide).
struct poch_factor {
  long a = 1;
  long base = 1;
  long zeta_pow = 0;
  int power = 1;
};

using poch_spec = std::vector<poch_factor>;

/// Shorthand for the common (q^a; q^base)_inf^power.
inline poch_factor poch(long a, long base, int power = 1) { return {a, base, 0, power}; }

namespace detail {

template <class R>
void check_factor(const poch_factor& f) {
  if (f.base < 1) throw error("pochhammer base exponent must be at least 1");
  if (f.a < 1) throw error("pochhammer argument exponent must be at least 1");
  if (f.zeta_pow % 5 != 0 && ring_traits<R>::tag != ring_tag::cyclo &&
      ring_traits<R>::tag != ring_tag::cyclo_gf2) {
    throw ring_mismatch("pochhammer factor with a zeta power needs the cyclo ring");
  }
}

/// g <- g * (1 - u q^e)^sign truncated; sign < 0 divides.
template <class R>
void apply_binomial(std::vector<R>& g, const R& u, std::size_t e, int sign) {
  using T = ring_traits<R>;
  const std::size_t order = g.size() - 1;
  if (e > order) return;
  const bool unit_one = u == T::one();
  if (sign > 0) {
    for (std::size_t m = order; m >= e; --m) {
      if (!T::is_zero(g[m - e])) g[m] -= unit_one ? g[m - e] : u * g[m - e];
      if (m == e) break;
    }
  } else {
    for (std::size_t m = e; m <= order; ++m)
      if (!T::is_zero(g[m - e])) g[m] += unit_one ? g[m - e] : u * g[m - e];
  }
}

inline void apply_binomial_int(std::vector<mpz_class>& g, std::size_t e, int sign) {
  const std::size_t order = g.size() - 1;
  if (e > order) return;
  if (sign > 0) {
    for (std::size_t m = order; m >= e; --m) {
      if (sgn(g[m - e]) != 0) g[m] -= g[m - e];
      if (m == e) break;
    }
  } else {
    for (std::size_t m = e; m <= order; ++m)
      if (sgn(g[m - e]) != 0) g[m] += g[m - e];
  }
}

} // namespace detail

/// Truncated product of the factors in `spec`. Only factors 1 - u q^e with e <= order
/// contribute, so the infinite product becomes finite.
template <class R>
series<R> pochhammer(std::span<const poch_factor> spec, std::size_t order) {
  using T = ring_traits<R>;
  std::vector<R> g(order + 1, T::zero());
  g[0] = T::one();
  for (const auto& f : spec) {
    detail::check_factor<R>(f);
    const R u = T::zeta_power(f.zeta_pow);
    const int sign = f.power < 0 ? -1 : 1;
    for (int rep = 0; rep < std::abs(f.power); ++rep)
      for (std::size_t e = f.a; e <= order; e += f.base) detail::apply_binomial(g, u, e, sign);
  }
  return series<R>(std::move(g));
}

// Over the rationals every factor has u = 1, so the work stays in the integers.
template <>
inline series<rational> pochhammer<rational>(std::span<const poch_factor> spec, std::size_t order) {
  std::vector<mpz_class> g(order + 1);
  g[0] = 1;
  for (const auto& f : spec) {
    detail::check_factor<rational>(f);
    const int sign = f.power < 0 ? -1 : 1;
    for (int rep = 0; rep < std::abs(f.power); ++rep)
      for (std::size_t e = f.a; e <= order; e += f.base) detail::apply_binomial_int(g, e, sign);
  }
  series<rational> s(order);
  for (std::size_t i = 0; i <= order; ++i)
    if (sgn(g[i]) != 0) s[i] = rational(g[i]);
  return s;
}

template <class R>
series<R> pochhammer(std::initializer_list<poch_factor> spec, std::size_t order) {
  return pochhammer<R>(std::span<const poch_factor>(spec.begin(), spec.size()), order);
}

/// numerators / denominators, each a product of Pochhammer factors.
template <class R>
series<R> product_quotient(std::span<const poch_factor> numerators,
                           std::span<const poch_factor> denominators, std::size_t order) {
  poch_spec all(numerators.begin(), numerators.end());
  for (auto f : denominators) {
    f.power = -f.power;
    all.push_back(f);
  }
  return pochhammer<R>(std::span<const poch_factor>(all), order);
}

template <class R>
series<R> product_quotient(std::initializer_list<poch_factor> numerators,
                           std::initializer_list<poch_factor> denominators, std::size_t order) {
  return product_quotient<R>(std::span<const poch_factor>(numerators.begin(), numerators.size()),
                             std::span<const poch_factor>(denominators.begin(), denominators.size()),
                             order);
}

// ---------------------------------------------------------------------------
// Garvan's four series

enum class garvan { A, B, C, D };

inline char name_of(garvan g) { return "ABCD"[static_cast<int>(g)]; }

template <class R>
series<R> named_series(garvan name, std::size_t order) {
  switch (name) {
  case garvan::A: return product_quotient<R>({poch(2, 5), poch(3, 5), poch(5, 5)}, {poch(1, 5, 2), poch(4, 5, 2)}, order);
  case garvan::B: return product_quotient<R>({poch(5, 5)}, {poch(1, 5), poch(4, 5)}, order);
  case garvan::C: return product_quotient<R>({poch(5, 5)}, {poch(2, 5), poch(3, 5)}, order);
  case garvan::D: return product_quotient<R>({poch(1, 5), poch(4, 5), poch(5, 5)}, {poch(2, 5, 2), poch(3, 5, 2)}, order);
  }
  throw error("unknown Garvan series");
}

/// A, B, C, D in that order.
template <class R>
using garvan_set = std::array<series<R>, 4>;

template <class R>
garvan_set<R> garvan_series(std::size_t order) {
  return {named_series<R>(garvan::A, order), named_series<R>(garvan::B, order),
          named_series<R>(garvan::C, order), named_series<R>(garvan::D, order)};
}

/// Replaceable source of the rational Garvan series (tests inject faults through it).
using garvan_builder = std::function<series<rational>(garvan, std::size_t)>;

inline garvan_builder default_garvan_builder() {
  return [](garvan g, std::size_t order) { return named_series<rational>(g, order); };
}

inline garvan_set<rational> garvan_series(const garvan_builder& build, std::size_t order) {
  return {build(garvan::A, order), build(garvan::B, order), build(garvan::C, order), build(garvan::D, order)};
}

// ---------------------------------------------------------------------------
// Lambert sums

/// sum_{n>=0} q^(slope n + offset) / (1 - q^(step n + den_residue)), expanded as
/// geometric series; only exponents <= order are generated.
template <class R>
series<R> lambert_one_sided(std::size_t slope, std::size_t offset, std::size_t den_residue,
                            std::size_t order, std::size_t step = 5) {
  if (slope < 1) throw error("lambert numerator slope must be at least 1");
  if (den_residue < 1) throw error("lambert denominator residue must be at least 1");
  using T = ring_traits<R>;
  series<R> s(order);
  const R one = T::one();
  for (std::size_t n = 0; slope * n + offset <= order; ++n) {
    const std::size_t d = step * n + den_residue;
    for (std::size_t e = slope * n + offset; e <= order; e += d) s[e] += one;
  }
  return s;
}

/// (r, s, t) of the two-sided Lambert formula: 1 <= r, s <= 4, 0 <= t <= 4.
struct lambert_spec {
  int r = 1;
  int s = 1;
  int t = 0;

  void validate() const {
    if (r < 1 || r > 4 || s < 1 || s > 4 || t < 0 || t > 4) {
      throw error("lambert (r,s,t) out of range: (" + std::to_string(r) + "," + std::to_string(s) + "," +
                  std::to_string(t) + ")");
    }
  }
  bool degenerate() const { return (r + s) % 5 == 0; }

  /// Power of q both sides are multiplied by so that no negative exponent appears.
  std::size_t shift() const { return static_cast<std::size_t>(std::max(0, r + s - 5 - t)); }
};

/// sum q^(rn+t)/(1-q^(5n+s)) - sum q^((5-r)n+5+t-r-s)/(1-q^(5n+5-s)), times q^shift.
template <class R>
series<R> lambert_master_lhs(lambert_spec spec, std::size_t order) {
  spec.validate();
  const std::size_t e = spec.shift();
  const auto first = lambert_one_sided<R>(spec.r, spec.t + e, spec.s, order);
  const long second_offset = 5L + spec.t - spec.r - spec.s + static_cast<long>(e);
  const auto second = lambert_one_sided<R>(5 - spec.r, static_cast<std::size_t>(second_offset), 5 - spec.s, order);
  return first - second;
}

namespace detail {

/// (q^a, q^(5-a); q^5)_inf for 1 <= a <= 4.
inline poch_spec theta_pair(int a, int power = 1) { return {poch(a, 5, power), poch(5 - a, 5, power)}; }

} // namespace detail

/// q^t (q^(r+s), q^(5-r-s), q^5, q^5; q^5) / (q^r, q^s, q^(5-r), q^(5-s); q^5), times q^shift.
///
/// When r + s = 5 + k the pair (q^(5+k), q^(-k); q^5) equals -q^(-k) (q^k, q^(5-k); q^5).
template <class R>
series<R> lambert_product_side(lambert_spec spec, std::size_t order) {
  spec.validate();
  if (spec.degenerate()) {
    throw degenerate_product("product side undefined for r + s = 5 (r=" + std::to_string(spec.r) +
                             ", s=" + std::to_string(spec.s) + ")");
  }
  const int sum = spec.r + spec.s;
  const int k = sum > 5 ? sum - 5 : 0;
  poch_spec num = detail::theta_pair(sum > 5 ? k : sum);
  num.push_back(poch(5, 5, 2));
  poch_spec den = detail::theta_pair(spec.r);
  for (const auto& f : detail::theta_pair(spec.s)) den.push_back(f);
  auto body = product_quotient<R>(num, den, order);
  const std::size_t exponent = spec.t + spec.shift() - static_cast<std::size_t>(k);
  auto result = shift(body, exponent);
  if (k > 0) result = -result;
  return result;
}

template <class R>
struct lambert_pair {
  series<R> lhs;
  series<R> rhs;
  std::size_t shift = 0;
};

template <class R>
lambert_pair<R> lambert_master(lambert_spec spec, std::size_t order) {
  spec.validate();
  if (spec.degenerate()) {
    throw degenerate_product("two-sided Lambert product is degenerate for r + s = 5");
  }
  return {lambert_master_lhs<R>(spec, order), lambert_product_side<R>(spec, order), spec.shift()};
}

/// sum_{n in Z} q^(n i) / (1 - q^(5n + j)) through its product form, times q^max(0, i+j-5).
template <class R>
series<R> bilateral_lambert(int i, int j, std::size_t order) {
  return lambert_product_side<R>({i, j, 0}, order);
}

// ---------------------------------------------------------------------------
// R_i, S, T

/// R_i(q) = sum_{n>=1} q^(n i) / (1 - q^(5n)), 1 <= i <= 5.
template <class R>
series<R> r_series(int i, std::size_t order) {
  if (i < 1 || i > 5) throw error("R_i needs 1 <= i <= 5");
  using T = ring_traits<R>;
  series<R> s(order);
  const R one = T::one();
  for (std::size_t n = 1; n * i <= order; ++n)
    for (std::size_t e = n * i; e <= order; e += 5 * n) s[e] += one;
  return s;
}

/// S(q) = sum_{n>=1} q^(n+1) / (1 - q^(n+1)).
template <class R>
series<R> s_series(std::size_t order) {
  using T = ring_traits<R>;
  series<R> s(order);
  const R one = T::one();
  for (std::size_t d = 2; d <= order; ++d)
    for (std::size_t e = d; e <= order; e += d) s[e] += one;
  return s;
}

/// T(q) = q / (5 (1 - q) (q;q)_inf).
template <class R>
series<R> t_series(std::size_t order) {
  auto body = pochhammer<R>({poch(1, 1, -1)}, order);
  for (std::size_t n = 1; n <= order; ++n) body[n] += body[n - 1];
  return shift(body, 1) * ring_traits<R>::from_rational(rational(1, 5));
}

// ---------------------------------------------------------------------------
// Lambert sums over 1 - q^(5n) with character weights

/// Variant 1: R1 + R2 - R3 - R4. Variant 2: R1 - 2 R2 + 2 R3 - R4.
template <class R>
series<R> lemma23_lhs(int variant, std::size_t order) {
  using T = ring_traits<R>;
  const std::array<long, 4> w = variant == 1 ? std::array<long, 4>{1, 1, -1, -1}
                                             : std::array<long, 4>{1, -2, 2, -1};
  if (variant != 1 && variant != 2) throw error("lemma23 variant must be 1 or 2");
  series<R> s(order);
  for (int i = 1; i <= 4; ++i) s += r_series<R>(i, order) * T::from_int(w[i - 1]);
  return s;
}

/// The closed forms: variant 1 is 2/5 X - q/5 Y - 2/5, variant 2 is 1/10 X + 7q/10 Y - 1/10 with
/// X = (q^2,q^3,q^5;q^5)^2/(q,q^4;q^5)^3 and Y = (q,q^4,q^5;q^5)^2/(q^2,q^3;q^5)^3.
template <class R>
series<R> lemma23_rhs(int variant, std::size_t order) {
  using T = ring_traits<R>;
  if (variant != 1 && variant != 2) throw error("lemma23 variant must be 1 or 2");
  const auto x = product_quotient<R>({poch(2, 5, 2), poch(3, 5, 2), poch(5, 5, 2)}, {poch(1, 5, 3), poch(4, 5, 3)}, order);
  const auto y = product_quotient<R>({poch(1, 5, 2), poch(4, 5, 2), poch(5, 5, 2)}, {poch(2, 5, 3), poch(3, 5, 3)}, order);
  const rational cx = variant == 1 ? rational(2, 5) : rational(1, 10);
  const rational cy = variant == 1 ? rational(-1, 5) : rational(7, 10);
  const rational c0 = variant == 1 ? rational(-2, 5) : rational(-1, 10);
  return x * T::from_rational(cx) + shift(y, 1) * T::from_rational(cy) +
         series<R>::monomial(T::from_rational(c0), 0, order);
}

// ---------------------------------------------------------------------------
// The crank quotient (q;q) / ((z q;q) (q/z;q)) at z = zeta^j

/// Direct expansion in the cyclotomic ring.
template <class R>
series<cyclo<R>> crank_quotient_direct(int j, std::size_t order) {
  return product_quotient<cyclo<R>>({poch(1, 1)}, {poch_factor{1, 1, j, 1}, poch_factor{1, 1, -j, 1}}, order);
}

/// A(q^5) - (z+z^-1)^2 q B(q^5) + (z^2+z^-2) q^2 C(q^5) - (z+z^-1) q^3 D(q^5), z = zeta^j.
/// The right side is symmetric under z -> 1/z, so j = 3, 4 reuse j = 2, 1.
/// `abcd` must have order >= order / 5.
template <class R>
series<cyclo<R>> crank_quotient_garvan(int j, std::size_t order, const garvan_set<R>& abcd) {
  using C = cyclo<R>;
  const C w1 = C::zeta_power(j) + C::zeta_power(-j);
  const C w2 = C::zeta_power(2 * j) + C::zeta_power(-2 * j);
  auto lifted = [order](const series<R>& f) { return lift(substitute_power(f, 5, order)); };
  series<C> r = lifted(abcd[0]);
  r -= shift(lifted(abcd[1]), 1) * (w1 * w1);
  r += shift(lifted(abcd[2]), 2) * w2;
  r -= shift(lifted(abcd[3]), 3) * w1;
  return r;
}

enum class crank_route { garvan, direct };

/// R_5 + sum_{i=1..4} zeta^(-i j) R_i - S, the Lambert factor of the j-th filter term.
template <class R>
series<cyclo<R>> crank_lambert_factor(int j, std::size_t order) {
  using C = cyclo<R>;
  series<C> inner = lift(r_series<R>(5, order) - s_series<R>(order));
  for (int i = 1; i <= 4; ++i) inner += lift(r_series<R>(i, order)) * C::zeta_power(-i * j);
  return inner;
}

/// j-th summand of the roots-of-unity filter for the ones-weighted crank generating function:
/// crank quotient at zeta^j times (sum zeta^-j q^n / (1 - zeta^-j q^n) - S(q)).
template <class R>
series<cyclo<R>> weighted_crank_component(int j, std::size_t order, const garvan_set<R>& abcd) {
  if (j < 1 || j > 4) throw error("weighted crank component needs 1 <= j <= 4");
  return crank_quotient_garvan<R>(j, order, abcd) * crank_lambert_factor<R>(j, order);
}

template <class R>
series<cyclo<R>> weighted_crank_component(int j, std::size_t order, crank_route route = crank_route::garvan) {
  if (j < 1 || j > 4) throw error("weighted crank component needs 1 <= j <= 4");
  if (route == crank_route::direct) return crank_quotient_direct<R>(j, order) * crank_lambert_factor<R>(j, order);
  return weighted_crank_component<R>(j, order, garvan_series<R>(order / 5));
}

/// Generating functions of M_omega(b, 5, n), b = 0..4, through the fifth-root-of-unity filter
/// T(q) + 1/5 sum_{j=1..4} zeta^(-b j) * component_j. Throws non_rational_value if the filter
/// leaves a zeta component behind.
template <class R>
std::array<series<R>, 5> momega_filter(std::size_t order, const garvan_set<R>& abcd) {
  using C = cyclo<R>;
  std::array<series<C>, 4> comp;
  for (int j = 1; j <= 4; ++j) comp[j - 1] = weighted_crank_component<R>(j, order, abcd);
  const auto t = t_series<R>(order);
  const C fifth = ring_traits<C>::from_rational(rational(1, 5));
  std::array<series<R>, 5> out;
  for (int b = 0; b < 5; ++b) {
    series<C> acc(order);
    for (int j = 1; j <= 4; ++j) acc += comp[j - 1] * C::zeta_power(-b * j);
    acc *= fifth;
    out[b] = rational_part(acc) + t;
  }
  return out;
}

template <class R>
std::array<series<R>, 5> momega_filter(std::size_t order) {
  return momega_filter<R>(order, garvan_series<R>(order / 5));
}

/// Coefficients of R_1..R_5, S inside the q^3 D, q^2 C, q B, A blocks (each block carries 1/5).
using momega_block_table = std::array<std::array<std::array<int, 6>, 4>, 5>;

inline const momega_block_table& momega_blocks() {
  // [b][block: D, C, B, A][R1, R2, R3, R4, R5, S]
  static const momega_block_table table = {{
      {{{-3, 2, 2, -3, 2, -2}, {-2, 3, 3, -2, -2, 2}, {4, -1, -1, 4, -6, 6}, {-1, -1, -1, -1, 4, -4}}},
      {{{2, 2, -3, 2, -3, 3}, {3, 3, -2, -2, -2, 2}, {-1, -1, 4, -6, 4, -4}, {-1, -1, -1, 4, -1, 1}}},
      {{{2, -3, 2, -3, 2, -2}, {3, -2, -2, -2, 3, -3}, {-1, 4, -6, 4, -1, 1}, {-1, -1, 4, -1, -1, 1}}},
      {{{-3, 2, -3, 2, 2, -2}, {-2, -2, -2, 3, 3, -3}, {4, -6, 4, -1, -1, 1}, {-1, 4, -1, -1, -1, 1}}},
      {{{2, -3, 2, 2, -3, 3}, {-2, -2, 3, 3, -2, 2}, {-6, 4, -1, -1, 4, -4}, {4, -1, -1, -1, -1, 1}}},
  }};
  return table;
}

/// The five M_omega generating functions written out over A, B, C, D, R_1..R_5, S and T.
template <class R>
std::array<series<R>, 5> momega_decomposition(std::size_t order, const garvan_set<R>& abcd) {
  using T = ring_traits<R>;
  std::array<series<R>, 6> lam;
  for (int i = 1; i <= 5; ++i) lam[i - 1] = r_series<R>(i, order);
  lam[5] = s_series<R>(order);
  // block k multiplies q^(3-k) X(q^5) with X = D, C, B, A
  std::array<series<R>, 4> outer;
  for (int k = 0; k < 4; ++k) {
    outer[k] = shift(substitute_power(abcd[3 - k], 5, order), static_cast<std::size_t>(3 - k));
  }
  const auto t = t_series<R>(order);
  const R fifth = T::from_rational(rational(1, 5));
  std::array<series<R>, 5> out;
  for (int b = 0; b < 5; ++b) {
    series<R> acc(order);
    for (int k = 0; k < 4; ++k) {
      series<R> comb(order);
      for (int i = 0; i < 6; ++i) {
        const int w = momega_blocks()[b][k][i];
        if (w != 0) comb += lam[i] * T::from_int(w);
      }
      acc += outer[k] * comb;
    }
    out[b] = acc * fifth + t;
  }
  return out;
}

} // namespace qstat
