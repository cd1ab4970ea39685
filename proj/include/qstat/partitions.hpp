#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "qstat/error.hpp"
#include "qstat/fps.hpp"
#include "qstat/qseries.hpp"
#include "qstat/ring.hpp"

namespace qstat {

inline constexpr std::size_t default_enum_cap = 60;

/// One partition together with the statistics the rank and crank are built from.
struct partition_record {
  std::vector<int> parts; // weakly decreasing
  int n = 0;
  int largest = 0;
  int count = 0;
  int rank = 0;
  int ones = 0;
  int mu = 0; // parts larger than `ones`
  int crank = 0;
};

/// Fills every derived statistic from `parts`, which must be weakly decreasing and positive.
/// crank = largest part when there are no ones, otherwise mu - ones; no special case at n = 1.
inline partition_record make_record(std::vector<int> parts) {
  partition_record r;
  r.parts = std::move(parts);
  r.count = static_cast<int>(r.parts.size());
  r.largest = r.parts.empty() ? 0 : r.parts.front();
  for (int p : r.parts) {
    if (p < 1) throw error("partition parts must be positive");
    r.n += p;
    if (p == 1) ++r.ones;
  }
  for (std::size_t i = 1; i < r.parts.size(); ++i)
    if (r.parts[i] > r.parts[i - 1]) throw error("partition parts must be weakly decreasing");
  for (int p : r.parts)
    if (p > r.ones) ++r.mu;
  r.rank = r.largest - r.count;
  r.crank = r.ones == 0 ? r.largest : r.mu - r.ones;
  return r;
}

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int>& buf,
                           const std::function<void(const partition_record&)>& visit) {
  if (remaining == 0) {
    visit(make_record(buf));
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    buf.push_back(p);
    partitions_rec(remaining - p, p, buf, visit);
    buf.pop_back();
  }
}

} // namespace detail

/// Visits every partition of n once, in reverse lexicographic order. n = 0 yields the
/// empty partition (rank 0, crank 0).
inline void for_each_partition(int n, const std::function<void(const partition_record&)>& visit) {
  if (n < 0) throw error("cannot partition a negative integer");
  std::vector<int> buf;
  detail::partitions_rec(n, n, buf, visit);
}

inline std::vector<partition_record> enumerate(int n) {
  std::vector<partition_record> out;
  for_each_partition(n, [&](const partition_record& r) { out.push_back(r); });
  return out;
}

/// Nonnegative representative of v mod j.
inline int residue(long v, int j) { return static_cast<int>(((v % j) + j) % j); }

/// p(n), N(m,j,n), NT(m,j,n), M_omega(m,j,n) for 0 <= n <= max_n and 0 <= m < j.
/// Tables are indexed [m][n].
struct statistics_table {
  int j = 5;
  std::size_t max_n = 0;
  std::vector<mpz_class> p;
  std::vector<std::vector<mpz_class>> rank_count;
  std::vector<std::vector<mpz_class>> nt;
  std::vector<std::vector<mpz_class>> momega;
  bool has_momega = true;

  statistics_table() = default;
  statistics_table(int modulus, std::size_t n)
      : j(modulus), max_n(n), p(n + 1), rank_count(modulus, std::vector<mpz_class>(n + 1)),
        nt(modulus, std::vector<mpz_class>(n + 1)), momega(modulus, std::vector<mpz_class>(n + 1)) {}

  friend bool operator==(const statistics_table&, const statistics_table&) = default;
};

/// Builds the table by enumerating every partition of every n <= max_n.
inline statistics_table stat_table(std::size_t max_n, int j, std::size_t cap = default_enum_cap) {
  if (j < 1) throw error("modulus must be positive");
  if (max_n > cap) throw budget_exceeded("enumeration", max_n, cap);
  statistics_table t(j, max_n);
  for (std::size_t n = 0; n <= max_n; ++n) {
    for_each_partition(static_cast<int>(n), [&](const partition_record& r) {
      t.p[n] += 1;
      const int rm = residue(r.rank, j);
      t.rank_count[rm][n] += 1;
      t.nt[rm][n] += r.count;
      t.momega[residue(r.crank, j)][n] += r.ones;
    });
  }
  return t;
}

/// Row m of a table as a rational series of order max_n.
inline series<rational> table_series(const std::vector<mpz_class>& row) {
  series<rational> s(row.size() - 1);
  for (std::size_t n = 0; n < row.size(); ++n) s[n] = rational(row[n]);
  return s;
}

// ---------------------------------------------------------------------------
// Rank statistics without enumeration

namespace detail {

template <class R>
struct dp_scalar {
  using type = R;
  static type from(long v) { return ring_traits<R>::from_int(v); }
  static R out(const type& v) { return v; }
  static bool is_zero(const type& v) { return ring_traits<R>::is_zero(v); }
};

template <>
struct dp_scalar<rational> {
  using type = mpz_class;
  static type from(long v) { return v; }
  static rational out(const type& v) { return rational(v); }
  static bool is_zero(const type& v) { return sgn(v) == 0; }
};

} // namespace detail

/// N(m,j,n) and NT(m,j,n) series for every residue m, order max_n.
template <class R>
struct rank_series {
  std::vector<series<R>> count;
  std::vector<series<R>> nt;
};

/// Rank statistics from the partition recurrence
///   B_L(n,k) = B_{L-1}(n,k) + B_L(n-L,k-1)
/// (partitions of n into exactly k parts, each <= L), with k folded into its residue mod j.
/// Two channels are carried per residue class: the count C and the first moment
/// W = sum k B. Partitions with largest part exactly L and k parts number B_L(n-L,k-1);
/// they add to residue (L-k) mod j the counts C and the part totals W + C.
template <class R>
rank_series<R> rank_dp_series(int j, std::size_t max_n) {
  if (j < 1) throw error("modulus must be positive");
  using S = detail::dp_scalar<R>;
  using V = typename S::type;
  const std::size_t width = static_cast<std::size_t>(j);
  const std::size_t rows = max_n + 1;
  std::vector<V> c(rows * width, S::from(0)), w(rows * width, S::from(0));
  std::vector<V> count(width * rows, S::from(0)), nt(width * rows, S::from(0));
  c[0] = S::from(1);
  count[0] = S::from(1); // the empty partition: rank 0, no parts
  for (std::size_t L = 1; L <= max_n; ++L) {
    for (std::size_t n = L; n <= max_n; ++n) {
      for (std::size_t r = 0; r < width; ++r) {
        const std::size_t rp = (r + width - 1) % width;
        const V& cc = c[(n - L) * width + rp];
        const V& ww = w[(n - L) * width + rp];
        if (S::is_zero(cc) && S::is_zero(ww)) continue;
        const std::size_t m = static_cast<std::size_t>(residue(static_cast<long>(L) - static_cast<long>(r), j));
        const V parts = ww + cc;
        count[m * rows + n] += cc;
        nt[m * rows + n] += parts;
        c[n * width + r] += cc;
        w[n * width + r] += parts;
      }
    }
  }
  rank_series<R> out;
  for (std::size_t m = 0; m < width; ++m) {
    series<R> cs(max_n), ns(max_n);
    for (std::size_t n = 0; n <= max_n; ++n) {
      cs[n] = S::out(count[m * rows + n]);
      ns[n] = S::out(nt[m * rows + n]);
    }
    out.count.push_back(std::move(cs));
    out.nt.push_back(std::move(ns));
  }
  return out;
}

/// sum_n NT(m,j,n) q^n for each residue m.
template <class R = rational>
std::vector<series<R>> nt_dp_series(int j, std::size_t max_n) {
  if (max_n < 1) throw error("nt_dp_series needs max_n >= 1");
  return rank_dp_series<R>(j, max_n).nt;
}

/// sum_n M_omega(b,5,n) q^n for b = 0..4 from the roots-of-unity filter. Every coefficient
/// must come out a nonnegative integer; anything else is a pipeline bug and throws.
inline std::array<series<rational>, 5> momega_gf_series(std::size_t max_n,
                                                        const garvan_set<rational>& abcd) {
  auto out = momega_filter<rational>(max_n, abcd);
  for (int b = 0; b < 5; ++b) {
    for (std::size_t n = 0; n <= max_n; ++n) {
      const auto& v = out[b][n];
      if (!v.is_integer() || v.sign() < 0) {
        throw non_integral_coefficient("M_omega(" + std::to_string(b) + ",5," + std::to_string(n) +
                                       ") came out as " + v.str());
      }
    }
  }
  return out;
}

inline std::array<series<rational>, 5> momega_gf_series(std::size_t max_n) {
  return momega_gf_series(max_n, garvan_series<rational>(max_n / 5));
}

/// Table from the non-enumerative routes: the rank side from rank_dp_series and,
/// for j = 5, M_omega from momega_gf_series.
inline statistics_table dp_stat_table(std::size_t max_n, int j) {
  statistics_table t(j, max_n);
  const auto rs = rank_dp_series<rational>(j, max_n);
  for (int m = 0; m < j; ++m) {
    for (std::size_t n = 0; n <= max_n; ++n) {
      t.rank_count[m][n] = rs.count[m][n].num();
      t.nt[m][n] = rs.nt[m][n].num();
      t.p[n] += t.rank_count[m][n];
    }
  }
  if (j == 5) {
    const auto mo = momega_gf_series(max_n);
    for (int m = 0; m < 5; ++m)
      for (std::size_t n = 0; n <= max_n; ++n) t.momega[m][n] = mo[m][n].num();
  } else {
    t.has_momega = false;
    t.momega.assign(j, std::vector<mpz_class>(max_n + 1));
  }
  return t;
}

} // namespace qstat
