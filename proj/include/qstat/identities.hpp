#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qstat/error.hpp"
#include "qstat/fps.hpp"
#include "qstat/partitions.hpp"
#include "qstat/qseries.hpp"
#include "qstat/ring.hpp"

namespace qstat {

/// Outcome of one registry check.
struct identity_report {
  std::string id;
  std::size_t order = 0;
  bool passed = false;
  std::optional<std::size_t> first_mismatch;
  std::vector<std::string> lhs_sample;
  std::vector<std::string> rhs_sample;
  std::chrono::duration<double> elapsed{};
  /// Name of the failing comparison, or a summary of what was compared.
  std::string detail;
};

struct check_options {
  std::size_t order = 300;
  /// Largest n handed to the enumeration oracle.
  std::size_t oracle_depth = 45;
  std::uint64_t seed = 20240601;
  std::size_t random_instances = 20;
  garvan_builder garvan = default_garvan_builder();
};

/// Shared, lazily built series for one verification run.
class check_context {
public:
  explicit check_context(check_options opts = {}) : opts_(std::move(opts)) {}

  const check_options& options() const noexcept { return opts_; }
  std::size_t order() const noexcept { return opts_.order; }
  std::size_t depth() const noexcept { return opts_.oracle_depth; }

  const garvan_set<rational>& garvan(std::size_t order) {
    if (!garvan_ || garvan_->at(0).order() < order) garvan_ = garvan_series(opts_.garvan, order);
    return *garvan_;
  }

  /// M_omega(b,5,.) through the roots-of-unity filter.
  const std::array<series<rational>, 5>& momega(std::size_t order) {
    if (!momega_ || momega_->at(0).order() < order) momega_ = momega_filter<rational>(order, garvan(order / 5));
    return *momega_;
  }

  /// M_omega(b,5,.) through the explicit A, B, C, D, R_i, S, T decomposition.
  const std::array<series<rational>, 5>& momega_decomposed(std::size_t order) {
    if (!decomposed_ || decomposed_->at(0).order() < order)
      decomposed_ = momega_decomposition<rational>(order, garvan(order / 5));
    return *decomposed_;
  }

  const rank_series<rational>& rank(int j, std::size_t order) {
    auto it = rank_.find(j);
    if (it == rank_.end() || it->second.nt[0].order() < order) {
      it = rank_.insert_or_assign(j, rank_dp_series<rational>(j, order)).first;
    }
    return it->second;
  }

  const statistics_table& table(int j, std::size_t depth) {
    auto it = tables_.find(j);
    if (it == tables_.end() || it->second.max_n < depth) {
      it = tables_.insert_or_assign(j, stat_table(depth, j, std::max(depth, default_enum_cap))).first;
    }
    return it->second;
  }
  const statistics_table& table(int j) { return table(j, depth()); }

private:
  check_options opts_;
  std::optional<garvan_set<rational>> garvan_;
  std::optional<std::array<series<rational>, 5>> momega_;
  std::optional<std::array<series<rational>, 5>> decomposed_;
  std::map<int, rank_series<rational>> rank_;
  std::map<int, statistics_table> tables_;
};

/// Accumulates the comparisons that make up one check.
class verdict {
public:
  static constexpr std::size_t sample_size = 8;

  template <class R>
  void compare(const std::string& stage, const series<R>& lhs, const series<R>& rhs, std::size_t order) {
    record(stage, sample(lhs, sample_size), sample(rhs, sample_size), first_mismatch(lhs, rhs, order));
  }

  /// lhs and rhs agree modulo `modulus` coefficientwise (integer coefficients required).
  void compare_mod(const std::string& stage, const series<rational>& lhs, const series<rational>& rhs,
                   std::size_t order, long modulus) {
    if (lhs.order() < order || rhs.order() < order) throw order_too_low(stage + ": operands too short");
    std::optional<std::size_t> bad;
    const mpz_class m = modulus;
    for (std::size_t i = 0; i <= order && !bad; ++i) {
      const rational d = lhs[i] - rhs[i];
      if (!d.is_integer()) throw non_integral_coefficient(stage + ": non-integral coefficient");
      const mpz_class num = d.num();
      if (mpz_divisible_p(num.get_mpz_t(), m.get_mpz_t()) == 0) bad = i;
    }
    record(stage + " (mod " + std::to_string(modulus) + ")", sample(lhs, sample_size),
           sample(rhs, sample_size), bad);
  }

  identity_report finish(std::string id, std::size_t order) const {
    identity_report r;
    r.id = std::move(id);
    r.order = order;
    r.passed = !failed_;
    if (failed_) {
      r.first_mismatch = failure_index_;
      r.lhs_sample = failure_lhs_;
      r.rhs_sample = failure_rhs_;
      r.detail = "mismatch in: " + failure_stage_;
    } else {
      r.lhs_sample = first_lhs_;
      r.rhs_sample = first_rhs_;
      r.detail = stages_;
    }
    return r;
  }

private:
  void record(const std::string& stage, std::vector<std::string> lhs, std::vector<std::string> rhs,
              std::optional<std::size_t> mismatch) {
    if (stages_.empty()) {
      first_lhs_ = lhs;
      first_rhs_ = rhs;
    } else {
      stages_ += "; ";
    }
    stages_ += stage;
    if (mismatch && !failed_) {
      failed_ = true;
      failure_index_ = *mismatch;
      failure_stage_ = stage;
      failure_lhs_ = std::move(lhs);
      failure_rhs_ = std::move(rhs);
    }
  }

  bool failed_ = false;
  std::size_t failure_index_ = 0;
  std::string failure_stage_;
  std::string stages_;
  std::vector<std::string> first_lhs_, first_rhs_, failure_lhs_, failure_rhs_;
};

// ---------------------------------------------------------------------------
// Building blocks shared by the checks

namespace checks {

using Q = series<rational>;

inline Q lam(std::size_t slope, std::size_t offset, std::size_t den, std::size_t order) {
  return lambert_one_sided<rational>(slope, offset, den, order);
}

/// (q^5;q^5)^4 / (q;q).
inline Q eta_ratio(std::size_t order) { return product_quotient<rational>({poch(5, 5, 4)}, {poch(1, 1)}, order); }

/// Linear combination sum w_i R_i (i = 1..4).
inline Q r_comb(std::array<long, 4> w, std::size_t order) {
  Q s(order);
  for (int i = 0; i < 4; ++i)
    if (w[i] != 0) s += r_series<rational>(i + 1, order) * rational(w[i]);
  return s;
}

inline Q scaled(const Q& f, long num, long den = 1) { return f * rational(num, den); }

/// Index m of `stats`, difference stats[a] - stats[b].
template <class Array>
Q diff(const Array& stats, int a, int b) { return stats[a] - stats[b]; }

inline Q row(const std::vector<std::vector<mpz_class>>& table, int m) { return table_series(table[m]); }

inline Q diff(const std::vector<std::vector<mpz_class>>& table, int a, int b) { return row(table, a) - row(table, b); }

/// Order of dissect(f, a, modulus) for a table of depth d, capped at the run order.
inline std::size_t table_order(std::size_t depth, std::size_t a, std::size_t modulus, std::size_t order) {
  return std::min(order, (depth - a) / modulus);
}

} // namespace checks

// ---------------------------------------------------------------------------
// The registry

using check_fn = std::function<void(check_context&, verdict&)>;

struct registry_entry {
  std::string id;
  std::string description;
  check_fn run;
};

namespace detail {

using namespace checks;

inline void lemma21(check_context& ctx, verdict& v, int m) {
  const std::size_t n = ctx.order();
  const auto direct = crank_quotient_direct<rational>(m, n);
  const auto garvan_form = crank_quotient_garvan<rational>(m, n, ctx.garvan(n / 5));
  v.compare("cyclotomic product vs A,B,C,D form", direct, garvan_form, n);
}

struct lambert_case {
  const char* id;
  lambert_spec spec;
  /// The closed form as printed; empty numerators/denominators with sign 0 mean "= 0".
  int sign;
  std::size_t q_power;
  poch_spec num;
  poch_spec den;
};

inline const std::vector<lambert_case>& lambert_cases() {
  static const std::vector<lambert_case> cases = {
      {"L2.2.a", {1, 1, 0}, 1, 0, {poch(2, 5), poch(3, 5), poch(5, 5, 2)}, {poch(1, 5, 2), poch(4, 5, 2)}},
      {"L2.2.b", {2, 3, 1}, 0, 0, {}, {}},
      {"L2.2.c", {1, 2, 0}, 1, 0, {poch(5, 5, 2)}, {poch(1, 5), poch(4, 5)}},
      {"L2.2.d", {2, 2, 0}, 1, 0, {poch(1, 5), poch(4, 5), poch(5, 5, 2)}, {poch(2, 5, 2), poch(3, 5, 2)}},
      {"L2.2.e", {1, 3, 0}, 1, 0, {poch(5, 5, 2)}, {poch(2, 5), poch(3, 5)}},
      {"L2.2.f", {2, 4, 1}, -1, 0, {poch(5, 5, 2)}, {poch(2, 5), poch(3, 5)}},
      {"L2.2.g", {1, 4, 0}, 0, 0, {}, {}},
      {"L2.2.h", {2, 1, 0}, 1, 0, {poch(5, 5, 2)}, {poch(1, 5), poch(4, 5)}},
      {"L2.2.i", {2, 2, 1}, 1, 1, {poch(1, 5), poch(4, 5), poch(5, 5, 2)}, {poch(2, 5, 2), poch(3, 5, 2)}},
  };
  return cases;
}

inline void lemma22(check_context& ctx, verdict& v, const lambert_case& c) {
  const std::size_t n = ctx.order();
  const auto lhs = lambert_master_lhs<rational>(c.spec, n);
  Q printed(n);
  if (c.sign != 0) printed = scaled(shift(product_quotient<rational>(c.num, c.den, n), c.q_power), c.sign);
  v.compare("one-sided sums vs printed closed form", lhs, printed, n);
  if (!c.spec.degenerate()) v.compare("one-sided sums vs two-sided product", lhs, lambert_product_side<rational>(c.spec, n), n);
}

inline std::vector<lambert_spec> random_lambert_specs(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rs(1, 4), ts(0, 4);
  std::vector<lambert_spec> out;
  while (out.size() < count) {
    lambert_spec s{rs(rng), rs(rng), ts(rng)};
    if (!s.degenerate()) out.push_back(s);
  }
  return out;
}

inline void lemma22_master(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  for (const auto& s : random_lambert_specs(ctx.options().seed, ctx.options().random_instances)) {
    const auto pair = lambert_master<rational>(s, n);
    v.compare("(r,s,t)=(" + std::to_string(s.r) + "," + std::to_string(s.s) + "," + std::to_string(s.t) + ")",
              pair.lhs, pair.rhs, n);
  }
}

inline void lemma23(check_context& ctx, verdict& v, int variant) {
  const std::size_t n = ctx.order();
  v.compare("Lambert sum vs eta-quotient form", lemma23_lhs<rational>(variant, n), lemma23_rhs<rational>(variant, n), n);
}

inline void theorem31(check_context& ctx, verdict& v, int b) {
  const std::size_t n = ctx.order();
  const std::size_t d = std::min(n, ctx.depth());
  const auto& dec = ctx.momega_decomposed(n);
  v.compare("decomposition vs enumeration", dec[b], row(ctx.table(5).momega, b), d);
  v.compare("decomposition vs roots-of-unity filter", dec[b], ctx.momega(n)[b], n);
}

/// The right side of the full-series difference formulas, over X(q^5) blocks.
inline Q block_form(check_context& ctx, std::size_t n, const std::array<std::array<long, 4>, 4>& w) {
  const auto& g = ctx.garvan(n / 5);
  Q s(n);
  // w[k] multiplies q^(3-k) X(q^5) with X = D, C, B, A
  for (int k = 0; k < 4; ++k) {
    if (std::all_of(w[k].begin(), w[k].end(), [](long x) { return x == 0; })) continue;
    s += shift(substitute_power(g[3 - k], 5, n), static_cast<std::size_t>(3 - k)) * r_comb(w[k], n);
  }
  return s;
}

inline void e41(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const auto lhs = diff(ctx.momega(n), 2, 3);
  const auto rhs = block_form(ctx, n, {{{1, -1, 1, -1}, {1, 0, 0, -1}, {-1, 2, -2, 1}, {0, -1, 1, 0}}});
  v.compare("M(2)-M(3) vs D,C,B,A block form", lhs, rhs, n);
  v.compare("block form vs enumeration", rhs, diff(ctx.table(5).momega, 2, 3), std::min(n, ctx.depth()));
}

inline void e45(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const auto lhs = diff(ctx.momega(n), 1, 4);
  const auto rhs = block_form(ctx, n, {{{0, 1, -1, 0}, {1, 1, -1, -1}, {1, -1, 1, -1}, {-1, 0, 0, 1}}});
  v.compare("M(1)-M(4) vs D,C,B,A block form", lhs, rhs, n);
  v.compare("block form vs enumeration", rhs, diff(ctx.table(5).momega, 1, 4), std::min(n, ctx.depth()));
}

/// M(a)-M(b) or NT(a)-NT(b) restricted to 5n + res, from the series route and from the table.
struct dissected {
  Q series_route;
  Q table_route;
  std::size_t table_order;
};

inline dissected momega_diff(check_context& ctx, int a, int b, std::size_t res) {
  const std::size_t n = ctx.order();
  const auto& m = ctx.momega(5 * n + 4);
  const auto& t = ctx.table(5);
  return {dissect(diff(m, a, b), res).truncated(n), dissect(diff(t.momega, a, b), res),
          table_order(ctx.depth(), res, 5, n)};
}

inline dissected nt_diff(check_context& ctx, int a, int b, std::size_t res) {
  const std::size_t n = ctx.order();
  const auto& r = ctx.rank(5, 5 * n + 4);
  const auto& t = ctx.table(5);
  return {dissect(diff(r.nt, a, b), res).truncated(n), dissect(diff(t.nt, a, b), res),
          table_order(ctx.depth(), res, 5, n)};
}

inline dissected times(const dissected& d, long k) {
  return {d.series_route * rational(k), d.table_route * rational(k), d.table_order};
}

inline dissected operator+(const dissected& x, const dissected& y) {
  return {x.series_route + y.series_route, x.table_route + y.table_route, std::min(x.table_order, y.table_order)};
}

inline void compare_dissected(verdict& v, const std::string& what, const dissected& lhs, const Q& rhs, std::size_t n) {
  v.compare(what + " (series)", lhs.series_route, rhs, n);
  v.compare(what + " (enumeration)", lhs.table_route, rhs, lhs.table_order);
}

inline void compare_dissected(verdict& v, const std::string& what, const dissected& lhs, const dissected& rhs,
                              std::size_t n) {
  v.compare(what + " (series)", lhs.series_route, rhs.series_route, n);
  v.compare(what + " (enumeration)", lhs.table_route, rhs.table_route, std::min(lhs.table_order, rhs.table_order));
}

inline void e43(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const auto lhs = momega_diff(ctx, 2, 3, 4);
  const auto& g = ctx.garvan(n);
  const Q& A = g[0]; const Q& B = g[1]; const Q& C = g[2]; const Q& D = g[3];
  const Q lambert_form = D * (lam(1, 0, 1, n) - lam(4, 3, 4, n)) - D * (lam(2, 1, 3, n) - lam(3, 1, 2, n)) +
                         C * (lam(1, 0, 2, n) - lam(4, 2, 3, n)) - B * (lam(1, 0, 3, n) - lam(4, 1, 2, n)) +
                         scaled(B, 2) * (lam(2, 1, 4, n) - lam(3, 0, 1, n)) - A * (lam(2, 0, 2, n) - lam(3, 1, 3, n));
  v.compare("dissection vs Lambert form", lhs.series_route, lambert_form, n);
  compare_dissected(v, "M(2,5,5n+4)-M(3,5,5n+4) vs -2 eta ratio", lhs, scaled(eta_ratio(n), -2), n);
}

inline void e44(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const std::size_t d = std::min(5 * n + 4, ctx.depth());
  const auto& r = ctx.rank(5, 5 * n + 4);
  const auto& t = ctx.table(5);
  v.compare("DP NT(1)-NT(4) vs enumeration", diff(r.nt, 1, 4), diff(t.nt, 1, 4), d);
  compare_dissected(v, "NT(1,5,5n+4)-NT(4,5,5n+4) vs -eta ratio", nt_diff(ctx, 1, 4, 4), scaled(eta_ratio(n), -1), n);
}

inline void e47(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const auto lhs = momega_diff(ctx, 1, 4, 4);
  const auto& g = ctx.garvan(n);
  const Q& A = g[0]; const Q& B = g[1]; const Q& C = g[2]; const Q& D = g[3];
  const Q lambert_form = D * (lam(2, 1, 3, n) - lam(3, 1, 2, n)) + C * (lam(1, 0, 2, n) - lam(4, 2, 3, n)) +
                         C * (lam(2, 0, 1, n) - lam(3, 2, 4, n)) + B * (lam(1, 0, 3, n) - lam(4, 1, 2, n)) -
                         B * (lam(2, 1, 4, n) - lam(3, 0, 1, n)) - A * (lam(1, 0, 4, n) - lam(4, 0, 1, n));
  v.compare("dissection vs Lambert form", lhs.series_route, lambert_form, n);
  compare_dissected(v, "M(1,5,5n+4)-M(4,5,5n+4) vs 4 eta ratio", lhs, scaled(eta_ratio(n), 4), n);
}

/// 4q/5 X1 + 2/5 X2 - 2/5 X3.
inline Q mod5_residue2_form(std::size_t n) {
  const Q x1 = product_quotient<rational>({poch(1, 5, 2), poch(4, 5, 2), poch(5, 5, 3)}, {poch(2, 5, 4), poch(3, 5, 4)}, n);
  const Q x2 = product_quotient<rational>({poch(2, 5), poch(3, 5), poch(5, 5, 3)}, {poch(1, 5, 3), poch(4, 5, 3)}, n);
  const Q x3 = product_quotient<rational>({poch(5, 5)}, {poch(2, 5), poch(3, 5)}, n);
  return shift(x1, 1) * rational(4, 5) + x2 * rational(2, 5) - x3 * rational(2, 5);
}

/// X4/10 - X5/10 + 13q/10 X6.
inline Q mod5_residue1_form(std::size_t n) {
  const Q x4 = product_quotient<rational>({poch(5, 5)}, {poch(1, 5), poch(4, 5)}, n);
  // the (q^2,q^3;q^5) factor is squared; with a single power the identity fails at q^2
  const Q x5 = product_quotient<rational>({poch(2, 5, 2), poch(3, 5, 2), poch(5, 5, 3)}, {poch(1, 5, 4), poch(4, 5, 4)}, n);
  const Q x6 = product_quotient<rational>({poch(1, 5), poch(4, 5), poch(5, 5, 3)}, {poch(2, 5, 3), poch(3, 5, 3)}, n);
  return x4 * rational(1, 10) - x5 * rational(1, 10) + shift(x6, 1) * rational(13, 10);
}

inline void e49(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const auto lhs = momega_diff(ctx, 1, 4, 2);
  const auto& g = ctx.garvan(n);
  const Q& A = g[0]; const Q& B = g[1]; const Q& C = g[2]; const Q& D = g[3];
  const Q lambert_form = D * (lam(2, 1, 2, n) - lam(3, 2, 3, n)) + C * lemma23_lhs<rational>(1, n) +
                         B * (lam(1, 0, 1, n) - lam(4, 3, 4, n)) - B * (lam(2, 1, 3, n) - lam(3, 1, 2, n)) -
                         A * (lam(1, 0, 2, n) - lam(4, 2, 3, n));
  v.compare("dissection vs Lambert form", lhs.series_route, lambert_form, n);
  compare_dissected(v, "M(1,5,5n+2)-M(4,5,5n+2) vs eta-quotient form", lhs, mod5_residue2_form(n), n);
}

inline void e410(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  compare_dissected(v, "2(NT(2,5,5n+2)-NT(3,5,5n+2)) vs eta-quotient form", times(nt_diff(ctx, 2, 3, 2), 2),
                    -mod5_residue2_form(n), n);
}

inline void e412(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const auto lhs = momega_diff(ctx, 2, 3, 1);
  const auto& g = ctx.garvan(n);
  const Q& A = g[0]; const Q& B = g[1]; const Q& C = g[2]; const Q& D = g[3];
  const Q lambert_form = D * (lam(1, 1, 3, n) - lam(4, 2, 2, n)) - D * (lam(2, 2, 4, n) - lam(3, 1, 1, n)) +
                         C * (lam(1, 1, 4, n) - lam(4, 1, 1, n)) - B * lemma23_lhs<rational>(2, n) -
                         A * (lam(2, 1, 3, n) - lam(3, 1, 2, n));
  v.compare("dissection vs Lambert form", lhs.series_route, lambert_form, n);
  compare_dissected(v, "M(2,5,5n+1)-M(3,5,5n+1) vs eta-quotient form", lhs, mod5_residue1_form(n), n);
}

inline void e413(check_context& ctx, verdict& v) {
  compare_dissected(v, "NT(2,5,5n+1)-NT(3,5,5n+1) vs eta-quotient form", nt_diff(ctx, 2, 3, 1),
                    mod5_residue1_form(ctx.order()), ctx.order());
}

inline void t1a(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const auto lhs = nt_diff(ctx, 1, 4, 4) + times(momega_diff(ctx, 2, 3, 4), 2);
  compare_dissected(v, "NT(1)-NT(4)+2M(2)-2M(3) at 5n+4 vs -5 eta ratio", lhs, scaled(eta_ratio(n), -5), n);
}

inline void t1b(check_context& ctx, verdict& v) {
  compare_dissected(v, "M(2)-M(3) vs 2NT(1)-2NT(4) at 5n+4", momega_diff(ctx, 2, 3, 4),
                    times(nt_diff(ctx, 1, 4, 4), 2), ctx.order());
}

inline void t2(check_context& ctx, verdict& v) {
  compare_dissected(v, "M(1)-M(4) vs 2M(3)-2M(2) at 5n+4", momega_diff(ctx, 1, 4, 4),
                    times(momega_diff(ctx, 3, 2, 4), 2), ctx.order());
}

inline void t3(check_context& ctx, verdict& v) {
  compare_dissected(v, "M(1)-M(4) vs 2NT(3)-2NT(2) at 5n+2", momega_diff(ctx, 1, 4, 2),
                    times(nt_diff(ctx, 3, 2, 2), 2), ctx.order());
}

inline void t4(check_context& ctx, verdict& v) {
  compare_dissected(v, "M(2)-M(3) vs NT(2)-NT(3) at 5n+1", momega_diff(ctx, 2, 3, 1), nt_diff(ctx, 2, 3, 1),
                    ctx.order());
}

/// sum_{m=1..4} m stat[m], as a full series.
template <class Array>
Q weighted_residue_sum(const Array& stat) {
  Q s = stat[1];
  for (int m = 2; m <= 4; ++m) s += stat[m] * rational(m);
  return s;
}

inline Q weighted_residue_sum(const std::vector<std::vector<mpz_class>>& table) {
  std::vector<Q> rows;
  for (const auto& r : table) rows.push_back(table_series(r));
  return weighted_residue_sum(rows);
}

inline void congruence(verdict& v, const std::string& what, const Q& full_series, const Q& full_table,
                       std::size_t res, long modulus, std::size_t n, std::size_t depth) {
  const Q s = dissect(full_series, res);
  const Q t = dissect(full_table, res);
  v.compare_mod(what + " (series)", s, Q(s.order()), n, modulus);
  v.compare_mod(what + " (enumeration)", t, Q(t.order()), table_order(depth, res, 5, n), modulus);
}

inline void intro_beck(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  const Q s = weighted_residue_sum(ctx.rank(5, 5 * n + 4).nt);
  const Q t = weighted_residue_sum(ctx.table(5).nt);
  congruence(v, "sum m NT(m,5,5n+1)", s, t, 1, 5, n, ctx.depth());
  congruence(v, "sum m NT(m,5,5n+4)", s, t, 4, 5, n, ctx.depth());
}

inline void intro_chern(check_context& ctx, verdict& v) {
  const std::size_t n = ctx.order();
  congruence(v, "sum m M(m,5,5n+4)", weighted_residue_sum(ctx.momega(5 * n + 4)),
             weighted_residue_sum(ctx.table(5).momega), 4, 5, n, ctx.depth());
}

inline void intro_mao7(check_context& ctx, verdict& v, char which) {
  const std::size_t n = ctx.order();
  const std::size_t res = which == 'a' ? 5 : 4;
  const long k = which == 'a' ? 3 : 2;
  const int p = which == 'a' ? 2 : 3, q = 7 - p;
  auto combo = [&](const auto& nt) { return diff(nt, 1, 6) + diff(nt, p, q) * rational(k); };
  const auto& r = ctx.rank(7, 7 * n + 6);
  const auto& t = ctx.table(7);
  Q rhs = which == 'a'
              ? product_quotient<rational>({poch(3, 7), poch(4, 7), poch(7, 7, 3)},
                                           {poch(1, 7), poch(2, 7, 2), poch(5, 7, 2), poch(6, 7)}, n)
              : product_quotient<rational>({poch(3, 7, 2), poch(4, 7, 2), poch(7, 7, 3)},
                                           {poch(1, 7), poch(2, 7, 3), poch(5, 7, 3), poch(6, 7)}, n);
  rhs *= rational(-7);
  const std::string what = "NT(1)-NT(6)+" + std::to_string(k) + "NT(" + std::to_string(p) + ")-" +
                           std::to_string(k) + "NT(" + std::to_string(q) + ") at 7n+" + std::to_string(res);
  v.compare(what + " (series)", dissect(combo(r.nt), res, 7).truncated(n), rhs, n);
  v.compare(what + " (enumeration)", dissect(combo(t.nt), res, 7), rhs, table_order(ctx.depth(), res, 7, n));
}

/// j N(m,j,jn+res) = p(jn+res) for every m; n <= 8 by enumeration, order n by DP.
inline void intro_dyson(check_context& ctx, verdict& v, int j, std::size_t res) {
  const std::size_t n = ctx.order();
  const std::size_t enum_n = std::min<std::size_t>(n, 8);
  const auto& r = ctx.rank(j, j * n + res);
  const auto& t = ctx.table(j, std::max(ctx.depth(), j * enum_n + res));
  Q p_series(r.count[0].order());
  for (const auto& c : r.count) p_series += c;
  const Q p_table = table_series(t.p);
  for (int m = 0; m < j; ++m) {
    const std::string what = std::to_string(j) + " N(" + std::to_string(m) + "," + std::to_string(j) + "," +
                             std::to_string(j) + "n+" + std::to_string(res) + ") = p";
    v.compare(what + " (enumeration)", dissect(table_series(t.rank_count[m]), res, j) * rational(j),
              dissect(p_table, res, j), enum_n);
    v.compare(what + " (DP)", dissect(r.count[m], res, j) * rational(j), dissect(p_series, res, j), n);
  }
}

inline void c5(check_context& ctx, verdict& v, int a, int b, std::size_t res, long modulus) {
  const std::size_t n = ctx.order();
  const std::string what = "M(" + std::to_string(a) + ",5,5n+" + std::to_string(res) + ") - M(" +
                           std::to_string(b) + ",5,5n+" + std::to_string(res) + ")";
  congruence(v, what, diff(ctx.momega(5 * n + 4), a, b), diff(ctx.table(5).momega, a, b), res, modulus, n,
             ctx.depth());
}

} // namespace detail

/// Every identity, congruence and theorem, in a stable order.
inline const std::vector<registry_entry>& registry() {
  using namespace detail;
  static const std::vector<registry_entry> entries = [] {
    std::vector<registry_entry> e;
    e.push_back({"L2.1.m1", "crank quotient at zeta: Garvan's 5-dissection", [](auto& c, auto& v) { lemma21(c, v, 1); }});
    e.push_back({"L2.1.m2", "crank quotient at zeta^2: Garvan's 5-dissection", [](auto& c, auto& v) { lemma21(c, v, 2); }});
    for (const auto& lc : lambert_cases()) {
      e.push_back({lc.id, "one-sided Lambert pair", [lc](auto& c, auto& v) { lemma22(c, v, lc); }});
    }
    e.push_back({"L2.2.master", "randomized two-sided Lambert formula", [](auto& c, auto& v) { lemma22_master(c, v); }});
    e.push_back({"L2.3.a", "R1+R2-R3-R4 closed form", [](auto& c, auto& v) { lemma23(c, v, 1); }});
    e.push_back({"L2.3.b", "R1-2R2+2R3-R4 closed form", [](auto& c, auto& v) { lemma23(c, v, 2); }});
    for (int b = 0; b < 5; ++b) {
      e.push_back({"T3.1.b" + std::to_string(b), "generating function of M_omega(" + std::to_string(b) + ",5,n)",
                   [b](auto& c, auto& v) { theorem31(c, v, b); }});
    }
    e.push_back({"E4.1", "M(2)-M(3) block form", [](auto& c, auto& v) { e41(c, v); }});
    e.push_back({"E4.3", "M(2)-M(3) at 5n+4", [](auto& c, auto& v) { e43(c, v); }});
    e.push_back({"E4.4", "NT(1)-NT(4) at 5n+4", [](auto& c, auto& v) { e44(c, v); }});
    e.push_back({"E4.5", "M(1)-M(4) block form", [](auto& c, auto& v) { e45(c, v); }});
    e.push_back({"E4.7", "M(1)-M(4) at 5n+4", [](auto& c, auto& v) { e47(c, v); }});
    e.push_back({"E4.9", "M(1)-M(4) at 5n+2", [](auto& c, auto& v) { e49(c, v); }});
    e.push_back({"E4.10", "NT(2)-NT(3) at 5n+2", [](auto& c, auto& v) { e410(c, v); }});
    e.push_back({"E4.12", "M(2)-M(3) at 5n+1", [](auto& c, auto& v) { e412(c, v); }});
    e.push_back({"E4.13", "NT(2)-NT(3) at 5n+1", [](auto& c, auto& v) { e413(c, v); }});
    e.push_back({"T1.a", "NT(1)-NT(4)+2M(2)-2M(3) at 5n+4", [](auto& c, auto& v) { t1a(c, v); }});
    e.push_back({"T1.b", "M(2)-M(3) = 2NT(1)-2NT(4) at 5n+4", [](auto& c, auto& v) { t1b(c, v); }});
    e.push_back({"T2", "M(1)-M(4) = 2M(3)-2M(2) at 5n+4", [](auto& c, auto& v) { t2(c, v); }});
    e.push_back({"T3", "M(1)-M(4) = 2NT(3)-2NT(2) at 5n+2", [](auto& c, auto& v) { t3(c, v); }});
    e.push_back({"T4", "M(2)-M(3) = NT(2)-NT(3) at 5n+1", [](auto& c, auto& v) { t4(c, v); }});
    e.push_back({"INTRO.beck", "sum m NT(m,5,5n+1), sum m NT(m,5,5n+4) = 0 mod 5", [](auto& c, auto& v) { intro_beck(c, v); }});
    e.push_back({"INTRO.chern", "sum m M(m,5,5n+4) = 0 mod 5", [](auto& c, auto& v) { intro_chern(c, v); }});
    e.push_back({"INTRO.mao7.a", "NT mod 7 at 7n+5", [](auto& c, auto& v) { intro_mao7(c, v, 'a'); }});
    e.push_back({"INTRO.mao7.b", "NT mod 7 at 7n+4", [](auto& c, auto& v) { intro_mao7(c, v, 'b'); }});
    e.push_back({"INTRO.dyson.5", "N(m,5,5n+4) = p(5n+4)/5", [](auto& c, auto& v) { intro_dyson(c, v, 5, 4); }});
    e.push_back({"INTRO.dyson.7", "N(m,7,7n+5) = p(7n+5)/7", [](auto& c, auto& v) { intro_dyson(c, v, 7, 5); }});
    e.push_back({"C5.1", "M(2) = M(3) mod 2 at 5n+4", [](auto& c, auto& v) { c5(c, v, 2, 3, 4, 2); }});
    e.push_back({"C5.2", "M(1) = M(4) mod 2 at 5n+2", [](auto& c, auto& v) { c5(c, v, 1, 4, 2, 2); }});
    e.push_back({"C5.3", "M(1) = M(4) mod 4 at 5n+4", [](auto& c, auto& v) { c5(c, v, 1, 4, 4, 4); }});
    return e;
  }();
  return entries;
}

inline const registry_entry& find_check(const std::string& id) {
  for (const auto& e : registry())
    if (e.id == id) return e;
  throw unknown_identity(id);
}

/// Runs one entry against a shared context.
inline identity_report run_check(const registry_entry& entry, check_context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  verdict v;
  entry.run(ctx, v);
  auto report = v.finish(entry.id, ctx.order());
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

inline identity_report run_check(const std::string& id, check_options opts) {
  const auto& entry = find_check(id);
  check_context ctx(std::move(opts));
  return run_check(entry, ctx);
}

inline identity_report run_check(const std::string& id, std::size_t order) {
  check_options opts;
  opts.order = order;
  return run_check(id, std::move(opts));
}

/// Every registry entry, in registry order, sharing one context.
inline std::vector<identity_report> run_all(check_options opts) {
  check_context ctx(std::move(opts));
  std::vector<identity_report> out;
  for (const auto& e : registry()) out.push_back(run_check(e, ctx));
  return out;
}

inline std::vector<identity_report> run_all(std::size_t order) {
  check_options opts;
  opts.order = order;
  return run_all(std::move(opts));
}

inline bool all_passed(const std::vector<identity_report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const identity_report& r) { return r.passed; });
}

// ---------------------------------------------------------------------------
// Parity densities

enum class statistic { momega, nt };

inline std::string_view to_string(statistic s) { return s == statistic::momega ? "momega" : "nt"; }

/// Running fraction of k in 1..upto with stat(i,5,k) = stat(j,5,k) mod `modulus`.
struct density_row {
  std::size_t upto = 0;
  std::size_t matches = 0;
  rational density;
  rational target;
  statistic stat = statistic::momega;
  int i = 0;
  int j = 0;
  int modulus = 2;
  /// k <= upto whose residue mod 5 forces a match by a proved congruence.
  std::size_t forced = 0;
  /// Every forced k did match.
  bool forced_ok = true;
};

inline constexpr std::size_t default_gf2_cap = 5000;

/// Conjectured limiting density for the pair (i, j).
inline rational density_target(statistic s, int i, int j) {
  if (s == statistic::momega) {
    if (i == 1 && j == 4) return rational(3, 10);
    if (i == 2 && j == 3) return rational(2, 5);
  }
  return rational(1, 2);
}

/// Residues k mod 5 at which stat(i,5,k) and stat(j,5,k) are provably congruent mod 2.
inline std::vector<int> forced_residues(statistic s, int i, int j) {
  if (s == statistic::momega && i == 2 && j == 3) return {4};
  if (s == statistic::momega && i == 1 && j == 4) return {2, 4};
  return {};
}

/// Parities of stat(m,5,k) for k = 0..upto, computed entirely over GF(2).
inline std::array<series<gf2>, 5> parity_series(statistic s, std::size_t upto) {
  std::array<series<gf2>, 5> out;
  if (s == statistic::momega) {
    out = momega_filter<gf2>(upto);
  } else {
    auto nt = nt_dp_series<gf2>(5, std::max<std::size_t>(upto, 1));
    for (int m = 0; m < 5; ++m) out[m] = nt[m].truncated(upto);
  }
  return out;
}

inline std::vector<density_row> density(statistic s, int i, int j, int modulus, std::size_t upto, std::size_t stride,
                                        std::size_t budget = default_gf2_cap) {
  if (!(0 <= i && i < j && j <= 4)) throw error("density needs 0 <= i < j <= 4");
  if (modulus != 2) throw error("density is only defined modulo 2");
  if (stride < 1) throw error("stride must be positive");
  if (upto > budget) throw budget_exceeded("density", upto, budget);
  const auto par = parity_series(s, upto);
  const auto forced_res = forced_residues(s, i, j);
  const rational target = density_target(s, i, j);
  std::vector<density_row> rows;
  std::size_t matches = 0, forced = 0;
  bool forced_ok = true;
  for (std::size_t k = 1; k <= upto; ++k) {
    const bool match = par[i][k] == par[j][k];
    if (match) ++matches;
    if (std::find(forced_res.begin(), forced_res.end(), static_cast<int>(k % 5)) != forced_res.end()) {
      ++forced;
      forced_ok = forced_ok && match;
    }
    if (k % stride == 0 || k == upto) {
      density_row row;
      row.upto = k;
      row.matches = matches;
      row.density = rational(static_cast<long>(matches), static_cast<long>(k));
      row.target = target;
      row.stat = s;
      row.i = i;
      row.j = j;
      row.modulus = modulus;
      row.forced = forced;
      row.forced_ok = forced_ok;
      rows.push_back(row);
    }
  }
  return rows;
}

} // namespace qstat
