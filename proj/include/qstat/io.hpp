#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qstat/error.hpp"
#include "qstat/fps.hpp"
#include "qstat/identities.hpp"
#include "qstat/partitions.hpp"
#include "qstat/ring.hpp"

namespace qstat::io {

using json = nlohmann::json;

/// r rounded half away from zero to `places` decimals, as an exact string.
inline std::string decimal(const rational& r, int places = 6) {
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  mpz_class num = abs(r.num()) * scale * 2 + r.den();
  mpz_class den = r.den() * 2;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string digits = q.get_str();
  if (digits.size() <= static_cast<std::size_t>(places)) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = r.sign() < 0 && sgn(q) != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return out;
}

// ---------------------------------------------------------------------------
// Series

template <class R>
json to_json(const series<R>& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(ring_traits<R>::to_string(c));
  return {{"ring", std::string(to_string(s.tag()))}, {"order", s.order()}, {"coeffs", coeffs}};
}

template <class R>
series<R> series_from_json(const json& j) {
  const auto ring = j.at("ring").get<std::string>();
  if (ring != to_string(ring_traits<R>::tag)) {
    throw ring_mismatch("expected a " + std::string(to_string(ring_traits<R>::tag)) + " series, got " + ring);
  }
  const auto& coeffs = j.at("coeffs");
  const auto order = j.at("order").get<std::size_t>();
  if (coeffs.size() != order + 1) throw error("series JSON: coefficient count does not match order");
  series<R> s(order);
  for (std::size_t i = 0; i <= order; ++i) s[i] = ring_traits<R>::parse(coeffs[i].get<std::string>());
  return s;
}

template <class R>
void write_series_csv(std::ostream& os, const series<R>& s) {
  os << "n,coeff\n";
  for (std::size_t i = 0; i <= s.order(); ++i) os << i << ",\"" << ring_traits<R>::to_string(s[i]) << "\"\n";
}

/// 1 + q + 2*q^2 + O(q^3)
template <class R>
std::string to_text(const series<R>& s) {
  using T = ring_traits<R>;
  std::string out;
  for (std::size_t i = 0; i <= s.order(); ++i) {
    if (T::is_zero(s[i])) continue;
    std::string c = T::to_string(s[i]);
    const bool negative = c.front() == '-' && c.find_first_of(",+") == std::string::npos;
    if (negative) c.erase(0, 1);
    if (c.front() != '(' && c.find('/') != std::string::npos) c = "(" + c + ")";
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    if (i == 0) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += i == 1 ? "q" : "q^" + std::to_string(i);
    }
  }
  if (out.empty()) out = "0";
  return out + " + O(q^" + std::to_string(s.order() + 1) + ")";
}

// ---------------------------------------------------------------------------
// Statistic tables

inline void write_stat_table_csv(std::ostream& os, const statistics_table& t) {
  os << "n,m,p,N,NT,Momega\n";
  for (std::size_t n = 0; n <= t.max_n; ++n) {
    for (int m = 0; m < t.j; ++m) {
      os << n << ',' << m << ',' << t.p[n] << ',' << t.rank_count[m][n] << ',' << t.nt[m][n] << ',';
      if (t.has_momega) os << t.momega[m][n];
      os << '\n';
    }
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline mpz_class parse_integer(const std::string& s, std::size_t line) {
  mpz_class v;
  if (s.empty() || v.set_str(s, 10) != 0) throw parse_error("bad integer '" + s + "' in CSV", line);
  return v;
}

} // namespace detail

/// Reads back what write_stat_table_csv wrote. Positions in errors are line numbers.
inline statistics_table read_stat_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || detail::split_csv_line(line) != std::vector<std::string>{"n", "m", "p", "N", "NT", "Momega"}) {
    throw parse_error("missing stat table header", 1);
  }
  struct raw { std::size_t n; int m; mpz_class p, count, nt; std::optional<mpz_class> mo; };
  std::vector<raw> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 6) throw parse_error("expected 6 fields", lineno);
    raw r{detail::parse_integer(f[0], lineno).get_ui(), static_cast<int>(detail::parse_integer(f[1], lineno).get_si()),
          detail::parse_integer(f[2], lineno), detail::parse_integer(f[3], lineno), detail::parse_integer(f[4], lineno),
          std::nullopt};
    if (!f[5].empty()) r.mo = detail::parse_integer(f[5], lineno);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw parse_error("stat table has no rows", lineno);
  std::size_t max_n = 0;
  int j = 0;
  for (const auto& r : rows) {
    max_n = std::max(max_n, r.n);
    j = std::max(j, r.m + 1);
  }
  if (rows.size() != (max_n + 1) * static_cast<std::size_t>(j)) throw parse_error("stat table is not rectangular", lineno);
  statistics_table t(j, max_n);
  t.has_momega = rows.front().mo.has_value();
  for (const auto& r : rows) {
    if (r.mo.has_value() != t.has_momega) throw parse_error("Momega column is only partly filled", lineno);
    t.p[r.n] = r.p;
    t.rank_count[r.m][r.n] = r.count;
    t.nt[r.m][r.n] = r.nt;
    if (r.mo) t.momega[r.m][r.n] = *r.mo;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Identity reports

inline json to_json(const identity_report& r) {
  json j = {{"id", r.id},
            {"order", r.order},
            {"passed", r.passed},
            {"first_mismatch", nullptr},
            {"lhs_sample", r.lhs_sample},
            {"rhs_sample", r.rhs_sample},
            {"elapsed_seconds", r.elapsed.count()},
            {"detail", r.detail}};
  if (r.first_mismatch) j["first_mismatch"] = *r.first_mismatch;
  return j;
}

inline json to_json(const std::vector<identity_report>& reports) {
  json a = json::array();
  for (const auto& r : reports) a.push_back(to_json(r));
  return a;
}

inline void write_reports_csv(std::ostream& os, const std::vector<identity_report>& reports) {
  os << "id,order,passed,first_mismatch,elapsed_seconds,lhs_sample,rhs_sample\n";
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  for (const auto& r : reports) {
    os << r.id << ',' << r.order << ',' << (r.passed ? "true" : "false") << ',';
    if (r.first_mismatch) os << *r.first_mismatch;
    os << ',' << r.elapsed.count() << ",\"" << join(r.lhs_sample) << "\",\"" << join(r.rhs_sample) << "\"\n";
  }
}

inline void write_reports_text(std::ostream& os, const std::vector<identity_report>& reports) {
  for (const auto& r : reports) {
    os << (r.passed ? "PASS " : "FAIL ") << r.id << " order=" << r.order;
    if (r.first_mismatch) os << " first_mismatch=" << *r.first_mismatch;
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << r.elapsed.count();
    os << " (" << t.str() << "s)";
    if (!r.passed) os << "  " << r.detail;
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Density rows

inline void write_density_csv(std::ostream& os, const std::vector<density_row>& rows) {
  os << "statistic,i,j,modulus,upto,matches,density,density_decimal,target,target_decimal,forced,forced_ok\n";
  for (const auto& r : rows) {
    os << to_string(r.stat) << ',' << r.i << ',' << r.j << ',' << r.modulus << ',' << r.upto << ',' << r.matches
       << ',' << r.density << ',' << decimal(r.density) << ',' << r.target << ',' << decimal(r.target) << ','
       << r.forced << ',' << (r.forced_ok ? "true" : "false") << '\n';
  }
}

inline json to_json(const density_row& r) {
  return {{"statistic", std::string(to_string(r.stat))},
          {"i", r.i},
          {"j", r.j},
          {"modulus", r.modulus},
          {"upto", r.upto},
          {"matches", r.matches},
          {"density", r.density.str()},
          {"density_decimal", decimal(r.density)},
          {"target", r.target.str()},
          {"target_decimal", decimal(r.target)},
          {"forced", r.forced},
          {"forced_ok", r.forced_ok}};
}

} // namespace qstat::io
