#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qstat/error.hpp"
#include "qstat/fps.hpp"
#include "qstat/qseries.hpp"
#include "qstat/ring.hpp"

namespace qstat {

/// Evaluates a q-series expression to a truncated series over R.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := '-' unary | factor
///   factor := atom ('^' ['-'] integer)?
///   atom   := integer ['/' integer] | 'q' | 'z' | A | B | C | D | R1..R5 | S | T
///           | poch '(' int ',' int [',' int] ')' | quot '(' list ',' list ')' | '(' expr ')'
///   list   := '[' [expr (',' expr)*] ']'
///
/// poch(a,b) is (q^a;q^b)_inf and poch(a,b,k) is (zeta^k q^a;q^b)_inf; quot divides the
/// product of the first list by the product of the second. z is zeta = exp(2 pi i / 5) and
/// needs a cyclotomic ring.
template <class R>
class expression_parser {
public:
  using S = series<R>;
  using T = ring_traits<R>;

  expression_parser(std::string_view text, std::size_t order) : text_(text), order_(order) {}

  S parse() {
    S v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }

  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string integer_text() {
    if (!at_digit()) fail("expected an integer");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  long small_integer() {
    const bool negative = accept('-');
    const std::size_t at = pos_;
    const std::string digits = integer_text();
    if (digits.size() > 9) throw parse_error("integer too large", at);
    const long v = std::stol(digits);
    return negative ? -v : v;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  S expr() {
    S v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  S term() {
    S v = unary();
    while (accept('*')) v = v * unary();
    return v;
  }

  S unary() {
    if (accept('-')) return -unary();
    return factor();
  }

  S factor() {
    S base = atom();
    if (!accept('^')) return base;
    const long e = small_integer();
    if (e > 10000 || e < -10000) fail("exponent out of range");
    return power(base, static_cast<int>(e));
  }

  S atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      S v = expr();
      expect(')');
      return v;
    }
    if (at_digit()) {
      const std::string num = integer_text();
      std::string lit = num;
      if (accept('/')) lit += "/" + integer_text();
      rational r;
      try {
        r = rational::parse(lit);
      } catch (const error&) {
        fail("bad number '" + lit + "'");
      }
      return S::monomial(T::from_rational(r), 0, order_);
    }
    const std::size_t at = pos_;
    const std::string name = identifier();
    if (name.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (name == "q") return S::monomial(T::one(), 1, order_);
    if (name == "z") return S::monomial(T::zeta_power(1), 0, order_);
    if (name == "S") return s_series<R>(order_);
    if (name == "T") return t_series<R>(order_);
    if (name.size() == 2 && name[0] == 'R' && name[1] >= '1' && name[1] <= '5') return r_series<R>(name[1] - '0', order_);
    if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'D') return garvan_parts()[name[0] - 'A'];
    if (name == "poch") return poch_call();
    if (name == "quot") return quot_call();
    throw parse_error("unknown name '" + name + "'", at);
  }

  S poch_call() {
    expect('(');
    const std::size_t at = pos_;
    const long a = small_integer();
    expect(',');
    const long b = small_integer();
    long k = 0;
    if (accept(',')) k = small_integer();
    expect(')');
    if (b < 1) throw parse_error("poch base exponent must be positive", at);
    if (a < 0 || (a == 0 && k % 5 == 0)) throw parse_error("poch(a,b) needs a >= 1", at);
    return pochhammer<R>({poch_factor{a, b, k, 1}}, order_);
  }

  std::vector<S> list() {
    expect('[');
    std::vector<S> items;
    if (accept(']')) return items;
    do {
      items.push_back(expr());
    } while (accept(','));
    expect(']');
    return items;
  }

  S quot_call() {
    expect('(');
    const auto num = list();
    expect(',');
    const std::size_t at = pos_;
    const auto den = list();
    expect(')');
    S top = S::one(order_), bottom = S::one(order_);
    for (const auto& f : num) top = top * f;
    for (const auto& f : den) bottom = bottom * f;
    try {
      return top * invert(bottom);
    } catch (const non_unit_constant_term&) {
      throw parse_error("quot denominator has a non-invertible constant term", at);
    }
  }

  const garvan_set<R>& garvan_parts() {
    if (!garvan_) garvan_ = garvan_series<R>(order_);
    return *garvan_;
  }

  std::string_view text_;
  std::size_t order_;
  std::size_t pos_ = 0;
  std::optional<garvan_set<R>> garvan_;
};

template <class R>
series<R> parse_series(std::string_view text, std::size_t order) {
  return expression_parser<R>(text, order).parse();
}

} // namespace qstat
