#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qstat {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ring_mismatch : public error {
public:
  using error::error;
};

class non_unit_constant_term : public error {
public:
  non_unit_constant_term() : error("constant term is not a unit of the coefficient ring") {}
};

/// A cyclotomic value that was expected to be rational had a nonzero zeta component.
class non_rational_value : public error {
public:
  using error::error;
};

class non_integral_coefficient : public error {
public:
  using error::error;
};

/// Raised by the two-sided Lambert product when r + s is a multiple of 5.
class degenerate_product : public error {
public:
  using error::error;
};

class budget_exceeded : public error {
public:
  budget_exceeded(const std::string& what, std::size_t requested, std::size_t cap)
      : error(what + ": requested " + std::to_string(requested) + " exceeds cap " +
              std::to_string(cap)),
        requested_(requested), cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t requested_;
  std::size_t cap_;
};

class unknown_identity : public error {
public:
  explicit unknown_identity(const std::string& id) : error("unknown identity: " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

private:
  std::string id_;
};

class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Two series were compared below the order the caller asked for.
class order_too_low : public error {
public:
  using error::error;
};

} // namespace qstat
