#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <string_view>

#include "qstat/error.hpp"

namespace qstat {

enum class output_format { json, csv, text };

inline output_format parse_output_format(std::string_view s) {
  if (s == "json") return output_format::json;
  if (s == "csv") return output_format::csv;
  if (s == "text") return output_format::text;
  throw error("unknown output format: " + std::string(s));
}

/// Run-time limits. Environment variables QSTAT_ORDER, QSTAT_ENUM_CAP, QSTAT_DP_CAP and
/// QSTAT_GF2_CAP override the defaults.
struct config {
  std::size_t default_order = 300;
  std::size_t enum_cap = 60;
  std::size_t dp_cap = 1000;
  std::size_t gf2_cap = 5000;
  output_format output = output_format::text;

  void validate() const {
    if (enum_cap == 0 || dp_cap == 0 || gf2_cap == 0) throw error("caps must be positive");
  }

  static config from_env() {
    config c;
    read_env("QSTAT_ORDER", c.default_order);
    read_env("QSTAT_ENUM_CAP", c.enum_cap);
    read_env("QSTAT_DP_CAP", c.dp_cap);
    read_env("QSTAT_GF2_CAP", c.gf2_cap);
    c.validate();
    return c;
  }

private:
  static void read_env(const char* name, std::size_t& slot) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return;
    std::size_t used = 0;
    unsigned long long parsed = 0;
    try {
      parsed = std::stoull(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string_view(v).size() || v[0] == '-') {
      throw error(std::string(name) + " must be a nonnegative integer, got '" + v + "'");
    }
    slot = static_cast<std::size_t>(parsed);
  }
};

} // namespace qstat
