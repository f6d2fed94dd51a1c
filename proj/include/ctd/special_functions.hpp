#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ctd/errors.hpp"

namespace ctd {

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw domain_error("log_gamma requires x > 0");
  return std::lgamma(x);
}

namespace detail {

/// Prefix sums of ln k in long double; index n holds ln(n!).
inline const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    constexpr std::size_t kMax = 1'000'000;
    std::vector<double> t(kMax + 1);
    long double acc = 0.0L;
    t[0] = 0.0;
    for (std::size_t k = 1; k <= kMax; ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// ln(n!), cached for n <= 10^6; larger n fall back to log_gamma(n+1).
inline double log_factorial(std::int64_t n) {
  if (n < 0) throw domain_error("log_factorial requires n >= 0");
  const auto& table = detail::log_factorial_table();
  if (static_cast<std::size_t>(n) < table.size()) return table[static_cast<std::size_t>(n)];
  return log_gamma(static_cast<double>(n) + 1.0);
}

/// ln B(x, y) = ln Gamma(x) + ln Gamma(y) - ln Gamma(x + y) for x, y > 0.
inline double log_beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw domain_error("log_beta requires positive arguments");
  return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

/// x * ln x extended by its limit 0 at x = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace ctd
