#pragma once

#include <stdexcept>
#include <string>

namespace ctd {

/// Invalid argument values (negative coordinates, size mismatches, ...).
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed body/set/command specification strings.  Carries the offending
/// token so front ends can point at it.
class parse_error : public std::invalid_argument {
 public:
  parse_error(const std::string& what, std::string token)
      : std::invalid_argument(what + " (offending token: '" + token + "')"),
        token_(std::move(token)) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// Operation asked of a variant that has no closed form / no algorithm for it.
class unsupported_error : public std::invalid_argument {
 public:
  explicit unsupported_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Quadrature or iteration failed to reach its tolerance.  Carries the final
/// residual estimate.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace ctd
