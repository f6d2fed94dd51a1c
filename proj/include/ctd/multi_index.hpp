#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ctd {

/// A lattice exponent alpha = (j1, j2) in N^2.
struct MultiIndex2 {
  std::int64_t j1 = 0;
  std::int64_t j2 = 0;

  /// Total degree |alpha| = j1 + j2.
  std::int64_t total() const noexcept { return j1 + j2; }

  friend bool operator==(const MultiIndex2&, const MultiIndex2&) = default;
};

/// Graded lexicographic order: first by total degree, then lexicographically
/// by (j1, j2).  Yields (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
inline bool grlex_less(const MultiIndex2& a, const MultiIndex2& b) noexcept {
  if (a.total() != b.total()) return a.total() < b.total();
  if (a.j1 != b.j1) return a.j1 < b.j1;
  return a.j2 < b.j2;
}

inline std::string to_string(const MultiIndex2& a) {
  return "(" + std::to_string(a.j1) + "," + std::to_string(a.j2) + ")";
}

}  // namespace ctd
