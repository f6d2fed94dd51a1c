#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "ctd/body.hpp"
#include "ctd/errors.hpp"

namespace ctd {

/// Parameters of the adaptive Gauss-Legendre engine.
struct QuadratureRule {
  int panel_order = 32;     ///< Gauss-Legendre nodes per panel
  int max_depth = 14;       ///< maximum bisection depth
  double rel_tol = 1e-11;   ///< relative tolerance of one integral
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendre compute_gauss_legendre(int order) {
  if (order < 2) throw domain_error("Gauss-Legendre order must be >= 2");
  GaussLegendre gl;
  gl.nodes.resize(order);
  gl.weights.resize(order);
  // Newton iteration on P_n from the standard cosine initial guess; the
  // three-term recurrence evaluates P_n and its derivative.
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.weights[i] = w;
    gl.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) gl.nodes[order / 2] = 0.0;
  return gl;
}

}  // namespace detail

/// Cached nodes/weights for the given panel order.
inline const GaussLegendre& gauss_legendre(int order) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, detail::compute_gauss_legendre(order)).first;
  return it->second;
}

/// Value plus a conservative error estimate.
struct IntegralResult {
  double value = 0.0;
  double residual = 0.0;
};

namespace detail {

template <class F>
double gl_panel(const F& f, double lo, double hi, const GaussLegendre& gl) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    acc += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return acc * half;
}

/// Deterministic adaptive bisection, left child first.  `thresh` is an
/// absolute budget that halves per level; `fail_floor` is the residual above
/// which an exhausted-depth panel is a hard failure.
template <class F>
void adapt_1d(const F& f, double lo, double hi, double whole, double thresh,
              int depth, const QuadratureRule& rule, const GaussLegendre& gl,
              double fail_floor, IntegralResult& out) {
  const double mid = 0.5 * (lo + hi);
  const double left = gl_panel(f, lo, mid, gl);
  const double right = gl_panel(f, mid, hi, gl);
  const double diff = std::abs(left + right - whole);
  if (diff <= thresh) {
    out.value += left + right;
    out.residual += diff;
    return;
  }
  if (depth >= rule.max_depth) {
    if (diff > fail_floor)
      throw numeric_error("adaptive quadrature exhausted its bisection depth", diff);
    out.value += left + right;
    out.residual += diff;
    return;
  }
  adapt_1d(f, lo, mid, left, 0.5 * thresh, depth + 1, rule, gl, fail_floor, out);
  adapt_1d(f, mid, hi, right, 0.5 * thresh, depth + 1, rule, gl, fail_floor, out);
}

}  // namespace detail

/// Adaptive Gauss-Legendre integral of f over [lo, hi] with error estimate.
template <class F>
IntegralResult integrate_1d_full(F&& f, double lo, double hi,
                                 const QuadratureRule& rule = {}) {
  if (lo == hi) return {0.0, 0.0};
  const GaussLegendre& gl = gauss_legendre(rule.panel_order);
  const double whole = detail::gl_panel(f, lo, hi, gl);
  const double scale = std::abs(whole) + 1e-14;
  IntegralResult out;
  detail::adapt_1d(f, lo, hi, whole, rule.rel_tol * scale, 0, rule, gl,
                   10.0 * rule.rel_tol * scale, out);
  return out;
}

/// Adaptive Gauss-Legendre integral of f over [lo, hi].
template <class F>
double integrate_1d(F&& f, double lo, double hi, const QuadratureRule& rule = {}) {
  return integrate_1d_full(std::forward<F>(f), lo, hi, rule).value;
}

/// Iterated adaptive integral of f(x, y) over the body C, using the body's
/// profile: int_0^xmax int_0^{f(x)} f dy dx.  The outer integral runs per
/// smooth profile piece so panels never straddle a boundary kink.
template <class F>
IntegralResult integrate_body_full(const BodySpec& C, F&& f,
                                   const QuadratureRule& rule = {}) {
  const std::vector<double> breaks = C.profile_breakpoints();
  double inner_residual = 0.0;
  const auto outer_integrand = [&](double x) {
    const double top = C.profile_f(x);
    if (top <= 0.0) return 0.0;
    IntegralResult inner = integrate_1d_full([&](double y) { return f(x, y); }, 0.0, top, rule);
    inner_residual = std::max(inner_residual, inner.residual);
    return inner.value;
  };
  IntegralResult out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    IntegralResult piece = integrate_1d_full(outer_integrand, breaks[i], breaks[i + 1], rule);
    out.value += piece.value;
    out.residual += piece.residual;
  }
  out.residual += inner_residual;
  return out;
}

/// Iterated adaptive integral of f(x, y) over the body C.
template <class F>
double integrate_body(const BodySpec& C, F&& f, const QuadratureRule& rule = {}) {
  return integrate_body_full(C, std::forward<F>(f), rule).value;
}

}  // namespace ctd
