#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ctd/body.hpp"
#include "ctd/errors.hpp"
#include "ctd/multi_index.hpp"
#include "ctd/special_functions.hpp"

namespace ctd {

using Complex = std::complex<double>;
/// A point (z1, z2) in C^2.
using Point2 = std::array<Complex, 2>;

enum class CompactKind { Disk, Circle, Interval, PointCloud };

/// A compact set in the plane: closed disk, circle, real interval, or a
/// finite point cloud (the latter only as a Fekete candidate carrier).
class PlanarCompact {
 public:
  static PlanarCompact disk(double r) { return radial(CompactKind::Disk, r); }
  static PlanarCompact circle(double r) { return radial(CompactKind::Circle, r); }

  static PlanarCompact interval(double lo, double hi) {
    if (!(lo < hi)) throw domain_error("interval requires lo < hi");
    PlanarCompact e;
    e.kind_ = CompactKind::Interval;
    e.lo_ = lo;
    e.hi_ = hi;
    return e;
  }

  static PlanarCompact point_cloud(std::vector<Complex> points) {
    if (points.size() < 2) throw domain_error("point cloud needs >= 2 points");
    PlanarCompact e;
    e.kind_ = CompactKind::PointCloud;
    e.points_ = std::move(points);
    return e;
  }

  CompactKind kind() const noexcept { return kind_; }
  double radius() const noexcept { return r_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  const std::vector<Complex>& points() const noexcept { return points_; }

  std::string to_string() const {
    switch (kind_) {
      case CompactKind::Disk:
        return "disk(" + std::to_string(r_) + ")";
      case CompactKind::Circle:
        return "circle(" + std::to_string(r_) + ")";
      case CompactKind::Interval:
        return "interval(" + std::to_string(lo_) + "," + std::to_string(hi_) + ")";
      case CompactKind::PointCloud:
        return "cloud[" + std::to_string(points_.size()) + "]";
    }
    return "?";
  }

 private:
  static PlanarCompact radial(CompactKind kind, double r) {
    if (!(r > 0.0)) throw domain_error("radius must be positive");
    PlanarCompact e;
    e.kind_ = kind;
    e.r_ = r;
    return e;
  }

  CompactKind kind_ = CompactKind::Disk;
  double r_ = 1.0;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<Complex> points_;
};

/// Green function with pole at infinity, closed forms for disk and interval.
inline double green(const PlanarCompact& E, Complex z) {
  switch (E.kind()) {
    case CompactKind::Disk:
      return std::max(0.0, std::log(std::abs(z) / E.radius()));
    case CompactKind::Interval: {
      const Complex w = (2.0 * z - E.lo() - E.hi()) / (E.hi() - E.lo());
      const Complex s = std::sqrt(w * w - 1.0);
      // Branch with |w + sqrt(w^2-1)| >= 1 keeps the Green function >= 0.
      const double m = std::max(std::abs(w + s), std::abs(w - s));
      return std::max(0.0, std::log(m));
    }
    case CompactKind::Circle:
    case CompactKind::PointCloud:
      break;
  }
  throw unsupported_error("green: closed form only for disk and interval");
}

/// Robin constant rho_E = lim (g_E(z) - ln|z|) = -ln D(E).
inline double robin_constant(const PlanarCompact& E) {
  switch (E.kind()) {
    case CompactKind::Disk:
      return -std::log(E.radius());
    case CompactKind::Interval:
      return -std::log((E.hi() - E.lo()) / 4.0);
    case CompactKind::Circle:
    case CompactKind::PointCloud:
      break;
  }
  throw unsupported_error("robin_constant: closed form only for disk and interval");
}

/// Univariate transfinite diameter D(E) = exp(-rho_E); a circle has the same
/// D as the disk it bounds.
inline double transfinite_diameter_1d(const PlanarCompact& E) {
  switch (E.kind()) {
    case CompactKind::Disk:
    case CompactKind::Circle:
      return E.radius();
    case CompactKind::Interval:
      return (E.hi() - E.lo()) / 4.0;
    case CompactKind::PointCloud:
      break;
  }
  throw unsupported_error("transfinite_diameter_1d: use fekete_univariate for point clouds");
}

/// N-point Fekete search result over a univariate candidate cloud.
struct UnivariateFekete {
  std::vector<Complex> points;
  double log_vdm = 0.0;
  /// exp(2 log_vdm / (N (N-1))), an upper-biased estimate of D(E).
  double estimate = 0.0;
};

namespace detail {

inline double uni_log_vdm(const std::vector<Complex>& pts) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = std::abs(pts[j] - pts[i]);
      if (d == 0.0) return -std::numeric_limits<double>::infinity();
      acc += std::log(d);
    }
  return acc;
}

}  // namespace detail

/// Greedy Leja growth (seeded by the farthest pair) followed by one exchange
/// sweep: each selected slot in turn is replaced by its best strict
/// improvement among all candidates.  Ties break to the lowest candidate
/// index; the result is deterministic.
inline UnivariateFekete fekete_univariate(const PlanarCompact& candidates, int N) {
  if (candidates.kind() != CompactKind::PointCloud)
    throw domain_error("fekete_univariate expects a point-cloud candidate set");
  const std::vector<Complex>& cand = candidates.points();
  if (N < 2 || static_cast<std::size_t>(N) > cand.size())
    throw domain_error("fekete_univariate needs 2 <= N <= #candidates");

  std::vector<int> chosen;
  std::vector<char> used(cand.size(), 0);
  {
    std::size_t bi = 0, bj = 1;
    double bd = -1.0;
    for (std::size_t i = 0; i < cand.size(); ++i)
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        const double d = std::abs(cand[i] - cand[j]);
        if (d > bd * (1.0 + 1e-15)) {
          bd = d;
          bi = i;
          bj = j;
        }
      }
    chosen = {static_cast<int>(bi), static_cast<int>(bj)};
    used[bi] = used[bj] = 1;
  }
  while (static_cast<int>(chosen.size()) < N) {
    double best = -1.0;
    int best_idx = -1;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      if (used[c]) continue;
      double v = 1.0;
      for (int k : chosen) v *= std::abs(cand[c] - cand[k]);
      if (v > best * (1.0 + 1e-15)) {
        best = v;
        best_idx = static_cast<int>(c);
      }
    }
    if (best_idx < 0) throw domain_error("fekete_univariate: candidates are degenerate");
    chosen.push_back(best_idx);
    used[best_idx] = 1;
  }

  const auto materialize = [&](const std::vector<int>& idx) {
    std::vector<Complex> pts;
    pts.reserve(idx.size());
    for (int k : idx) pts.push_back(cand[k]);
    return pts;
  };
  double lv = detail::uni_log_vdm(materialize(chosen));

  for (int slot = 0; slot < N; ++slot) {
    double best_gain = 1.0;
    int best_c = -1;
    double best_lv = lv;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      if (used[c]) continue;
      std::vector<int> trial = chosen;
      trial[slot] = static_cast<int>(c);
      const double lt = detail::uni_log_vdm(materialize(trial));
      const double gain = std::exp(lt - lv);
      if (gain > best_gain * (1.0 + 1e-12)) {
        best_gain = gain;
        best_c = static_cast<int>(c);
        best_lv = lt;
      }
    }
    if (best_c >= 0) {
      used[chosen[slot]] = 0;
      used[best_c] = 1;
      chosen[slot] = best_c;
      lv = best_lv;
    }
  }

  UnivariateFekete out;
  out.points = materialize(chosen);
  out.log_vdm = lv;
  out.estimate = std::exp(2.0 * lv / (static_cast<double>(N) * (N - 1)));
  return out;
}

enum class CircledKind { Ball, Polydisk, ModulusCurve };

/// A 2-circled compact set in C^2, described by its modulus region:
///   Ball{r}            |z1|^2 + |z2|^2 <= r^2
///   Polydisk{r1,r2}    |z1| <= r1, |z2| <= r2
///   ModulusCurve{h}    |z2| <= h(|z1|), h piecewise linear nonincreasing
class CircledSet2 {
 public:
  static CircledSet2 ball(double r = 1.0) {
    if (!(r > 0.0)) throw domain_error("ball radius must be positive");
    CircledSet2 k;
    k.kind_ = CircledKind::Ball;
    k.r1_ = r;
    return k;
  }

  static CircledSet2 polydisk(double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw domain_error("polydisk radii must be positive");
    CircledSet2 k;
    k.kind_ = CircledKind::Polydisk;
    k.r1_ = r1;
    k.r2_ = r2;
    return k;
  }

  /// Outer modulus boundary r2 = h(r1) through the samples (r1, h(r1)):
  /// r1 strictly increasing from 0, h nonnegative and nonincreasing.
  static CircledSet2 modulus_curve(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw domain_error("modulus curve needs >= 2 samples");
    if (std::abs(samples.front().first) > 1e-12)
      throw domain_error("modulus curve must start at r1 = 0");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].second < 0.0) throw domain_error("modulus curve must be nonnegative");
      if (i > 0) {
        if (!(samples[i].first > samples[i - 1].first))
          throw domain_error("modulus curve r1 samples must be strictly increasing");
        if (samples[i].second > samples[i - 1].second + 1e-12 * samples.front().second)
          throw domain_error("modulus curve must be nonincreasing");
      }
    }
    samples.front().first = 0.0;
    CircledSet2 k;
    k.kind_ = CircledKind::ModulusCurve;
    k.samples_ = std::move(samples);
    k.r1_ = k.samples_.back().first;
    return k;
  }

  CircledKind kind() const noexcept { return kind_; }
  double radius() const noexcept { return r1_; }
  double r1() const noexcept { return r1_; }
  double r2() const noexcept { return r2_; }
  const std::vector<std::pair<double, double>>& curve_samples() const { return samples_; }

  /// Curve height h(r1) by piecewise-linear interpolation.
  double curve_height(double r) const {
    const auto& s = samples_;
    if (r <= s.front().first) return s.front().second;
    if (r >= s.back().first) return s.back().second;
    auto it = std::upper_bound(
        s.begin(), s.end(), r,
        [](double v, const std::pair<double, double>& q) { return v < q.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (r - x0) / (x1 - x0);
  }

  std::string to_string() const {
    switch (kind_) {
      case CircledKind::Ball:
        return "ball:r=" + std::to_string(r1_);
      case CircledKind::Polydisk:
        return "polydisk:r1=" + std::to_string(r1_) + ",r2=" + std::to_string(r2_);
      case CircledKind::ModulusCurve:
        return "curve[" + std::to_string(samples_.size()) + " samples]";
    }
    return "?";
  }

 private:
  CircledKind kind_ = CircledKind::Ball;
  double r1_ = 1.0, r2_ = 1.0;
  std::vector<std::pair<double, double>> samples_;
};

/// A product E x F of planar compacta.
struct ProductSet {
  PlanarCompact E;
  PlanarCompact F;
};

namespace detail {

/// Maximizes w(r) = t1 ln r + t2 ln h(r) over the curve by a 64-point coarse
/// scan (guarding non-unimodal boundaries) followed by golden-section
/// refinement of the bracketed maximum to 1e-12 relative in r.
inline double curve_log_max(const CircledSet2& K, double t1, double t2) {
  const double rmax = K.curve_samples().back().first;
  const auto obj = [&](double r) -> double {
    if (r <= 0.0) return t1 > 0.0 ? -std::numeric_limits<double>::infinity() : t2 * std::log(K.curve_height(0.0));
    const double h = K.curve_height(r);
    double v = t1 * std::log(r);
    if (t2 > 0.0) {
      if (h <= 0.0) return -std::numeric_limits<double>::infinity();
      v += t2 * std::log(h);
    }
    return v;
  };
  if (t1 == 0.0) {
    const double h0 = K.curve_height(0.0);
    return h0 > 0.0 ? t2 * std::log(h0) : -std::numeric_limits<double>::infinity();
  }
  if (t2 == 0.0) return t1 * std::log(rmax);

  constexpr int kScan = 64;
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScan; ++i) {
    const double r = rmax * (i + 0.5) / kScan;
    const double v = obj(r);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double lo = rmax * std::max(0, best - 1) / static_cast<double>(kScan);
  double hi = rmax * std::min(kScan, best + 2) / static_cast<double>(kScan);
  if (lo <= 0.0) lo = rmax * 1e-14;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = obj(x1), f2 = obj(x2);
  while (hi - lo > 1e-12 * rmax) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = obj(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = obj(x1);
    }
  }
  const double r = 0.5 * (lo + hi);
  return std::max({obj(r), obj(rmax), best_v});
}

/// ln tau for the unit-radius ball: (t1/2) ln(t1/s) + (t2/2) ln(t2/s) with
/// s = t1 + t2 and the 0^0 = 1 convention on the axes.
inline double ball_log_tau_unit(double t1, double t2) {
  const double s = t1 + t2;
  double v = 0.0;
  if (t1 > 0.0) v += 0.5 * t1 * std::log(t1 / s);
  if (t2 > 0.0) v += 0.5 * t2 * std::log(t2 / s);
  return v;
}

}  // namespace detail

/// Directional "Chebyshev" maximum max_{z in K} |z1|^t1 |z2|^t2 for real
/// exponents t >= 0, with the continuous extension on the axes.
inline double tau_circled(const CircledSet2& K, double t1, double t2) {
  if (t1 < 0.0 || t2 < 0.0) throw domain_error("tau_circled requires nonnegative exponents");
  if (t1 == 0.0 && t2 == 0.0) return 1.0;
  switch (K.kind()) {
    case CircledKind::Ball:
      return std::pow(K.radius(), t1 + t2) * std::exp(detail::ball_log_tau_unit(t1, t2));
    case CircledKind::Polydisk:
      return std::exp(t1 * std::log(K.r1()) + t2 * std::log(K.r2()));
    case CircledKind::ModulusCurve:
      return std::exp(detail::curve_log_max(K, t1, t2));
  }
  throw domain_error("tau_circled: unknown circled kind");
}

/// Sup norm of the monomial z^alpha over a circled set; the minimal monic
/// sup norm in its class for circled sets.
inline double sup_norm_monomial(const CircledSet2& K, const MultiIndex2& alpha) {
  return tau_circled(K, static_cast<double>(alpha.j1), static_cast<double>(alpha.j2));
}

/// Sup norm of z^alpha over a product of disks/circles (circled products).
inline double sup_norm_monomial(const ProductSet& K, const MultiIndex2& alpha) {
  const auto factor_radius = [](const PlanarCompact& E) {
    if (E.kind() != CompactKind::Disk && E.kind() != CompactKind::Circle)
      throw unsupported_error("sup_norm_monomial: product factors must be disks or circles");
    return E.radius();
  };
  return std::pow(factor_radius(K.E), static_cast<double>(alpha.j1)) *
         std::pow(factor_radius(K.F), static_cast<double>(alpha.j2));
}

namespace detail {

inline std::vector<Complex> factor_grid(const PlanarCompact& E, int resolution) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(resolution));
  switch (E.kind()) {
    case CompactKind::Disk:
    case CompactKind::Circle:
      // Shilov boundary of the disk is its bounding circle.
      for (int k = 0; k < resolution; ++k) {
        const double t = 2.0 * std::numbers::pi * k / resolution;
        out.push_back(E.radius() * Complex(std::cos(t), std::sin(t)));
      }
      return out;
    case CompactKind::Interval: {
      // Chebyshev-Lobatto grid clusters candidates near the endpoints.
      const double mid = 0.5 * (E.lo() + E.hi());
      const double half = 0.5 * (E.hi() - E.lo());
      for (int k = 0; k < resolution; ++k)
        out.push_back(Complex(mid + half * std::cos(std::numbers::pi * k / (resolution - 1)), 0.0));
      return out;
    }
    case CompactKind::PointCloud:
      return E.points();
  }
  throw unsupported_error("shilov_candidates: unsupported factor kind");
}

}  // namespace detail

/// Deterministic Fekete candidate grid on the distinguished boundary of a
/// product set: the tensor grid of per-factor grids.
inline std::vector<Point2> shilov_candidates(const ProductSet& K, int resolution) {
  if (resolution < 4) throw domain_error("shilov_candidates requires resolution >= 4");
  const std::vector<Complex> eg = detail::factor_grid(K.E, resolution);
  const std::vector<Complex> fg = detail::factor_grid(K.F, resolution);
  std::vector<Point2> out;
  out.reserve(eg.size() * fg.size());
  for (const Complex& e : eg)
    for (const Complex& f : fg) out.push_back({e, f});
  return out;
}

/// Deterministic Fekete candidate grid on the modulus boundary of a circled
/// set: (resolution/4) radial stations x resolution x resolution phase grid.
inline std::vector<Point2> shilov_candidates(const CircledSet2& K, int resolution) {
  if (resolution < 4) throw domain_error("shilov_candidates requires resolution >= 4");
  std::vector<Point2> out;
  const auto phase = [&](int j) {
    const double t = 2.0 * std::numbers::pi * j / resolution;
    return Complex(std::cos(t), std::sin(t));
  };
  switch (K.kind()) {
    case CircledKind::Polydisk:
      out.reserve(static_cast<std::size_t>(resolution) * resolution);
      for (int s = 0; s < resolution; ++s)
        for (int t = 0; t < resolution; ++t)
          out.push_back({K.r1() * phase(s), K.r2() * phase(t)});
      return out;
    case CircledKind::Ball: {
      const int nphi = resolution / 4;
      out.reserve(static_cast<std::size_t>(nphi) * resolution * resolution);
      for (int k = 0; k < nphi; ++k) {
        // Midpoint latitude grid keeps both moduli strictly positive.
        const double phi = (k + 0.5) * (0.5 * std::numbers::pi) / nphi;
        const double c = K.radius() * std::cos(phi);
        const double s = K.radius() * std::sin(phi);
        for (int i = 0; i < resolution; ++i)
          for (int j = 0; j < resolution; ++j) out.push_back({c * phase(i), s * phase(j)});
      }
      return out;
    }
    case CircledKind::ModulusCurve: {
      const int nr = resolution / 4;
      const double rmax = K.curve_samples().back().first;
      out.reserve(static_cast<std::size_t>(nr) * resolution * resolution);
      for (int k = 0; k < nr; ++k) {
        const double r = rmax * (k + 0.5) / nr;
        const double h = K.curve_height(r);
        for (int i = 0; i < resolution; ++i)
          for (int j = 0; j < resolution; ++j) out.push_back({r * phase(i), h * phase(j)});
      }
      return out;
    }
  }
  throw unsupported_error("shilov_candidates: unknown circled kind");
}

/// Either a product set or a circled set, as parsed from the CLI set
/// mini-language.
using CompactSet2 = std::variant<ProductSet, CircledSet2>;

inline std::vector<Point2> shilov_candidates(const CompactSet2& K, int resolution) {
  return std::visit([&](const auto& k) { return shilov_candidates(k, resolution); }, K);
}

/// Parses the set mini-language:
///   ball | ball:r=R | polydisk[:r1=A,r2=B] | curve:file=PATH
///   | product:FACTORxFACTOR  with FACTOR = disk(R) | circle(R) | interval(LO,HI)
inline CompactSet2 parse_set(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string head(spec.substr(0, colon));
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "ball") {
    double r = 1.0;
    if (!args.empty()) {
      for (const auto& [k, v] : detail::parse_kv_list(args)) {
        if (k == "r")
          r = detail::parse_number(v);
        else
          throw parse_error("unknown ball parameter", k);
      }
    }
    return CircledSet2::ball(r);
  }
  if (head == "polydisk") {
    double r1 = 1.0, r2 = 1.0;
    if (!args.empty()) {
      for (const auto& [k, v] : detail::parse_kv_list(args)) {
        if (k == "r1")
          r1 = detail::parse_number(v);
        else if (k == "r2")
          r2 = detail::parse_number(v);
        else
          throw parse_error("unknown polydisk parameter", k);
      }
    }
    return CircledSet2::polydisk(r1, r2);
  }
  if (head == "curve") {
    for (const auto& [k, v] : detail::parse_kv_list(args)) {
      if (k == "file") return CircledSet2::modulus_curve(detail::read_xy_csv(v));
      throw parse_error("unknown curve parameter", k);
    }
    throw parse_error("curve needs file=", std::string(spec));
  }
  if (head == "product") {
    const std::size_t x = args.find('x');
    if (x == std::string_view::npos)
      throw parse_error("product needs FACTORxFACTOR", std::string(args));
    const auto parse_factor = [](std::string_view f) -> PlanarCompact {
      const std::size_t open = f.find('(');
      if (open == std::string_view::npos || f.back() != ')')
        throw parse_error("factor must be name(args)", std::string(f));
      const std::string name(f.substr(0, open));
      const std::string_view inner = f.substr(open + 1, f.size() - open - 2);
      if (name == "disk") return PlanarCompact::disk(detail::parse_number(inner));
      if (name == "circle") return PlanarCompact::circle(detail::parse_number(inner));
      if (name == "interval") {
        const std::size_t comma = inner.find(',');
        if (comma == std::string_view::npos)
          throw parse_error("interval needs LO,HI", std::string(inner));
        return PlanarCompact::interval(detail::parse_number(inner.substr(0, comma)),
                                       detail::parse_number(inner.substr(comma + 1)));
      }
      throw parse_error("unknown factor kind", name);
    };
    return ProductSet{parse_factor(args.substr(0, x)), parse_factor(args.substr(x + 1))};
  }
  throw parse_error("unknown set kind", head);
}

}  // namespace ctd
