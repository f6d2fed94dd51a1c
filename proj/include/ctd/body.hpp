#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctd/errors.hpp"
#include "ctd/multi_index.hpp"
#include "ctd/special_functions.hpp"

namespace ctd {

enum class BodyKind { Triangle, Rectangle, LpBall, Graph };

/// Geometric functionals of a body C: volume, first moments and the ratio
/// A_C that normalizes the directional-Chebyshev integral.
struct GeometricMoments {
  double vol;   ///< area of C
  double M_C;   ///< integral of (x + y) over C
  double A_C;   ///< M_C / vol
  double A;     ///< integral of x over C  (= int_0^b x f(x) dx)
  double B;     ///< integral of y over C  (= int_0^a y g(y) dy)
};

/// A body C in the closed positive quadrant, given as one of four variants:
///   Triangle{a,b}   vertices (0,0), (b,0), (0,a)
///   Rectangle{a,b}  [0,b] x [0,a]
///   LpBall{p,r}     x^p + y^p <= r^p  (p = infinity gives the square [0,r]^2)
///   Graph{samples}  region under a piecewise-linear concave profile f
/// Every variant is a lower set sandwiched between two simplices
/// eps*Sigma subset C subset delta*Sigma, with the witnesses exposed by
/// sandwich().  All instances are immutable.
class BodySpec {
 public:
  static BodySpec simplex() { return triangle(1.0, 1.0); }

  static BodySpec triangle(double a, double b) {
    require_positive(a, "triangle a");
    require_positive(b, "triangle b");
    BodySpec c;
    c.kind_ = BodyKind::Triangle;
    c.a_ = a;
    c.b_ = b;
    c.eps_ = std::min(a, b);
    c.delta_ = std::max(a, b);
    return c;
  }

  static BodySpec rectangle(double a, double b) {
    require_positive(a, "rectangle a");
    require_positive(b, "rectangle b");
    BodySpec c;
    c.kind_ = BodyKind::Rectangle;
    c.a_ = a;
    c.b_ = b;
    c.eps_ = std::min(a, b);
    c.delta_ = a + b;
    return c;
  }

  /// L^p ball of radius r (default 1).  p may be infinity; p < 1 gives a
  /// nonconvex (but still lower-set) body.
  static BodySpec lp_ball(double p, double radius = 1.0) {
    if (!(p > 0.0)) throw domain_error("lp_ball requires p > 0");
    require_positive(radius, "lp_ball radius");
    BodySpec c;
    c.kind_ = BodyKind::LpBall;
    c.p_ = p;
    c.radius_ = radius;
    c.a_ = c.b_ = radius;
    if (std::isinf(p)) {
      c.eps_ = radius;
      c.delta_ = 2.0 * radius;
    } else if (p >= 1.0) {
      c.eps_ = radius;
      c.delta_ = radius * std::pow(2.0, 1.0 - 1.0 / p);
    } else {
      c.eps_ = radius * std::pow(2.0, 1.0 - 1.0 / p);
      c.delta_ = radius;
    }
    return c;
  }

  /// Region under a piecewise-linear profile through the given samples
  /// (x, f(x)): x strictly increasing from 0, f nonincreasing and concave,
  /// f(last) = 0.
  static BodySpec graph(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw domain_error("graph body needs at least 2 samples");
    const double xs_scale = std::max(1.0, std::abs(samples.back().first));
    const double ys_scale = std::max(1.0, std::abs(samples.front().second));
    if (std::abs(samples.front().first) > 1e-12 * xs_scale)
      throw domain_error("graph profile must start at x = 0");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].second < -1e-12 * ys_scale)
        throw domain_error("graph profile must be nonnegative");
      if (i > 0) {
        if (!(samples[i].first > samples[i - 1].first))
          throw domain_error("graph sample x-values must be strictly increasing");
        if (samples[i].second > samples[i - 1].second + 1e-12 * ys_scale)
          throw domain_error("graph profile must be nonincreasing");
      }
    }
    if (std::abs(samples.back().second) > 1e-12 * ys_scale)
      throw domain_error("graph profile must end at f(b) = 0");
    // Midpoint concavity scan: each interior sample must lie on or above the
    // chord of its neighbours (convex bodies only outside the LpBall family).
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
      const auto& [x0, y0] = samples[i - 1];
      const auto& [x2, y2] = samples[i + 1];
      const double chord = y0 + (y2 - y0) * (samples[i].first - x0) / (x2 - x0);
      if (samples[i].second < chord - 1e-12 * ys_scale)
        throw domain_error("graph profile must be concave");
    }
    samples.front().first = 0.0;
    samples.back().second = 0.0;
    BodySpec c;
    c.kind_ = BodyKind::Graph;
    c.samples_ = std::move(samples);
    c.b_ = c.samples_.back().first;
    c.a_ = c.samples_.front().second;
    if (!(c.a_ > 0.0)) throw domain_error("graph profile must have f(0) > 0");
    // On a piecewise-linear boundary x + y is linear per segment, so its
    // extrema over the boundary sit at the sample points.
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& [x, y] : c.samples_) {
      lo = std::min(lo, x + y);
      hi = std::max(hi, x + y);
    }
    c.eps_ = lo;
    c.delta_ = hi;
    return c;
  }

  BodyKind kind() const noexcept { return kind_; }
  bool lower_set() const noexcept { return true; }
  bool convex() const noexcept { return !(kind_ == BodyKind::LpBall && p_ < 1.0); }
  /// Witnesses (eps, delta) of eps*Sigma subset C subset delta*Sigma.
  std::pair<double, double> sandwich() const noexcept { return {eps_, delta_}; }

  /// Extent along the x-axis (the profile domain is [0, xmax]).
  double xmax() const noexcept { return b_; }
  /// Extent along the y-axis.
  double ymax() const noexcept { return a_; }
  double triangle_a() const noexcept { return a_; }
  double triangle_b() const noexcept { return b_; }
  double lp_exponent() const noexcept { return p_; }
  double lp_radius() const noexcept { return radius_; }
  const std::vector<std::pair<double, double>>& graph_samples() const { return samples_; }

  /// Membership with tolerance 1e-12 on the defining inequality.
  bool contains(double x, double y) const {
    if (x < 0.0 || y < 0.0) throw domain_error("contains requires nonnegative coordinates");
    if (kind_ == BodyKind::Graph) {
      const double tol = 1e-12 * std::max({1.0, a_, b_});
      if (x > b_ + tol) return false;
      return y <= profile_f(std::min(x, b_)) + tol;
    }
    return closed_form_gauge(x, y) <= 1.0 + 1e-12;
  }

  /// Minkowski-type gauge inf{t > 0 : (x, y) in tC}; 0 at the origin.
  double gauge(double x, double y) const {
    if (x < 0.0 || y < 0.0) throw domain_error("gauge requires nonnegative coordinates");
    if (x == 0.0 && y == 0.0) return 0.0;
    if (kind_ != BodyKind::Graph) return closed_form_gauge(x, y);
    // Bisection on t; the sandwich brackets t* between (x+y)/delta and
    // (x+y)/eps.
    double lo = (x + y) / delta_ * (1.0 - 1e-9);
    double hi = (x + y) / eps_ * (1.0 + 1e-9);
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (contains(x / mid, y / mid))
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  }

  /// deg_C of a monomial exponent: the ceiling of the gauge, with values
  /// within 1e-9 of an integer snapped first so boundary lattice points get
  /// their exact dilate.
  std::int64_t deg_C(const MultiIndex2& alpha) const {
    double g = gauge(static_cast<double>(alpha.j1), static_cast<double>(alpha.j2));
    const double r = std::round(g);
    if (std::abs(g - r) <= 1e-9) g = r;
    return static_cast<std::int64_t>(std::ceil(g));
  }

  /// All alpha in nC intersect N^2, grlex ascending.
  std::vector<MultiIndex2> enumerate_lattice(std::int64_t n) const {
    if (n < 1) throw domain_error("enumerate_lattice requires n >= 1");
    const double nd = static_cast<double>(n);
    const auto bound = static_cast<std::int64_t>(std::ceil(nd * delta_)) + 1;
    std::vector<MultiIndex2> out;
    for (std::int64_t j1 = 0; j1 <= bound; ++j1) {
      if (j1 > 0 && !contains(static_cast<double>(j1) / nd, 0.0)) break;
      for (std::int64_t j2 = 0; j2 <= bound; ++j2) {
        if (!contains(static_cast<double>(j1) / nd, static_cast<double>(j2) / nd)) break;
        out.push_back({j1, j2});
      }
    }
    std::sort(out.begin(), out.end(), grlex_less);
    return out;
  }

  GeometricMoments moments() const {
    double vol = 0.0, A = 0.0, B = 0.0;
    switch (kind_) {
      case BodyKind::Triangle:
        vol = a_ * b_ / 2.0;
        A = a_ * b_ * b_ / 6.0;
        B = a_ * a_ * b_ / 6.0;
        break;
      case BodyKind::Rectangle:
        vol = a_ * b_;
        A = a_ * b_ * b_ / 2.0;
        B = a_ * a_ * b_ / 2.0;
        break;
      case BodyKind::LpBall: {
        const double r = radius_;
        if (std::isinf(p_)) {
          vol = r * r;
          A = B = r * r * r / 2.0;
        } else {
          vol = r * r * std::exp(log_beta(1.0 / p_, 1.0 / p_)) / (2.0 * p_);
          A = B = r * r * r * std::exp(log_beta(1.0 / p_, 2.0 / p_)) / (3.0 * p_);
        }
        break;
      }
      case BodyKind::Graph:
        // Exact per linear segment: with y linear on [x0,x1],
        //   int y dx        = w (y0 + y1) / 2
        //   int x y dx      = w ((2 x0 + x1) y0 + (x0 + 2 x1) y1) / 6
        //   int y^2 / 2 dx  = w (y0^2 + y0 y1 + y1^2) / 6
        for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
          const auto& [x0, y0] = samples_[i];
          const auto& [x1, y1] = samples_[i + 1];
          const double w = x1 - x0;
          vol += w * (y0 + y1) / 2.0;
          A += w * ((2.0 * x0 + x1) * y0 + (x0 + 2.0 * x1) * y1) / 6.0;
          B += w * (y0 * y0 + y0 * y1 + y1 * y1) / 6.0;
        }
        break;
    }
    const double M = A + B;
    return {vol, M, M / vol, A, B};
  }

  /// The dilate tC in the same variant family.
  BodySpec scale(double t) const {
    require_positive(t, "scale factor");
    switch (kind_) {
      case BodyKind::Triangle:
        return triangle(t * a_, t * b_);
      case BodyKind::Rectangle:
        return rectangle(t * a_, t * b_);
      case BodyKind::LpBall:
        return lp_ball(p_, t * radius_);
      case BodyKind::Graph: {
        auto s = samples_;
        for (auto& [x, y] : s) {
          x *= t;
          y *= t;
        }
        return graph(std::move(s));
      }
    }
    throw domain_error("scale: unknown body kind");
  }

  /// Upper boundary profile f: [0, xmax] -> [0, ymax], x-extent at nothing,
  /// i.e. C = {(x, y) : 0 <= x <= xmax, 0 <= y <= f(x)}.
  double profile_f(double x) const {
    switch (kind_) {
      case BodyKind::Triangle:
        return std::max(0.0, a_ * (1.0 - x / b_));
      case BodyKind::Rectangle:
        return a_;
      case BodyKind::LpBall: {
        if (std::isinf(p_)) return radius_;
        const double u = std::pow(std::min(1.0, x / radius_), p_);
        return radius_ * std::pow(std::max(0.0, 1.0 - u), 1.0 / p_);
      }
      case BodyKind::Graph:
        return pwl_eval(samples_, x);
    }
    throw domain_error("profile_f: unknown body kind");
  }

  /// Inverse profile g: [0, ymax] -> [0, xmax], the x-extent at height y.
  double profile_g(double y) const {
    switch (kind_) {
      case BodyKind::Triangle:
        return std::max(0.0, b_ * (1.0 - y / a_));
      case BodyKind::Rectangle:
        return b_;
      case BodyKind::LpBall: {
        if (std::isinf(p_)) return radius_;
        const double u = std::pow(std::min(1.0, y / radius_), p_);
        return radius_ * std::pow(std::max(0.0, 1.0 - u), 1.0 / p_);
      }
      case BodyKind::Graph: {
        // Largest x with f(x) >= y, by monotone inversion per segment.
        if (y <= 0.0) return b_;
        if (y >= a_) return 0.0;
        for (std::size_t i = samples_.size() - 1; i > 0; --i) {
          const auto& [x0, y0] = samples_[i - 1];
          const auto& [x1, y1] = samples_[i];
          if (y0 >= y && y >= y1) {
            if (y0 == y1) return x1;
            return x0 + (x1 - x0) * (y0 - y) / (y0 - y1);
          }
        }
        return 0.0;
      }
    }
    throw domain_error("profile_g: unknown body kind");
  }

  /// x-breakpoints between which profile_f is smooth; quadrature over the
  /// body iterates these subintervals so panels never straddle a kink.
  std::vector<double> profile_breakpoints() const {
    if (kind_ != BodyKind::Graph) return {0.0, b_};
    std::vector<double> xs;
    xs.reserve(samples_.size());
    for (const auto& [x, y] : samples_) xs.push_back(x);
    return xs;
  }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind_) {
      case BodyKind::Triangle:
        os << "triangle:a=" << a_ << ",b=" << b_;
        break;
      case BodyKind::Rectangle:
        os << "rect:a=" << a_ << ",b=" << b_;
        break;
      case BodyKind::LpBall:
        if (std::isinf(p_))
          os << "lp:p=inf";
        else
          os << "lp:p=" << p_;
        if (radius_ != 1.0) os << ",r=" << radius_;
        break;
      case BodyKind::Graph:
        os << "graph[" << samples_.size() << " samples,b=" << b_ << ",a=" << a_ << "]";
        break;
    }
    return os.str();
  }

 private:
  BodySpec() = default;

  static void require_positive(double v, const char* what) {
    if (!(v > 0.0) || std::isinf(v))
      throw domain_error(std::string(what) + " must be positive and finite");
  }

  double closed_form_gauge(double x, double y) const {
    switch (kind_) {
      case BodyKind::Triangle:
        return x / b_ + y / a_;
      case BodyKind::Rectangle:
        return std::max(x / b_, y / a_);
      case BodyKind::LpBall: {
        if (std::isinf(p_)) return std::max(x, y) / radius_;
        const double m = std::max(x, y);
        if (m == 0.0) return 0.0;
        return m * std::pow(std::pow(x / m, p_) + std::pow(y / m, p_), 1.0 / p_) / radius_;
      }
      case BodyKind::Graph:
        break;
    }
    throw domain_error("closed_form_gauge: graph bodies use bisection");
  }

  static double pwl_eval(const std::vector<std::pair<double, double>>& s, double x) {
    if (x <= s.front().first) return s.front().second;
    if (x >= s.back().first) return s.back().second;
    auto it = std::upper_bound(
        s.begin(), s.end(), x,
        [](double v, const std::pair<double, double>& q) { return v < q.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }

  BodyKind kind_ = BodyKind::Triangle;
  double a_ = 1.0, b_ = 1.0;        // Triangle/Rectangle extents (a on y, b on x)
  double p_ = 1.0, radius_ = 1.0;   // LpBall parameters
  std::vector<std::pair<double, double>> samples_;  // Graph profile
  double eps_ = 1.0, delta_ = 1.0;  // sandwich witnesses
};

/// Parses the body mini-language:
///   simplex | triangle:a=A,b=B | rect:a=A,b=B | lp:p=P (p=inf allowed)
///   | graph:file=PATH   (CSV rows "x,f(x)", strictly increasing x)
inline BodySpec parse_body(std::string_view spec);

namespace detail {

inline double parse_number(std::string_view tok) {
  std::string s(tok);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw parse_error("expected a number", s);
  }
  if (pos != s.size()) throw parse_error("trailing characters after number", s);
  return v;
}

/// Splits "k1=v1,k2=v2" into ordered pairs; validates the allowed key set.
inline std::vector<std::pair<std::string, std::string>> parse_kv_list(std::string_view args) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start <= args.size()) {
    std::size_t end = args.find(',', start);
    if (end == std::string_view::npos) end = args.size();
    const std::string_view item = args.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (item.empty() || eq == std::string_view::npos)
      throw parse_error("expected key=value", std::string(item));
    out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (end == args.size()) break;
    start = end + 1;
  }
  return out;
}

inline std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file", path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw parse_error("expected 'x,y' row", line);
    rows.emplace_back(parse_number(std::string_view(line).substr(0, comma)),
                      parse_number(std::string_view(line).substr(comma + 1)));
  }
  if (rows.size() < 2) throw parse_error("need at least 2 data rows", path);
  return rows;
}

}  // namespace detail

inline BodySpec parse_body(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string head(spec.substr(0, colon));
  const std::string_view args = colon == std::string_view::npos ? std::string_view{}
                                                                : spec.substr(colon + 1);
  if (head == "simplex") {
    if (!args.empty()) throw parse_error("simplex takes no arguments", std::string(args));
    return BodySpec::simplex();
  }
  if (head == "triangle" || head == "rect") {
    double a = 0.0, b = 0.0;
    bool has_a = false, has_b = false;
    for (const auto& [k, v] : detail::parse_kv_list(args)) {
      if (k == "a") {
        a = detail::parse_number(v);
        has_a = true;
      } else if (k == "b") {
        b = detail::parse_number(v);
        has_b = true;
      } else {
        throw parse_error("unknown " + head + " parameter", k);
      }
    }
    if (!has_a || !has_b) throw parse_error(head + " needs a= and b=", std::string(spec));
    return head == "triangle" ? BodySpec::triangle(a, b) : BodySpec::rectangle(a, b);
  }
  if (head == "lp") {
    double p = 0.0;
    bool has_p = false;
    for (const auto& [k, v] : detail::parse_kv_list(args)) {
      if (k == "p") {
        p = (v == "inf") ? std::numeric_limits<double>::infinity() : detail::parse_number(v);
        has_p = true;
      } else {
        throw parse_error("unknown lp parameter", k);
      }
    }
    if (!has_p) throw parse_error("lp needs p=", std::string(spec));
    return BodySpec::lp_ball(p);
  }
  if (head == "graph") {
    for (const auto& [k, v] : detail::parse_kv_list(args)) {
      if (k == "file") return BodySpec::graph(detail::read_xy_csv(v));
      throw parse_error("unknown graph parameter", k);
    }
    throw parse_error("graph needs file=", std::string(spec));
  }
  throw parse_error("unknown body kind", head);
}

}  // namespace ctd
