#include "biaxial/geometry.hpp"

#include <gsl/gsl_spline.h>

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>

#include "biaxial/quadrature.hpp"

namespace biaxial {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// |x/a|^n + |y/b|^n = 1 through x = a sin(phi)/N, y = b cos(phi)/N,
// N = (sin^n + cos^n)^{1/n}, phi = t pi/2. With M = N^n the derivative
// simplifies to (a cos^{n-1}, -b sin^{n-1}) / (N M), free of cancellation.
class Superellipse final : public Shape {
 public:
  Superellipse(double a, double b, double n) : a_(a), b_(b), n_(n) {}

  Point point(double t) const override {
    const double phi = kHalfPi * t;
    const double S = std::sin(phi), C = std::cos(phi);
    const double N = std::pow(std::pow(S, n_) + std::pow(C, n_), 1.0 / n_);
    return {a_ * S / N, b_ * C / N};
  }

  Vec2 derivative(double t) const override {
    const double phi = kHalfPi * t;
    const double S = std::sin(phi), C = std::cos(phi);
    const double M = std::pow(S, n_) + std::pow(C, n_);
    const double NM = std::pow(M, 1.0 / n_) * M;
    return {kHalfPi * a_ * std::pow(C, n_ - 1.0) / NM, -kHalfPi * b_ * std::pow(S, n_ - 1.0) / NM};
  }

 private:
  double a_, b_, n_;
};

class Segment final : public Shape {
 public:
  Segment(double a, double b) : a_(a), b_(b) {}
  Point point(double t) const override { return {a_ * t, b_ * (1.0 - t)}; }
  Vec2 derivative(double) const override { return {a_, -b_}; }

 private:
  double a_, b_;
};

struct SplineDeleter {
  void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};

// Natural cubic spline in t for x and y. Evaluation passes a null
// accelerator, which GSL resolves by bisection; that keeps it thread-safe.
class SplineShape final : public Shape {
 public:
  SplineShape(const std::vector<double>& t, const std::vector<double>& x,
              const std::vector<double>& y)
      : sx_(gsl_spline_alloc(gsl_interp_cspline, t.size())),
        sy_(gsl_spline_alloc(gsl_interp_cspline, t.size())) {
    gsl_spline_init(sx_.get(), t.data(), x.data(), t.size());
    gsl_spline_init(sy_.get(), t.data(), y.data(), t.size());
  }

  Point point(double t) const override {
    t = std::clamp(t, 0.0, 1.0);
    return {gsl_spline_eval(sx_.get(), t, nullptr), gsl_spline_eval(sy_.get(), t, nullptr)};
  }

  Vec2 derivative(double t) const override {
    t = std::clamp(t, 0.0, 1.0);
    return {gsl_spline_eval_deriv(sx_.get(), t, nullptr),
            gsl_spline_eval_deriv(sy_.get(), t, nullptr)};
  }

 private:
  std::unique_ptr<gsl_spline, SplineDeleter> sx_, sy_;
};

void check_ab(double a, double b) {
  if (!(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)))
    throw DomainError("curve: a and b must be positive");
}

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("curve: epsilon must lie in (0, 1)");
}

// Least-squares slope of log(v) against log(u).
double loglog_slope(const std::vector<double>& u, const std::vector<double>& v) {
  double su = 0, sv = 0, suu = 0, suv = 0;
  int n = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0 && v[i] > 0.0)) continue;
    const double lu = std::log(u[i]), lv = std::log(v[i]);
    su += lu, sv += lv, suu += lu * lu, suv += lu * lv;
    ++n;
  }
  if (n < 2) return 0.0;
  const double den = n * suu - su * su;
  return den != 0.0 ? (n * suv - su * sv) / den : 0.0;
}

// Ratios drifting by less than this power over the sampled decades count as bounded.
constexpr double kSlopeTol = 0.1;

}  // namespace

std::string_view to_string(CurveFamily f) {
  switch (f) {
    case CurveFamily::FlattenedOval: return "flattened_oval";
    case CurveFamily::UserParametric: return "user";
    case CurveFamily::QuarterEllipse: return "ellipse";
    case CurveFamily::Chord: return "chord";
  }
  return "?";
}

CurveFamily curve_family_from_string(std::string_view name) {
  for (auto f : {CurveFamily::FlattenedOval, CurveFamily::UserParametric,
                 CurveFamily::QuarterEllipse, CurveFamily::Chord})
    if (to_string(f) == name) return f;
  throw DomainError("unknown curve family: " + std::string(name));
}

std::string_view to_string(Region::Kind k) {
  switch (k) {
    case Region::Inside: return "inside";
    case Region::OnGamma: return "on_gamma";
    case Region::OnAxisSegment: return "on_axis";
    case Region::Outside: return "outside";
  }
  return "?";
}

Curve::Curve(std::shared_ptr<const Shape> shape, CurveFamily family, double a, double b,
             double epsilon, int n_table)
    : shape_(std::move(shape)), family_(family), a_(a), b_(b), epsilon_(epsilon) {
  if (n_table < 16) throw DomainError("curve: table size must be at least 16");
  const int n = n_table;
  t_.resize(n + 1);
  s_.resize(n + 1);
  ds_.resize(n + 1);
  nodes_.resize(n + 1);
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-14;
  auto sp = [&](double t) { return speed(t); };
  for (int k = 0; k <= n; ++k) {
    t_[k] = static_cast<double>(k) / n;
    ds_[k] = speed(t_[k]);
    nodes_[k] = point(t_[k]);
    s_[k] = k == 0 ? 0.0 : s_[k - 1] + quad::integrate_adaptive(sp, t_[k - 1], t_[k], opt).value;
  }
  nodes_.front() = {0.0, b_};
  nodes_.back() = {a_, 0.0};

  // Orientation: probe both sides of the midpoint against the polygon.
  const Vec2 tau = tangent(0.5);
  const Point m = point(0.5);
  const double d = 1e-3 * length();
  const Vec2 n0{-tau.y, tau.x};
  const bool plus_out = !polygon_inside({m.x + d * n0.x, m.y + d * n0.y});
  const bool minus_in = polygon_inside({m.x - d * n0.x, m.y - d * n0.y});
  orientation_ = (plus_out && minus_in) ? 1.0 : -1.0;
}

double Curve::speed(double t) const {
  const Vec2 d = derivative(t);
  return std::hypot(d.x, d.y);
}

Vec2 Curve::tangent(double t) const {
  const Vec2 d = derivative(t);
  const double h = std::hypot(d.x, d.y);
  return {d.x / h, d.y / h};
}

Vec2 Curve::normal(double t) const {
  const Vec2 tau = tangent(t);
  return {-orientation_ * tau.y, orientation_ * tau.x};
}

Vec2 Curve::ccw_tangent(double t) const {
  const Vec2 n = normal(t);
  return {-n.y, n.x};
}

double Curve::s_of_t(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  const int n = table_size();
  const int k = std::min(static_cast<int>(t * n), n - 1);
  const double h = t_[k + 1] - t_[k];
  const double u = (t - t_[k]) / h;
  // cubic Hermite with s' = speed at both nodes
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
  return h00 * s_[k] + h10 * h * ds_[k] + h01 * s_[k + 1] + h11 * h * ds_[k + 1];
}

double Curve::t_of_s(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= length()) return 1.0;
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const int k = static_cast<int>(it - s_.begin()) - 1;
  double lo = t_[k], hi = t_[k + 1];
  double t = lo + (hi - lo) * (s - s_[k]) / (s_[k + 1] - s_[k]);
  for (int it2 = 0; it2 < 50; ++it2) {
    const double f = s_of_t(t) - s;
    if (f > 0) hi = t; else lo = t;
    double tn = t - f / speed(t);
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (std::abs(tn - t) <= 1e-16) return tn;
    t = tn;
  }
  return t;
}

std::pair<double, double> Curve::nearest(Point p) const {
  const int n = table_size();
  int best = 0;
  double bd = INFINITY;
  for (int k = 0; k <= n; ++k) {
    const double d = std::hypot(nodes_[k].x - p.x, nodes_[k].y - p.y);
    if (d < bd) bd = d, best = k;
  }
  const double lo = t_[std::max(best - 1, 0)], hi = t_[std::min(best + 1, n)];
  auto dist2 = [&](double t) {
    const Point q = point(t);
    return (q.x - p.x) * (q.x - p.x) + (q.y - p.y) * (q.y - p.y);
  };
  double t = boost::math::tools::brent_find_minima(dist2, lo, hi, 52).first;
  // Gauss-Newton polish on (p(t) - p) . p'(t) = 0
  for (int i = 0; i < 3; ++i) {
    const Point q = point(t);
    const Vec2 d = derivative(t);
    const double g = (q.x - p.x) * d.x + (q.y - p.y) * d.y;
    const double tn = std::clamp(t - g / (d.x * d.x + d.y * d.y), lo, hi);
    if (dist2(tn) > dist2(t)) break;
    t = tn;
  }
  return {t, std::sqrt(dist2(t))};
}

bool Curve::polygon_inside(Point p) const {
  // S: (0,0) -> (a,0) -> Gamma reversed -> (0,b) -> (0,0)
  std::vector<Point> poly;
  poly.reserve(nodes_.size() + 1);
  poly.push_back({0.0, 0.0});
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) poly.push_back(*it);
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point& u = poly[i];
    const Point& v = poly[j];
    if ((u.y > p.y) != (v.y > p.y) && p.x < (v.x - u.x) * (p.y - u.y) / (v.y - u.y) + u.x)
      inside = !inside;
  }
  return inside;
}

Curve make_curve(CurveFamily family, double a, double b, double epsilon, int n_table) {
  check_ab(a, b);
  switch (family) {
    case CurveFamily::FlattenedOval:
      check_epsilon(epsilon);
      return Curve(std::make_shared<Superellipse>(a, b, 2.0 + epsilon), family, a, b, epsilon,
                   n_table);
    case CurveFamily::QuarterEllipse:
      check_epsilon(epsilon);
      return Curve(std::make_shared<Superellipse>(a, b, 2.0), family, a, b, epsilon, n_table);
    case CurveFamily::Chord:
      check_epsilon(epsilon);
      return Curve(std::make_shared<Segment>(a, b), family, a, b, epsilon, n_table);
    case CurveFamily::UserParametric:
      break;
  }
  throw DomainError("make_curve: user curves are built from samples");
}

Curve make_user_curve(const std::vector<double>& t, const std::vector<double>& x,
                      const std::vector<double>& y, double epsilon, int n_table) {
  check_epsilon(epsilon);
  const std::size_t n = t.size();
  if (n < 4 || x.size() != n || y.size() != n)
    throw DomainError("user curve: t, x, y must have equal length >= 4");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t[i] > t[i - 1])) throw DomainError("user curve: t must be strictly increasing");
  const double a = x.back(), b = y.front();
  check_ab(a, b);
  const double scale = std::max(a, b);
  if (std::abs(x.front()) > 1e-12 * scale || std::abs(y.back()) > 1e-12 * scale)
    throw DomainError("user curve: must start on the y-axis and end on the x-axis");
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (!(x[i] > 0.0 && y[i] > 0.0))
      throw DomainError("user curve: interior samples must lie in the open quadrant");
  std::vector<double> tn(n), xs = x, ys = y;
  for (std::size_t i = 0; i < n; ++i) tn[i] = (t[i] - t.front()) / (t.back() - t.front());
  tn.back() = 1.0;
  xs.front() = 0.0;
  ys.back() = 0.0;
  return Curve(std::make_shared<SplineShape>(tn, xs, ys), CurveFamily::UserParametric, a, b,
               epsilon, n_table);
}

Curve load_user_curve(const std::string& path, double epsilon, int n_table) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open curve file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return make_user_curve(j.at("t").get<std::vector<double>>(), j.at("x").get<std::vector<double>>(),
                           j.at("y").get<std::vector<double>>(), epsilon, n_table);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("curve file: ") + e.what());
  }
}

namespace {

// Second derivative of x and y with respect to arclength, by central
// differences of the unit tangent in t.
Vec2 curvature_vector(const Curve& c, double t, double h) {
  const double lo = std::max(0.0, t - h), hi = std::min(1.0, t + h);
  const Vec2 a = c.tangent(lo), b = c.tangent(hi);
  const double ds = c.speed(t) * (hi - lo);
  return {(b.x - a.x) / ds, (b.y - a.y) / ds};
}

ContactCheck contact(const Curve& c, bool at_A) {
  std::vector<double> dist, ratio;
  ContactCheck r;
  for (int k = 3; k <= 30; ++k) {
    const double d = std::ldexp(1.0, -k);
    const double t = at_A ? 1.0 - d : d;
    const Point p = c.point(t);
    const Vec2 tau = c.tangent(t);
    const double axis = at_A ? p.y : p.x;  // distance to the axis being met
    const double along = at_A ? std::abs(tau.x) : std::abs(tau.y);
    if (!(axis > 0.0)) continue;
    const double q = along / std::pow(axis, 1.0 + c.epsilon());
    r.constant = std::max(r.constant, q);
    if (k >= 12) {
      dist.push_back(axis);
      ratio.push_back(q);
    }
  }
  // the ratio is bounded when it does not grow as the axis distance shrinks
  r.slope = loglog_slope(dist, ratio);
  r.pass = std::isfinite(r.constant) && r.slope >= -kSlopeTol;
  return r;
}

std::pair<HolderCheck, HolderCheck> holder(const Curve& c) {
  HolderCheck hx{0.0, INFINITY, true}, hy{0.0, INFINITY, true};
  for (bool at_A : {false, true}) {
    std::vector<double> gap, qx, qy;
    for (int k = 2; k <= 22; ++k) {
      const double d1 = std::ldexp(1.0, -k), d2 = 0.5 * d1;
      const double t1 = at_A ? 1.0 - d1 : d1, t2 = at_A ? 1.0 - d2 : d2;
      const Vec2 f1 = curvature_vector(c, t1, 1e-3 * d2);
      const Vec2 f2 = curvature_vector(c, t2, 1e-3 * d2);
      const double ds = std::abs(c.s_of_t(t1) - c.s_of_t(t2));
      const double den = std::pow(ds, c.epsilon());
      gap.push_back(ds);
      qx.push_back(std::abs(f1.x - f2.x) / den);
      qy.push_back(std::abs(f1.y - f2.y) / den);
    }
    // Fit only quotients well above the finite-difference noise; a
    // quotient that decays towards the endpoint is bounded.
    auto update = [&](HolderCheck& h, const std::vector<double>& q) {
      const double peak = *std::max_element(q.begin(), q.end());
      h.quotient = std::max(h.quotient, peak);
      std::vector<double> u, v;
      for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] > 1e-3 * peak) u.push_back(gap[i]), v.push_back(q[i]);
      const double slope = u.size() >= 4 ? loglog_slope(u, v) : 0.0;
      h.slope = std::min(h.slope, slope);
      h.pass = h.pass && std::isfinite(peak) && slope >= -kSlopeTol;
    };
    update(hx, qx);
    update(hy, qy);
  }
  return {hx, hy};
}

}  // namespace

CurveReport validate_curve(const Curve& c) {
  CurveReport r;
  r.length = c.length();
  r.min_speed = INFINITY;
  for (int k = 0; k <= c.table_size(); ++k)
    r.min_speed = std::min(r.min_speed, c.speed(static_cast<double>(k) / c.table_size()));
  r.contact_A = contact(c, true);
  r.contact_B = contact(c, false);
  std::tie(r.holder_x, r.holder_y) = holder(c);
  const Point m = c.point(0.5);
  const Vec2 n = c.normal(0.5);
  const double d = 1e-3 * c.length();
  r.orientation_ok = !c.polygon_inside({m.x + d * n.x, m.y + d * n.y}) &&
                     c.polygon_inside({m.x - d * n.x, m.y - d * n.y});
  r.pass = r.min_speed > 0.0 && r.contact_A.pass && r.contact_B.pass && r.holder_x.pass &&
           r.holder_y.pass && r.orientation_ok;
  return r;
}

Region locate(const Curve& c, Point p, double tol) {
  if (p.x < -tol || p.y < -tol) return {Region::Outside};
  const auto [t, d] = c.nearest(p);
  if (d <= tol) return {Region::OnGamma, t};
  if ((std::abs(p.x) <= tol && p.y <= c.b() + tol) || (std::abs(p.y) <= tol && p.x <= c.a() + tol))
    return {Region::OnAxisSegment};
  if (d < 1e-2 * c.length()) {
    // close to Gamma the polygon is too coarse; use the side of the normal
    const Point q = c.point(t);
    const Vec2 n = c.normal(t);
    return {(p.x - q.x) * n.x + (p.y - q.y) * n.y > 0.0 ? Region::Outside : Region::Inside};
  }
  return {c.polygon_inside(p) ? Region::Inside : Region::Outside};
}

Vec2 outward_normal(const Curve& c, double s) { return c.normal(c.t_of_s(s)); }

}  // namespace biaxial
