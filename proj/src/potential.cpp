#include "biaxial/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace biaxial {

Density Density::constant(double v) {
  return Density([v](double) { return v; });
}

PanelRule::PanelRule(std::vector<double> breaks, int order)
    : breaks_(std::move(breaks)), order_(order) {
  if (order < 1 || breaks_.size() < 2) throw DomainError("PanelRule: need a panel and order >= 1");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i] > breaks_[i - 1])) throw DomainError("PanelRule: breaks must increase");
  const auto& gl = quad::gauss_legendre(order);
  for (int p = 0; p < panels(); ++p) {
    const double lo = breaks_[p], hi = breaks_[p + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int k = 0; k < order; ++k) {
      nodes_.push_back(mid + half * gl.nodes[k]);
      weights_.push_back(half * gl.weights[k]);
    }
  }
  bary_.resize(order);
  for (int j = 0; j < order; ++j) {
    double w = 1.0;
    for (int k = 0; k < order; ++k)
      if (k != j) w *= gl.nodes[j] - gl.nodes[k];
    bary_[j] = 1.0 / w;
  }
}

PanelRule PanelRule::uniform(int n_panels, int order) {
  if (n_panels < 1) throw DomainError("PanelRule: need at least one panel");
  std::vector<double> b(n_panels + 1);
  for (int i = 0; i <= n_panels; ++i) b[i] = static_cast<double>(i) / n_panels;
  return PanelRule(std::move(b), order);
}

PanelRule PanelRule::graded(int n_panels, int order, int k) {
  if (n_panels < 1 || k < 1) throw DomainError("PanelRule: need at least one panel and k >= 1");
  std::vector<double> b(n_panels + 1);
  for (int i = 0; i <= n_panels; ++i) {
    const double u = static_cast<double>(i) / n_panels;
    const double a = std::pow(u, k), c = std::pow(1.0 - u, k);
    b[i] = a / (a + c);
  }
  return PanelRule(std::move(b), order);
}

int PanelRule::panel_containing(double t) const {
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const int p = static_cast<int>(it - breaks_.begin()) - 1;
  return std::clamp(p, 0, panels() - 1);
}

void PanelRule::lagrange(int p, double t, double* out) const {
  const auto& gl = quad::gauss_legendre(order_);
  const double lo = breaks_[p], hi = breaks_[p + 1];
  const double u = (2.0 * t - lo - hi) / (hi - lo);
  double den = 0.0;
  for (int j = 0; j < order_; ++j) {
    const double d = u - gl.nodes[j];
    if (d == 0.0) {
      std::fill(out, out + order_, 0.0);
      out[j] = 1.0;
      return;
    }
    out[j] = bary_[j] / d;
    den += out[j];
  }
  for (int j = 0; j < order_; ++j) out[j] /= den;
}

double PanelRule::interpolate(const std::vector<double>& values, double t) const {
  const int p = panel_containing(t);
  std::vector<double> L(order_);
  lagrange(p, t, L.data());
  double v = 0.0;
  for (int j = 0; j < order_; ++j) v += L[j] * values[p * order_ + j];
  return v;
}

Density density_from_nodes(const PanelRule& rule, std::vector<double> values) {
  if (static_cast<int>(values.size()) != rule.size())
    throw DomainError("density_from_nodes: value count does not match the rule");
  return Density([rule, v = std::move(values)](double t) { return rule.interpolate(v, t); });
}

double kernel_K3(const Curve& c, double t_field, double t_source, const FundamentalSolution& q) {
  return q.weighted_normal_derivative(c.point(t_field), c.ccw_tangent(t_field), c.point(t_source));
}

namespace {

// Parameter distance below which K3 is not evaluated directly: the normal
// component of the chord is O(h^2) and rounding in the curve points is O(eps).
constexpr double kDiagonalCut = 1e-6;

quad::AdaptiveOptions adaptive(const PotentialOptions& opt) {
  quad::AdaptiveOptions a;
  a.abs_tol = opt.abs_tol;
  a.rel_tol = opt.rel_tol;
  a.max_intervals = opt.max_intervals;
  return a;
}

}  // namespace

PotentialValue double_layer(const Curve& c, const Density& mu, Point p0,
                            const FundamentalSolution& q, const PotentialOptions& opt) {
  PotentialValue out;
  const auto [t_star, d] = c.nearest(p0);
  out.distance = d;
  if (d < opt.near_floor * c.length()) {
    out.value = NAN;
    out.flagged = true;
    return out;
  }
  auto f = [&](double t) {
    return mu(t) * q.weighted_normal_derivative(c.point(t), c.ccw_tangent(t), p0) * c.speed(t);
  };
  std::vector<double> breaks;
  if (t_star > 0.0 && t_star < 1.0 && d < 0.25 * c.length()) breaks.push_back(t_star);
  const auto r = quad::integrate_adaptive(f, 0.0, 1.0, adaptive(opt), breaks);
  out.value = r.value;
  out.error = r.error;
  out.flagged = !r.converged;
  return out;
}

double j_value(const Curve& c, Point p0, const Params& p) { return j_value(c.a(), p0, p); }

double j_value(double a_dom, Point p0, const Params& p) {
  if (!(p0.y > 0.0)) throw DomainError("j_value: requires y0 > 0 (use j_axis on y0 = 0)");
  const double al = p.alpha(), be = p.beta(), a = 1.0 + al - be;
  const Gauss2F1 F({a, al, 2.0 * al});
  const double x0 = p0.x, y0 = p0.y;
  const double pre = (1.0 - 2.0 * be) * k3_constant(p) * std::pow(y0, 1.0 - 2.0 * be);
  auto f = [&](double x) {
    const double dx = x - x0;
    const double r2 = dx * dx + y0 * y0;
    const double z = -4.0 * x * x0 / r2;
    const double w = ((x + x0) * (x + x0) + y0 * y0) / r2;
    return std::pow(x, 2.0 * al) * std::pow(r2, -a) * F.evaluate(z, w).value;
  };
  std::vector<double> breaks;
  if (x0 > 0.0 && x0 < a_dom) breaks.push_back(x0);
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-12;
  opt.max_intervals = 20000;
  return pre * quad::integrate_adaptive(f, 0.0, a_dom, opt, breaks).value;
}

double j_axis(double y0, double a_dom, const Params& p) {
  if (!(y0 >= 0.0)) throw DomainError("j_axis: requires y0 >= 0");
  const double al = p.alpha(), be = p.beta();
  const double r = a_dom * a_dom / (y0 * y0 + a_dom * a_dom);
  const Gauss2F1 F({0.5 + be, 0.5 + al, 1.5 + al});
  return (1.0 - 2.0 * be) / (1.0 + 2.0 * al) * std::pow(r, 0.5 + al) * k3_constant(p) *
         F.evaluate(r, y0 * y0 / (y0 * y0 + a_dom * a_dom)).value;
}

double j_axis_inverse(double y0, double a_dom, const Params& p) {
  if (!(y0 > 0.0)) throw DomainError("j_axis_inverse: requires y0 > 0");
  const double al = p.alpha(), be = p.beta();
  const double ratio = a_dom / y0;
  return (1.0 - 2.0 * be) * k3_constant(p) / (1.0 + 2.0 * al) * std::pow(ratio, 1.0 + 2.0 * al) *
         gauss_2f1({1.0 + al - be, 0.5 + al, 1.5 + al}, -ratio * ratio);
}

std::string_view to_string(Side s) { return s == Side::Interior ? "interior" : "exterior"; }

Side side_from_string(std::string_view name) {
  if (name == "interior") return Side::Interior;
  if (name == "exterior") return Side::Exterior;
  throw DomainError("side must be interior or exterior");
}

double kernel_log_coefficient(const Curve& c, double t, const Params& p) {
  const Point q = c.point(t);
  const Vec2 n = c.normal(t);
  const double gx = q.x > 0.0 ? p.alpha() * n.x / q.x : 0.0;
  const double gy = q.y > 0.0 ? p.beta() * n.y / q.y : 0.0;
  return (gx + gy) / (2.0 * std::numbers::pi);
}

double log_moment(double t) {
  auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  return xlogx(t) + xlogx(1.0 - t) - 1.0;
}

PotentialValue boundary_integral(const Curve& c, const Density& mu, double t,
                                 const FundamentalSolution& q, const PotentialOptions& opt) {
  const Point src = c.point(t);
  // K(s,t) speed(s) = coef ln|s - t| + continuous; the log part of mu(t) is
  // integrated exactly and the remainder numerically.
  const double coef = kernel_log_coefficient(c, t, q.params()) * c.speed(t);
  const double mu_t = mu(t);
  auto g = [&](double s) {
    return mu(s) * q.weighted_normal_derivative(c.point(s), c.ccw_tangent(s), src) * c.speed(s) -
           mu_t * coef * std::log(std::abs(s - t));
  };
  const double cut = kDiagonalCut;
  const double g_lo = t - cut > 0.0 ? g(t - cut) : 0.0;
  const double g_hi = t + cut < 1.0 ? g(t + cut) : 0.0;
  auto f = [&](double s) {
    // closer than the cut the chord loses its digits; hold the remainder
    if (s < t && t - s < cut) return g_lo;
    if (s >= t && s - t < cut) return g_hi;
    return g(s);
  };
  std::vector<double> breaks;
  if (t > 0.0 && t < 1.0) breaks.push_back(t);
  const auto r = quad::integrate_adaptive(f, 0.0, 1.0, adaptive(opt), breaks);
  return {r.value + mu_t * coef * log_moment(t), r.error, 0.0, !r.converged};
}

double boundary_limit(const Curve& c, const Density& mu, double t, Side side,
                      const FundamentalSolution& q, const PotentialOptions& opt) {
  const double sign = side == Side::Interior ? -0.5 : 0.5;
  return sign * mu(t) + boundary_integral(c, mu, t, q, opt).value;
}

std::vector<PotentialValue> double_layer_batch(const Curve& c, const Density& mu,
                                               const std::vector<Point>& points,
                                               const FundamentalSolution& q,
                                               const PotentialOptions& opt, Exec exec) {
  std::vector<PotentialValue> out(points.size());
  const long n = static_cast<long>(points.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = double_layer(c, mu, points[i], q, opt);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[i] = double_layer(c, mu, points[i], q, opt);
  }
  return out;
}

}  // namespace biaxial
