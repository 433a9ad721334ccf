#include "biaxial/greens.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <map>

namespace biaxial {

std::string_view to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::One: return "one";
    case SolutionKind::XPower: return "x_power";
    case SolutionKind::YPower: return "y_power";
    case SolutionKind::Product: return "product";
  }
  return "?";
}

SolutionKind solution_from_string(std::string_view name) {
  for (SolutionKind k : kAllSolutions)
    if (to_string(k) == name) return k;
  throw DomainError("unknown exact solution '" + std::string(name) + "'");
}

namespace {

bool has_x(SolutionKind k) { return k == SolutionKind::XPower || k == SolutionKind::Product; }
bool has_y(SolutionKind k) { return k == SolutionKind::YPower || k == SolutionKind::Product; }

// One-dimensional factor s^{1-2g} (or 1) with its derivatives.
struct Factor {
  double v, d1, d2;
};

Factor factor(bool on, double s, double g) {
  if (!on) return {1.0, 0.0, 0.0};
  const double e = 1.0 - 2.0 * g;
  return {std::pow(s, e), e * std::pow(s, -2.0 * g), -2.0 * g * e * std::pow(s, -2.0 * g - 1.0)};
}

double integrate(const std::function<double(double)>& f, const GreensOptions& opt) {
  using Rule = boost::math::quadrature::tanh_sinh<double>;
  static thread_local std::map<int, Rule> rules;
  auto it = rules.try_emplace(opt.max_levels, opt.max_levels).first;
  return it->second.integrate(f, 0.0, 1.0, opt.tol);
}

}  // namespace

double ExactSolution::value(Point z) const {
  const double ex = 1.0 - 2.0 * p_.alpha(), ey = 1.0 - 2.0 * p_.beta();
  return (has_x(kind_) ? std::pow(z.x, ex) : 1.0) * (has_y(kind_) ? std::pow(z.y, ey) : 1.0);
}

Vec2 ExactSolution::weighted_gradient(Point z) const {
  const double al = p_.alpha(), be = p_.beta();
  switch (kind_) {
    case SolutionKind::One: return {0.0, 0.0};
    case SolutionKind::XPower: return {(1.0 - 2.0 * al) * std::pow(z.y, 2.0 * be), 0.0};
    case SolutionKind::YPower: return {0.0, (1.0 - 2.0 * be) * std::pow(z.x, 2.0 * al)};
    case SolutionKind::Product: return {(1.0 - 2.0 * al) * z.y, (1.0 - 2.0 * be) * z.x};
  }
  return {0.0, 0.0};
}

double ExactSolution::energy_density(Point z) const {
  const double al = p_.alpha(), be = p_.beta();
  const double cx = (1.0 - 2.0 * al) * (1.0 - 2.0 * al), cy = (1.0 - 2.0 * be) * (1.0 - 2.0 * be);
  if ((has_x(kind_) && z.x == 0.0) || (has_y(kind_) && z.y == 0.0)) return 0.0;
  switch (kind_) {
    case SolutionKind::One: return 0.0;
    case SolutionKind::XPower: return cx * std::pow(z.x, -2.0 * al) * std::pow(z.y, 2.0 * be);
    case SolutionKind::YPower: return cy * std::pow(z.x, 2.0 * al) * std::pow(z.y, -2.0 * be);
    case SolutionKind::Product:
      return cx * std::pow(z.x, -2.0 * al) * std::pow(z.y, 2.0 - 2.0 * be) +
             cy * std::pow(z.x, 2.0 - 2.0 * al) * std::pow(z.y, -2.0 * be);
  }
  return 0.0;
}

double ExactSolution::operator_value(Point z) const {
  const double al = p_.alpha(), be = p_.beta();
  const Factor X = factor(has_x(kind_), z.x, al), Y = factor(has_y(kind_), z.y, be);
  const double bx = X.d2 + 2.0 * al / z.x * X.d1;
  const double by = Y.d2 + 2.0 * be / z.y * Y.d1;
  return bx * Y.v + X.v * by;
}

double area_integral(const Curve& c, const std::function<double(Point)>& f,
                     const GreensOptions& opt) {
  for (int k = 0; k < 256; ++k)
    if (!(c.point((k + 1) / 256.0).x >= c.point(k / 256.0).x))
      throw DomainError("area_integral: Gamma is not a graph over the x-axis");
  // height of Gamma above x, by bisection on the monotone x(t)
  auto height = [&](double x) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 60 && hi - lo > 1e-17; ++i) {
      const double mid = 0.5 * (lo + hi);
      (c.point(mid).x < x ? lo : hi) = mid;
    }
    return c.point(0.5 * (lo + hi)).y;
  };
  const double a = c.a();
  return a * integrate(
                 [&](double u) {
                   const double x = a * u, h = height(x);
                   return h * integrate([&](double v) { return f({x, h * v}); }, opt);
                 },
                 opt);
}

double contour_integral(const Curve& c, const std::function<double(Point, Vec2)>& f,
                        const GreensOptions& opt) {
  const double on_gamma =
      integrate([&](double t) { return f(c.point(t), c.normal(t)) * c.speed(t); }, opt);
  const double a = c.a(), b = c.b();
  const double on_x = a * integrate([&](double u) { return f({a * u, 0.0}, {0.0, -1.0}); }, opt);
  const double on_y = b * integrate([&](double u) { return f({0.0, b * u}, {-1.0, 0.0}); }, opt);
  return on_gamma + on_x + on_y;
}

namespace {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

}  // namespace

double flux_integral(const ExactSolution& u, const Curve& c, const GreensOptions& opt) {
  return contour_integral(c, [&](Point z, Vec2 n) { return dot(u.weighted_gradient(z), n); }, opt);
}

double reciprocity(const ExactSolution& u, const ExactSolution& v, const Curve& c,
                   const GreensOptions& opt) {
  return contour_integral(
      c,
      [&](Point z, Vec2 n) {
        return u.value(z) * dot(v.weighted_gradient(z), n) - v.value(z) * dot(u.weighted_gradient(z), n);
      },
      opt);
}

IdentitySides energy_identity(const ExactSolution& u, const Curve& c, const GreensOptions& opt) {
  IdentitySides s;
  s.lhs = area_integral(c, [&](Point z) { return u.energy_density(z); }, opt);
  s.rhs = contour_integral(
      c, [&](Point z, Vec2 n) { return u.value(z) * dot(u.weighted_gradient(z), n); }, opt);
  return s;
}

IdentitySides green_identity(const ExactSolution& u, const ExactSolution& v, const Curve& c,
                             const GreensOptions& opt) {
  const double al = u.params().alpha(), be = u.params().beta();
  IdentitySides s;
  // the integrand is rounding noise; deeper levels only chase it
  GreensOptions shallow = opt;
  shallow.max_levels = std::min(opt.max_levels, 5);
  s.lhs = area_integral(
      c,
      [&](Point z) {
        if (z.x == 0.0 || z.y == 0.0) return 0.0;
        const double w = std::pow(z.x, 2.0 * al) * std::pow(z.y, 2.0 * be);
        const double r = w * (u.value(z) * v.operator_value(z) - v.value(z) * u.operator_value(z));
        // second derivatives overflow at subnormal coordinates
        return std::isfinite(r) ? r : 0.0;
      },
      shallow);
  // u (v_x dy - v_y dx) - v (u_x dy - u_y dx) along the contour is the normal form
  s.rhs = reciprocity(u, v, c, opt);
  return s;
}

std::vector<IdentityCheck> green_suite(const Curve& c, const Params& p, double tolerance,
                                       const GreensOptions& opt) {
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, std::string sols, double residual) {
    out.push_back({std::move(name), std::move(sols), p.alpha(), p.beta(), residual, tolerance,
                   residual <= tolerance});
  };
  auto rel = [](double diff, double scale) { return scale > 0.0 ? std::abs(diff) / scale : std::abs(diff); };

  for (SolutionKind k : kAllSolutions) {
    const ExactSolution u(k, p);
    const std::string tag(to_string(k));
    const double scale = contour_integral(
        c, [&](Point z, Vec2 n) { return std::abs(dot(u.weighted_gradient(z), n)); }, opt);
    add("flux", tag, rel(flux_integral(u, c, opt), scale));
    const auto e = energy_identity(u, c, opt);
    add("energy", tag, rel(e.lhs - e.rhs, std::max(std::abs(e.lhs), std::abs(e.rhs))));
  }
  for (std::size_t i = 0; i < std::size(kAllSolutions); ++i)
    for (std::size_t j = i + 1; j < std::size(kAllSolutions); ++j) {
      const ExactSolution u(kAllSolutions[i], p), v(kAllSolutions[j], p);
      const std::string tag = std::string(to_string(u.kind())) + "," + std::string(to_string(v.kind()));
      const double scale = contour_integral(
          c,
          [&](Point z, Vec2 n) {
            return std::abs(u.value(z) * dot(v.weighted_gradient(z), n)) +
                   std::abs(v.value(z) * dot(u.weighted_gradient(z), n));
          },
          opt);
      add("reciprocity", tag, rel(reciprocity(u, v, c, opt), scale));
      const auto g = green_identity(u, v, c, opt);
      add("green", tag, rel(g.lhs - g.rhs, scale));
    }
  return out;
}

}  // namespace biaxial
