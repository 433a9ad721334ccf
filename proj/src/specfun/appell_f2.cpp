#include <cmath>

#include "biaxial/detail/euler_grid.hpp"
#include "biaxial/quadrature.hpp"
#include "biaxial/specfun.hpp"

namespace biaxial {

namespace detail {

EulerGrid make_euler_grid(double p, double q, double scale) {
  constexpr int kLeft = 14, kMid = 18, kRight = 20;
  constexpr double kRatio = 4.0;
  EulerGrid g;
  const double u_min = scale > 0.5 ? 0.25 / scale : 0.5;

  // [0, u_min]: weight u^{p-1} absorbed by Gauss-Jacobi (1+t)^{p-1}.
  {
    const auto& r = quad::gauss_jacobi_cached(kLeft, 0.0, p - 1.0);
    const double h = 0.5 * u_min, scale_w = std::pow(h, p);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double u = h * (1.0 + r.nodes[k]);
      g.u.push_back(u);
      g.w.push_back(scale_w * r.weights[k] * std::pow(1.0 - u, q - 1.0));
    }
  }
  // geometric panels up to 1/2
  const auto& gl = quad::gauss_legendre(kMid);
  for (double lo = u_min; lo < 0.5;) {
    const double hi = std::min(0.5, lo * kRatio);
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t k = 0; k < gl.size(); ++k) {
      const double u = mid + half * gl.nodes[k];
      g.u.push_back(u);
      g.w.push_back(half * gl.weights[k] * std::pow(u, p - 1.0) * std::pow(1.0 - u, q - 1.0));
    }
    lo = hi;
  }
  // [1/2, 1]: weight (1-u)^{q-1} absorbed by Gauss-Jacobi (1-t)^{q-1}.
  {
    const auto& r = quad::gauss_jacobi_cached(kRight, q - 1.0, 0.0);
    const double scale_w = std::pow(0.25, q);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double u = 0.75 + 0.25 * r.nodes[k];
      g.u.push_back(u);
      g.w.push_back(scale_w * r.weights[k] * std::pow(u, p - 1.0));
    }
  }
  return g;
}

}  // namespace detail

namespace {

constexpr double kProductSwitch = 0.5;  // max x y/((1-x)(1-y)) for the product route

HyperParamsF2 swapped(const HyperParamsF2& p) { return {p.a, p.b2, p.b1, p.c2, p.c1}; }

bool euler_admissible(double b, double c) { return b > 0.0 && c - b > 0.0; }

}  // namespace

double appell_f2_series(const HyperParamsF2& p, double x, double y) {
  return appell_f2_double_series<double>(p, x, y);
}

double appell_f2_product(const HyperParamsF2& p, double x, double y, SeriesStats* stats) {
  if (!(x <= 0.0 && y <= 0.0)) throw DomainError("appell_f2_product: requires x, y <= 0");
  const double X = x / (x - 1.0), Y = y / (y - 1.0);
  const double Z = X * Y;
  const double pre = std::pow(1.0 - x, -p.b1) * std::pow(1.0 - y, -p.b2);
  double sum = 0.0, coef = 1.0, zi = 1.0;
  double last = 0.0, rho_max = 0.0;
  int quiet = 0;
  for (int i = 0; i < SeriesPolicy::max_terms; ++i) {
    const double fx = X == 0.0 ? 1.0 : Gauss2F1({p.c1 - p.a, p.b1 + i, p.c1 + i}).evaluate(X, 1.0 / (1.0 - x)).value;
    const double fy = Y == 0.0 ? 1.0 : Gauss2F1({p.c2 - p.a, p.b2 + i, p.c2 + i}).evaluate(Y, 1.0 / (1.0 - y)).value;
    const double term = coef * zi * fx * fy;
    sum += term;
    if (Z == 0.0 || term == 0.0) {
      if (stats) *stats = {i + 1, 0.0};
      return pre * sum;
    }
    const double rho = i > 0 && last != 0.0 ? std::abs(term / last) : 0.0;
    last = term;
    if (i >= 4) {
      rho_max = quiet == 0 ? rho : std::max(rho_max, rho);
      const double bound =
          rho_max < 1.0 ? std::abs(term) * rho_max / (1.0 - rho_max) : INFINITY;
      if (std::abs(term) <= SeriesPolicy::tol * std::abs(sum) &&
          bound <= SeriesPolicy::tol * std::abs(sum)) {
        if (++quiet == 3) {
          if (stats) *stats = {i + 1, bound * std::abs(pre)};
          return pre * sum;
        }
      } else {
        quiet = 0;
      }
    }
    coef *= (p.a + i) * (p.b1 + i) * (p.b2 + i) / ((p.c1 + i) * (p.c2 + i) * (i + 1.0));
    zi *= Z;
  }
  throw ConvergenceError("appell_f2_product: outer sum did not converge");
}

double appell_f2_euler(const HyperParamsF2& p, double x, double y) {
  if (!(x <= 0.0 && y <= 0.0)) throw DomainError("appell_f2_euler: requires x, y <= 0");
  if (!euler_admissible(p.b1, p.c1)) {
    if (euler_admissible(p.b2, p.c2)) return appell_f2_euler(swapped(p), y, x);
    throw DomainError("appell_f2_euler: needs 0 < b < c in one variable");
  }
  // F2 = B(b1, c1-b1)^{-1} int_0^1 u^{b1-1}(1-u)^{c1-b1-1} (1-ux)^{b2-a}
  //        (1-ux-y)^{-b2} F(c2-a, b2; c2; y/(y+ux-1)) du
  const double q = p.c1 - p.b1;
  const auto grid = detail::make_euler_grid(p.b1, q, -x);
  const Gauss2F1 inner({p.c2 - p.a, p.b2, p.c2});
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.u.size(); ++k) {
    const double u = grid.u[k];
    const double s = 1.0 - u * x;  // >= 1
    const double t = s - y;        // >= 1
    const double z = -y / t;       // y/(y+ux-1) in [0, 1)
    acc += grid.w[k] * std::pow(s, p.b2 - p.a) * std::pow(t, -p.b2) * inner.evaluate(z, s / t).value;
  }
  const double inv_beta = std::exp(std::lgamma(p.c1) - std::lgamma(p.b1) - std::lgamma(q));
  return inv_beta * acc;
}

std::string_view to_string(F2Route r) {
  switch (r) {
    case F2Route::Trivial: return "trivial";
    case F2Route::Product: return "product";
    case F2Route::Euler: return "euler";
    case F2Route::Series: return "series";
  }
  return "?";
}

F2Route appell_f2_route(const HyperParamsF2& p, double x, double y) {
  if (std::isnan(x) || std::isnan(y)) throw DomainError("appell_f2: NaN argument");
  if (x <= 0.0 && y <= 0.0) {
    if (x == 0.0 && y == 0.0) return F2Route::Trivial;
    const double Z = (x / (x - 1.0)) * (y / (y - 1.0));
    const bool euler_ok = euler_admissible(p.b1, p.c1) || euler_admissible(p.b2, p.c2);
    return Z <= kProductSwitch || !euler_ok ? F2Route::Product : F2Route::Euler;
  }
  if (std::abs(x) + std::abs(y) < 1.0) return F2Route::Series;
  throw DomainError("appell_f2: outside {x,y <= 0} and {|x|+|y| < 1}");
}

double appell_f2(const HyperParamsF2& p, double x, double y) {
  switch (appell_f2_route(p, x, y)) {
    case F2Route::Trivial: return 1.0;
    case F2Route::Product: return appell_f2_product(p, x, y);
    case F2Route::Euler: return appell_f2_euler(p, x, y);
    case F2Route::Series: break;
  }
  return appell_f2_series(p, x, y);
}

double appell_f2_derivative(const HyperParamsF2& p, double x, double y, unsigned m, unsigned n) {
  const double coef = pochhammer(p.a, m + n) * pochhammer(p.b1, m) * pochhammer(p.b2, n) /
                      (pochhammer(p.c1, m) * pochhammer(p.c2, n));
  const HyperParamsF2 shifted{p.a + m + n, p.b1 + m, p.b2 + n, p.c1 + m, p.c2 + n};
  return coef * appell_f2(shifted, x, y);
}

}  // namespace biaxial
