#include "biaxial/kernel.hpp"

#include <cmath>
#include <numbers>

#include "biaxial/detail/euler_grid.hpp"

namespace biaxial {

namespace {

// Above this outer ratio X*Y the product expansion needs too many terms and
// the Euler integral takes over.
constexpr double kProductSwitch = 0.5;

}  // namespace

Params::Params(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && 2.0 * alpha < 1.0) || !(beta > 0.0 && 2.0 * beta < 1.0))
    throw DomainError("Params: need 0 < 2 alpha < 1 and 0 < 2 beta < 1");
}

PairGeometry pair_geometry(Point f, Point s) {
  const double dx = f.x - s.x, dy = f.y - s.y;
  const double r2 = dx * dx + dy * dy;
  if (!(r2 > 0.0)) throw CoincidenceError("pair_geometry: field and source coincide");
  const double px = f.x + s.x, py = f.y + s.y;
  return {r2, px * px + dy * dy, dx * dx + py * py, -4.0 * f.x * s.x / r2, -4.0 * f.y * s.y / r2};
}

double k3_constant(const Params& p) {
  const double al = p.alpha(), be = p.beta();
  return std::pow(2.0, 2.0 + 2.0 * al - 2.0 * be) / (4.0 * std::numbers::pi) * std::tgamma(al) *
         std::tgamma(1.0 - be) * std::tgamma(1.0 + al - be) /
         (std::tgamma(2.0 * al) * std::tgamma(2.0 - 2.0 * be));
}

FundamentalSolution::FundamentalSolution(const Params& p)
    : p_(p),
      k3_(k3_constant(p)),
      a_(1.0 + p.alpha() - p.beta()),
      inner_A_({1.0 - p.alpha() - p.beta(), 1.0 - p.beta(), 2.0 - 2.0 * p.beta()}),
      inner_BC_({-p.alpha() - p.beta(), 1.0 - p.beta(), 2.0 - 2.0 * p.beta()}),
      inner_D_({1.0 - p.alpha() - p.beta(), 2.0 - p.beta(), 3.0 - 2.0 * p.beta()}) {
  const double al = p.alpha();
  norm_ABD_ = std::exp(std::lgamma(2.0 * al) - 2.0 * std::lgamma(al));
  norm_C_ = 2.0 * norm_ABD_;  // Gamma(1+2a)/(Gamma(1+a)Gamma(a))
}

KernelF2 FundamentalSolution::appell_values(double xi, double eta) const {
  const double al = p_.alpha(), be = p_.beta(), a = a_;
  const double X = xi / (xi - 1.0), Y = eta / (eta - 1.0);
  if (X * Y <= kProductSwitch) {
    return {appell_f2({a, al, 1 - be, 2 * al, 2 - 2 * be}, xi, eta),
            appell_f2({a + 1, al, 1 - be, 2 * al, 2 - 2 * be}, xi, eta),
            appell_f2({a + 1, 1 + al, 1 - be, 1 + 2 * al, 2 - 2 * be}, xi, eta),
            appell_f2({a + 1, al, 2 - be, 2 * al, 3 - 2 * be}, xi, eta)};
  }
  // Euler integral over the xi-variable, one shared grid for all four:
  //   F2 = N int u^{b1-1}(1-u)^{alpha-1} s^{b2-a'} t^{-b2} F(c2-a', b2; c2; z) du
  // with s = 1 - u xi, t = s - eta, z = -eta/t.
  const auto grid = detail::make_euler_grid(al, al, -xi);
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
  for (std::size_t k = 0; k < grid.u.size(); ++k) {
    const double u = grid.u[k], w = grid.w[k];
    const double s = 1.0 - u * xi;
    const double t = s - eta;
    const double z = -eta / t, w1 = s / t;
    const double s_al = std::pow(s, -al);
    const double t_b = std::pow(t, be - 1.0);
    const double fa = w * s_al * t_b * inner_A_.evaluate(z, w1).value;
    const double fb = w * s_al / s * t_b * inner_BC_.evaluate(z, w1).value;
    const double fd = w * s_al * t_b / t * inner_D_.evaluate(z, w1).value;
    A += fa;
    B += fb;
    C += u * fb;
    D += fd;
  }
  return {norm_ABD_ * A, norm_ABD_ * B, norm_C_ * C, norm_ABD_ * D};
}

double FundamentalSolution::value(Point f, Point s) const {
  const auto g = pair_geometry(f, s);
  if (f.y == 0.0 || s.y == 0.0) return 0.0;
  const double be = p_.beta();
  const auto F = appell_values(g.xi, g.eta);
  return k3_ * std::pow(g.r2, -a_) * std::pow(f.y * s.y, 1.0 - 2.0 * be) * F.A;
}

Vec2 FundamentalSolution::gradient(Point f, Point s) const {
  const auto g = pair_geometry(f, s);
  const double be = p_.beta();
  const auto F = appell_values(g.xi, g.eta);
  const double y0w = std::pow(s.y, 1.0 - 2.0 * be);
  const double common = -2.0 * a_ * k3_ * std::pow(g.r2, -a_ - 1.0) * std::pow(f.y, 1.0 - 2.0 * be) * y0w;
  Vec2 out;
  out.x = common * (s.x * F.C + (f.x - s.x) * F.B);
  out.y = common * (s.y * F.D + (f.y - s.y) * F.B) +
          (1.0 - 2.0 * be) * k3_ * std::pow(g.r2, -a_) * std::pow(f.y, -2.0 * be) * y0w * F.A;
  return out;
}

double FundamentalSolution::q_form(const PairGeometry& g, const KernelF2& F, Point f, Vec2 tau,
                                   Point s) const {
  const double be = p_.beta();
  const double dn_log_r2 = 2.0 * (tau.y * (f.x - s.x) - tau.x * (f.y - s.y)) / g.r2;
  return -g.r2 * f.y * F.B * dn_log_r2 - 2.0 * f.y * s.x * F.C * tau.y +
         2.0 * f.y * s.y * F.D * tau.x - (1.0 - 2.0 * be) / a_ * g.r2 * F.A * tau.x;
}

double FundamentalSolution::normal_derivative(Point f, Vec2 tau, Point s) const {
  const auto g = pair_geometry(f, s);
  const double be = p_.beta();
  const auto F = appell_values(g.xi, g.eta);
  return a_ * k3_ * std::pow(g.r2, -a_ - 1.0) * std::pow(f.y, -2.0 * be) *
         std::pow(s.y, 1.0 - 2.0 * be) * q_form(g, F, f, tau, s);
}

double FundamentalSolution::weighted_normal_derivative(Point f, Vec2 tau, Point s) const {
  const auto g = pair_geometry(f, s);
  const double al = p_.alpha(), be = p_.beta();
  if (f.x == 0.0 || s.y == 0.0) return 0.0;
  const auto F = appell_values(g.xi, g.eta);
  return std::pow(f.x, 2.0 * al) * a_ * k3_ * std::pow(g.r2, -a_ - 1.0) *
         std::pow(s.y, 1.0 - 2.0 * be) * q_form(g, F, f, tau, s);
}

double FundamentalSolution::bound(Point f, Point s) const {
  const auto g = pair_geometry(f, s);
  const double al = p_.alpha(), be = p_.beta();
  const double X = 1.0 - g.r2 / g.r1_2, Y = 1.0 - g.r2 / g.r2_2;
  const double pre = std::tgamma(al) * std::tgamma(1.0 - be) /
                     (std::numbers::pi * std::tgamma(a_)) * std::pow(4.0, al - be);
  return pre * std::pow(f.y * s.y, 1.0 - 2.0 * be) * std::pow(g.r1_2, -al) *
         std::pow(g.r2_2, be - 1.0) * gauss_2f1({al, 1.0 - be, a_}, X * Y);
}

double q3(Point field, Point source, const Params& p) {
  return FundamentalSolution(p).value(field, source);
}

Vec2 grad_q3(Point field, Point source, const Params& p) {
  return FundamentalSolution(p).gradient(field, source);
}

double normal_derivative_q3(Point field, Vec2 tangent, Point source, const Params& p) {
  return FundamentalSolution(p).normal_derivative(field, tangent, source);
}

double q3_bound(Point field, Point source, const Params& p) {
  return FundamentalSolution(p).bound(field, source);
}

double q3_mirror_series(Point f, Point s, const Params& p) {
  const auto g = pair_geometry(f, s);
  if (f.y == 0.0 || s.y == 0.0) return 0.0;
  const double al = p.alpha(), be = p.beta(), a = 1.0 + al - be;
  const double X = 1.0 - g.r2 / g.r1_2, Y = 1.0 - g.r2 / g.r2_2;
  double sum = 0.0, coef = 1.0, zi = 1.0;
  int quiet = 0;
  for (int i = 0; i < SeriesPolicy::max_terms; ++i) {
    const double fx = Gauss2F1({al + be - 1.0, al + i, 2.0 * al + i}).evaluate(X, g.r2 / g.r1_2).value;
    const double fy =
        Gauss2F1({1.0 - al - be, 1.0 - be + i, 2.0 - 2.0 * be + i}).evaluate(Y, g.r2 / g.r2_2).value;
    const double term = coef * zi * fx * fy;
    sum += term;
    if (std::abs(term) <= SeriesPolicy::tol * std::abs(sum)) {
      if (++quiet == 3) break;
    } else {
      quiet = 0;
    }
    coef *= (a + i) * (al + i) * (1.0 - be + i) / ((2.0 * al + i) * (2.0 - 2.0 * be + i) * (i + 1.0));
    zi *= X * Y;
  }
  return k3_constant(p) * std::pow(f.y * s.y, 1.0 - 2.0 * be) * std::pow(g.r1_2, -al) *
         std::pow(g.r2_2, be - 1.0) * sum;
}

}  // namespace biaxial
