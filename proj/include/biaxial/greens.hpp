#pragma once

// Green's formula for the weighted operator
//   H(u) = u_xx + u_yy + (2 alpha/x) u_x + (2 beta/y) u_y
// on the quadrant domain bounded by Gamma and the two axis segments, checked
// on the separable solutions 1, x^{1-2 alpha}, y^{1-2 beta} and their product.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "biaxial/geometry.hpp"
#include "biaxial/kernel.hpp"

namespace biaxial {

enum class SolutionKind { One, XPower, YPower, Product };

std::string_view to_string(SolutionKind k);
SolutionKind solution_from_string(std::string_view name);
inline constexpr SolutionKind kAllSolutions[] = {SolutionKind::One, SolutionKind::XPower,
                                                 SolutionKind::YPower, SolutionKind::Product};

class ExactSolution {
 public:
  ExactSolution(SolutionKind kind, const Params& p) : kind_(kind), p_(p) {}

  SolutionKind kind() const { return kind_; }
  const Params& params() const { return p_; }

  double value(Point z) const;
  /// x^{2 alpha} y^{2 beta} grad u, formed so that it stays finite on the axes.
  Vec2 weighted_gradient(Point z) const;
  /// x^{2 alpha} y^{2 beta} |grad u|^2; 0 where a singular factor meets its axis.
  double energy_density(Point z) const;
  /// H(u) from the closed-form derivatives (zero up to rounding).
  double operator_value(Point z) const;

 private:
  SolutionKind kind_;
  Params p_;
};

struct GreensOptions {
  double tol = 1e-12;  // relative tolerance of each one-dimensional quadrature
  int max_levels = 8;  // tanh-sinh refinements
};

/// Area integral over Omega = { 0 <= x <= a, 0 <= y <= height of Gamma at x }.
/// Throws DomainError when Gamma is not a graph over the x-axis.
double area_integral(const Curve& c, const std::function<double(Point)>& f,
                     const GreensOptions& opt = {});

/// Contour integral of f(z, n) ds over Gamma and both axis segments, n the
/// outward unit normal.
double contour_integral(const Curve& c, const std::function<double(Point, Vec2)>& f,
                        const GreensOptions& opt = {});

/// Weighted flux of u through the whole contour.
double flux_integral(const ExactSolution& u, const Curve& c, const GreensOptions& opt = {});

/// Contour integral of x^{2a} y^{2b} (u dv/dn - v du/dn).
double reciprocity(const ExactSolution& u, const ExactSolution& v, const Curve& c,
                   const GreensOptions& opt = {});

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs: area integral of x^{2a} y^{2b} |grad u|^2; rhs: contour integral of
/// x^{2a} y^{2b} u du/dn.
IdentitySides energy_identity(const ExactSolution& u, const Curve& c, const GreensOptions& opt = {});

/// lhs: area integral of x^{2a} y^{2b} (u H(v) - v H(u)); rhs: the contour side.
IdentitySides green_identity(const ExactSolution& u, const ExactSolution& v, const Curve& c,
                             const GreensOptions& opt = {});

struct IdentityCheck {
  std::string name;      // flux, reciprocity, energy, green
  std::string solutions; // e.g. "x_power" or "one,y_power"
  double alpha = 0.0, beta = 0.0;
  double residual = 0.0; // relative where a nonzero scale exists
  double tolerance = 0.0;
  bool pass = false;
};

/// Every identity for every solution (and pair) at one parameter pair.
std::vector<IdentityCheck> green_suite(const Curve& c, const Params& p, double tolerance = 1e-6,
                                       const GreensOptions& opt = {});

}  // namespace biaxial
