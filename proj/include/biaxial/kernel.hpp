#pragma once

// Third fundamental solution q3 of
//   u_xx + u_yy + (2 alpha/x) u_x + (2 beta/y) u_y = 0
// in the first quadrant, its gradient and its normal derivative on a curve.

#include "biaxial/errors.hpp"
#include "biaxial/specfun.hpp"

namespace biaxial {

/// Exponent pair (alpha, beta) with 0 < 2 alpha < 1 and 0 < 2 beta < 1.
class Params {
 public:
  Params(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  double alpha_, beta_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Distances to the source and to its mirror images, and the F2 arguments.
struct PairGeometry {
  double r2;    // (x-x0)^2 + (y-y0)^2
  double r1_2;  // (x+x0)^2 + (y-y0)^2
  double r2_2;  // (x-x0)^2 + (y+y0)^2
  double xi;    // -4 x x0 / r2
  double eta;   // -4 y y0 / r2
};

/// Throws CoincidenceError when field == source.
PairGeometry pair_geometry(Point field, Point source);

double k3_constant(const Params& p);

/// The four Appell values every kernel formula is built from, with
/// a = 1 + alpha - beta:
///   A = F2(a;   alpha,   1-beta; 2 alpha,   2-2 beta; xi, eta)
///   B = F2(a+1; alpha,   1-beta; 2 alpha,   2-2 beta; xi, eta)
///   C = F2(a+1; 1+alpha, 1-beta; 1+2 alpha, 2-2 beta; xi, eta)
///   D = F2(a+1; alpha,   2-beta; 2 alpha,   3-2 beta; xi, eta)
struct KernelF2 {
  double A, B, C, D;
};

/// q3 and its derivatives for one parameter pair. Construction precomputes
/// k3 and the inner Gauss functions; evaluation is const and thread-safe.
class FundamentalSolution {
 public:
  explicit FundamentalSolution(const Params& p);

  const Params& params() const { return p_; }
  double k3() const { return k3_; }

  KernelF2 appell_values(double xi, double eta) const;

  double value(Point field, Point source) const;
  Vec2 gradient(Point field, Point source) const;

  /// d q3/dn = (dy/ds) q3_x - (dx/ds) q3_y for the unit tangent (dx/ds, dy/ds)
  /// of a counterclockwise traversal, evaluated through the closed Q-form.
  double normal_derivative(Point field, Vec2 tangent, Point source) const;

  /// x^{2 alpha} y^{2 beta} dq3/dn with the y^{-2 beta} factor cancelled, so
  /// the value stays finite at y = 0.
  double weighted_normal_derivative(Point field, Vec2 tangent, Point source) const;

  /// Majorant of |q3| valid for x != x0 and y != y0.
  double bound(Point field, Point source) const;

 private:
  double q_form(const PairGeometry& g, const KernelF2& f, Point field, Vec2 tangent,
                Point source) const;

  Params p_;
  double k3_;
  double a_;  // 1 + alpha - beta
  Gauss2F1 inner_A_, inner_BC_, inner_D_;
  double norm_ABD_, norm_C_;
};

// Free-function forms; each constructs a FundamentalSolution.
double q3(Point field, Point source, const Params& p);
Vec2 grad_q3(Point field, Point source, const Params& p);
double normal_derivative_q3(Point field, Vec2 tangent, Point source, const Params& p);
double q3_bound(Point field, Point source, const Params& p);

/// q3 summed directly from the product-of-Gauss-functions representation in
/// the mirror distances r1, r2; an independent route used for cross-checks.
double q3_mirror_series(Point field, Point source, const Params& p);

}  // namespace biaxial
