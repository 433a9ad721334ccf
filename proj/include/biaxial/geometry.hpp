#pragma once

// Boundary arc Gamma from B(0,b) to A(a,0) in the first quadrant, the closed
// contour S = [0,a] + Gamma + [0,b] and point location against it.
//
// Curves are parametrized by t in [0,1] (t = 0 at B, t = 1 at A). Arclength
// s(t) is tabulated; integrals over Gamma are done in t with the speed
// |p'(t)| as Jacobian.

#include <memory>
#include <string>
#include <vector>

#include "biaxial/kernel.hpp"

namespace biaxial {

enum class CurveFamily {
  FlattenedOval,   // superellipse |x/a|^{2+eps} + |y/b|^{2+eps} = 1
  UserParametric,  // cubic spline through user samples
  QuarterEllipse,  // x = a sin, y = b cos; violates the contact condition
  Chord,           // straight segment B -> A; violates the contact condition
};

std::string_view to_string(CurveFamily f);
CurveFamily curve_family_from_string(std::string_view name);

/// Parametrization p(t) and p'(t) on [0,1].
class Shape {
 public:
  virtual ~Shape() = default;
  virtual Point point(double t) const = 0;
  virtual Vec2 derivative(double t) const = 0;
};

class Curve {
 public:
  Curve(std::shared_ptr<const Shape> shape, CurveFamily family, double a, double b,
        double epsilon, int n_table);

  CurveFamily family() const { return family_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double epsilon() const { return epsilon_; }
  double length() const { return s_.back(); }
  int table_size() const { return static_cast<int>(t_.size()) - 1; }

  Point point(double t) const { return shape_->point(t); }
  Vec2 derivative(double t) const { return shape_->derivative(t); }
  double speed(double t) const;
  /// Unit tangent in the direction of increasing t (B towards A).
  Vec2 tangent(double t) const;
  /// Unit normal pointing out of the region bounded by S.
  Vec2 normal(double t) const;
  /// Unit tangent of the counterclockwise traversal of S, the one the
  /// kernel's Q-form expects: normal = (tau.y, -tau.x).
  Vec2 ccw_tangent(double t) const;

  double s_of_t(double t) const;
  double t_of_s(double s) const;

  /// Parameter of the nearest curve point and its distance.
  std::pair<double, double> nearest(Point p) const;

  /// Crossing-number test against the polygon S built from the table nodes.
  bool polygon_inside(Point p) const;

 private:
  std::shared_ptr<const Shape> shape_;
  CurveFamily family_;
  double a_, b_, epsilon_;
  double orientation_ = 1.0;  // +1 when (-tau.y, tau.x) points outward
  std::vector<double> t_, s_, ds_;  // table nodes, arclength, speed
  std::vector<Point> nodes_;
};

/// Built-in families. epsilon is the contact exponent: the oval meets the
/// axes with order 2 + epsilon.
Curve make_curve(CurveFamily family, double a, double b, double epsilon, int n_table = 2048);

/// Natural cubic spline through samples with strictly increasing t; the first
/// sample must lie on the y-axis and the last on the x-axis.
Curve make_user_curve(const std::vector<double>& t, const std::vector<double>& x,
                      const std::vector<double>& y, double epsilon, int n_table = 2048);

/// Reads {"t": [...], "x": [...], "y": [...]}.
Curve load_user_curve(const std::string& path, double epsilon, int n_table = 2048);

struct ContactCheck {
  double constant = 0.0;  // max of |dx/ds| / y^{1+eps} (at A) or |dy/ds| / x^{1+eps} (at B)
  double slope = 0.0;     // log-log slope of the ratio as the endpoint is approached
  bool pass = false;
};

struct HolderCheck {
  double quotient = 0.0;  // max |f''(s1) - f''(s2)| / |s1 - s2|^eps over the dyadic sample
  double slope = 0.0;
  bool pass = false;
};

struct CurveReport {
  bool pass = false;
  double length = 0.0;
  double min_speed = 0.0;
  ContactCheck contact_A, contact_B;
  HolderCheck holder_x, holder_y;
  bool orientation_ok = false;
};

/// Numerical check of the smoothness and axis-contact conditions.
CurveReport validate_curve(const Curve& c);

struct Region {
  enum Kind { Inside, OnGamma, OnAxisSegment, Outside } kind;
  double t = 0.0;  // curve parameter when kind == OnGamma
};

std::string_view to_string(Region::Kind k);

/// Classifies p in the closed first quadrant against S with a band of
/// width tol around the boundary.
Region locate(const Curve& c, Point p, double tol = 1e-10);

/// Outward normal at arclength s.
Vec2 outward_normal(const Curve& c, double s);

}  // namespace biaxial
