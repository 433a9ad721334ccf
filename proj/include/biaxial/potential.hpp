#pragma once

// Third double-layer potential
//   w(p0) = int_Gamma x^{2 alpha} y^{2 beta} mu(s) dq3/dn (x, y; x0, y0) ds,
// the gauge function j, its closed forms on the y-axis, the boundary kernel
// K3 and the one-sided boundary values.

#include <functional>
#include <vector>

#include "biaxial/geometry.hpp"
#include "biaxial/kernel.hpp"
#include "biaxial/quadrature.hpp"

namespace biaxial {

/// Density on Gamma as a function of the curve parameter t in [0,1].
class Density {
 public:
  explicit Density(std::function<double(double)> f) : f_(std::move(f)) {}
  static Density constant(double v);

  double operator()(double t) const { return f_(t); }

 private:
  std::function<double(double)> f_;
};

/// Composite Gauss-Legendre rule in t on [0,1]; panel p covers
/// [breaks[p], breaks[p+1]] and holds `order` nodes.
class PanelRule {
 public:
  PanelRule(std::vector<double> breaks, int order);
  /// n_panels equal panels.
  static PanelRule uniform(int n_panels, int order);
  /// Breaks w(i/n_panels) with w(u) = u^k / (u^k + (1-u)^k), clustering panels
  /// at both ends; k = 1 is uniform.
  static PanelRule graded(int n_panels, int order, int k);

  int order() const { return order_; }
  int panels() const { return static_cast<int>(breaks_.size()) - 1; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  int panel_of(int node) const { return node / order_; }
  int panel_containing(double t) const;

  /// Lagrange basis of panel p evaluated at t (order values).
  void lagrange(int p, double t, double* out) const;
  /// Interpolate node values at t with the panel polynomial.
  double interpolate(const std::vector<double>& values, double t) const;

 private:
  std::vector<double> breaks_;
  int order_;
  std::vector<double> nodes_, weights_;
  std::vector<double> bary_;  // barycentric weights of the reference nodes
};

/// Panel-polynomial density from values at the nodes of a rule.
Density density_from_nodes(const PanelRule& rule, std::vector<double> values);

struct PotentialOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  int max_intervals = 20000;
  /// Refuse evaluation closer than this multiple of the curve length.
  double near_floor = 1e-8;
};

struct PotentialValue {
  double value = 0.0;
  double error = 0.0;     // quadrature error estimate
  double distance = 0.0;  // distance from the evaluation point to Gamma
  bool flagged = false;   // too close to Gamma or quadrature not converged
};

/// K3(t_field, t_source): weighted normal derivative of q3 at the curve
/// point t_field with the source at the curve point t_source.
/// Throws CoincidenceError when the two points coincide.
double kernel_K3(const Curve& c, double t_field, double t_source, const FundamentalSolution& q);

/// c(t) with K3(s, t) = c(t) ln|p(s) - p(t)| + O(1) as s -> t:
/// (alpha n_x / x + beta n_y / y) / (2 pi) at the curve point t.
double kernel_log_coefficient(const Curve& c, double t, const Params& p);

/// int_0^1 ln|s - t| ds.
double log_moment(double t);

/// Double-layer potential at p0 off Gamma by adaptive quadrature in t, split
/// at the nearest curve point.
PotentialValue double_layer(const Curve& c, const Density& mu, Point p0,
                            const FundamentalSolution& q, const PotentialOptions& opt = {});

/// Gauge function j(x0, y0) for y0 > 0 by adaptive quadrature over [0, a].
double j_value(const Curve& c, Point p0, const Params& p);
double j_value(double a, Point p0, const Params& p);

/// j(0, y0) in closed form; y0 >= 0.
double j_axis(double y0, double a, const Params& p);
/// The companion closed form for y0 > 0 with argument -a^2/y0^2.
double j_axis_inverse(double y0, double a, const Params& p);

enum class Side { Interior, Exterior };

std::string_view to_string(Side s);
Side side_from_string(std::string_view name);

/// The integral part int mu(s) K3(s, t) ds of the boundary values at the
/// curve point t (also the direct value of the potential on Gamma).
PotentialValue boundary_integral(const Curve& c, const Density& mu, double t,
                                 const FundamentalSolution& q, const PotentialOptions& opt = {});

/// One-sided limit at the curve point t: -mu/2 + integral (interior),
/// +mu/2 + integral (exterior).
double boundary_limit(const Curve& c, const Density& mu, double t, Side side,
                      const FundamentalSolution& q, const PotentialOptions& opt = {});

enum class Exec { Serial, Parallel };

/// Potential at many points; Parallel uses OpenMP over the points.
std::vector<PotentialValue> double_layer_batch(const Curve& c, const Density& mu,
                                               const std::vector<Point>& points,
                                               const FundamentalSolution& q,
                                               const PotentialOptions& opt = {},
                                               Exec exec = Exec::Parallel);

}  // namespace biaxial
