#pragma once

// Nystrom discretization of the boundary integral equations
//   -mu(t)/2 + int mu(s) K3(s,t) ds = g(t)   (interior)
//   +mu(t)/2 + int mu(s) K3(s,t) ds = g(t)   (exterior)
// on panel Gauss-Legendre nodes in the curve parameter, with a local
// correction on the target's own and neighbouring panels.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "biaxial/potential.hpp"

namespace biaxial {

struct NystromOptions {
  int order = 8;          // nodes per panel
  int levels = 40;        // geometric refinements toward the target in the local correction
  int grading = 4;        // panel clustering power at the ends, see PanelRule::graded
  bool require_valid_curve = true;
  Exec exec = Exec::Parallel;
};

struct NystromSystem {
  PanelRule rule;
  Side side;
  Params params;
  Eigen::MatrixXd matrix;
};

/// n nodes (a multiple of the panel order, n >= 16). Throws DomainError when
/// the curve fails validation and require_valid_curve is set.
NystromSystem assemble(const Curve& c, int n, Side side, const Params& p,
                       const NystromOptions& opt = {});

struct BVPSolution {
  PanelRule rule;
  Params params;
  std::vector<double> density;  // mu at the rule nodes
  std::vector<double> data;     // g at the rule nodes
  double residual = 0.0;        // max |M mu - g|
  double rcond = 0.0;           // reciprocal condition estimate of M
  bool flagged = false;         // residual above 1e-10 max|g|

  Density density_function() const { return density_from_nodes(rule, density); }
};

/// Dense LU solve. Throws SingularSystemError when the reciprocal condition
/// estimate falls below min_rcond.
BVPSolution solve_dirichlet(const NystromSystem& sys, const std::vector<double>& g,
                            double min_rcond = 1e-13);

/// Boundary data sampled at the rule nodes.
std::vector<double> sample_data(const Curve& c, const PanelRule& rule,
                                const std::function<double(Point)>& g);

struct Reconstruction {
  double value = 0.0;
  bool flagged = false;
};

/// u(p0) = double-layer potential of the computed density, by Gauss-Legendre
/// on panel pieces no longer than twice the distance to Gamma; very near points
/// fall back to the adaptive evaluator.
Reconstruction reconstruct(const BVPSolution& sol, const Curve& c, Point p0,
                           const FundamentalSolution& q, const PotentialOptions& opt = {});

std::vector<Reconstruction> reconstruct_batch(const BVPSolution& sol, const Curve& c,
                                              const std::vector<Point>& points,
                                              const FundamentalSolution& q,
                                              Exec exec = Exec::Parallel);

}  // namespace biaxial
