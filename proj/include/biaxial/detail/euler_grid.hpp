#pragma once

#include <vector>

namespace biaxial::detail {

// Nodes and weights for int_0^1 u^{p-1} (1-u)^{q-1} g(u) du where g varies on
// the scale 1/scale near u = 0 (g analytic with singularities on u < 0).
// Jacobi rules absorb both endpoint powers; geometric panels of ratio 4
// resolve the boundary layer.
struct EulerGrid {
  std::vector<double> u;
  std::vector<double> w;
};

EulerGrid make_euler_grid(double p, double q, double scale);

}  // namespace biaxial::detail
