#pragma once

// One-dimensional quadrature building blocks shared by every module:
// Gauss-Legendre and Gauss-Jacobi rules, composite/graded panel rules and a
// globally adaptive Gauss-Kronrod driver with absolute and relative targets.

#include <functional>
#include <vector>

namespace biaxial::quad {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1]. Cached; safe to call concurrently.
const Rule1D& gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b,
/// a, b > -1 (Golub-Welsch).
Rule1D gauss_jacobi(int n, double a, double b);

/// Cached variant of gauss_jacobi; safe to call concurrently.
const Rule1D& gauss_jacobi_cached(int n, double a, double b);

/// Affine image of a rule on [-1, 1] onto [lo, hi] (weights scaled by the
/// Jacobian only; any Jacobi weight must be rescaled by the caller).
Rule1D map_rule(const Rule1D& ref, double lo, double hi);

template <class F>
double gauss_legendre_integrate(F&& f, double lo, double hi, int n) {
  const Rule1D& r = gauss_legendre(n);
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double acc = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) acc += r.weights[k] * f(mid + half * r.nodes[k]);
  return acc * half;
}

struct AdaptiveOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f on [lo, hi],
/// optionally pre-split at the given interior breakpoints.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                  const AdaptiveOptions& opt = {},
                                  const std::vector<double>& breakpoints = {});

/// Panels [lo, hi] graded geometrically toward `focus` (one of the ends),
/// ratio 2, `levels` refinements; the innermost panel touches `focus`.
std::vector<double> graded_breaks(double lo, double hi, bool toward_lo, int levels);

}  // namespace biaxial::quad
