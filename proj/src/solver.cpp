#include "biaxial/solver.hpp"

#include <algorithm>
#include <cmath>

namespace biaxial {

namespace {

constexpr double kDiagonalCut = 1e-6;  // as in the boundary integral
constexpr int kSubOrder = 8;           // Gauss-Legendre order on the local sub-panels
constexpr int kNeighbourLevels = 8;

struct SubRule {
  std::vector<double> s, w;
};

// Gauss-Legendre on the pieces of `breaks`.
void append_pieces(SubRule& r, const std::vector<double>& breaks) {
  const auto& gl = quad::gauss_legendre(kSubOrder);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int k = 0; k < kSubOrder; ++k) {
      r.s.push_back(mid + half * gl.nodes[k]);
      r.w.push_back(half * gl.weights[k]);
    }
  }
}

// One matrix row: far panels by the plain rule, the target's panel and its
// neighbours by graded sub-quadrature of the Lagrange basis against
//   K(s,t) speed(s) = coef ln|s - t| + g(s),
// with g held constant within kDiagonalCut of the target.
void assemble_row(const Curve& c, const PanelRule& rule, const FundamentalSolution& q, int j,
                  int levels, double* row /* stride 1, length n */) {
  const int n = rule.size(), order = rule.order(), np = rule.panels();
  const auto& nodes = rule.nodes();
  const auto& weights = rule.weights();
  const auto& br = rule.breaks();
  const double t = nodes[j];
  const Point src = c.point(t);
  const int P = rule.panel_of(j);
  const int p_lo = std::max(P - 1, 0), p_hi = std::min(P + 1, np - 1);

  auto kernel = [&](double s) {
    return q.weighted_normal_derivative(c.point(s), c.ccw_tangent(s), src) * c.speed(s);
  };

  for (int k = 0; k < n; ++k) {
    const int pk = rule.panel_of(k);
    row[k] = (pk >= p_lo && pk <= p_hi) ? 0.0 : weights[k] * kernel(nodes[k]);
  }

  const double coef = kernel_log_coefficient(c, t, q.params()) * c.speed(t);
  auto g = [&](double s) { return kernel(s) - coef * std::log(std::abs(s - t)); };
  // g is continuous through t; take it from whichever side stays on the curve
  const double g_lo = t - kDiagonalCut >= 0.0 ? g(t - kDiagonalCut) : g(t + kDiagonalCut);
  const double g_hi = t + kDiagonalCut <= 1.0 ? g(t + kDiagonalCut) : g_lo;

  // stop refining once pieces reach 1e-12 so no sub-node rounds onto t
  auto depth = [&](double len) {
    return std::clamp(static_cast<int>(std::ceil(std::log2(len / 1e-12))), 1, levels);
  };
  std::vector<double> L(order);
  for (int p = p_lo; p <= p_hi; ++p) {
    SubRule sub;
    if (p == P) {
      append_pieces(sub, quad::graded_breaks(br[p], t, false, depth(t - br[p])));
      append_pieces(sub, quad::graded_breaks(t, br[p + 1], true, depth(br[p + 1] - t)));
    } else {
      append_pieces(sub, quad::graded_breaks(br[p], br[p + 1], p > P, kNeighbourLevels));
    }
    for (std::size_t i = 0; i < sub.s.size(); ++i) {
      const double s = sub.s[i];
      const double d = s - t;
      const double v = std::abs(d) < kDiagonalCut
                           ? (d < 0 ? g_lo : g_hi) + coef * std::log(std::abs(d))
                           : kernel(s);
      rule.lagrange(p, s, L.data());
      for (int k = 0; k < order; ++k) row[p * order + k] += sub.w[i] * L[k] * v;
    }
  }
}

}  // namespace

NystromSystem assemble(const Curve& c, int n, Side side, const Params& p,
                       const NystromOptions& opt) {
  if (n < 16 || n % opt.order != 0)
    throw DomainError("assemble: n must be >= 16 and a multiple of the panel order");
  if (opt.require_valid_curve && !validate_curve(c).pass)
    throw DomainError("assemble: curve fails validation");
  NystromSystem sys{PanelRule::graded(n / opt.order, opt.order, opt.grading), side, p, Eigen::MatrixXd(n, n)};
  const FundamentalSolution q(p);
  // row-major scratch so each row is contiguous
  std::vector<double> rows(static_cast<std::size_t>(n) * n);
  if (opt.exec == Exec::Serial) {
    for (int j = 0; j < n; ++j) assemble_row(c, sys.rule, q, j, opt.levels, &rows[std::size_t(j) * n]);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < n; ++j) assemble_row(c, sys.rule, q, j, opt.levels, &rows[std::size_t(j) * n]);
  }
  const double half = side == Side::Interior ? -0.5 : 0.5;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) sys.matrix(j, k) = rows[std::size_t(j) * n + k] + (j == k ? half : 0.0);
  return sys;
}

BVPSolution solve_dirichlet(const NystromSystem& sys, const std::vector<double>& g,
                            double min_rcond) {
  const int n = static_cast<int>(sys.matrix.rows());
  if (static_cast<int>(g.size()) != n) throw DomainError("solve_dirichlet: data size mismatch");
  for (double v : g)
    if (!std::isfinite(v)) throw DomainError("solve_dirichlet: boundary data not finite");
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  BVPSolution sol{sys.rule, sys.params, {}, g, 0.0, lu.rcond(), false};
  if (!(sol.rcond >= min_rcond))
    throw SingularSystemError("solve_dirichlet: matrix is numerically singular", sol.rcond);
  const Eigen::Map<const Eigen::VectorXd> rhs(g.data(), n);
  const Eigen::VectorXd mu = lu.solve(rhs);
  sol.density.assign(mu.data(), mu.data() + n);
  sol.residual = (sys.matrix * mu - rhs).cwiseAbs().maxCoeff();
  sol.flagged = sol.residual > 1e-10 * std::max(rhs.cwiseAbs().maxCoeff(), 1e-300);
  return sol;
}

std::vector<double> sample_data(const Curve& c, const PanelRule& rule,
                                const std::function<double(Point)>& g) {
  std::vector<double> out;
  out.reserve(rule.size());
  for (double t : rule.nodes()) out.push_back(g(c.point(t)));
  return out;
}

Reconstruction reconstruct(const BVPSolution& sol, const Curve& c, Point p0,
                           const FundamentalSolution& q, const PotentialOptions& opt) {
  constexpr int kUpOrder = 16;
  constexpr int kMaxSplit = 16;
  const auto& br = sol.rule.breaks();
  const double d = c.nearest(p0).second;
  if (d < opt.near_floor * c.length()) return {NAN, true};
  // each panel split into pieces no longer than 2d, density interpolated
  std::vector<int> split(sol.rule.panels());
  for (int p = 0; p < sol.rule.panels(); ++p) {
    const double len = c.s_of_t(br[p + 1]) - c.s_of_t(br[p]);
    split[p] = std::max(1, static_cast<int>(std::ceil(len / (2.0 * d))));
    if (split[p] > kMaxSplit) {
      const auto v = double_layer(c, sol.density_function(), p0, q, opt);
      return {v.value, v.flagged};
    }
  }
  const auto& gl = quad::gauss_legendre(kUpOrder);
  const int order = sol.rule.order();
  std::vector<double> L(order);
  double acc = 0.0;
  for (int p = 0; p < sol.rule.panels(); ++p) {
    const double h = (br[p + 1] - br[p]) / split[p];
    for (int m = 0; m < split[p]; ++m) {
      const double mid = br[p] + (m + 0.5) * h;
      for (int k = 0; k < kUpOrder; ++k) {
        const double t = mid + 0.5 * h * gl.nodes[k];
        sol.rule.lagrange(p, t, L.data());
        double mu = 0.0;
        for (int i = 0; i < order; ++i) mu += L[i] * sol.density[p * order + i];
        acc += 0.5 * h * gl.weights[k] * mu * c.speed(t) *
               q.weighted_normal_derivative(c.point(t), c.ccw_tangent(t), p0);
      }
    }
  }
  return {acc, false};
}

std::vector<Reconstruction> reconstruct_batch(const BVPSolution& sol, const Curve& c,
                                              const std::vector<Point>& points,
                                              const FundamentalSolution& q, Exec exec) {
  std::vector<Reconstruction> out(points.size());
  const long n = static_cast<long>(points.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = reconstruct(sol, c, points[i], q);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) out[i] = reconstruct(sol, c, points[i], q);
  }
  return out;
}

}  // namespace biaxial
