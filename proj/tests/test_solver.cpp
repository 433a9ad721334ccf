#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biaxial/solver.hpp"

using namespace biaxial;

namespace {

const Curve& oval() {
  static const Curve c = make_curve(CurveFamily::FlattenedOval, 1.0, 1.0, 0.5);
  return c;
}

const Params kP(0.25, 0.25);

const NystromSystem& interior64() {
  static const NystromSystem s = assemble(oval(), 64, Side::Interior, kP);
  return s;
}

std::vector<Point> interior_points(const Curve& c, int count, double min_dist) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < count) {
    const Point z{u(rng) * c.a(), u(rng) * c.b()};
    if (locate(c, z).kind == Region::Inside && c.nearest(z).second >= min_dist) pts.push_back(z);
  }
  return pts;
}

double exact(Point z) { return std::pow(z.y, 1.0 - 2.0 * kP.beta()); }

}  // namespace

TEST_CASE("assembly preconditions") {
  const Curve& c = oval();
  CHECK_THROWS_AS(assemble(c, 8, Side::Interior, kP), DomainError);
  CHECK_THROWS_AS(assemble(c, 36, Side::Interior, kP), DomainError);
  const Curve ell = make_curve(CurveFamily::QuarterEllipse, 1.0, 1.0, 0.5);
  CHECK_THROWS_AS(assemble(ell, 16, Side::Interior, kP), DomainError);
  NystromOptions o;
  o.require_valid_curve = false;
  CHECK(assemble(ell, 16, Side::Interior, kP, o).matrix.rows() == 16);
}

TEST_CASE("sides differ by the identity; serial and parallel rows agree") {
  const Curve& c = oval();
  NystromOptions o;
  o.exec = Exec::Serial;
  const auto a = assemble(c, 32, Side::Interior, kP, o);
  o.exec = Exec::Parallel;
  const auto b = assemble(c, 32, Side::Interior, kP, o);
  const auto e = assemble(c, 32, Side::Exterior, kP, o);
  CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXd d = e.matrix - a.matrix - Eigen::MatrixXd::Identity(32, 32);
  CHECK(d.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("row sums reproduce the unit-density boundary values") {
  const auto& sys = interior64();
  const auto& t = sys.rule.nodes();
  for (int j = 0; j < sys.rule.size(); ++j) {
    const double expect = j_value(oval(), oval().point(t[j]), kP) - 1.0;
    CHECK(std::abs(sys.matrix.row(j).sum() - expect) < 1e-6);
  }
}

TEST_CASE("homogeneous data and linearity") {
  const auto& sys = interior64();
  const int n = sys.rule.size();
  const auto z = solve_dirichlet(sys, std::vector<double>(n, 0.0));
  for (double m : z.density) CHECK(m == 0.0);
  CHECK(reconstruct(z, oval(), {0.4, 0.4}, FundamentalSolution(kP)).value == 0.0);

  std::vector<double> g1(n), g2(n), g3(n);
  for (int k = 0; k < n; ++k) {
    const double t = sys.rule.nodes()[k];
    g1[k] = std::sin(5.0 * t);
    g2[k] = 1.0 + t * t;
    g3[k] = 2.0 * g1[k] - 3.0 * g2[k];
  }
  const auto s1 = solve_dirichlet(sys, g1), s2 = solve_dirichlet(sys, g2), s3 = solve_dirichlet(sys, g3);
  for (int k = 0; k < n; ++k) CHECK(std::abs(s3.density[k] - (2.0 * s1.density[k] - 3.0 * s2.density[k])) < 1e-10);
  CHECK(s1.residual < 1e-12);
  CHECK(!s1.flagged);
  CHECK(s1.rcond > 1e-3);
}

TEST_CASE("bad data and singular systems") {
  const auto& sys = interior64();
  CHECK_THROWS_AS(solve_dirichlet(sys, std::vector<double>(3, 1.0)), DomainError);
  std::vector<double> g(sys.rule.size(), 1.0);
  g[5] = NAN;
  CHECK_THROWS_AS(solve_dirichlet(sys, g), DomainError);
  NystromSystem zero = sys;
  zero.matrix.setZero();
  try {
    solve_dirichlet(zero, std::vector<double>(sys.rule.size(), 1.0));
    FAIL("expected a singular system");
  } catch (const SingularSystemError& e) {
    CHECK(e.rcond() < 1e-13);
  }
}

TEST_CASE("exact solution y^(1-2beta) is recovered") {
  const Curve& c = oval();
  const auto& sys = interior64();
  const auto sol = solve_dirichlet(sys, sample_data(c, sys.rule, exact));
  const FundamentalSolution q(kP);
  const auto pts = interior_points(c, 12, 0.05 * c.length());
  const auto serial = reconstruct_batch(sol, c, pts, q, Exec::Serial);
  const auto par = reconstruct_batch(sol, c, pts, q, Exec::Parallel);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(serial[i].value - exact(pts[i])) < 1e-6);
    CHECK(serial[i].value == par[i].value);
  }
  // the density satisfies the interior limit equation at the nodes
  const Density mu = sol.density_function();
  for (int j : {3, 30, 60}) {
    const double t = sys.rule.nodes()[j];
    CHECK(std::abs(boundary_limit(c, mu, t, Side::Interior, q) - sol.data[j]) < 1e-6);
  }
  // close to Gamma the adaptive fallback takes over
  const Point x = c.point(0.5);
  const Vec2 nrm = c.normal(0.5);
  const Point near{x.x - 1e-3 * nrm.x, x.y - 1e-3 * nrm.y};
  CHECK(std::abs(reconstruct(sol, c, near, q).value - exact(near)) < 1e-4);
}

TEST_CASE("reconstruction error falls under refinement") {
  const Curve& c = oval();
  const FundamentalSolution q(kP);
  const auto pts = interior_points(c, 8, 0.05 * c.length());
  double prev = INFINITY;
  for (int n : {32, 64, 128}) {
    const auto sys = assemble(c, n, Side::Interior, kP);
    const auto sol = solve_dirichlet(sys, sample_data(c, sys.rule, exact));
    double err = 0.0;
    const auto rec = reconstruct_batch(sol, c, pts, q);
    for (std::size_t i = 0; i < pts.size(); ++i)
      err = std::max(err, std::abs(rec[i].value - exact(pts[i])));
    CHECK(err < prev / 4.0);
    prev = err;
  }
}
