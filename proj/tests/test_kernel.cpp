#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "biaxial/kernel.hpp"

using namespace biaxial;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const double kPairs[][2] = {{0.1, 0.1}, {0.25, 0.25}, {0.05, 0.45}, {0.45, 0.05}, {0.3, 0.2}};

struct PointPair {
  Point f, s;
};

std::vector<PointPair> random_pairs(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.05, 2.0);
  std::vector<PointPair> out;
  for (int i = 0; i < n; ++i) out.push_back({{U(rng), U(rng)}, {U(rng), U(rng)}});
  return out;
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_NOTHROW(Params(0.25, 0.25));
  CHECK_THROWS_AS(Params(0.0, 0.25), DomainError);
  CHECK_THROWS_AS(Params(0.5, 0.25), DomainError);
  CHECK_THROWS_AS(Params(0.25, 0.5), DomainError);
  CHECK_THROWS_AS(Params(0.25, -0.1), DomainError);
}

TEST_CASE("pair geometry") {
  const auto g = pair_geometry({1, 1}, {1, 2});
  CHECK(g.r2 == 1.0);
  CHECK(g.r1_2 == 5.0);
  CHECK(g.r2_2 == 9.0);
  CHECK(g.xi == -4.0);
  CHECK(g.eta == -8.0);
  CHECK_THROWS_AS(pair_geometry({1, 1}, {1, 1}), CoincidenceError);
}

TEST_CASE("k3 at alpha = beta") {
  // a = 1, so k3 = Gamma(alpha)Gamma(1-alpha)/(pi Gamma(2 alpha)Gamma(2-2 alpha))
  for (double al : {0.1, 0.2, 0.3, 0.4}) {
    const double expect = 1.0 / (std::sin(std::numbers::pi * al) * std::tgamma(2 * al) *
                                 std::tgamma(2 - 2 * al));
    CHECK(rel(k3_constant(Params(al, al)), expect) < 1e-13);
  }
}

TEST_CASE("small arguments agree with the double series") {
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    const Point f{0.1, 0.12}, s{2.0, 1.7};
    const auto g = pair_geometry(f, s);
    REQUIRE(std::abs(g.xi) + std::abs(g.eta) < 1.0);
    const double a = 1 + al - be;
    const auto F = q.appell_values(g.xi, g.eta);
    CHECK(rel(F.A, appell_f2_series({a, al, 1 - be, 2 * al, 2 - 2 * be}, g.xi, g.eta)) < 1e-13);
    CHECK(rel(F.C, appell_f2_series({a + 1, 1 + al, 1 - be, 1 + 2 * al, 2 - 2 * be}, g.xi,
                                    g.eta)) < 1e-13);
    CHECK(rel(F.D, appell_f2_series({a + 1, al, 2 - be, 2 * al, 3 - 2 * be}, g.xi, g.eta)) < 1e-13);
  }
}

TEST_CASE("shared-grid Appell values match single evaluations") {
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    const double a = 1 + al - be;
    for (auto [xi, eta] : {std::pair{-50.0, -80.0}, {-400.0, -9.0}, {-3.0, -2000.0}, {-1e4, -1e4}}) {
      const auto F = q.appell_values(xi, eta);
      CHECK(rel(F.A, appell_f2_euler({a, al, 1 - be, 2 * al, 2 - 2 * be}, xi, eta)) < 1e-12);
      CHECK(rel(F.B, appell_f2_euler({a + 1, al, 1 - be, 2 * al, 2 - 2 * be}, xi, eta)) < 1e-12);
      CHECK(rel(F.C, appell_f2_euler({a + 1, 1 + al, 1 - be, 1 + 2 * al, 2 - 2 * be}, xi, eta)) <
            1e-12);
      CHECK(rel(F.D, appell_f2_euler({a + 1, al, 2 - be, 2 * al, 3 - 2 * be}, xi, eta)) < 1e-12);
    }
  }
}

TEST_CASE("contiguous relation among the four values") {
  // xi C/2 + eta D/2 = B - A
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    for (auto [xi, eta] : {std::pair{-0.3, -0.2}, {-5.0, -8.0}, {-300.0, -40.0}, {-1e3, -2e3}}) {
      const auto F = q.appell_values(xi, eta);
      CHECK(std::abs(0.5 * xi * F.C + 0.5 * eta * F.D - (F.B - F.A)) <
            1e-11 * (std::abs(F.B) + std::abs(F.A) + std::abs(0.5 * xi * F.C)));
    }
  }
}

TEST_CASE("symmetry in field and source") {
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    for (const auto& [f, s] : random_pairs(40, 11)) {
      CHECK(rel(q.value(f, s), q.value(s, f)) < 1e-12);
    }
  }
}

TEST_CASE("mirror-distance series agrees") {
  for (auto [al, be] : kPairs) {
    const Params p(al, be);
    const FundamentalSolution q(p);
    for (const auto& [f, s] : random_pairs(30, 5)) {
      CHECK(rel(q.value(f, s), q3_mirror_series(f, s, p)) < 1e-10);
    }
  }
}

TEST_CASE("boundary traces") {
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    const Point s{0.7, 0.9};
    for (double x : {0.1, 0.5, 1.3}) CHECK(q.value({x, 0.0}, s) == 0.0);
    for (double y : {0.1, 0.5, 1.3}) {
      const Vec2 g = q.gradient({0.0, y}, s);
      CHECK(std::abs(g.x) <= 1e-14 * std::abs(g.y));
    }
    // near y = 0 the value decays like y^{1-2 beta}
    const double r = q.value({0.4, 2e-6}, s) / q.value({0.4, 1e-6}, s);
    CHECK(r == doctest::Approx(std::pow(2.0, 1 - 2 * be)).epsilon(1e-5));
  }
}

TEST_CASE("gradient against finite differences") {
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    for (const auto& [f, s] : random_pairs(20, 3)) {
      const double r = std::hypot(f.x - s.x, f.y - s.y);
      const double h = 1e-5 * std::min({r, f.x, f.y});
      const Vec2 g = q.gradient(f, s);
      const double gx = (q.value({f.x + h, f.y}, s) - q.value({f.x - h, f.y}, s)) / (2 * h);
      const double gy = (q.value({f.x, f.y + h}, s) - q.value({f.x, f.y - h}, s)) / (2 * h);
      const double scale = std::hypot(g.x, g.y);
      CHECK(std::abs(g.x - gx) < 1e-6 * scale);
      CHECK(std::abs(g.y - gy) < 1e-6 * scale);
    }
  }
}

TEST_CASE("normal derivative matches gradient projection") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    for (const auto& [f, s] : random_pairs(30, 23)) {
      const double th = ang(rng);
      const Vec2 t{std::cos(th), std::sin(th)};
      const Vec2 g = q.gradient(f, s);
      const double expect = t.y * g.x - t.x * g.y;
      const double got = q.normal_derivative(f, t, s);
      CHECK(std::abs(got - expect) < 1e-10 * std::hypot(g.x, g.y));
      const double w = q.weighted_normal_derivative(f, t, s);
      CHECK(rel(w, std::pow(f.x, 2 * al) * std::pow(f.y, 2 * be) * got) < 1e-12);
    }
  }
}

TEST_CASE("weighted normal derivative is finite on y = 0") {
  const FundamentalSolution q(Params(0.2, 0.3));
  const double w = q.weighted_normal_derivative({0.5, 0.0}, {1.0, 0.0}, {0.4, 0.8});
  CHECK(std::isfinite(w));
  CHECK(w != 0.0);
  const double w1 = q.weighted_normal_derivative({0.5, 1e-9}, {1.0, 0.0}, {0.4, 0.8});
  CHECK(rel(w1, w) < 1e-6);
}

TEST_CASE("PDE residual is second order") {
  // L q = q_xx + q_yy + (2a/x) q_x + (2b/y) q_y by central differences of the gradient
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    const Point s{0.8, 0.6};
    for (Point f : {Point{0.3, 0.4}, Point{1.5, 1.1}, Point{0.9, 0.2}}) {
      auto residual = [&](double h) {
        const Vec2 g = q.gradient(f, s);
        const double gxx = (q.gradient({f.x + h, f.y}, s).x - q.gradient({f.x - h, f.y}, s).x) / (2 * h);
        const double gyy = (q.gradient({f.x, f.y + h}, s).y - q.gradient({f.x, f.y - h}, s).y) / (2 * h);
        return std::abs(gxx + gyy + 2 * al / f.x * g.x + 2 * be / f.y * g.y);
      };
      const double r1 = residual(1e-2), r2 = residual(5e-3), r3 = residual(2.5e-3);
      CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
      CHECK(r2 / r3 == doctest::Approx(4.0).epsilon(0.1));
    }
  }
}

TEST_CASE("logarithmic singularity normalization") {
  // q3 ~ -ln r / (2 pi x0^{2 alpha} y0^{2 beta}) near the source
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    const Point s{0.7, 0.5};
    const double r = 1e-8;
    const double d = q.value({s.x + r, s.y}, s) - q.value({s.x + 2 * r, s.y}, s);
    const double expect =
        std::log(2.0) / (2 * std::numbers::pi * std::pow(s.x, 2 * al) * std::pow(s.y, 2 * be));
    CHECK(rel(d, expect) < 1e-6);
  }
}

TEST_CASE("majorant is symmetric and positive") {
  for (auto [al, be] : kPairs) {
    const FundamentalSolution q(Params(al, be));
    for (const auto& [f, s] : random_pairs(30, 31)) {
      const double b = q.bound(f, s);
      CHECK(b > 0.0);
      CHECK(rel(b, q.bound(s, f)) < 1e-13);
    }
  }
}

TEST_CASE("majorant counterexample near the x = 0 axis") {
  // Field and source stacked close to x = 0: q3 exceeds the majorant.
  const FundamentalSolution q(Params(0.25, 0.25));
  const Point f{0.001, 1.0}, s{0.001, 1.1};
  CHECK(q.value(f, s) > 1.3 * q.bound(f, s));
}
