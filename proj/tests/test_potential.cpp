#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "biaxial/potential.hpp"

using namespace biaxial;

namespace {

const Curve& oval() {
  static const Curve c = make_curve(CurveFamily::FlattenedOval, 1.0, 1.0, 0.5);
  return c;
}

Point offset(const Curve& c, double t, double d) {
  const Point x = c.point(t);
  const Vec2 n = c.normal(t);
  return {x.x + d * n.x, x.y + d * n.y};
}

}  // namespace

TEST_CASE("panel rule integrates and interpolates polynomials") {
  const PanelRule r = PanelRule::graded(6, 8, 4);
  CHECK(r.size() == 48);
  CHECK(r.breaks().front() == 0.0);
  CHECK(r.breaks().back() == 1.0);
  for (int i = 0; i < 6; ++i) {
    // symmetric clustering
    CHECK(r.breaks()[i] + r.breaks()[6 - i] == doctest::Approx(1.0).epsilon(1e-15));
  }
  double sum = 0.0;
  for (int k = 0; k < r.size(); ++k) sum += r.weights()[k] * std::pow(r.nodes()[k], 15);
  CHECK(sum == doctest::Approx(1.0 / 16.0).epsilon(1e-14));

  auto poly = [](double t) { return 1.0 - 3.0 * t + 2.0 * std::pow(t, 5) - std::pow(t, 7); };
  std::vector<double> v;
  for (double t : r.nodes()) v.push_back(poly(t));
  for (double t : {0.0, 0.013, 0.37, 0.5, 0.81, 1.0})
    CHECK(r.interpolate(v, t) == doctest::Approx(poly(t)).epsilon(1e-13));
  CHECK(r.panel_containing(0.0) == 0);
  CHECK(r.panel_containing(1.0) == 5);
  CHECK(r.panel_containing(r.breaks()[3]) == 3);

  CHECK_THROWS_AS(PanelRule({0.0, 0.5, 0.5, 1.0}, 4), DomainError);
  CHECK_THROWS_AS(PanelRule::graded(0, 8, 4), DomainError);
  CHECK_THROWS_AS(density_from_nodes(r, std::vector<double>(5)), DomainError);
}

TEST_CASE("log moment") {
  for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    quad::AdaptiveOptions o;
    o.abs_tol = 1e-13;
    std::vector<double> br;
    if (t > 0.0 && t < 1.0) br.push_back(t);
    const double num = quad::integrate_adaptive(
        [t](double s) { return s == t ? 0.0 : std::log(std::abs(s - t)); }, 0.0, 1.0, o, br).value;
    CHECK(log_moment(t) == doctest::Approx(num).epsilon(1e-10));
  }
}

TEST_CASE("boundary kernel minus its log part settles near the diagonal") {
  const Curve& c = oval();
  const Params p(0.25, 0.3);
  const FundamentalSolution q(p);
  for (double t : {0.2, 0.5, 0.8}) {
    const double coef = kernel_log_coefficient(c, t, p);
    auto rem = [&](double h) {
      const Point a = c.point(t + h), b = c.point(t);
      return kernel_K3(c, t + h, t, q) - coef * std::log(std::hypot(a.x - b.x, a.y - b.y));
    };
    // remainder is continuous: successive differences shrink with h
    const double d1 = std::abs(rem(1e-3) - rem(1e-4));
    const double d2 = std::abs(rem(1e-4) - rem(1e-5));
    CHECK(d2 < 0.2 * d1 + 1e-9);
    CHECK(std::abs(rem(1e-5) - rem(-1e-5)) < 1e-3);
  }
}

TEST_CASE("unit density: offsets from j by region") {
  const Curve& c = oval();
  const Params p(0.25, 0.25);
  const FundamentalSolution q(p);
  const Density one = Density::constant(1.0);
  for (double t : {0.1, 0.45, 0.9}) {
    const Point in = offset(c, t, -0.2), out = offset(c, t, 0.3);
    REQUIRE(locate(c, in).kind == Region::Inside);
    REQUIRE(locate(c, out).kind == Region::Outside);
    CHECK(double_layer(c, one, in, q).value == doctest::Approx(j_value(c, in, p) - 1.0).epsilon(1e-8));
    CHECK(double_layer(c, one, out, q).value == doctest::Approx(j_value(c, out, p)).epsilon(1e-8));
  }
  for (double t : {0.05, 0.5, 0.95}) {
    const double on = boundary_integral(c, one, t, q).value;
    CHECK(std::abs(on - (j_value(c, c.point(t), p) - 0.5)) < 1e-8);
  }
  // near Gamma on both sides
  const Point near_in = offset(c, 0.3, -1e-4), near_out = offset(c, 0.3, 1e-4);
  CHECK(std::abs(double_layer(c, one, near_in, q).value - (j_value(c, near_in, p) - 1.0)) < 1e-7);
  CHECK(std::abs(double_layer(c, one, near_out, q).value - j_value(c, near_out, p)) < 1e-7);
}

TEST_CASE("unit density on the y-axis") {
  const Curve& c = oval();
  const Params p(0.25, 0.25);
  const FundamentalSolution q(p);
  const Density one = Density::constant(1.0);
  for (double y0 : {0.2, 0.5, 0.8}) {
    const double w = double_layer(c, one, {0.0, y0}, q).value;
    CHECK(std::abs(w - (j_axis(y0, c.a(), p) - 1.0)) < 1e-5);
  }
  const double w = double_layer(c, one, {0.0, 2.0}, q).value;
  CHECK(std::abs(w - j_axis(2.0, c.a(), p)) < 1e-5);
}

TEST_CASE("closed forms of j on the y-axis") {
  for (auto [al, be] : {std::pair{0.25, 0.25}, {0.1, 0.4}, {0.45, 0.05}}) {
    const Params p(al, be);
    CHECK(std::abs(j_axis(0.0, 1.0, p) - 1.0) < 1e-12);
    for (int k = 1; k <= 20; ++k) {
      const double y0 = 0.15 * k;
      const double a = j_axis(y0, 1.3, p), b = j_axis_inverse(y0, 1.3, p);
      CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
    }
    for (double y0 : {0.3, 1.0, 2.5})
      CHECK(j_value(1.3, {0.0, y0}, p) == doctest::Approx(j_axis(y0, 1.3, p)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(j_axis(-0.1, 1.0, Params(0.25, 0.25)), DomainError);
  CHECK_THROWS_AS(j_axis_inverse(0.0, 1.0, Params(0.25, 0.25)), DomainError);
  CHECK_THROWS_AS(j_value(1.0, {0.5, 0.0}, Params(0.25, 0.25)), DomainError);
}

TEST_CASE("one-sided limits differ by the density") {
  const Curve& c = oval();
  const Params p(0.2, 0.35);
  const FundamentalSolution q(p);
  const Density mu([](double t) { return std::cos(3.0 * t) + t * t; });
  for (double t : {0.0, 0.17, 0.6, 1.0}) {
    const double wi = boundary_limit(c, mu, t, Side::Interior, q);
    const double we = boundary_limit(c, mu, t, Side::Exterior, q);
    CHECK(std::abs(we - wi - mu(t)) < 1e-12);
  }
}

TEST_CASE("interior limit matches the potential approached from inside") {
  const Curve& c = oval();
  const Params p(0.25, 0.25);
  const FundamentalSolution q(p);
  const Density mu([](double t) { return 1.0 + 0.5 * std::sin(2.0 * t); });
  const double t = 0.4;
  const double wi = boundary_limit(c, mu, t, Side::Interior, q);
  // w(delta) = wi + O(delta log delta); Richardson on delta, delta/2
  const double d = 2e-4;
  const double w1 = double_layer(c, mu, offset(c, t, -d), q).value;
  const double w2 = double_layer(c, mu, offset(c, t, -d / 2), q).value;
  CHECK(std::abs(2.0 * w2 - w1 - wi) < 1e-4);
  const double we = boundary_limit(c, mu, t, Side::Exterior, q);
  const double v1 = double_layer(c, mu, offset(c, t, d), q).value;
  const double v2 = double_layer(c, mu, offset(c, t, d / 2), q).value;
  CHECK(std::abs(2.0 * v2 - v1 - we) < 1e-4);
}

TEST_CASE("zero density and the near-boundary floor") {
  const Curve& c = oval();
  const FundamentalSolution q(Params(0.25, 0.25));
  const Density zero = Density::constant(0.0);
  CHECK(double_layer(c, zero, {0.3, 0.4}, q).value == 0.0);
  CHECK(boundary_integral(c, zero, 0.5, q).value == 0.0);
  const auto v = double_layer(c, Density::constant(1.0), offset(c, 0.5, -1e-10), q);
  CHECK(v.flagged);
  CHECK(std::isnan(v.value));
  CHECK(v.distance < 1e-9);
}

TEST_CASE("batch evaluation: serial and parallel agree") {
  const Curve& c = oval();
  const FundamentalSolution q(Params(0.3, 0.15));
  const Density mu([](double t) { return 1.0 + t; });
  std::vector<Point> pts{{0.2, 0.3}, {0.5, 0.5}, {1.2, 0.4}, {0.0, 0.6}, {0.7, 0.05}};
  const auto a = double_layer_batch(c, mu, pts, q, {}, Exec::Serial);
  const auto b = double_layer_batch(c, mu, pts, q, {}, Exec::Parallel);
  REQUIRE(a.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(!a[i].flagged);
  }
}

TEST_CASE("side names") {
  CHECK(side_from_string("interior") == Side::Interior);
  CHECK(to_string(Side::Exterior) == "exterior");
  CHECK_THROWS_AS(side_from_string("inside"), DomainError);
}
