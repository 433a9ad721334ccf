#include "commands.hpp"

#include <gsl/gsl_interp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>

#include "biaxial/greens.hpp"
#include "biaxial/solver.hpp"
#include "biaxial/specfun.hpp"
#include "csv.hpp"

namespace biaxial::cli {

using nlohmann::json;

namespace {

Doc point_json(Point p) { return Doc::array({p.x, p.y}); }

// Boundary data at the rule nodes; `exact` is set when g names a solution.
std::vector<double> boundary_data(const json& g, const Curve& c, const PanelRule& rule,
                                  const Params& p, std::optional<ExactSolution>& exact) {
  if (g.is_number()) return std::vector<double>(rule.size(), g.get<double>());
  if (g.is_string()) {
    const auto name = g.get<std::string>();
    if (name == "zero") return std::vector<double>(rule.size(), 0.0);
    exact.emplace(solution_from_string(name), p);
    return sample_data(c, rule, [&](Point z) { return exact->value(z); });
  }
  if (g.is_object() && g.contains("samples")) {
    auto v = g.at("samples").get<std::vector<double>>();
    if (static_cast<int>(v.size()) != rule.size())
      throw DomainError("g.samples: need one value per node (" + std::to_string(rule.size()) + ")");
    return v;
  }
  if (g.is_object() && g.contains("t") && g.contains("values")) {
    const auto t = g.at("t").get<std::vector<double>>();
    const auto v = g.at("values").get<std::vector<double>>();
    if (t.size() != v.size() || t.size() < 2) throw DomainError("g: t and values must match, at least 2");
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!(t[i] > t[i - 1])) throw DomainError("g.t must increase");
    if (t.front() > 0.0 || t.back() < 1.0) throw DomainError("g.t must cover [0, 1]");
    const auto* type = t.size() >= 3 ? gsl_interp_cspline : gsl_interp_linear;
    std::unique_ptr<gsl_interp, decltype(&gsl_interp_free)> in(gsl_interp_alloc(type, t.size()),
                                                              &gsl_interp_free);
    gsl_interp_init(in.get(), t.data(), v.data(), t.size());
    std::vector<double> out;
    for (double s : rule.nodes()) out.push_back(gsl_interp_eval(in.get(), t.data(), v.data(), s, nullptr));
    return out;
  }
  throw DomainError("g: expected a number, a solution name, {samples} or {t, values}");
}

Density polynomial(std::vector<double> coeffs) {
  return Density([c = std::move(coeffs)](double t) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  });
}

std::string num(double v) { return json(v).dump(); }

Doc check(const std::string& name, const std::string& detail, double residual, double tol) {
  Doc j;
  j["name"] = name;
  j["detail"] = detail;
  j["residual"] = residual;
  j["tolerance"] = tol;
  j["pass"] = residual <= tol;
  return j;
}

void render_into(std::ostringstream& os, const Doc& d, int indent) {
  const std::string pad(indent, ' ');
  // numbers print as the shortest text that reads back to the same double
  auto scalar = [](const Doc& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [k, v] : d.items()) {
    if (v.is_object()) {
      os << pad << k << ":\n";
      render_into(os, v, indent + 2);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << pad << k << ":\n";
      for (const auto& row : v) {
        os << pad << "  -";
        for (const auto& [rk, rv] : row.items()) os << ' ' << rk << '=' << scalar(rv);
        os << '\n';
      }
    } else if (v.is_array()) {
      os << pad << k << ":";
      for (const auto& e : v) os << ' ' << scalar(e);
      os << '\n';
    } else {
      os << pad << k << ": " << scalar(v) << '\n';
    }
  }
}

}  // namespace

std::string render(const Doc& doc) {
  std::ostringstream os;
  render_into(os, doc, 0);
  return os.str();
}

int cmd_2f1(double a, double b, double c, double z, Doc& doc) {
  const auto v = gauss_2f1_branch({a, b, c}, z);
  doc["function"] = "2f1";
  doc["args"] = {a, b, c, z};
  doc["value"] = v.value;
  doc["branch"] = std::string(to_string(v.branch));
  return 0;
}

int cmd_f2(const std::vector<double>& x, Doc& doc) {
  const HyperParamsF2 p{x[0], x[1], x[2], x[3], x[4]};
  const auto route = appell_f2_route(p, x[5], x[6]);
  doc["function"] = "f2";
  doc["args"] = x;
  doc["value"] = appell_f2(p, x[5], x[6]);
  doc["branch"] = std::string(to_string(route));
  return 0;
}

int cmd_gamma(double x, Doc& doc) {
  if (is_nonpositive_integer(x)) throw PoleError("gamma: pole at non-positive integer");
  doc["function"] = "gamma";
  doc["args"] = {x};
  doc["value"] = std::tgamma(x);
  doc["log_abs"] = std::lgamma(x);
  doc["reciprocal"] = rgamma(x);
  doc["branch"] = x > 171.6 ? "overflow" : "tgamma";
  return 0;
}

int cmd_kernel(const Config& cfg, Point f, Point s, const std::vector<double>& tangent, Doc& doc) {
  const Params p = make_params(cfg);
  const FundamentalSolution q(p);
  const auto g = pair_geometry(f, s);
  doc["alpha"] = p.alpha();
  doc["beta"] = p.beta();
  doc["field"] = point_json(f);
  doc["source"] = point_json(s);
  doc["k3"] = q.k3();
  doc["r2"] = g.r2;
  doc["xi"] = g.xi;
  doc["eta"] = g.eta;
  const double a = 1.0 + p.alpha() - p.beta();
  doc["f2_route"] = std::string(
      to_string(appell_f2_route({a, p.alpha(), 1.0 - p.beta(), 2.0 * p.alpha(), 2.0 - 2.0 * p.beta()}, g.xi, g.eta)));
  doc["q3"] = q.value(f, s);
  const Vec2 grad = q.gradient(f, s);
  doc["grad"] = {grad.x, grad.y};
  doc["bound"] = q.bound(f, s);
  if (!tangent.empty()) {
    const double len = std::hypot(tangent[0], tangent[1]);
    if (!(len > 0.0)) throw DomainError("kernel: tangent must be nonzero");
    const Vec2 tau{tangent[0] / len, tangent[1] / len};
    doc["normal_derivative"] = q.normal_derivative(f, tau, s);
    doc["weighted_normal_derivative"] = q.weighted_normal_derivative(f, tau, s);
  }
  return 0;
}

int cmd_jump(const Config& cfg, const std::vector<double>& ts, const std::vector<double>& mu_coeffs,
             int grid, const std::string& csv, Doc& doc) {
  const Params p = make_params(cfg);
  const FundamentalSolution q(p);
  const Curve c = make_curve(cfg.curve);
  const Density mu = polynomial(mu_coeffs);
  doc.update(to_json(cfg));
  doc["mu_coefficients"] = mu_coeffs;
  Doc rows = Doc::array();
  for (double t : ts) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("jump: t must lie in [0, 1]");
    const double on = boundary_integral(c, mu, t, q).value;
    const double wi = -0.5 * mu(t) + on, we = 0.5 * mu(t) + on;
    Doc r;
    r["t"] = t;
    r["mu"] = mu(t);
    r["interior"] = wi;
    r["exterior"] = we;
    r["jump_minus_mu"] = we - wi - mu(t);
    rows.push_back(r);
  }
  doc["limits"] = rows;
  if (grid > 0 && !csv.empty()) {
    std::vector<Point> pts;
    for (int i = 0; i < grid; ++i)
      for (int k = 0; k < grid; ++k)
        pts.push_back({1.25 * c.a() * (i + 0.5) / grid, 1.25 * c.b() * (k + 0.5) / grid});
    const auto w = double_layer_batch(c, mu, pts, q);
    CsvWriter out(csv, {"x0", "y0", "region", "w", "j"});
    for (std::size_t i = 0; i < pts.size(); ++i)
      out.row({pts[i].x, pts[i].y, std::string(to_string(locate(c, pts[i]).kind)), w[i].value,
               j_value(c, pts[i], p)});
    doc["grid_csv"] = csv;
    doc["grid_points"] = pts.size();
  }
  return 0;
}

int cmd_curve_validate(const Config& cfg, Doc& doc) {
  const Curve c = make_curve(cfg.curve);
  const auto r = validate_curve(c);
  auto contact = [](const ContactCheck& k) {
    Doc j;
    j["constant"] = k.constant;
    j["slope"] = k.slope;
    j["pass"] = k.pass;
    return j;
  };
  auto holder = [](const HolderCheck& k) {
    Doc j;
    j["quotient"] = k.quotient;
    j["slope"] = k.slope;
    j["pass"] = k.pass;
    return j;
  };
  doc["curve"] = to_json(cfg)["curve"];
  doc["pass"] = r.pass;
  doc["length"] = r.length;
  doc["min_speed"] = r.min_speed;
  doc["orientation_ok"] = r.orientation_ok;
  doc["contact_A"] = contact(r.contact_A);
  doc["contact_B"] = contact(r.contact_B);
  doc["holder_x"] = holder(r.holder_x);
  doc["holder_y"] = holder(r.holder_y);
  return r.pass ? 0 : 1;
}

int cmd_verify(const Config& cfg, Doc& doc) {
  const Params p = make_params(cfg);
  const FundamentalSolution q(p);
  const Curve c = make_curve(cfg.curve);
  auto tol = [&](double dflt) { return cfg.tolerance.value_or(dflt); };
  doc.update(to_json(cfg));
  Doc checks = Doc::array();

  const auto report = validate_curve(c);
  checks.push_back(check("curve", "contact and Holder conditions", report.pass ? 0.0 : 1.0, 0.0));

  for (const auto& r : green_suite(c, p, tol(1e-6)))
    checks.push_back(check(r.name, r.solutions, r.residual, r.tolerance));

  if (report.pass) {
    const Density one = Density::constant(1.0);
    const double h = 0.15 * std::min(c.a(), c.b());
    for (double t : {0.2, 0.5, 0.8}) {
      const Point x = c.point(t);
      const Vec2 n = c.normal(t);
      for (double sgn : {-1.0, 1.0}) {
        const Point z{x.x + sgn * h * n.x, x.y + sgn * h * n.y};
        const auto kind = locate(c, z).kind;
        if (kind != Region::Inside && kind != Region::Outside) continue;
        const double offset = kind == Region::Inside ? 1.0 : 0.0;
        const double w = double_layer(c, one, z, q).value;
        checks.push_back(check("gauge", std::string(to_string(kind)) + " t=" + num(t),
                               std::abs(w - (j_value(c, z, p) - offset)), tol(1e-6)));
      }
    }
    for (double t : {0.3, 0.7}) {
      const double w = boundary_integral(c, one, t, q).value;
      checks.push_back(check("gauge", "on_gamma t=" + num(t),
                             std::abs(w - (j_value(c, c.point(t), p) - 0.5)), tol(1e-6)));
    }
    for (double f : {0.2, 0.5, 0.8, 2.0}) {
      const double y0 = f * c.b();
      const double w = double_layer(c, one, {0.0, y0}, q).value;
      const double expect = j_axis(y0, c.a(), p) - (f < 1.0 ? 1.0 : 0.0);
      checks.push_back(check("axis", "y0=" + num(f) + "b", std::abs(w - expect), tol(1e-5)));
    }
    const Density mu = polynomial({1.0, -0.5, 0.75});
    for (double t : {0.0, 0.25, 0.6, 1.0}) {
      const double wi = boundary_limit(c, mu, t, Side::Interior, q);
      const double we = boundary_limit(c, mu, t, Side::Exterior, q);
      checks.push_back(check("jump", "t=" + num(t), std::abs(we - wi - mu(t)), tol(1e-12)));
    }
  }

  bool pass = true;
  std::string first;
  for (const auto& k : checks)
    if (!k["pass"].get<bool>()) {
      if (pass) first = k["name"].get<std::string>() + " " + k["detail"].get<std::string>();
      pass = false;
    }
  doc["pass"] = pass;
  if (!pass) doc["first_failure"] = first;
  doc["checks"] = checks;
  return pass ? 0 : 1;
}

int cmd_solve(const Config& cfg, Doc& doc) {
  const Params p = make_params(cfg);
  const FundamentalSolution q(p);
  const Curve c = make_curve(cfg.curve);
  const Side side = side_from_string(cfg.side);
  const auto sys = assemble(c, cfg.n, side, p);
  std::optional<ExactSolution> exact;
  const auto g = boundary_data(cfg.g, c, sys.rule, p, exact);
  const auto sol = solve_dirichlet(sys, g);

  {
    CsvWriter out(cfg.density_out, {"t", "x", "y", "mu"});
    for (int k = 0; k < sys.rule.size(); ++k) {
      const double t = sys.rule.nodes()[k];
      const Point z = c.point(t);
      out.row({t, z.x, z.y, sol.density[k]});
    }
  }

  const double reach = side == Side::Interior ? 1.0 : 1.5;
  const auto want = side == Side::Interior ? Region::Inside : Region::Outside;
  std::vector<Point> pts;
  for (int i = 0; i < cfg.grid; ++i)
    for (int k = 0; k < cfg.grid; ++k) {
      const Point z{reach * c.a() * (i + 0.5) / cfg.grid, reach * c.b() * (k + 0.5) / cfg.grid};
      if (locate(c, z).kind == want && c.nearest(z).second >= cfg.min_distance * c.length())
        pts.push_back(z);
    }
  const auto u = reconstruct_batch(sol, c, pts, q);
  double max_err = 0.0;
  {
    CsvWriter out(cfg.field_out, {"x0", "y0", "u"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out.row({pts[i].x, pts[i].y, u[i].value});
      if (exact && side == Side::Interior) max_err = std::max(max_err, std::abs(u[i].value - exact->value(pts[i])));
    }
  }

  doc.update(to_json(cfg));
  doc["n"] = cfg.n;
  doc["side"] = std::string(to_string(side));
  doc["residual"] = sol.residual;
  doc["rcond"] = sol.rcond;
  doc["flagged"] = sol.flagged;
  doc["field_points"] = pts.size();
  if (exact && side == Side::Interior) doc["max_error"] = max_err;
  doc["density_csv"] = cfg.density_out;
  doc["field_csv"] = cfg.field_out;
  return 0;
}

}  // namespace biaxial::cli
