// biaxial: evaluate, verify and solve with the third double-layer potential.
//
// Exit codes: 0 ok, 1 a verification failed, 2 bad input (parse or domain),
// 3 singular system, 4 numerical failure.

#include <CLI11.hpp>
#include <omp.h>

#include <iostream>

#include "commands.hpp"

using namespace biaxial;
using namespace biaxial::cli;

namespace {

struct Flags {
  std::string config;
  bool json = false;
  std::optional<double> alpha, beta, a, b, eps, tol;
  std::optional<std::string> curve;
  std::optional<int> threads;
};

void apply(Config& cfg, const Flags& f) {
  if (f.alpha) cfg.alpha = *f.alpha;
  if (f.beta) cfg.beta = *f.beta;
  if (f.curve) merge(cfg, {{"curve", *f.curve}}, std::filesystem::current_path());
  if (f.a) cfg.curve.a = *f.a;
  if (f.b) cfg.curve.b = *f.b;
  if (f.eps) cfg.curve.epsilon = *f.eps;
  if (f.tol) cfg.tolerance = *f.tol;
}

int fail(bool json, int code, const std::string& kind, const std::string& msg) {
  if (json) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = msg;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cerr << "error (" << kind << "): " << msg << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Third double-layer potential of the bi-axially symmetric equation"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_flag("--json", flags.json, "machine-readable output");
  app.add_option("--alpha", flags.alpha, "0 < 2 alpha < 1");
  app.add_option("--beta", flags.beta, "0 < 2 beta < 1");
  app.add_option("--curve", flags.curve, "flattened_oval | ellipse | chord | path/to/curve.json");
  app.add_option("--a", flags.a, "semi-axis along x");
  app.add_option("--b", flags.b, "semi-axis along y");
  app.add_option("--eps", flags.eps, "contact exponent epsilon");
  app.add_option("--tol", flags.tol, "tolerance for every verify check");
  app.add_option("--threads", flags.threads, "OpenMP threads")->check(CLI::PositiveNumber);

  // specfun
  auto* sf = app.add_subcommand("specfun", "special functions");
  sf->require_subcommand(1);
  std::vector<double> args2f1, argsf2;
  double gx = 0.0;
  auto* s2f1 = sf->add_subcommand("2f1", "Gauss 2F1(a, b; c; z)");
  s2f1->add_option("args", args2f1, "a b c z")->expected(4)->required();
  auto* sf2 = sf->add_subcommand("f2", "Appell F2(a; b1, b2; c1, c2; x, y)");
  sf2->add_option("args", argsf2, "a b1 b2 c1 c2 x y")->expected(7)->required();
  auto* sg = sf->add_subcommand("gamma", "Gamma(x)");
  sg->add_option("x", gx)->required();

  // kernel
  auto* kn = app.add_subcommand("kernel", "q3 and its derivatives at a field/source pair");
  std::vector<double> pair, tangent;
  kn->add_option("points", pair, "x y x0 y0")->expected(4)->required();
  kn->add_option("--tangent", tangent, "unit tangent (dx/ds, dy/ds) for the normal derivative")->expected(2);

  // jump
  auto* jp = app.add_subcommand("jump", "one-sided boundary limits of a polynomial density");
  std::vector<double> ts{0.1, 0.3, 0.5, 0.7, 0.9}, mu{1.0};
  int jgrid = 0;
  std::string jcsv;
  jp->add_option("--t", ts, "curve parameters in [0, 1]");
  jp->add_option("--mu", mu, "density coefficients c0 c1 ... of sum c_k t^k");
  jp->add_option("--grid", jgrid, "also evaluate w and j on an N x N grid");
  jp->add_option("--csv", jcsv, "CSV file for the grid (x0, y0, region, w, j)");

  // verify
  auto* vf = app.add_subcommand("verify", "identity and jump-relation suites");

  // solve
  auto* sv = app.add_subcommand("solve", "Dirichlet problem by the double-layer ansatz");
  std::string problem;
  std::optional<int> n, grid;
  std::optional<std::string> side, dens_out, field_out;
  sv->add_option("problem", problem, "problem JSON {curve, alpha, beta, n, side, g}")
      ->check(CLI::ExistingFile);
  sv->add_option("--n", n, "Nystrom nodes (multiple of 8, >= 16)");
  sv->add_option("--side", side, "interior | exterior");
  sv->add_option("--grid", grid, "field grid points per axis");
  sv->add_option("--density-out", dens_out, "density CSV (t, x, y, mu)");
  sv->add_option("--field-out", field_out, "field CSV (x0, y0, u)");

  // curve validate
  auto* cv = app.add_subcommand("curve", "curve utilities");
  cv->require_subcommand(1);
  auto* cvv = cv->add_subcommand("validate", "check the contact and smoothness conditions");

  for (auto* sub : {sf, s2f1, sf2, sg, kn, jp, vf, sv, cv, cvv}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(flags.json, 2, "parse", e.what());
  }

  try {
    if (flags.threads) omp_set_num_threads(*flags.threads);
    Config cfg;
    if (!flags.config.empty())
      merge(cfg, read_json(flags.config), std::filesystem::path(flags.config).parent_path());
    if (!problem.empty())
      merge(cfg, read_json(problem), std::filesystem::path(problem).parent_path());
    apply(cfg, flags);
    if (n) cfg.n = *n;
    if (side) cfg.side = *side;
    if (grid) cfg.grid = *grid;
    if (dens_out) cfg.density_out = *dens_out;
    if (field_out) cfg.field_out = *field_out;

    Doc doc;
    int code = 0;
    if (*s2f1) code = cmd_2f1(args2f1[0], args2f1[1], args2f1[2], args2f1[3], doc);
    else if (*sf2) code = cmd_f2(argsf2, doc);
    else if (*sg) code = cmd_gamma(gx, doc);
    else if (*kn) code = cmd_kernel(cfg, {pair[0], pair[1]}, {pair[2], pair[3]}, tangent, doc);
    else if (*jp) code = cmd_jump(cfg, ts, mu, jgrid, jcsv, doc);
    else if (*vf) code = cmd_verify(cfg, doc);
    else if (*sv) code = cmd_solve(cfg, doc);
    else if (*cvv) code = cmd_curve_validate(cfg, doc);
    std::cout << (flags.json ? doc.dump(2) + "\n" : render(doc));
    if (code == 1 && !flags.json && doc.contains("first_failure"))
      std::cerr << "failed: " << doc["first_failure"].get<std::string>() << '\n';
    return code;
  } catch (const nlohmann::json::parse_error& e) {
    return fail(flags.json, 2, "parse", e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(flags.json, 2, "input", e.what());
  } catch (const SingularSystemError& e) {
    return fail(flags.json, 3, "singular",
                std::string(e.what()) + " (rcond " + std::to_string(e.rcond()) + ")");
  } catch (const DomainError& e) {
    return fail(flags.json, 2, "domain", e.what());
  } catch (const ConvergenceError& e) {
    return fail(flags.json, 4, "convergence", e.what());
  } catch (const std::exception& e) {
    return fail(flags.json, 4, "internal", e.what());
  }
}
