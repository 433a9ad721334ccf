#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "config.hpp"

namespace biaxial::cli {

/// A command fills `doc` and returns the process exit code.
using Doc = nlohmann::ordered_json;

int cmd_2f1(double a, double b, double c, double z, Doc& doc);
int cmd_f2(const std::vector<double>& args, Doc& doc);
int cmd_gamma(double x, Doc& doc);
int cmd_kernel(const Config& cfg, Point field, Point source, const std::vector<double>& tangent,
               Doc& doc);
int cmd_jump(const Config& cfg, const std::vector<double>& ts, const std::vector<double>& mu_coeffs,
             int grid, const std::string& csv, Doc& doc);
int cmd_verify(const Config& cfg, Doc& doc);
int cmd_solve(const Config& cfg, Doc& doc);
int cmd_curve_validate(const Config& cfg, Doc& doc);

/// Human-readable rendering of a report.
std::string render(const Doc& doc);

}  // namespace biaxial::cli
