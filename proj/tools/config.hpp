#pragma once

// Run configuration: defaults, then a JSON file, then command-line flags.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "biaxial/geometry.hpp"
#include "biaxial/kernel.hpp"

namespace biaxial::cli {

struct CurveSpec {
  std::string family = "flattened_oval";
  double a = 1.0, b = 1.0, epsilon = 0.5;
  int n_table = 2048;
  std::string file;                // user curve JSON, family "user"
  std::vector<double> t, x, y;     // inline user curve samples
};

struct Config {
  double alpha = 0.25, beta = 0.25;
  CurveSpec curve;
  std::optional<double> tolerance;  // overrides every verify tolerance
  int n = 128;                      // Nystrom nodes
  std::string side = "interior";
  int grid = 11;                    // field grid per axis
  double min_distance = 1e-3;       // field points kept at >= this times the length
  std::string density_out = "density.csv";
  std::string field_out = "field.csv";
  nlohmann::json g = "zero";        // boundary data, see boundary_data()
};

/// Merge the keys present in j into cfg. Relative curve files resolve
/// against base. Throws DomainError on wrong types or unknown keys.
void merge(Config& cfg, const nlohmann::json& j, const std::filesystem::path& base);

/// Parse a JSON file; parse errors carry line and column.
nlohmann::json read_json(const std::filesystem::path& path);

Params make_params(const Config& cfg);
Curve make_curve(const CurveSpec& spec);

/// Config as JSON (for reports).
nlohmann::ordered_json to_json(const Config& cfg);

}  // namespace biaxial::cli
