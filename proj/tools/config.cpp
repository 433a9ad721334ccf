#include "config.hpp"

#include <fstream>
#include <sstream>

namespace biaxial::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("config key '") + key + "': " + e.what());
  }
}

void merge_curve(CurveSpec& c, const json& j, const fs::path& base) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    // a family name or a path to a user curve file
    if (s.ends_with(".json")) {
      c.family = "user";
      c.file = (base / s).string();
    } else {
      c.family = s;
    }
    return;
  }
  if (!j.is_object()) throw DomainError("config key 'curve': expected a string or an object");
  for (const auto& [k, v] : j.items()) {
    if (k == "family") c.family = get<std::string>(j, "family");
    else if (k == "a") c.a = get<double>(j, "a");
    else if (k == "b") c.b = get<double>(j, "b");
    else if (k == "epsilon") c.epsilon = get<double>(j, "epsilon");
    else if (k == "n_table") c.n_table = get<int>(j, "n_table");
    else if (k == "file") {
      c.family = "user";
      c.file = (base / get<std::string>(j, "file")).string();
    } else if (k == "t" || k == "x" || k == "y") {
      c.family = "user";
      c.file.clear();
    } else {
      throw DomainError("config key 'curve." + k + "' is not recognised");
    }
  }
  if (j.contains("t")) {
    c.t = get<std::vector<double>>(j, "t");
    c.x = get<std::vector<double>>(j, "x");
    c.y = get<std::vector<double>>(j, "y");
  }
}

}  // namespace

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());  // json::parse_error reports line and column
}

void merge(Config& cfg, const json& j, const fs::path& base) {
  if (!j.is_object()) throw DomainError("config: expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k == "alpha") cfg.alpha = get<double>(j, "alpha");
    else if (k == "beta") cfg.beta = get<double>(j, "beta");
    else if (k == "curve") merge_curve(cfg.curve, v, base);
    else if (k == "tolerance") cfg.tolerance = get<double>(j, "tolerance");
    else if (k == "n") cfg.n = get<int>(j, "n");
    else if (k == "side") cfg.side = get<std::string>(j, "side");
    else if (k == "grid") cfg.grid = get<int>(j, "grid");
    else if (k == "min_distance") cfg.min_distance = get<double>(j, "min_distance");
    else if (k == "density_out") cfg.density_out = get<std::string>(j, "density_out");
    else if (k == "field_out") cfg.field_out = get<std::string>(j, "field_out");
    else if (k == "g") cfg.g = v;
    else if (k.starts_with("_")) continue;  // comments
    else throw DomainError("config key '" + k + "' is not recognised");
  }
}

Params make_params(const Config& cfg) { return Params(cfg.alpha, cfg.beta); }

Curve make_curve(const CurveSpec& s) {
  const CurveFamily fam = curve_family_from_string(s.family);
  if (fam == CurveFamily::UserParametric) {
    if (!s.file.empty()) return load_user_curve(s.file, s.epsilon, s.n_table);
    if (s.t.empty()) throw DomainError("user curve needs 'file' or inline t, x, y");
    return make_user_curve(s.t, s.x, s.y, s.epsilon, s.n_table);
  }
  return biaxial::make_curve(fam, s.a, s.b, s.epsilon, s.n_table);
}

nlohmann::ordered_json to_json(const Config& cfg) {
  nlohmann::ordered_json c;
  c["family"] = cfg.curve.family;
  if (cfg.curve.family == "user") {
    if (!cfg.curve.file.empty()) c["file"] = cfg.curve.file;
  } else {
    c["a"] = cfg.curve.a;
    c["b"] = cfg.curve.b;
  }
  c["epsilon"] = cfg.curve.epsilon;
  nlohmann::ordered_json j;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["curve"] = c;
  return j;
}

}  // namespace biaxial::cli
