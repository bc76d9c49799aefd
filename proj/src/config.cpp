#include "halfheat/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "halfheat/errors.hpp"

namespace halfheat {

void RunConfig::validate() const {
  if (surface.empty()) throw UsageError("config: surface name is empty");
  if (!(alpha > 0.0)) throw UsageError("config: alpha must be positive");
  if (!(u_range[0] <= u_range[1]) || !(v_range[0] <= v_range[1])) throw UsageError("config: empty u or v range");
  if (u_count < 1 || v_count < 1) throw UsageError("config: grid counts must be positive");
  if (r_grid.empty() || t_grid.empty()) throw UsageError("config: r and t grids must be non-empty");
  for (double r : r_grid)
    if (!(r > 0.0)) throw UsageError("config: radii must be positive");
  for (double t : t_grid)
    if (!(t > 0.0)) throw UsageError("config: times must be positive");
  if (jet_order < 4 || jet_order > 8) throw UsageError("config: jet order must lie in 4..8");
  if (density_order < 2 || radial_nodes < 2) throw UsageError("config: quadrature orders must be at least 2");
  for (double tol : {density_tol, heat_density_tol, heat_abs_tol, tolerance})
    if (!(tol > 0.0)) throw UsageError("config: tolerances must be positive");
  if (format != "csv" && format != "json") throw UsageError("config: format must be csv or json");
  if (threads < 0) throw UsageError("config: threads must be non-negative");
}

std::vector<std::array<double, 2>> RunConfig::sample_points() const {
  if (!points.empty()) return points;
  std::vector<std::array<double, 2>> out;
  const auto lin = [](const std::array<double, 2>& r, int n, int i) {
    return n == 1 ? 0.5 * (r[0] + r[1]) : r[0] + (r[1] - r[0]) * i / (n - 1);
  };
  for (int i = 0; i < u_count; ++i)
    for (int j = 0; j < v_count; ++j) out.push_back({lin(u_range, u_count, i), lin(v_range, v_count, j)});
  return out;
}

nlohmann::json RunConfig::to_json() const {
  return {
      {"surface", surface},
      {"alpha", alpha},
      {"u_range", u_range},
      {"v_range", v_range},
      {"u_count", u_count},
      {"v_count", v_count},
      {"points", points},
      {"r_grid", r_grid},
      {"t_grid", t_grid},
      {"jet_order", jet_order},
      {"density_order", density_order},
      {"radial_nodes", radial_nodes},
      {"density_tol", density_tol},
      {"heat_density_tol", heat_density_tol},
      {"heat_abs_tol", heat_abs_tol},
      {"tolerance", tolerance},
      {"format", format},
      {"output", output},
      {"threads", threads},
      {"seed", seed},
  };
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config: expected a JSON object");
  RunConfig c;
  const auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("config: bad value for ") + key + ": " + e.what());
    }
  };
  for (const auto& [key, _] : j.items())
    if (!c.to_json().contains(key)) throw UsageError("config: unknown key " + key);
  get("surface", c.surface);
  get("alpha", c.alpha);
  get("u_range", c.u_range);
  get("v_range", c.v_range);
  get("u_count", c.u_count);
  get("v_count", c.v_count);
  get("points", c.points);
  get("r_grid", c.r_grid);
  get("t_grid", c.t_grid);
  get("jet_order", c.jet_order);
  get("density_order", c.density_order);
  get("radial_nodes", c.radial_nodes);
  get("density_tol", c.density_tol);
  get("heat_density_tol", c.heat_density_tol);
  get("heat_abs_tol", c.heat_abs_tol);
  get("tolerance", c.tolerance);
  get("format", c.format);
  get("output", c.output);
  get("threads", c.threads);
  get("seed", c.seed);
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot read " + path);
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config: " + path + ": " + e.what());
  }
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunConfig::hash() const {
  nlohmann::json j = to_json();
  j.erase("output");  // where results go does not change them
  j.erase("threads");
  return fnv1a_hex(j.dump());
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HALFHEAT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
    throw UsageError("HALFHEAT_THREADS must be a positive integer");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace halfheat
